#include "flatgrowth/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "flatgrowth/batch.hpp"
#include "flatgrowth/numerics.hpp"
#include "flatgrowth/oracle.hpp"
#include "flatgrowth/periodic.hpp"
#include "flatgrowth/regime.hpp"

namespace flatgrowth {

namespace {

enum class DrawKind { persistence, strict_extinction, any };

// Independent deterministic stream per check, derived from the report seed.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t check_index) {
    return std::mt19937_64(seed * 6364136223846793005ULL + 1442695040888963407ULL * check_index);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ModelParams draw_params(std::mt19937_64& rng, DrawKind kind, int max_harmonics = 3) {
    const double period = uniform(rng, 0.5, 2.0);
    const double mu = uniform(rng, 0.3, 2.0);
    const double mean = uniform(rng, 0.8, 1.5);
    const int k = std::uniform_int_distribution<int>(0, max_harmonics)(rng);
    std::vector<double> cosc(k), sinc(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        cosc[i] = uniform(rng, -1.0, 1.0);
        sinc[i] = uniform(rng, -1.0, 1.0);
        sum += std::abs(cosc[i]) + std::abs(sinc[i]);
    }
    if (k > 0 && sum > 0.0) {
        // Cap the total harmonic weight so the forcing stays positive.
        const double budget = 0.75 * mean * uniform(rng, 0.3, 1.0);
        for (int i = 0; i < k; ++i) {
            cosc[i] *= budget / sum;
            sinc[i] *= budget / sum;
        }
    }
    double ratio = 0.0;
    switch (kind) {
        case DrawKind::persistence: ratio = uniform(rng, 0.35, 0.85); break;
        case DrawKind::strict_extinction: ratio = uniform(rng, 1.1, 1.8); break;
        case DrawKind::any: ratio = uniform(rng, 0.35, 1.7); break;
    }
    return ModelParams(mu, ratio * mean, Forcing(period, mean, std::move(cosc), std::move(sinc)));
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CheckResult check_envelope(const VerifyOptions& opt) {
    auto rng = stream(opt.seed, 1);
    CheckResult result{"envelope", false, 0.0, 1e-9, ""};
    std::vector<batch::IntegrationCase> cases;
    std::vector<double> rho0s;
    for (int d = 0; d < opt.envelope_draws; ++d) {
        ModelParams params = draw_params(rng, DrawKind::any);
        const double rho0 = uniform(rng, 0.05, 5.0);
        const double span = 10.0 * params.forcing.period();
        cases.push_back({std::move(params), rho0, 0.0, span});
        rho0s.push_back(rho0);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto marks = num::linspace(0.0, cases[i].t1, 129);
        const Trajectory traj =
            integrate(cases[i].params, cases[i].rho0, 0.0, cases[i].t1, opt.integrator, marks);
        if (!traj.ok()) {
            result.detail = "integration failure";
            return result;
        }
        for (std::size_t j = 0; j < traj.times.size(); ++j) {
            const auto [lower, upper] =
                growth_envelope(cases[i].params, rho0s[i], traj.times[j]);
            worst = std::max({worst, (lower - traj.heights[j]) / lower,
                              (traj.heights[j] - upper) / upper});
        }
    }
    result.measured = worst;
    result.pass = worst <= result.threshold;
    result.detail = "max relative excursion over " + std::to_string(opt.envelope_draws) +
                    " draws: " + format_double(worst);
    return result;
}

CheckResult check_comparison(const VerifyOptions& opt) {
    auto rng = stream(opt.seed, 2);
    CheckResult result{"comparison", false, 0.0, 0.0, ""};
    double min_gap = std::numeric_limits<double>::infinity();
    for (int d = 0; d < opt.comparison_draws; ++d) {
        const ModelParams params = draw_params(rng, DrawKind::any);
        const double r = uniform(rng, 0.1, 2.0);
        const double span = 5.0 * params.forcing.period();
        const auto marks = num::linspace(0.0, span, 64);
        const Trajectory lo = integrate(params, r, 0.0, span, opt.integrator, marks);
        const Trajectory hi = integrate(params, 2.0 * r, 0.0, span, opt.integrator, marks);
        if (!lo.ok() || !hi.ok()) {
            result.detail = "integration failure";
            return result;
        }
        for (std::size_t j = 0; j < marks.size(); ++j)
            min_gap = std::min(min_gap, hi.heights[j] - lo.heights[j]);
    }
    result.measured = min_gap;
    result.pass = min_gap > 0.0;
    result.detail = "min ordering gap rho2(t) - rho1(t): " + format_double(min_gap);
    return result;
}

CheckResult check_oracle_equivalence(const VerifyOptions& opt) {
    auto rng = stream(opt.seed, 3);
    CheckResult result{"oracle-equivalence", false, 0.0, 1e-8, ""};
    std::vector<batch::IntegrationCase> cases;
    for (int d = 0; d < 20; ++d) {
        ModelParams params = draw_params(rng, DrawKind::any);
        const double rho0 = uniform(rng, 0.3, 3.0);
        const double period = params.forcing.period();
        cases.push_back({std::move(params), rho0, 0.0, period});
    }
    const std::vector<double> adaptive = batch::final_heights(cases, opt.integrator);
    const std::vector<double> reference = batch::reference_final_heights(cases, opt.oracle_steps);
    double worst = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i)
        worst = std::max(worst, std::abs(adaptive[i] - reference[i]) / reference[i]);
    result.measured = worst;
    result.pass = worst <= result.threshold;
    result.detail = "max relative difference vs fixed-step RK4 on 20 cases: " +
                    format_double(worst);
    return result;
}

CheckResult check_field_residuals(const VerifyOptions& opt) {
    (void)opt;
    CheckResult result{"field-residuals", false, 0.0, 1.9, ""};
    const ModelParams flat(1.0, 0.5, Forcing(1.0, 1.0));
    const ModelParams forced(1.3, 0.6, Forcing(1.0, 1.0, {0.5}));
    const ModelParams two(0.8, 0.9, Forcing(2.0, 1.2, {0.3, 0.1}, {0.2}));
    struct FieldCase {
        const ModelParams* params;
        double rho;
        double t;
    };
    const FieldCase field_cases[] = {{&flat, 2.0, 0.3}, {&forced, 0.5, 0.1}, {&two, 6.0, 0.7}};
    double min_order = std::numeric_limits<double>::infinity();
    double worst_interior = 0.0;
    for (const FieldCase& fc : field_cases) {
        const oracle::ResidualReport rep = oracle::field_residuals(*fc.params, fc.t, fc.rho, 65);
        min_order = std::min(min_order, rep.observed_order);
        worst_interior =
            std::max({worst_interior, rep.sigma_interior[0], rep.pressure_interior[0]});
    }
    result.measured = min_order;
    result.pass = min_order >= result.threshold;
    result.detail = "min observed order over 3 cases: " + format_double(min_order) +
                    ", worst coarse interior residual: " + format_double(worst_interior);
    return result;
}

CheckResult check_bracket_self_map(const VerifyOptions& opt) {
    auto rng = stream(opt.seed, 4);
    CheckResult result{"bracket-self-map", false, 0.0, 1e-8, ""};
    std::vector<Bracket> brackets;
    std::vector<batch::IntegrationCase> cases;
    for (int d = 0; d < opt.self_map_draws; ++d) {
        ModelParams params = draw_params(rng, DrawKind::persistence);
        const Bracket b = compute_bracket(params);
        const double period = params.forcing.period();
        for (int j = 0; j < opt.self_map_samples; ++j) {
            const double x =
                b.x_bar + (b.x2 - b.x_bar) * static_cast<double>(j) / (opt.self_map_samples - 1);
            cases.push_back({params, x, 0.0, period});
        }
        brackets.push_back(b);
    }
    const std::vector<double> images = batch::final_heights(cases, opt.integrator);
    double worst = 0.0;
    for (int d = 0; d < opt.self_map_draws; ++d) {
        const Bracket& b = brackets[static_cast<std::size_t>(d)];
        for (int j = 0; j < opt.self_map_samples; ++j) {
            const double fx = images[static_cast<std::size_t>(d * opt.self_map_samples + j)];
            worst = std::max({worst, (b.x_bar - fx) / b.x2, (fx - b.x2) / b.x2});
        }
    }
    result.measured = worst;
    result.pass = worst <= result.threshold;
    result.detail = "max normalized excursion of F outside the bracket: " + format_double(worst);
    return result;
}

CheckResult check_convergence_envelope(const VerifyOptions& opt) {
    auto rng = stream(opt.seed, 5);
    CheckResult result{"convergence-envelope", false, 0.0, 1.0 + 1e-9, ""};
    const double noise_floor = 10.0 * (opt.fixed_point_tol + opt.integrator.rel_tol);
    double worst_ratio = 0.0;
    double min_rate_margin = std::numeric_limits<double>::infinity();
    bool sign_ok = true, monotone_ok = true;
    for (int d = 0; d < opt.convergence_draws; ++d) {
        const ModelParams params = draw_params(rng, DrawKind::persistence);
        const PeriodicSolution sol = find_periodic(params, opt.integrator, opt.fixed_point_tol);
        const double period = params.forcing.period();
        const long P = opt.convergence_periods;
        std::vector<double> marks(static_cast<std::size_t>(P) + 1);
        for (long k = 0; k <= P; ++k) marks[static_cast<std::size_t>(k)] = k * period;
        for (const double c : {0.25, 0.5, 2.0, 4.0}) {
            const double rho0 = c * sol.rho_star_0;
            const RateEstimate rate = convergence_rate(params, sol, rho0);
            const Trajectory traj = integrate(params, rho0, 0.0, P * period, opt.integrator, marks);
            if (!traj.ok()) {
                result.detail = "integration failure";
                return result;
            }
            double prev_abs_y = std::numeric_limits<double>::infinity();
            for (long k = 0; k <= P; ++k) {
                const double y = std::log(traj.heights[static_cast<std::size_t>(k)] / sol.rho_star_0);
                const double dev = std::abs(std::exp(y) - 1.0);
                const double bound = rate.C * std::exp(-rate.delta * k * period);
                worst_ratio = std::max(worst_ratio, dev / bound);
                if (std::abs(y) > noise_floor) {
                    if ((y > 0.0) != (rate.y0 > 0.0)) sign_ok = false;
                    if (std::abs(y) > prev_abs_y * (1.0 + 1e-9) + 1e-12) monotone_ok = false;
                    prev_abs_y = std::abs(y);
                }
            }
            // Fitted decay rate of the deviation, measured down to 1e-8.
            long last = 0;
            for (long k = 1; k <= P; ++k) {
                const double dev =
                    std::abs(traj.heights[static_cast<std::size_t>(k)] / sol.rho_star_0 - 1.0);
                if (dev >= 1e-8) last = k;
            }
            if (last >= 1) {
                const double d0 = std::abs(traj.heights[0] / sol.rho_star_0 - 1.0);
                const double dl =
                    std::abs(traj.heights[static_cast<std::size_t>(last)] / sol.rho_star_0 - 1.0);
                const double fitted = (std::log(d0) - std::log(dl)) / (last * period);
                min_rate_margin = std::min(min_rate_margin, fitted - rate.delta);
            }
        }
    }
    result.measured = worst_ratio;
    result.pass = worst_ratio <= result.threshold && sign_ok && monotone_ok &&
                  min_rate_margin >= -1e-9;
    result.detail = "max deviation/bound ratio: " + format_double(worst_ratio) +
                    ", min (measured rate - delta): " + format_double(min_rate_margin) +
                    (sign_ok ? "" : ", sign flip detected") +
                    (monotone_ok ? "" : ", |y| not monotone");
    return result;
}

}  // namespace

VerificationReport run_verification(const VerifyOptions& opt) {
    VerificationReport report;
    report.seed = opt.seed;
    report.checks.push_back(check_envelope(opt));
    report.checks.push_back(check_comparison(opt));
    report.checks.push_back(check_oracle_equivalence(opt));
    report.checks.push_back(check_field_residuals(opt));
    report.checks.push_back(check_bracket_self_map(opt));
    report.checks.push_back(check_convergence_envelope(opt));
    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const CheckResult& c) { return c.pass; });
    return report;
}

}  // namespace flatgrowth
