#include "flatgrowth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flatgrowth::oracle {

namespace {

double log_rhs(const ModelParams& params, double t, double u) {
    return params.mu * (params.forcing(t) * tanh_ratio(std::exp(u)) - params.sigma_tilde);
}

// One classical RK4 step for u' = f(t, u).
double rk4_step(const ModelParams& params, double t, double u, double h) {
    const double k1 = log_rhs(params, t, u);
    const double k2 = log_rhs(params, t + 0.5 * h, u + 0.5 * h * k1);
    const double k3 = log_rhs(params, t + 0.5 * h, u + 0.5 * h * k2);
    const double k4 = log_rhs(params, t + h, u + h * k3);
    return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double advance(const ModelParams& params, double t0, double u0, double t1, long n_steps) {
    const double h = (t1 - t0) / static_cast<double>(n_steps);
    double u = u0;
    for (long i = 0; i < n_steps; ++i) u = rk4_step(params, t0 + i * h, u, h);
    return u;
}

}  // namespace

Trajectory reference_integrate(const ModelParams& params, double rho0, double t0, double t1,
                               double h) {
    if (rho0 < 0.0) throw std::invalid_argument("reference_integrate: rho0 must be >= 0");
    if (!(h > 0.0)) throw std::invalid_argument("reference_integrate: h must be > 0");
    const double span = t1 - t0;
    const long n = std::llround(span / h);
    if (n < 1 || std::abs(n * h - span) > 1e-9 * std::max(std::abs(span), 1.0))
        throw std::invalid_argument("reference_integrate: h must divide t1 - t0 within rounding");

    Trajectory traj;
    if (rho0 == 0.0) {
        traj.times = {t0, t1};
        traj.heights = {0.0, 0.0};
        return traj;
    }
    const double step = span / static_cast<double>(n);
    double u = std::log(rho0);
    traj.times.push_back(t0);
    traj.heights.push_back(rho0);
    for (long i = 0; i < n; ++i) {
        u = rk4_step(params, t0 + i * step, u, step);
    }
    traj.times.push_back(t1);
    traj.heights.push_back(std::exp(u));
    traj.accepted = n;
    return traj;
}

std::vector<double> reference_heights_at(const ModelParams& params, double rho0, double t0,
                                         std::span<const double> times, double h) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("reference_heights_at: rho0 must be > 0");
    if (!(h > 0.0)) throw std::invalid_argument("reference_heights_at: h must be > 0");
    std::vector<double> out;
    out.reserve(times.size());
    double t = t0;
    double u = std::log(rho0);
    for (double mark : times) {
        if (mark < t) throw std::invalid_argument("reference_heights_at: times must be ascending");
        if (mark > t) {
            const long n = std::max<long>(1, std::lround(std::ceil((mark - t) / h)));
            u = advance(params, t, u, mark, n);
            t = mark;
        }
        out.push_back(std::exp(u));
    }
    return out;
}

namespace {

struct LevelResiduals {
    double h;
    double sigma_interior;
    double pressure_interior;
    double base_neumann;
    double top_dirichlet;
};

LevelResiduals residuals_on_grid(const ModelParams& params, double t, double rho, int n) {
    const FieldSnapshot snap = make_field_snapshot(params, t, rho, n);
    const double h = rho / (n - 1);
    const double h2 = h * h;
    double worst_sigma = 0.0, worst_p = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double sig_dd = (snap.sigma[i - 1] - 2.0 * snap.sigma[i] + snap.sigma[i + 1]) / h2;
        const double p_dd =
            (snap.pressure[i - 1] - 2.0 * snap.pressure[i] + snap.pressure[i + 1]) / h2;
        worst_sigma = std::max(worst_sigma, std::abs(sig_dd - snap.sigma[i]));
        worst_p = std::max(worst_p,
                           std::abs(-p_dd - params.mu * (snap.sigma[i] - params.sigma_tilde)));
    }
    // One-sided second-order Neumann derivative at the impermeable base.
    const double sig_base =
        (-3.0 * snap.sigma[0] + 4.0 * snap.sigma[1] - snap.sigma[2]) / (2.0 * h);
    const double p_base =
        (-3.0 * snap.pressure[0] + 4.0 * snap.pressure[1] - snap.pressure[2]) / (2.0 * h);
    const double top = std::max(std::abs(snap.sigma[n - 1] - params.forcing(t)),
                                std::abs(snap.pressure[n - 1]));
    return {h, worst_sigma, worst_p, std::max(std::abs(sig_base), std::abs(p_base)), top};
}

ResidualReport assemble_report(const std::array<LevelResiduals, 3>& levels) {
    ResidualReport report;
    for (int l = 0; l < 3; ++l) {
        report.h[l] = levels[l].h;
        report.sigma_interior[l] = levels[l].sigma_interior;
        report.pressure_interior[l] = levels[l].pressure_interior;
        report.base_neumann[l] = levels[l].base_neumann;
        report.top_dirichlet[l] = levels[l].top_dirichlet;
    }
    const auto order = [](const std::array<double, 3>& r) {
        const double o1 = std::log2(r[0] / r[1]);
        const double o2 = std::log2(r[1] / r[2]);
        return std::min(o1, o2);
    };
    report.sigma_order = order(report.sigma_interior);
    report.pressure_order = order(report.pressure_interior);
    report.observed_order = std::min(report.sigma_order, report.pressure_order);
    return report;
}

}  // namespace

ResidualReport field_residuals(const ModelParams& params, double t, double rho, int grid_size) {
    if (!(rho > 0.0)) throw std::invalid_argument("field_residuals: rho must be > 0");
    if (grid_size < 9 || grid_size % 2 == 0)
        throw std::invalid_argument("field_residuals: grid_size must be odd and >= 9");
    std::array<LevelResiduals, 3> levels{};
    int n = grid_size;
    for (int l = 0; l < 3; ++l) {
        levels[l] = residuals_on_grid(params, t, rho, n);
        n = 2 * n - 1;
    }
    return assemble_report(levels);
}

PeriodicFieldReport periodic_field_check(const ModelParams& params, const PeriodicSolution& sol,
                                         int grid_size) {
    if (grid_size < 9 || grid_size % 2 == 0)
        throw std::invalid_argument("periodic_field_check: grid_size must be odd and >= 9");
    const std::size_t n_samples = sol.heights.size();
    if (n_samples < 5)
        throw std::invalid_argument("periodic_field_check: orbit must have at least 5 samples");

    PeriodicFieldReport out;

    // (a) PDE residuals at 8 phases along the orbit; keep the worst per level.
    constexpr int kPhases = 8;
    std::array<LevelResiduals, 3> worst{};
    const std::size_t m = n_samples - 1;
    for (int j = 0; j < kPhases; ++j) {
        const std::size_t idx = (m * static_cast<std::size_t>(j)) / kPhases;
        const double t = sol.times[idx];
        const double rho = sol.heights[idx];
        int n = grid_size;
        for (int l = 0; l < 3; ++l) {
            const LevelResiduals lev = residuals_on_grid(params, t, rho, n);
            if (j == 0) {
                worst[l] = lev;
            } else {
                worst[l].sigma_interior = std::max(worst[l].sigma_interior, lev.sigma_interior);
                worst[l].pressure_interior =
                    std::max(worst[l].pressure_interior, lev.pressure_interior);
                worst[l].base_neumann = std::max(worst[l].base_neumann, lev.base_neumann);
                worst[l].top_dirichlet = std::max(worst[l].top_dirichlet, lev.top_dirichlet);
            }
            n = 2 * n - 1;
        }
    }
    out.residuals = assemble_report(worst);

    // (b) T-periodicity of field values at fixed (y-fraction, phase): compare
    // the phase-0 and phase-T snapshots, normalized by the forcing scale.
    const double t_first = sol.times.front(), t_last = sol.times.back();
    const double rho_first = sol.heights.front(), rho_last = sol.heights.back();
    const double scale = params.forcing.max_value();
    double periodicity = 0.0;
    for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double sig0 = nutrient_at(params, t_first, rho_first, frac * rho_first);
        const double sigT = nutrient_at(params, t_last, rho_last, frac * rho_last);
        const double p0 = pressure_at(params, t_first, rho_first, frac * rho_first);
        const double pT = pressure_at(params, t_last, rho_last, frac * rho_last);
        periodicity = std::max({periodicity, std::abs(sig0 - sigT) / scale,
                                std::abs(p0 - pT) / (params.mu * scale)});
    }
    out.periodicity_residual = periodicity;

    // (c) d(rho*)/dt from 5-point periodic central differences of the orbit
    // samples against the analytic -dp/dy at the boundary.
    const double dt = (t_last - t_first) / static_cast<double>(m);
    double worst_vel = 0.0, vel_scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double phi = params.forcing(sol.times[i]);
        vel_scale = std::max(vel_scale, params.mu * (phi * std::tanh(sol.heights[i]) +
                                                     params.sigma_tilde * sol.heights[i]));
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto at = [&](long k) {
            return sol.heights[static_cast<std::size_t>(((static_cast<long>(i) + k) % static_cast<long>(m) +
                                                         static_cast<long>(m)) % static_cast<long>(m))];
        };
        const double numeric =
            (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * dt);
        const double analytic =
            -pressure_gradient(params, sol.times[i], sol.heights[i], sol.heights[i]);
        worst_vel = std::max(worst_vel, std::abs(numeric - analytic));
    }
    out.velocity_residual = worst_vel / vel_scale;
    return out;
}

}  // namespace flatgrowth::oracle
