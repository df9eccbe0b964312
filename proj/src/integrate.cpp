#include "flatgrowth/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flatgrowth {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th- and embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights for the 4th-order continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseCoeffs {
    double r1, r2, r3, r4, r5;

    double eval(double theta) const {
        const double theta1 = 1.0 - theta;
        return r1 + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
    }
};

// d/dt of ln(rho): mu * (phi(t) * tanh_ratio(rho) - sigma_tilde).
struct LogRhs {
    const ModelParams& params;

    double operator()(double t, double u) const {
        return params.mu * (params.forcing(t) * tanh_ratio(std::exp(u)) - params.sigma_tilde);
    }
};

// Tolerance scale in log space: an absolute u tolerance is a relative rho
// tolerance, and the absolute rho tolerance contributes abs_tol / rho.
double tolerance_scale(const IntegratorConfig& cfg, double u_ref) {
    if (-u_ref > 700.0) return std::numeric_limits<double>::infinity();
    return cfg.rel_tol + cfg.abs_tol * std::exp(-u_ref);
}

double initial_step(const LogRhs& rhs, const IntegratorConfig& cfg, double t0, double u0,
                    double f0, double dir, double h_max) {
    const double sc = tolerance_scale(cfg, u0);
    const double d0 = std::abs(u0) / sc;
    const double d1v = std::abs(f0) / sc;
    double h0 = (d0 < 1e-5 || d1v < 1e-5) ? 1e-6 : 0.01 * d0 / d1v;
    h0 = std::min(h0, h_max);
    const double u1 = u0 + dir * h0 * f0;
    const double f1 = rhs(t0 + dir * h0, u1);
    const double d2 = std::abs(f1 - f0) / sc / h0;
    double h1;
    if (std::max(d1v, d2) <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / std::max(d1v, d2), 0.2);
    }
    return std::min({100.0 * h0, h1, h_max});
}

}  // namespace

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrator: rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("integrator: abs_tol must be > 0");
    if (max_step < 0.0) throw std::invalid_argument("integrator: max_step must be >= 0");
    if (max_steps < 1) throw std::invalid_argument("integrator: max_steps must be >= 1");
}

Trajectory integrate(const ModelParams& params, double rho0, double t0, double t1,
                     const IntegratorConfig& cfg, std::span<const double> sample_times) {
    cfg.validate();
    if (rho0 < 0.0 || !std::isfinite(rho0))
        throw std::invalid_argument("integrate: rho0 must be >= 0");
    if (!std::isfinite(t0) || !std::isfinite(t1))
        throw std::invalid_argument("integrate: time span must be finite");

    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (sample_times[i] < lo || sample_times[i] > hi)
            throw std::invalid_argument("integrate: sample time outside the integration span");
        if (i > 0 && (sample_times[i] - sample_times[i - 1]) * dir < 0.0)
            throw std::invalid_argument(
                "integrate: sample times must be sorted in the direction of integration");
    }

    Trajectory traj;
    const bool record_steps = sample_times.empty();

    // The zero solution never leaves zero; keep it out of log space.
    if (rho0 == 0.0) {
        if (record_steps) {
            traj.times = {t0, t1};
            traj.heights = {0.0, 0.0};
        } else {
            traj.times.assign(sample_times.begin(), sample_times.end());
            traj.heights.assign(sample_times.size(), 0.0);
        }
        return traj;
    }

    const LogRhs rhs{params};
    const double h_max_cfg =
        cfg.max_step > 0.0 ? cfg.max_step : params.forcing.period() / 16.0;

    double t = t0;
    double u = std::log(rho0);
    std::size_t next_sample = 0;

    const auto emit = [&](double time, double uval) {
        traj.times.push_back(time);
        traj.heights.push_back(std::exp(uval));
    };

    if (record_steps) {
        emit(t0, u);
    } else {
        while (next_sample < sample_times.size() &&
               (sample_times[next_sample] - t0) * dir <= 0.0) {
            emit(sample_times[next_sample], u);
            ++next_sample;
        }
    }
    if (t1 == t0) return traj;

    double f0 = rhs(t, u);
    double h = initial_step(rhs, cfg, t, u, f0, dir, std::min(h_max_cfg, hi - lo));

    constexpr double safety = 0.9, beta = 0.04, expo1 = 0.2 - 0.75 * beta;
    constexpr double fac_min = 0.2, fac_max = 10.0;
    double facold = 1e-4;
    bool last_rejected = false;

    while ((t - t1) * dir < 0.0) {
        if (traj.accepted + traj.rejected >= cfg.max_steps) {
            traj.status = IntegrationStatus::step_limit;
            if (record_steps) break;
            emit(t, u);  // partial progress marker
            break;
        }
        bool hit_end = false;
        if ((t + dir * h - t1) * dir >= 0.0) {
            h = (t1 - t) * dir;
            hit_end = true;
        }
        const double h_signed = dir * h;

        const double k1 = f0;
        const double k2 = rhs(t + c2 * h_signed, u + h_signed * (a21 * k1));
        const double k3 = rhs(t + c3 * h_signed, u + h_signed * (a31 * k1 + a32 * k2));
        const double k4 = rhs(t + c4 * h_signed, u + h_signed * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = rhs(t + c5 * h_signed,
                              u + h_signed * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = rhs(
            t + h_signed, u + h_signed * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double u_new =
            u + h_signed * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double t_new = hit_end ? t1 : t + h_signed;
        const double k7 = rhs(t_new, u_new);

        const double err_raw =
            h * std::abs(e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double sc = tolerance_scale(cfg, std::max(u, u_new));
        const double err = err_raw / sc;

        if (err < 1.0) {
            ++traj.accepted;
            traj.max_error_estimate = std::max(traj.max_error_estimate, err);

            if (!record_steps && next_sample < sample_times.size()) {
                const double udiff = u_new - u;
                const double bspl = h_signed * k1 - udiff;
                const DenseCoeffs dense{
                    u, udiff, bspl, udiff - h_signed * k7 - bspl,
                    h_signed * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7)};
                while (next_sample < sample_times.size() &&
                       (sample_times[next_sample] - t_new) * dir <= 0.0) {
                    const double s = sample_times[next_sample];
                    const double theta = (s - t) / (t_new - t);
                    emit(s, dense.eval(theta));
                    ++next_sample;
                }
            }

            t = t_new;
            u = u_new;
            f0 = k7;  // first-same-as-last
            if (record_steps) emit(t, u);

            const double fac11 = std::pow(std::max(err, 1e-30), expo1);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / fac_max, std::min(1.0 / fac_min, fac / safety));
            double h_new = h / fac;
            if (last_rejected) h_new = std::min(h_new, h);
            h = std::min(h_new, h_max_cfg);
            facold = std::max(err, 1e-4);
            last_rejected = false;
        } else {
            ++traj.rejected;
            last_rejected = true;
            const double fac11 = std::pow(err, expo1);
            h = h / std::min(1.0 / fac_min, fac11 / safety);
            const double h_floor =
                16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), std::abs(t1));
            if (h <= h_floor) {
                traj.status = IntegrationStatus::tolerance_failure;
                if (!record_steps) emit(t, u);
                break;
            }
        }
    }
    return traj;
}

double poincare_map(const ModelParams& params, double rho0, const IntegratorConfig& cfg) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("poincare_map: rho0 must be > 0");
    const double period = params.forcing.period();
    const double sample[1] = {period};
    const Trajectory traj = integrate(params, rho0, 0.0, period, cfg, sample);
    if (!traj.ok())
        throw std::runtime_error(traj.status == IntegrationStatus::step_limit
                                     ? "poincare_map: step budget exhausted"
                                     : "poincare_map: integration tolerance failure");
    return traj.heights.back();
}

}  // namespace flatgrowth
