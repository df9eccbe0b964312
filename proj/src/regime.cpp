#include "flatgrowth/regime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flatgrowth {

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::extinction_strict: return "extinction-strict";
        case Regime::extinction_critical: return "extinction-critical";
        case Regime::persistence: return "persistence";
    }
    return "unknown";
}

RegimeReport classify(const ModelParams& params, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("classify: tol must be >= 0");
    RegimeReport report;
    report.phi_bar = params.forcing.mean();
    report.phi_star = params.forcing.max_value();
    report.phi_lower = params.forcing.min_value();
    report.sigma_tilde = params.sigma_tilde;
    report.margin = report.phi_bar - params.sigma_tilde;
    if (std::abs(report.margin) <= tol * report.phi_bar)
        report.regime = Regime::extinction_critical;
    else if (report.margin > 0.0)
        report.regime = Regime::persistence;
    else
        report.regime = Regime::extinction_strict;
    return report;
}

ExtinctionCertificate extinction_run(const ModelParams& params, double rho0, long n_periods,
                                     const IntegratorConfig& cfg, double threshold_rel) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("extinction_run: rho0 must be > 0");
    if (n_periods < 1) throw std::invalid_argument("extinction_run: n_periods must be >= 1");
    const RegimeReport report = classify(params);
    if (report.regime == Regime::persistence)
        throw std::domain_error("extinction_run: extinction regime required (sigma_tilde >= mean forcing)");

    constexpr int kPhases = 8;
    const double period = params.forcing.period();
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(n_periods) * kPhases + 1);
    for (long n = 0; n < n_periods; ++n)
        for (int j = 0; j < kPhases; ++j)
            samples.push_back((static_cast<double>(n) + static_cast<double>(j) / kPhases) * period);
    samples.push_back(static_cast<double>(n_periods) * period);

    const Trajectory traj = integrate(params, rho0, 0.0, n_periods * period, cfg, samples);
    if (!traj.ok()) throw std::runtime_error("extinction_run: integration failed");

    ExtinctionCertificate cert;
    cert.regime = report.regime;
    cert.rho0 = rho0;
    cert.threshold = threshold_rel * rho0;
    cert.periods.reserve(n_periods);

    const bool strict = report.regime == Regime::extinction_strict;
    const double mu = params.mu;
    const double inter_period_factor =
        std::exp(mu * (report.phi_star - params.sigma_tilde) * period);
    constexpr double slack = 1e-9;

    for (long n = 0; n < n_periods; ++n) {
        ExtinctionPeriod rec;
        rec.n = n;
        rec.rho_start = traj.heights[static_cast<std::size_t>(n) * kPhases];
        rec.rho_peak = rec.rho_start;
        for (int j = 1; j < kPhases; ++j)
            rec.rho_peak = std::max(rec.rho_peak,
                                    traj.heights[static_cast<std::size_t>(n) * kPhases + j]);
        const double rho_next = traj.heights[static_cast<std::size_t>(n + 1) * kPhases];
        rec.rho_peak = std::max(rec.rho_peak, rho_next);

        if (strict) {
            rec.ceiling = rho0 * std::exp(mu * period * report.phi_bar) *
                          std::exp(mu * static_cast<double>(n) * period * report.margin);
            if (rec.rho_peak > rec.ceiling * (1.0 + slack))
                throw std::logic_error("extinction_run: sample exceeded the strict-regime ceiling");
        } else {
            rec.ceiling = std::numeric_limits<double>::infinity();
            if (rho_next > rec.rho_start * (1.0 + slack))
                throw std::logic_error(
                    "extinction_run: period-monotonicity violated in the critical regime");
            if (rec.rho_peak > rec.rho_start * inter_period_factor * (1.0 + slack))
                throw std::logic_error(
                    "extinction_run: inter-period growth bound violated in the critical regime");
        }

        if (cert.first_below < 0 && rec.rho_start < cert.threshold) cert.first_below = n;
        cert.periods.push_back(rec);
    }
    // The trailing sample rho(n_periods * T) counts toward the threshold too.
    if (cert.first_below < 0 && traj.heights.back() < cert.threshold)
        cert.first_below = n_periods;
    return cert;
}

std::pair<double, double> growth_envelope(const ModelParams& params, double rho0, double t) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("growth_envelope: rho0 must be > 0");
    if (t < 0.0) throw std::invalid_argument("growth_envelope: t must be >= 0");
    const double lower = rho0 * std::exp(-params.mu * params.sigma_tilde * t);
    const double upper =
        rho0 * std::exp(params.mu * (params.forcing.max_value() - params.sigma_tilde) * t);
    return {lower, upper};
}

}  // namespace flatgrowth
