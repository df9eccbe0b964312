#pragma once

#include <span>
#include <vector>

#include "flatgrowth/model.hpp"

namespace flatgrowth {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Largest step the controller may take; 0 selects period/16.
    double max_step = 0.0;
    long max_steps = 10'000'000;

    void validate() const;
};

enum class IntegrationStatus {
    ok,
    /// Step budget exhausted; the trajectory holds the samples reached so far.
    step_limit,
    /// Step size underflowed while the error estimate still exceeded the
    /// tolerance; the trajectory is partial.
    tolerance_failure,
};

/// Time-stamped samples of the boundary height plus integrator statistics.
/// Heights are exp(u) of the log-space state, so they are positive whenever
/// the initial height is positive; the zero solution is represented exactly.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> heights;
    long accepted = 0;
    long rejected = 0;
    /// Largest tolerance-normalized error estimate among accepted steps (<= 1).
    double max_error_estimate = 0.0;
    IntegrationStatus status = IntegrationStatus::ok;

    bool ok() const { return status == IntegrationStatus::ok; }
};

/// Integrate the height equation from (t0, rho0) to t1 with an adaptive
/// Dormand-Prince 5(4) pair applied to u = ln(rho). When `sample_times` is
/// empty the trajectory records every accepted step; otherwise it records
/// exactly the requested times via 4th-order dense output. Sample times must
/// be sorted in the direction of integration and lie within [t0, t1].
/// rho0 == 0 takes a dedicated constant-zero path; t1 < t0 integrates
/// backwards.
Trajectory integrate(const ModelParams& params, double rho0, double t0, double t1,
                     const IntegratorConfig& cfg, std::span<const double> sample_times = {});

/// Height after one forcing period started from phase 0: rho(T) as a function
/// of rho(0). Strictly increasing and continuous in rho0.
double poincare_map(const ModelParams& params, double rho0, const IntegratorConfig& cfg);

}  // namespace flatgrowth
