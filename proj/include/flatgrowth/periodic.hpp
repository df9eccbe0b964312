#pragma once

#include <vector>

#include "flatgrowth/integrate.hpp"

namespace flatgrowth {

/// Invariant interval [x_bar, x2] for the period map in the persistence
/// regime: the map sends it into itself, so the fixed point lies inside.
struct Bracket {
    double x_bar;
    double x2;
};

/// The positive periodic orbit: its initial height (the period-map fixed
/// point), a uniformly sampled cycle over [0, T], the orbit extrema, and the
/// fixed-point residual |F(rho*_0) - rho*_0|.
struct PeriodicSolution {
    double rho_star_0 = 0.0;
    std::vector<double> times;
    std::vector<double> heights;
    double rho_min = 0.0;
    double rho_max = 0.0;
    double fixed_point_residual = 0.0;
};

/// Per-trajectory exponential-decay parameters for the approach to the
/// periodic orbit: |rho(t)/rho*(t) - 1| <= C * exp(-delta * t).
struct RateEstimate {
    double delta = 0.0;
    double C = 0.0;
    double M_min = 0.0;      // min of -tanh_ratio_deriv over [rho_min, rho_max*e^{max(y0,0)}]
    double M_bar_min = 0.0;  // min of -tanh_ratio_deriv over [rho_min*e^{min(y0,0)}, rho_max]
    double y0 = 0.0;         // ln(rho0 / rho*(0))
};

/// x2 = tanh_ratio_inverse(sigma_tilde / phi_max) and
/// x_bar = tanh_ratio_inverse(sigma_tilde / phi_mean) * exp(-mu (phi_max -
/// sigma_tilde) T). Requires the persistence regime (sigma_tilde < mean
/// forcing); throws std::domain_error otherwise.
Bracket compute_bracket(const ModelParams& params);

/// Find the unique fixed point of the period map by bisection on
/// F(x) - x over [x_bar, x2] (the bracket's sign conditions are guaranteed by
/// the persistence regime), then sample the orbit at `orbit_samples` uniform
/// times over [0, T]. The fixed point satisfies |F(x) - x| < tol * x.
/// Throws std::logic_error if the bracket sign conditions fail beyond
/// integration tolerance and std::runtime_error if 200 bisection steps do not
/// reach the residual tolerance.
PeriodicSolution find_periodic(const ModelParams& params, const IntegratorConfig& cfg,
                               double tol = 1e-10, int orbit_samples = 513);

/// Same, but start the bisection from a caller-supplied sub-bracket. Ends
/// whose sign condition fails are widened to the guaranteed bracket, so any
/// sub-interval of [x_bar, x2] converges to the same fixed point.
PeriodicSolution find_periodic_in(const ModelParams& params, const Bracket& seed,
                                  const IntegratorConfig& cfg, double tol = 1e-10,
                                  int orbit_samples = 513);

/// Min/max over the sampled orbit, refined by a quadratic fit through the
/// best sample and its (periodically wrapped) neighbours.
std::pair<double, double> orbit_extrema(const PeriodicSolution& sol);

/// Decay rate delta and constant C for the trajectory started at rho0:
/// y0 = ln(rho0/rho*(0)); for y0 > 0, delta = mu * phi_min * M_min * rho_min;
/// for y0 < 0, delta = mu * phi_min * M_bar_min * rho_min * e^{y0}; y0 == 0
/// yields C = 0 with delta = +infinity. The M values minimize
/// -tanh_ratio_deriv over the stated closed intervals (1024-point scan plus
/// golden-section refinement; strict positivity of -tanh_ratio_deriv is
/// asserted at every scan point).
RateEstimate convergence_rate(const ModelParams& params, const PeriodicSolution& sol,
                              double rho0);

/// Re-integrate from rho*_0 over k = 1..5 periods and return
/// max_k |rho(kT) - rho*_0| / rho*_0.
double verify_periodicity(const PeriodicSolution& sol, const ModelParams& params,
                          const IntegratorConfig& cfg);

}  // namespace flatgrowth
