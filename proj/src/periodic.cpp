#include "flatgrowth/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "flatgrowth/numerics.hpp"

namespace flatgrowth {

namespace {

// Relative slack allowed on the proof-guaranteed sign conditions before the
// violation is treated as an internal-consistency failure (integrator or
// formula bug) rather than integration noise.
constexpr double kSignSlack = 1e-8;

PeriodicSolution solve_in(const ModelParams& params, double lo, double hi,
                          const IntegratorConfig& cfg, double tol, int orbit_samples) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_periodic: tol must be > 0");
    if (orbit_samples < 2)
        throw std::invalid_argument("find_periodic: orbit_samples must be >= 2");

    const auto residual = [&](double x) { return poincare_map(params, x, cfg) - x; };

    double x = 0.0, res = 0.0;
    bool found = false;
    const double r_lo = residual(lo);
    if (r_lo < -kSignSlack * lo)
        throw std::logic_error("find_periodic: period map drops below the bracket lower end");
    const double r_hi = residual(hi);
    if (r_hi > kSignSlack * hi)
        throw std::logic_error("find_periodic: period map exceeds the bracket upper end");
    if (std::abs(r_lo) < tol * lo) {
        x = lo;
        res = r_lo;
        found = true;
    } else if (std::abs(r_hi) < tol * hi) {
        x = hi;
        res = r_hi;
        found = true;
    }

    int iter = 0;
    for (; !found && iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double r_mid = residual(mid);
        if (std::abs(r_mid) < tol * mid) {
            x = mid;
            res = r_mid;
            found = true;
            break;
        }
        if (mid <= lo || mid >= hi) break;  // machine resolution
        if (r_mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (!found)
        throw std::runtime_error(
            "find_periodic: fixed point not converged within 200 bisection steps");

    PeriodicSolution sol;
    sol.rho_star_0 = x;
    sol.fixed_point_residual = std::abs(res);
    sol.times = num::linspace(0.0, params.forcing.period(), orbit_samples);
    const Trajectory orbit = integrate(params, x, 0.0, params.forcing.period(), cfg, sol.times);
    if (!orbit.ok()) throw std::runtime_error("find_periodic: orbit integration failed");
    sol.heights = orbit.heights;
    const auto [mn, mx] = orbit_extrema(sol);
    sol.rho_min = mn;
    sol.rho_max = mx;
    return sol;
}

}  // namespace

Bracket compute_bracket(const ModelParams& params) {
    const double phi_bar = params.forcing.mean();
    const double phi_max = params.forcing.max_value();
    if (!(params.sigma_tilde < phi_bar))
        throw std::domain_error(
            "compute_bracket: persistence regime required (sigma_tilde < mean forcing)");
    const double x2 = tanh_ratio_inverse(params.sigma_tilde / phi_max);
    const double x_bar = tanh_ratio_inverse(params.sigma_tilde / phi_bar) *
                         std::exp(-params.mu * (phi_max - params.sigma_tilde) *
                                  params.forcing.period());
    return {x_bar, x2};
}

PeriodicSolution find_periodic(const ModelParams& params, const IntegratorConfig& cfg,
                               double tol, int orbit_samples) {
    const Bracket b = compute_bracket(params);
    return solve_in(params, b.x_bar, b.x2, cfg, tol, orbit_samples);
}

PeriodicSolution find_periodic_in(const ModelParams& params, const Bracket& seed,
                                  const IntegratorConfig& cfg, double tol, int orbit_samples) {
    const Bracket outer = compute_bracket(params);
    double lo = std::clamp(seed.x_bar, outer.x_bar, outer.x2);
    double hi = std::clamp(seed.x2, outer.x_bar, outer.x2);
    if (!(lo < hi)) return solve_in(params, outer.x_bar, outer.x2, cfg, tol, orbit_samples);
    // Widen ends whose sign condition fails: the fixed point is then outside
    // the seed interval, and the outer bracket's conditions are guaranteed.
    const auto residual = [&](double x) { return poincare_map(params, x, cfg) - x; };
    if (residual(lo) < 0.0) lo = outer.x_bar;
    if (residual(hi) > 0.0) hi = outer.x2;
    return solve_in(params, lo, hi, cfg, tol, orbit_samples);
}

std::pair<double, double> orbit_extrema(const PeriodicSolution& sol) {
    const std::size_t n = sol.heights.size();
    if (n == 0) throw std::invalid_argument("orbit_extrema: empty orbit");
    if (n < 3) {
        const auto [mn, mx] = std::minmax_element(sol.heights.begin(), sol.heights.end());
        return {*mn, *mx};
    }
    // The last sample repeats the first (same phase); work on the unique part
    // with periodic wrap for the neighbour indices.
    const std::size_t m = n - 1;
    const double period = sol.times.back() - sol.times.front();
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (sol.heights[i] < sol.heights[imin]) imin = i;
        if (sol.heights[i] > sol.heights[imax]) imax = i;
    }
    const auto refine = [&](std::size_t i, bool maximize) {
        const std::size_t il = (i + m - 1) % m, ir = (i + 1) % m;
        double tl = sol.times[il], tr = sol.times[ir];
        if (il > i) tl -= period;
        if (ir < i) tr += period;
        const double sign = maximize ? -1.0 : 1.0;
        const num::MinResult v =
            num::quad_vertex(tl, sign * sol.heights[il], sol.times[i], sign * sol.heights[i],
                             tr, sign * sol.heights[ir]);
        return sign * v.value;
    };
    const double mn = std::min(refine(imin, false), sol.heights[imin]);
    const double mx = std::max(refine(imax, true), sol.heights[imax]);
    return {mn, mx};
}

RateEstimate convergence_rate(const ModelParams& params, const PeriodicSolution& sol,
                              double rho0) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("convergence_rate: rho0 must be > 0");
    if (!(sol.rho_star_0 > 0.0) || !(sol.rho_min > 0.0))
        throw std::invalid_argument("convergence_rate: invalid periodic solution");

    RateEstimate rate;
    rate.y0 = std::log(rho0 / sol.rho_star_0);
    rate.C = std::abs(1.0 - std::exp(rate.y0));

    const auto neg_deriv = [](double r) {
        const double v = -tanh_ratio_deriv(r);
        if (!(v > 0.0))
            throw std::logic_error("convergence_rate: -tanh_ratio_deriv not positive on scan");
        return v;
    };
    const double up = std::exp(std::max(rate.y0, 0.0));
    const double down = std::exp(std::min(rate.y0, 0.0));
    rate.M_min = num::scan_refine_min(neg_deriv, sol.rho_min, sol.rho_max * up, 1024).value;
    rate.M_bar_min = num::scan_refine_min(neg_deriv, sol.rho_min * down, sol.rho_max, 1024).value;

    const double phi_min = params.forcing.min_value();
    if (rate.y0 == 0.0) {
        rate.delta = std::numeric_limits<double>::infinity();
    } else if (rate.y0 > 0.0) {
        rate.delta = params.mu * phi_min * rate.M_min * sol.rho_min;
    } else {
        rate.delta = params.mu * phi_min * rate.M_bar_min * sol.rho_min * std::exp(rate.y0);
    }
    return rate;
}

double verify_periodicity(const PeriodicSolution& sol, const ModelParams& params,
                          const IntegratorConfig& cfg) {
    const double period = params.forcing.period();
    std::vector<double> marks(5);
    for (int k = 1; k <= 5; ++k) marks[k - 1] = k * period;
    const Trajectory traj = integrate(params, sol.rho_star_0, 0.0, 5.0 * period, cfg, marks);
    if (!traj.ok()) throw std::runtime_error("verify_periodicity: integration failed");
    double worst = 0.0;
    for (double h : traj.heights)
        worst = std::max(worst, std::abs(h - sol.rho_star_0) / sol.rho_star_0);
    return worst;
}

}  // namespace flatgrowth
