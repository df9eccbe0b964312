#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "flatgrowth/numerics.hpp"
#include "flatgrowth/periodic.hpp"
#include "test_util.hpp"

using namespace flatgrowth;
using testutil::rel_close;

namespace {

const IntegratorConfig kDefault{};
constexpr double kTol = 1e-10;

ModelParams stationary_case() { return ModelParams(1.0, 0.5, Forcing(1.0, 1.0)); }
ModelParams cosine_case() { return ModelParams(1.0, 0.5, Forcing(1.0, 1.0, {0.5})); }

}  // namespace

TEST_SUITE_BEGIN("periodic");

TEST_CASE("bracket for constant forcing") {
    const Bracket b = compute_bracket(stationary_case());
    CHECK(rel_close(b.x2, 1.9150080481545375, 1e-12));
    CHECK(rel_close(b.x_bar, 1.1615110948021741, 1e-12));
    CHECK(b.x_bar < b.x2);
}

TEST_CASE("bracket ratio approaches 1 near the critical threshold") {
    double prev_ratio = 0.0;
    for (double sigma : {0.6, 0.9, 0.99, 0.9999}) {
        const ModelParams p(1.0, sigma, Forcing(1.0, 1.0));
        const Bracket b = compute_bracket(p);
        const double ratio = b.x_bar / b.x2;
        // For constant forcing x_bar/x2 is exactly exp(-mu (phi - sigma) T).
        CHECK(rel_close(ratio, std::exp(-(1.0 - sigma)), 1e-12));
        CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
    }
}

TEST_CASE("bracket requires the persistence regime") {
    CHECK_THROWS_AS(compute_bracket(ModelParams(1.0, 1.0, Forcing(1.0, 1.0, {0.5}))),
                    std::domain_error);
    CHECK_THROWS_AS(compute_bracket(ModelParams(1.0, 1.2, Forcing(1.0, 1.0))),
                    std::domain_error);
}

TEST_CASE("stationary fixed point is found") {
    const ModelParams p = stationary_case();
    const PeriodicSolution sol = find_periodic(p, kDefault, kTol);
    CHECK(rel_close(sol.rho_star_0, 1.9150080481545375, 1e-9));
    CHECK(sol.fixed_point_residual < kTol * sol.rho_star_0);
    for (double h : sol.heights) CHECK(rel_close(h, sol.rho_star_0, 1e-9));
    CHECK(rel_close(sol.rho_min, sol.rho_star_0, 1e-9));
    CHECK(rel_close(sol.rho_max, sol.rho_star_0, 1e-9));
    CHECK(sol.times.size() == 513);
}

TEST_CASE("cosine forcing yields a genuine cycle inside the bracket") {
    const ModelParams p = cosine_case();
    const Bracket b = compute_bracket(p);
    const PeriodicSolution sol = find_periodic(p, kDefault, kTol);
    CHECK(sol.rho_min < sol.rho_max);
    CHECK(sol.rho_star_0 >= b.x_bar);
    CHECK(sol.rho_star_0 <= b.x2);
    CHECK(rel_close(sol.heights.front(), sol.heights.back(), 10.0 * kTol));
    CHECK(sol.rho_min <= sol.rho_star_0);
    CHECK(sol.rho_max >= sol.rho_star_0);

    // Shooting oracle: iterating the period map from x2 descends monotonically
    // onto the fixed point.
    double x = b.x2;
    for (int i = 0; i < 80; ++i) {
        const double next = poincare_map(p, x, kDefault);
        CHECK(next <= x * (1.0 + 1e-9));
        x = next;
    }
    CHECK(rel_close(x, sol.rho_star_0, 10.0 * kTol));
}

TEST_CASE("fixed points from random sub-brackets agree") {
    const ModelParams p = cosine_case();
    const Bracket b = compute_bracket(p);
    const PeriodicSolution ref = find_periodic(p, kDefault, kTol);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        double a = b.x_bar + (b.x2 - b.x_bar) * u(rng);
        double c = b.x_bar + (b.x2 - b.x_bar) * u(rng);
        if (a > c) std::swap(a, c);
        const PeriodicSolution sol = find_periodic_in(p, {a, c}, kDefault, kTol);
        CHECK(std::abs(sol.rho_star_0 - ref.rho_star_0) <= 10.0 * kTol * ref.rho_star_0);
    }
}

TEST_CASE("bracket self-map and monotone period map") {
    const ModelParams p = cosine_case();
    const Bracket b = compute_bracket(p);
    double prev = -1.0;
    for (int j = 0; j < 32; ++j) {
        const double x = b.x_bar + (b.x2 - b.x_bar) * j / 31.0;
        const double fx = poincare_map(p, x, kDefault);
        CHECK(fx >= b.x_bar - 1e-8 * b.x2);
        CHECK(fx <= b.x2 + 1e-8 * b.x2);
        CHECK(fx > prev);
        prev = fx;
    }
}

TEST_CASE("orbit extrema against a dense-sampling oracle") {
    const ModelParams p = cosine_case();
    const PeriodicSolution sol = find_periodic(p, kDefault, kTol);

    const auto marks = num::linspace(0.0, 1.0, 100001);
    const Trajectory fine = integrate(p, sol.rho_star_0, 0.0, 1.0, kDefault, marks);
    REQUIRE(fine.ok());
    double lo = fine.heights[0], hi = fine.heights[0];
    for (double h : fine.heights) {
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    CHECK(rel_close(sol.rho_min, lo, 1e-7));
    CHECK(rel_close(sol.rho_max, hi, 1e-7));
    CHECK(sol.rho_min > 0.0);
}

TEST_CASE("orbit extrema of degenerate orbits") {
    PeriodicSolution one;
    one.times = {0.0};
    one.heights = {2.0};
    auto [mn1, mx1] = orbit_extrema(one);
    CHECK(mn1 == 2.0);
    CHECK(mx1 == 2.0);

    PeriodicSolution empty;
    CHECK_THROWS_AS(orbit_extrema(empty), std::invalid_argument);
}

TEST_CASE("convergence rate on the orbit itself") {
    const ModelParams p = stationary_case();
    const PeriodicSolution sol = find_periodic(p, kDefault, kTol);
    const RateEstimate rate = convergence_rate(p, sol, sol.rho_star_0);
    CHECK(rate.C == 0.0);
    CHECK(std::isinf(rate.delta));
    CHECK(rate.y0 == 0.0);
}

TEST_CASE("convergence rate for a doubled start") {
    const ModelParams p = stationary_case();
    const PeriodicSolution sol = find_periodic(p, kDefault, kTol);
    const RateEstimate rate = convergence_rate(p, sol, 2.0 * sol.rho_star_0);
    CHECK(rel_close(rate.y0, std::log(2.0), 1e-9));
    CHECK(rate.C == std::abs(1.0 - std::exp(rate.y0)));
    CHECK(rel_close(rate.C, 1.0, 1e-9));
    // -tanh_ratio_deriv is decreasing on [x*, 2x*], so the minimum sits at the
    // right end; delta = phi_min * rho_min * (-tanh_ratio_deriv(2 x*)).
    CHECK(rel_close(rate.M_min, 0.067614892472905429, 1e-9));
    CHECK(rel_close(rate.delta, 0.12948306326071755, 1e-9));
    CHECK(rate.M_min > 0.0);
    CHECK(rate.M_bar_min > 0.0);

    // delta is exactly linear in mu: same orbit, doubled aggressiveness.
    const ModelParams doubled(2.0 * p.mu, p.sigma_tilde, p.forcing);
    const RateEstimate rate2 = convergence_rate(doubled, sol, 2.0 * sol.rho_star_0);
    CHECK(rate2.delta == 2.0 * rate.delta);
}

TEST_CASE("deviation keeps its sign and shrinks monotonically") {
    const ModelParams p = cosine_case();
    const PeriodicSolution sol = find_periodic(p, kDefault, kTol);
    const double noise_floor = 10.0 * (kTol + kDefault.rel_tol);
    for (const double c : {0.5, 2.0}) {
        std::vector<double> marks(21);
        for (int k = 0; k <= 20; ++k) marks[k] = static_cast<double>(k);
        const Trajectory traj =
            integrate(p, c * sol.rho_star_0, 0.0, 20.0, kDefault, marks);
        REQUIRE(traj.ok());
        const RateEstimate rate = convergence_rate(p, sol, c * sol.rho_star_0);
        double prev_abs = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < marks.size(); ++k) {
            const double y = std::log(traj.heights[k] / sol.rho_star_0);
            const double dev = std::abs(std::exp(y) - 1.0);
            CHECK(dev <= rate.C * std::exp(-rate.delta * marks[k]) * (1.0 + 1e-9) + 1e-15);
            if (std::abs(y) > noise_floor) {
                CHECK((y > 0.0) == (c > 1.0));
                CHECK(std::abs(y) <= prev_abs * (1.0 + 1e-9));
                prev_abs = std::abs(y);
            }
        }
    }
}

TEST_CASE("periodicity verification") {
    const ModelParams stat = stationary_case();
    const PeriodicSolution stat_sol = find_periodic(stat, kDefault, kTol);
    CHECK(verify_periodicity(stat_sol, stat, kDefault) < 1e-9);

    const ModelParams p = cosine_case();
    const PeriodicSolution sol = find_periodic(p, kDefault, kTol);
    CHECK(verify_periodicity(sol, p, kDefault) < 10.0 * kTol);

    PeriodicSolution perturbed = sol;
    perturbed.rho_star_0 *= 1.01;
    CHECK(verify_periodicity(perturbed, p, kDefault) >
          verify_periodicity(sol, p, kDefault));
}

TEST_SUITE_END();
