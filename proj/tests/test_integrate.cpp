#include <doctest.h>

#include <cmath>

#include "flatgrowth/integrate.hpp"
#include "flatgrowth/numerics.hpp"
#include "flatgrowth/oracle.hpp"
#include "flatgrowth/regime.hpp"
#include "test_util.hpp"

using namespace flatgrowth;
using testutil::rel_close;

namespace {

const IntegratorConfig kDefault{};

ModelParams cosine_case() { return ModelParams(1.0, 0.5, Forcing(1.0, 1.0, {0.5})); }

}  // namespace

TEST_SUITE_BEGIN("integrate");

TEST_CASE("stationary solution stays put") {
    const ModelParams p(1.0, 0.5, Forcing(1.0, 1.0));
    const double rho_eq = tanh_ratio_inverse(0.5);
    const auto marks = num::linspace(0.0, 7.0, 29);
    const Trajectory traj = integrate(p, rho_eq, 0.0, 7.0, kDefault, marks);
    REQUIRE(traj.ok());
    for (double h : traj.heights) CHECK(rel_close(h, rho_eq, 1e-9));
}

TEST_CASE("zero initial height takes the constant-zero path") {
    const ModelParams p = cosine_case();
    const Trajectory traj = integrate(p, 0.0, 0.0, 5.0, kDefault);
    REQUIRE(traj.ok());
    for (double h : traj.heights) CHECK(h == 0.0);
    CHECK_THROWS_AS(integrate(p, -0.1, 0.0, 1.0, kDefault), std::invalid_argument);
}

TEST_CASE("decaying case obeys the envelope and matches the RK4 oracle") {
    const ModelParams p(1.0, 2.0, Forcing(1.0, 1.0));
    const double marks[1] = {5.0};
    const Trajectory traj = integrate(p, 1.0, 0.0, 5.0, kDefault, marks);
    REQUIRE(traj.ok());
    const double rho5 = traj.heights.back();
    CHECK(rho5 >= std::exp(-10.0) * (1.0 - 1e-9));
    CHECK(rho5 <= std::exp(-5.0) * (1.0 + 1e-9));

    const Trajectory ref = oracle::reference_integrate(p, 1.0, 0.0, 5.0, 1e-5);
    CHECK(rel_close(rho5, ref.heights.back(), 1e-8));
}

TEST_CASE("positivity is structural") {
    const ModelParams p(1.5, 2.5, Forcing(1.0, 1.0, {0.4}));
    const Trajectory traj = integrate(p, 1e-3, 0.0, 40.0, kDefault);
    REQUIRE(traj.ok());
    for (double h : traj.heights) CHECK(h > 0.0);
}

TEST_CASE("time reversal recovers the initial height") {
    const ModelParams p = cosine_case();
    const double marks[1] = {3.0};
    const Trajectory fwd = integrate(p, 1.0, 0.0, 3.0, kDefault, marks);
    REQUIRE(fwd.ok());
    const double back_marks[1] = {0.0};
    const Trajectory bwd = integrate(p, fwd.heights.back(), 3.0, 0.0, kDefault, back_marks);
    REQUIRE(bwd.ok());
    CHECK(rel_close(bwd.heights.back(), 1.0, 1e-8));
}

TEST_CASE("comparison principle: trajectories never cross") {
    const ModelParams p = cosine_case();
    const auto marks = num::linspace(0.0, 5.0, 64);
    const Trajectory lo = integrate(p, 1.0, 0.0, 5.0, kDefault, marks);
    const Trajectory hi = integrate(p, 2.0, 0.0, 5.0, kDefault, marks);
    REQUIRE(lo.ok());
    REQUIRE(hi.ok());
    for (std::size_t i = 0; i < marks.size(); ++i) CHECK(lo.heights[i] < hi.heights[i]);
}

TEST_CASE("accepted steps stay inside the theorem envelope") {
    const ModelParams p(0.8, 0.9, Forcing(1.3, 1.2, {0.3}, {-0.2}));
    const Trajectory traj = integrate(p, 0.7, 0.0, 13.0, kDefault);  // records every step
    REQUIRE(traj.ok());
    CHECK(traj.accepted > 0);
    CHECK(traj.max_error_estimate <= 1.0);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto [lower, upper] = growth_envelope(p, 0.7, traj.times[i]);
        CHECK(traj.heights[i] >= lower * (1.0 - 1e-9));
        CHECK(traj.heights[i] <= upper * (1.0 + 1e-9));
    }
}

TEST_CASE("period shift equals composing the period map") {
    const ModelParams p = cosine_case();
    const double marks[1] = {2.0};
    const Trajectory two = integrate(p, 0.8, 0.0, 2.0, kDefault, marks);
    REQUIRE(two.ok());
    const double composed = poincare_map(p, poincare_map(p, 0.8, kDefault), kDefault);
    CHECK(rel_close(two.heights.back(), composed, 1e-10));
}

TEST_CASE("period map fixes the stationary point") {
    const ModelParams p(1.0, 0.5, Forcing(1.0, 1.0));
    const double rho_eq = tanh_ratio_inverse(0.5);
    CHECK(rel_close(poincare_map(p, rho_eq, kDefault), rho_eq, 1e-9));
}

TEST_CASE("period map is non-expanding in the critical regime") {
    const ModelParams p(1.0, 1.0, Forcing(1.0, 1.0, {0.5}));  // mean forcing == threshold
    for (double rho0 : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        CHECK(poincare_map(p, rho0, kDefault) <= rho0 * (1.0 + 1e-9));
    }
}

TEST_CASE("period map is strictly increasing") {
    const ModelParams p = cosine_case();
    double prev = poincare_map(p, 0.2, kDefault);
    for (int i = 1; i <= 12; ++i) {
        const double x = 0.2 + 0.3 * i;
        const double fx = poincare_map(p, x, kDefault);
        CHECK(fx > prev);
        prev = fx;
    }
}

TEST_CASE("period map matches a fine fixed-step RK4 oracle") {
    const ModelParams p = cosine_case();
    const double adaptive = poincare_map(p, 1.0, kDefault);
    const Trajectory ref = oracle::reference_integrate(p, 1.0, 0.0, 1.0, 1e-6);
    CHECK(rel_close(adaptive, ref.heights.back(), 1e-8));
}

TEST_CASE("dense output matches the oracle at interior samples") {
    const ModelParams p = cosine_case();
    const auto marks = num::linspace(0.0, 2.0, 33);
    const Trajectory traj = integrate(p, 0.6, 0.0, 2.0, kDefault, marks);
    REQUIRE(traj.ok());
    const std::vector<double> ref = oracle::reference_heights_at(p, 0.6, 0.0, marks, 2e-5);
    for (std::size_t i = 0; i < marks.size(); ++i)
        CHECK(rel_close(traj.heights[i], ref[i], 1e-8));
}

TEST_CASE("step budget exhaustion reports a partial trajectory") {
    const ModelParams p = cosine_case();
    IntegratorConfig cfg;
    cfg.max_steps = 5;
    const Trajectory traj = integrate(p, 1.0, 0.0, 100.0, cfg);
    CHECK(traj.status == IntegrationStatus::step_limit);
    CHECK(!traj.times.empty());
    CHECK(traj.times.back() < 100.0);
}

TEST_CASE("unreachable tolerance is reported distinctly") {
    const ModelParams p = cosine_case();
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-17;
    cfg.abs_tol = 1e-300;
    const Trajectory traj = integrate(p, 1.0, 0.0, 1.0, cfg);
    CHECK(traj.status == IntegrationStatus::tolerance_failure);
}

TEST_CASE("input validation") {
    const ModelParams p = cosine_case();
    IntegratorConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate(p, 1.0, 0.0, 1.0, bad), std::invalid_argument);
    const double outside[1] = {2.0};
    CHECK_THROWS_AS(integrate(p, 1.0, 0.0, 1.0, kDefault, outside), std::invalid_argument);
    const double unsorted[2] = {0.8, 0.2};
    CHECK_THROWS_AS(integrate(p, 1.0, 0.0, 1.0, kDefault, unsorted), std::invalid_argument);
    CHECK_THROWS_AS(poincare_map(p, 0.0, kDefault), std::invalid_argument);
}

TEST_SUITE_END();
