#include <doctest.h>

#include <cmath>
#include <random>

#include "flatgrowth/oracle.hpp"
#include "flatgrowth/periodic.hpp"
#include "flatgrowth/regime.hpp"
#include "test_util.hpp"

using namespace flatgrowth;
using testutil::rel_close;

namespace {
const IntegratorConfig kDefault{};
}

TEST_SUITE_BEGIN("regime");

TEST_CASE("classification uses the mean, not the extremes") {
    // Mean of the sine term is zero: exactly critical.
    const RegimeReport critical =
        classify(ModelParams(1.0, 1.0, Forcing(1.0, 1.0, {}, {0.5})));
    CHECK(critical.regime == Regime::extinction_critical);
    CHECK(critical.margin == 0.0);

    const RegimeReport persist = classify(ModelParams(1.0, 0.5, Forcing(1.0, 1.0)));
    CHECK(persist.regime == Regime::persistence);
    CHECK(persist.margin == 0.5);

    // The max forcing 1.9 exceeds the threshold, but the mean 1.0 does not.
    const RegimeReport strict =
        classify(ModelParams(1.0, 1.2, Forcing(1.0, 1.0, {0.9})));
    CHECK(strict.regime == Regime::extinction_strict);
    CHECK(strict.phi_star > strict.sigma_tilde);
    CHECK(strict.margin < 0.0);
}

TEST_CASE("strict extinction stays under its ceiling") {
    const ModelParams p(1.0, 1.5, Forcing(1.0, 1.0));
    const ExtinctionCertificate cert = extinction_run(p, 1.0, 50, kDefault);
    CHECK(cert.regime == Regime::extinction_strict);
    REQUIRE(cert.periods.size() == 50);
    for (const ExtinctionPeriod& rec : cert.periods) {
        CHECK(rec.rho_peak <= rec.ceiling * (1.0 + 1e-9));
        CHECK(rec.rho_start > 0.0);
    }
    // Ceiling arithmetic at n = 20: rho(20) <= e^1 e^{-10}.
    CHECK(cert.periods[20].rho_start <= std::exp(1.0) * std::exp(-10.0));

    // Exact value of rho(20) from the fixed-step RK4 oracle.
    const Trajectory ref = oracle::reference_integrate(p, 1.0, 0.0, 20.0, 1e-4);
    CHECK(rel_close(cert.periods[20].rho_start, ref.heights.back(), 1e-7));

    // Threshold crossing: rho decays like e^{-0.5 n}, so 1e-8 is crossed
    // around n = 37.
    CHECK(cert.first_below >= 30);
    CHECK(cert.first_below <= 45);
}

TEST_CASE("critical extinction decays monotonically without a ceiling") {
    const ModelParams p(1.0, 1.0, Forcing(1.0, 1.0, {}, {0.5}));
    const ExtinctionCertificate cert = extinction_run(p, 1.0, 200, kDefault);
    CHECK(cert.regime == Regime::extinction_critical);
    for (std::size_t n = 1; n < cert.periods.size(); ++n)
        CHECK(cert.periods[n].rho_start <= cert.periods[n - 1].rho_start * (1.0 + 1e-9));
    CHECK(std::isinf(cert.periods[0].ceiling));
    // Slow (sub-exponential) decay: clearly below the start but nowhere near
    // the 1e-8 threshold after 200 periods.
    CHECK(cert.periods.back().rho_start < 0.2);
    CHECK(cert.first_below == -1);
}

TEST_CASE("extinction run rejects the persistence regime") {
    const ModelParams p(1.0, 0.5, Forcing(1.0, 1.0));
    CHECK_THROWS_AS(extinction_run(p, 1.0, 10, kDefault), std::domain_error);
    const ModelParams strict(1.0, 1.5, Forcing(1.0, 1.0));
    CHECK_THROWS_AS(extinction_run(strict, 0.0, 10, kDefault), std::invalid_argument);
}

TEST_CASE("ceiling tightness: the log-slope never beats the margin") {
    const ModelParams p(1.3, 1.4, Forcing(1.0, 1.0, {0.3}));
    const RegimeReport report = classify(p);
    const ExtinctionCertificate cert = extinction_run(p, 2.0, 30, kDefault);
    const double bound = p.mu * p.forcing.period() * report.margin;  // margin < 0
    for (std::size_t n = 1; n < cert.periods.size(); ++n) {
        const double slope =
            std::log(cert.periods[n].rho_start) - std::log(cert.periods[n - 1].rho_start);
        CHECK(slope <= bound + 1e-6);
    }
}

TEST_CASE("growth envelope formula") {
    const ModelParams p(1.0, 0.5, Forcing(1.0, 1.0, {0.5}));
    const auto [lo0, hi0] = growth_envelope(p, 2.0, 0.0);
    CHECK(lo0 == 2.0);
    CHECK(hi0 == 2.0);
    const auto [lo, hi] = growth_envelope(p, 1.0, 2.0);
    CHECK(rel_close(lo, std::exp(-1.0), 1e-14));
    CHECK(rel_close(hi, std::exp(2.0), 1e-14));
    CHECK_THROWS_AS(growth_envelope(p, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("envelope contains the trajectory for random draws") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d = 0; d < 10; ++d) {
        const double mean = 0.8 + 0.6 * u(rng);
        const double amp = 0.5 * mean * u(rng);
        const ModelParams p(0.4 + 1.4 * u(rng), mean * (0.4 + u(rng)),
                            Forcing(0.6 + u(rng), mean, {amp}, {-0.4 * amp}));
        const double rho0 = 0.1 + 3.0 * u(rng);
        const double span = 8.0 * p.forcing.period();
        const Trajectory traj = integrate(p, rho0, 0.0, span, kDefault);
        REQUIRE(traj.ok());
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto [lo, hi] = growth_envelope(p, rho0, traj.times[i]);
            CHECK(traj.heights[i] >= lo * (1.0 - 1e-9));
            CHECK(traj.heights[i] <= hi * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("threshold dichotomy on a small grid") {
    for (double amp : {0.0, 0.4, 0.8}) {
        for (double sigma : {0.4, 1.0, 1.5}) {
            const ModelParams p(1.0, sigma, Forcing(1.0, 1.0, {amp}));
            const RegimeReport report = classify(p);
            if (report.regime == Regime::persistence) {
                const PeriodicSolution sol = find_periodic(p, kDefault, 1e-10);
                CHECK(sol.fixed_point_residual < 1e-10 * sol.rho_star_0);
            } else if (report.regime == Regime::extinction_strict) {
                const double horizon =
                    std::ceil((std::log(1e-8) - p.mu * report.phi_bar) /
                              (p.mu * report.margin)) + 2.0;
                const ExtinctionCertificate cert =
                    extinction_run(p, 1.0, static_cast<long>(horizon), kDefault);
                CHECK(cert.first_below >= 0);
            } else {
                const ExtinctionCertificate cert = extinction_run(p, 1.0, 300, kDefault);
                for (std::size_t n = 1; n < cert.periods.size(); ++n)
                    CHECK(cert.periods[n].rho_start <=
                          cert.periods[n - 1].rho_start * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("persistence keeps trajectories away from zero") {
    const ModelParams p(1.0, 0.5, Forcing(1.0, 1.0, {0.5}));
    const Bracket b = compute_bracket(p);
    std::vector<double> marks(61);
    for (int k = 0; k <= 60; ++k) marks[k] = static_cast<double>(k);
    const Trajectory traj = integrate(p, 1e-3, 0.0, 60.0, kDefault, marks);
    REQUIRE(traj.ok());
    for (int k = 40; k <= 60; ++k) CHECK(traj.heights[k] >= b.x_bar * (1.0 - 1e-6));
}

TEST_SUITE_END();
