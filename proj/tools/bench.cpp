// Benchmark comparing the serial batch kernels against the OpenMP ones on a
// grid of independent integrations (the workload behind the verify battery).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "flatgrowth/batch.hpp"

using namespace flatgrowth;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<batch::IntegrationCase> make_cases(int n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<batch::IntegrationCase> cases;
    cases.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double mean = 0.8 + 0.7 * unit(rng);
        const double amp = 0.4 * mean * unit(rng);
        ModelParams params(0.3 + 1.7 * unit(rng), mean * (0.4 + 1.2 * unit(rng)),
                           Forcing(0.5 + 1.5 * unit(rng), mean, {amp}, {-0.5 * amp}));
        const double period = params.forcing.period();
        cases.push_back({std::move(params), 0.2 + 2.8 * unit(rng), 0.0, period});
    }
    return cases;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    const int n_cases = argc > 1 ? std::atoi(argv[1]) : 64;
    const long rk4_steps = argc > 2 ? std::atol(argv[2]) : 200'000;
    const auto cases = make_cases(n_cases);
    IntegratorConfig cfg;

    std::printf("batch kernels: %d cases, %d worker thread(s)\n", n_cases,
                batch::worker_count());

    auto t0 = std::chrono::steady_clock::now();
    const auto adaptive_serial = batch::final_heights_serial(cases, cfg);
    const double t_adaptive_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto adaptive_parallel = batch::final_heights(cases, cfg);
    const double t_adaptive_parallel = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto rk4_serial = batch::reference_final_heights_serial(cases, rk4_steps);
    const double t_rk4_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto rk4_parallel = batch::reference_final_heights(cases, rk4_steps);
    const double t_rk4_parallel = seconds_since(t0);

    std::printf("adaptive   serial %8.3f s   parallel %8.3f s   speedup %.2fx\n",
                t_adaptive_serial, t_adaptive_parallel,
                t_adaptive_serial / t_adaptive_parallel);
    std::printf("rk4(%ld)  serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", rk4_steps,
                t_rk4_serial, t_rk4_parallel, t_rk4_serial / t_rk4_parallel);

    const double diff_adaptive = max_abs_diff(adaptive_serial, adaptive_parallel);
    const double diff_rk4 = max_abs_diff(rk4_serial, rk4_parallel);
    std::printf("serial/parallel max abs diff: adaptive %.3g, rk4 %.3g\n", diff_adaptive,
                diff_rk4);
    if (diff_adaptive != 0.0 || diff_rk4 != 0.0) {
        std::fprintf(stderr, "FAIL: parallel kernels disagree with the serial reference\n");
        return 1;
    }
    return 0;
}
