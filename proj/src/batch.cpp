#include "flatgrowth/batch.hpp"

#include <atomic>
#include <stdexcept>

#include "flatgrowth/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flatgrowth::batch {

namespace {

double adaptive_final(const IntegrationCase& c, const IntegratorConfig& cfg) {
    const double mark[1] = {c.t1};
    const Trajectory traj = integrate(c.params, c.rho0, c.t0, c.t1, cfg, mark);
    if (!traj.ok()) throw std::runtime_error("batch: integration failed");
    return traj.heights.back();
}

double reference_final(const IntegrationCase& c, long n_steps) {
    const double h = (c.t1 - c.t0) / static_cast<double>(n_steps);
    const Trajectory traj = oracle::reference_integrate(c.params, c.rho0, c.t0, c.t1, h);
    return traj.heights.back();
}

// Exceptions may not cross an OpenMP region boundary; run the per-case work
// under a failure flag and rethrow once outside.
template <class Work>
std::vector<double> run_parallel(std::size_t count, Work&& work) {
    std::vector<double> out(count);
    std::atomic<bool> failed{false};
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = work(static_cast<std::size_t>(i));
        } catch (...) {
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (failed.load()) throw std::runtime_error("batch: a case failed to integrate");
    return out;
}

}  // namespace

std::vector<double> final_heights(std::span<const IntegrationCase> cases,
                                  const IntegratorConfig& cfg) {
    return run_parallel(cases.size(),
                        [&](std::size_t i) { return adaptive_final(cases[i], cfg); });
}

std::vector<double> final_heights_serial(std::span<const IntegrationCase> cases,
                                         const IntegratorConfig& cfg) {
    std::vector<double> out(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i) out[i] = adaptive_final(cases[i], cfg);
    return out;
}

std::vector<double> reference_final_heights(std::span<const IntegrationCase> cases,
                                            long n_steps) {
    return run_parallel(cases.size(),
                        [&](std::size_t i) { return reference_final(cases[i], n_steps); });
}

std::vector<double> reference_final_heights_serial(std::span<const IntegrationCase> cases,
                                                   long n_steps) {
    std::vector<double> out(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i) out[i] = reference_final(cases[i], n_steps);
    return out;
}

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace flatgrowth::batch
