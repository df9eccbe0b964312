#pragma once

#include <span>
#include <vector>

#include "flatgrowth/integrate.hpp"

namespace flatgrowth::batch {

/// One independent integration task.
struct IntegrationCase {
    ModelParams params;
    double rho0;
    double t0;
    double t1;
};

/// Final heights of a batch of adaptive integrations. The parallel kernel
/// distributes whole cases across OpenMP threads; per-case results are
/// bitwise identical to the serial reference regardless of thread count.
std::vector<double> final_heights(std::span<const IntegrationCase> cases,
                                  const IntegratorConfig& cfg);
std::vector<double> final_heights_serial(std::span<const IntegrationCase> cases,
                                         const IntegratorConfig& cfg);

/// Final heights of a batch of fixed-step RK4 reference integrations, each
/// using n_steps steps over its own span.
std::vector<double> reference_final_heights(std::span<const IntegrationCase> cases,
                                            long n_steps);
std::vector<double> reference_final_heights_serial(std::span<const IntegrationCase> cases,
                                                   long n_steps);

/// Number of worker threads the parallel kernels will use (1 when built
/// without OpenMP).
int worker_count();

}  // namespace flatgrowth::batch
