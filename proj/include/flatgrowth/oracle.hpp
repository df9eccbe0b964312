#pragma once

#include <array>
#include <span>

#include "flatgrowth/integrate.hpp"
#include "flatgrowth/periodic.hpp"

namespace flatgrowth::oracle {

/// Classical fixed-step RK4 applied to u = ln(rho). Deterministic and
/// implemented independently of the adaptive integrator; used only as a test
/// oracle. h must divide t1 - t0 within rounding (1e-9 relative).
Trajectory reference_integrate(const ModelParams& params, double rho0, double t0, double t1,
                               double h);

/// RK4 heights at the requested times: between consecutive marks the step
/// count is ceil(span/h) with the step adjusted to land exactly on each mark.
std::vector<double> reference_heights_at(const ModelParams& params, double rho0, double t0,
                                         std::span<const double> times, double h);

/// Finite-difference residuals of the closed-form fields on three grid
/// refinements (h, h/2, h/4). Interior residuals check sigma'' = sigma and
/// -p'' = mu (sigma - sigma_tilde) with central differences; the base
/// boundary residual is the one-sided second-order Neumann derivative at
/// y = 0, and the top residual the Dirichlet mismatch at y = rho (exactly 0
/// for the closed forms).
struct ResidualReport {
    std::array<double, 3> h{};
    std::array<double, 3> sigma_interior{};
    std::array<double, 3> pressure_interior{};
    std::array<double, 3> base_neumann{};
    std::array<double, 3> top_dirichlet{};
    double sigma_order = 0.0;     // min observed order across the two refinements
    double pressure_order = 0.0;
    double observed_order = 0.0;  // min of the two families
};

/// Evaluate the residual report at fixed (t, rho). grid_size must be odd and
/// >= 9 (it is the coarsest level; the finer levels use 2n-1 and 4n-3 points).
ResidualReport field_residuals(const ModelParams& params, double t, double rho, int grid_size);

/// Corollary-level consistency of the reconstructed periodic fields.
struct PeriodicFieldReport {
    ResidualReport residuals;       // worst case over sampled phases
    double periodicity_residual = 0.0;  // field mismatch between phases 0 and T
    double velocity_residual = 0.0;     // relative mismatch of d(rho*)/dt vs -dp/dy at the boundary
};

/// Checks along the periodic orbit: (a) PDE residuals of the reconstructed
/// fields at 8 phases, (b) T-periodicity of field values at fixed
/// (y-fraction, phase), (c) the orbit's time derivative (5-point periodic
/// finite differences of the samples) against the analytic -dp/dy at y = rho.
PeriodicFieldReport periodic_field_check(const ModelParams& params, const PeriodicSolution& sol,
                                         int grid_size);

}  // namespace flatgrowth::oracle
