#pragma once

#include <vector>

#include "flatgrowth/forcing.hpp"

namespace flatgrowth {

/// Growth-model parameters: aggressiveness rate mu, proliferation threshold
/// concentration sigma_tilde, and the periodic nutrient supply.
struct ModelParams {
    double mu;
    double sigma_tilde;
    Forcing forcing;

    ModelParams(double mu_, double sigma_tilde_, Forcing forcing_);
};

/// tanh(rho)/rho, extended continuously to 1 at rho = 0. Strictly decreasing,
/// with values in (0, 1]. This is the layer-averaged fraction of the surface
/// nutrient concentration available through a layer of height rho.
double tanh_ratio(double rho);

/// d/drho of tanh_ratio: sech^2(rho)/rho - tanh(rho)/rho^2, 0 at rho = 0,
/// strictly negative for rho > 0.
double tanh_ratio_deriv(double rho);

/// Unique rho > 0 with tanh_ratio(rho) == v, for v in (0, 1). Bisection on
/// the bracket (0, 1/v], accurate to 1e-12 relative.
double tanh_ratio_inverse(double v);

/// cosh(y)/cosh(rho), computed in exponential form so large arguments do not
/// overflow. Exactly 1 when y == rho.
double cosh_ratio(double y, double rho);

/// Right-hand side of the height equation: mu * rho * (phi(t) * tanh_ratio(rho)
/// - sigma_tilde). Zero at rho = 0.
double growth_rate(const ModelParams& p, double t, double rho);

/// Nutrient concentration sigma(y, t) = phi(t) * cosh(y)/cosh(rho) inside a
/// layer of height rho. Requires 0 <= y <= rho.
double nutrient_at(const ModelParams& p, double t, double rho, double y);

/// Pressure p(y, t) = mu*sigma_tilde*(y^2 - rho^2)/2 + mu*phi(t)*(1 -
/// cosh(y)/cosh(rho)). Requires 0 <= y <= rho; exactly 0 at y == rho.
double pressure_at(const ModelParams& p, double t, double rho, double y);

/// Analytic dp/dy = mu*sigma_tilde*y - mu*phi(t)*sinh(y)/cosh(rho).
double pressure_gradient(const ModelParams& p, double t, double rho, double y);

/// -dp/dy evaluated at y = rho: mu*(phi(t)*tanh(rho) - sigma_tilde*rho).
/// Identical (up to rounding) to growth_rate — the height equation is exactly
/// the boundary kinematic condition.
double boundary_velocity(const ModelParams& p, double t, double rho);

/// Nutrient and pressure profiles sampled on a uniform grid over [0, rho].
struct FieldSnapshot {
    double t = 0.0;
    double rho = 0.0;
    std::vector<double> y;
    std::vector<double> sigma;
    std::vector<double> pressure;
};

/// Evaluate the closed-form fields on n uniform grid points (default 257; an
/// odd count keeps the midpoint on the grid). Requires rho > 0 and n >= 2.
FieldSnapshot make_field_snapshot(const ModelParams& p, double t, double rho, int n = 257);

}  // namespace flatgrowth
