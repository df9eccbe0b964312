#include "flatgrowth/model.hpp"

#include <cmath>
#include <stdexcept>

#include "flatgrowth/numerics.hpp"

namespace flatgrowth {

ModelParams::ModelParams(double mu_, double sigma_tilde_, Forcing forcing_)
    : mu(mu_), sigma_tilde(sigma_tilde_), forcing(std::move(forcing_)) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("model: mu must be > 0");
    if (!(sigma_tilde > 0.0) || !std::isfinite(sigma_tilde))
        throw std::invalid_argument("model: sigma_tilde must be > 0");
}

// Below this threshold tanh(rho)/rho suffers 0/0 cancellation; switch to the
// Taylor expansions (error ~ rho^6 < 1e-24).
constexpr double kSeriesCutoff = 1e-4;

double tanh_ratio(double rho) {
    if (rho < 0.0) throw std::invalid_argument("tanh_ratio: rho must be >= 0");
    if (rho < kSeriesCutoff) {
        const double r2 = rho * rho;
        return 1.0 - r2 / 3.0 + 2.0 * r2 * r2 / 15.0;
    }
    return std::tanh(rho) / rho;
}

double tanh_ratio_deriv(double rho) {
    if (rho < 0.0) throw std::invalid_argument("tanh_ratio_deriv: rho must be >= 0");
    if (rho < kSeriesCutoff) {
        return -2.0 * rho / 3.0 + 8.0 * rho * rho * rho / 15.0;
    }
    const double th = std::tanh(rho);
    const double sech2 = 1.0 - th * th;
    return sech2 / rho - th / (rho * rho);
}

double tanh_ratio_inverse(double v) {
    if (!(v > 0.0) || !(v < 1.0))
        throw std::invalid_argument("tanh_ratio_inverse: v must lie in (0, 1)");
    // tanh(rho)/rho < 1/rho, so the root lies in (0, 1/v].
    const double hi = 1.0 / v;
    return num::bisect_root([v](double r) { return tanh_ratio(r) - v; }, 1e-300, hi, 1e-13);
}

double cosh_ratio(double y, double rho) {
    // cosh(y)/cosh(rho) = e^{y-rho} (1 + e^{-2y}) / (1 + e^{-2rho});
    // the two parenthesised factors are identical when y == rho, so the ratio
    // is exactly 1 there.
    return std::exp(y - rho) * (1.0 + std::exp(-2.0 * y)) / (1.0 + std::exp(-2.0 * rho));
}

double growth_rate(const ModelParams& p, double t, double rho) {
    if (rho < 0.0) throw std::invalid_argument("growth_rate: rho must be >= 0");
    if (rho == 0.0) return 0.0;
    return p.mu * rho * (p.forcing(t) * tanh_ratio(rho) - p.sigma_tilde);
}

double nutrient_at(const ModelParams& p, double t, double rho, double y) {
    if (y < 0.0 || y > rho)
        throw std::invalid_argument("nutrient_at: y must lie in [0, rho]");
    return p.forcing(t) * cosh_ratio(y, rho);
}

double pressure_at(const ModelParams& p, double t, double rho, double y) {
    if (y < 0.0 || y > rho)
        throw std::invalid_argument("pressure_at: y must lie in [0, rho]");
    const double phi = p.forcing(t);
    return 0.5 * p.mu * p.sigma_tilde * (y * y - rho * rho) +
           p.mu * phi * (1.0 - cosh_ratio(y, rho));
}

double pressure_gradient(const ModelParams& p, double t, double rho, double y) {
    // sinh(y)/cosh(rho) in exponential form, overflow-safe.
    const double sinh_over_cosh =
        std::exp(y - rho) * (1.0 - std::exp(-2.0 * y)) / (1.0 + std::exp(-2.0 * rho));
    return p.mu * p.sigma_tilde * y - p.mu * p.forcing(t) * sinh_over_cosh;
}

double boundary_velocity(const ModelParams& p, double t, double rho) {
    if (rho < 0.0) throw std::invalid_argument("boundary_velocity: rho must be >= 0");
    return p.mu * (p.forcing(t) * std::tanh(rho) - p.sigma_tilde * rho);
}

FieldSnapshot make_field_snapshot(const ModelParams& p, double t, double rho, int n) {
    if (!(rho > 0.0)) throw std::invalid_argument("field snapshot: rho must be > 0");
    if (n < 2) throw std::invalid_argument("field snapshot: need at least 2 grid points");
    FieldSnapshot snap;
    snap.t = t;
    snap.rho = rho;
    snap.y.resize(n);
    snap.sigma.resize(n);
    snap.pressure.resize(n);
    for (int i = 0; i < n; ++i) {
        const double y = (i == n - 1) ? rho : rho * static_cast<double>(i) / (n - 1);
        snap.y[i] = y;
        snap.sigma[i] = nutrient_at(p, t, rho, y);
        snap.pressure[i] = pressure_at(p, t, rho, y);
    }
    return snap;
}

}  // namespace flatgrowth
