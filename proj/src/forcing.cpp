#include "flatgrowth/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "flatgrowth/numerics.hpp"

namespace flatgrowth {

namespace {

bool all_zero(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Minimum of a periodic function over one period: dense scan of n samples
// (spacing period/n, t=0 included) plus golden-section refinement of the
// wrap-aware bracket around the best sample. Keeps the best sampled value, so
// extrema attained exactly at a sample are preserved exactly.
template <class F>
num::MinResult periodic_min(F&& f, double period, int n) {
    num::MinResult best{0.0, f(0.0)};
    for (int i = 1; i < n; ++i) {
        const double t = period * static_cast<double>(i) / n;
        const double v = f(t);
        if (v < best.value) best = {t, v};
    }
    const double h = period / n;
    const num::MinResult refined = num::golden_min(f, best.x - h, best.x + h, 1e-12);
    return refined.value < best.value ? refined : best;
}

}  // namespace

Forcing::Forcing(double period, double mean, std::vector<double> cos_coeffs,
                 std::vector<double> sin_coeffs)
    : period_(period), mean_(mean), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (!(period_ > 0.0) || !std::isfinite(period_))
        throw std::invalid_argument("forcing: period must be > 0");
    if (!std::isfinite(mean_)) throw std::invalid_argument("forcing: mean must be finite");
    // Pad to a common harmonic count.
    const std::size_t k = std::max(cos_.size(), sin_.size());
    cos_.resize(k, 0.0);
    sin_.resize(k, 0.0);
    for (double c : cos_)
        if (!std::isfinite(c)) throw std::invalid_argument("forcing: cos coefficients must be finite");
    for (double s : sin_)
        if (!std::isfinite(s)) throw std::invalid_argument("forcing: sin coefficients must be finite");

    if (k == 0 || (all_zero(cos_) && all_zero(sin_))) {
        max_ = min_ = mean_;
    } else {
        const int n_scan = std::max(4096, 256 * static_cast<int>(k + 1));
        const auto neg = [this](double t) { return -(*this)(t); };
        const auto pos = [this](double t) { return (*this)(t); };
        min_ = periodic_min(pos, period_, n_scan).value;
        max_ = -periodic_min(neg, period_, n_scan).value;
    }
    if (!(min_ > 0.0))
        throw std::invalid_argument(
            "forcing: must be positive over the whole period (refined minimum <= 0)");
}

double Forcing::operator()(double t) const {
    double phase = std::fmod(t, period_);
    if (phase < 0.0) phase += period_;
    double value = mean_;
    const double w = 2.0 * std::numbers::pi * phase / period_;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
        const double kw = static_cast<double>(i + 1) * w;
        value += cos_[i] * std::cos(kw) + sin_[i] * std::sin(kw);
    }
    return value;
}

std::pair<double, double> forcing_extrema(const Forcing& f) {
    return {f.max_value(), f.min_value()};
}

}  // namespace flatgrowth
