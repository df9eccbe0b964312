#pragma once

#include <utility>
#include <vector>

namespace flatgrowth {

/// Positive T-periodic nutrient supply, represented as a truncated Fourier
/// series
///
///   phi(t) = mean + sum_k cos_k * cos(2 pi k t / T) + sin_k * sin(2 pi k t / T).
///
/// The mean over one period is exactly `mean`, and evaluation reduces the
/// phase with fmod so phi(t + T) == phi(t) bit-exactly whenever t + T is
/// exactly representable. Construction validates positivity by dense sampling
/// (4096 samples per period, or more for many harmonics) plus golden-section
/// refinement around the sampled minimum; a forcing whose refined minimum is
/// <= 0 is rejected. The refined maximum and minimum over one period are
/// cached and accurate to better than 1e-10 relative.
class Forcing {
  public:
    Forcing(double period, double mean, std::vector<double> cos_coeffs = {},
            std::vector<double> sin_coeffs = {});

    double operator()(double t) const;

    double period() const { return period_; }
    /// Exact mean over one period (the constant Fourier term).
    double mean() const { return mean_; }
    /// Maximum of phi over one period.
    double max_value() const { return max_; }
    /// Minimum of phi over one period.
    double min_value() const { return min_; }
    int harmonics() const { return static_cast<int>(cos_.size()); }
    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

  private:
    double period_;
    double mean_;
    std::vector<double> cos_;
    std::vector<double> sin_;
    double max_ = 0.0;
    double min_ = 0.0;
};

/// (max, min) of the forcing over one period.
std::pair<double, double> forcing_extrema(const Forcing& f);

}  // namespace flatgrowth
