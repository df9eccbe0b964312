#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatgrowth/integrate.hpp"

namespace flatgrowth::io {

/// Config-file violation tied to a specific field.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config error: field `" + field + "`: " + message),
          field_(std::move(field)) {}

    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

/// One flat JSON document per run. Model and forcing fields are required;
/// everything else has defaults. All model invariants are re-validated on
/// load with errors naming the offending field.
struct RunConfig {
    // model
    double mu = 0.0;
    double sigma_tilde = 0.0;
    // forcing
    double period = 0.0;
    double mean = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
    // run directives
    std::optional<double> rho0;
    std::optional<double> t_end;
    std::optional<long> n_periods;
    int samples = 513;
    // integrator
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;  // 0 selects period/16
    long max_steps = 10'000'000;
    // solver / classification / verification
    double tol = 1e-10;          // periodic fixed-point tolerance
    double classify_tol = 1e-12;
    std::uint64_t seed = 0;
    double probe_deviation = 2.0;
    long verify_periods = 50;
    long oracle_steps = 1'000'000;
    double extinction_threshold = 1e-8;  // relative to rho0

    /// Parse and validate; throws ConfigError.
    static RunConfig load(const std::string& path);
    /// Parse from a JSON string (used by load and tests).
    static RunConfig parse(const std::string& text);

    ModelParams make_params() const;
    IntegratorConfig make_integrator() const;
};

}  // namespace flatgrowth::io
