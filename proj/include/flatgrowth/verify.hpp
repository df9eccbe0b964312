#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatgrowth/integrate.hpp"

namespace flatgrowth {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    IntegratorConfig integrator{};
    double fixed_point_tol = 1e-10;
    int envelope_draws = 50;
    int comparison_draws = 10;
    long oracle_steps = 1'000'000;  // RK4 steps per period in the equivalence check
    int self_map_draws = 10;
    int self_map_samples = 32;
    int convergence_draws = 5;
    long convergence_periods = 50;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool all_pass = false;
};

/// The property battery behind the `verify` subcommand: global-existence
/// envelopes, trajectory comparison, adaptive-vs-RK4 oracle equivalence,
/// closed-form PDE residual orders, period-map bracket self-mapping, and the
/// exponential convergence envelope toward the periodic orbit. All random
/// draws derive from the seed and are taken before any parallel work, so the
/// report is reproducible byte for byte.
VerificationReport run_verification(const VerifyOptions& opt);

}  // namespace flatgrowth
