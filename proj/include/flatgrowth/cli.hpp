#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "flatgrowth/config.hpp"

namespace flatgrowth::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_integration_failure = 3,
    exit_wrong_regime = 4,
    exit_verification_failure = 5,
};

struct Options {
    std::string out_dir = ".";
    bool svg = false;
    std::optional<std::uint64_t> seed;
    std::optional<long> periods;
    std::optional<double> tol;
};

int cmd_simulate(const io::RunConfig& cfg, const Options& opt);
int cmd_classify(const io::RunConfig& cfg, const Options& opt);
int cmd_periodic(const io::RunConfig& cfg, const Options& opt);
int cmd_verify(const io::RunConfig& cfg, const Options& opt);

/// Parse argv, load the config, and dispatch to a subcommand.
int run(int argc, char** argv);

}  // namespace flatgrowth::cli
