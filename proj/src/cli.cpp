#include "flatgrowth/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatgrowth/numerics.hpp"
#include "flatgrowth/output.hpp"
#include "flatgrowth/periodic.hpp"
#include "flatgrowth/regime.hpp"
#include "flatgrowth/verify.hpp"

namespace flatgrowth::cli {

namespace {

using nlohmann::json;

std::string out_path(const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / name).string();
}

const char* status_name(IntegrationStatus s) {
    switch (s) {
        case IntegrationStatus::ok: return "ok";
        case IntegrationStatus::step_limit: return "step-limit";
        case IntegrationStatus::tolerance_failure: return "tolerance-failure";
    }
    return "unknown";
}

}  // namespace

int cmd_simulate(const io::RunConfig& cfg, const Options& opt) {
    if (!cfg.rho0) {
        std::cerr << "config error: field `rho0`: missing required field (simulate)\n";
        return exit_config_error;
    }
    if (cfg.t_end && cfg.n_periods) {
        std::cerr << "config error: field `t_end`: give exactly one of `t_end` or `n_periods`\n";
        return exit_config_error;
    }
    if (!cfg.t_end && !cfg.n_periods) {
        std::cerr << "config error: field `t_end`: one of `t_end` or `n_periods` is required\n";
        return exit_config_error;
    }
    const ModelParams params = cfg.make_params();
    const double t_end = cfg.t_end ? *cfg.t_end
                                   : static_cast<double>(*cfg.n_periods) * params.forcing.period();
    const double rho0 = *cfg.rho0;

    const auto marks = num::linspace(0.0, t_end, cfg.samples);
    const Trajectory traj = integrate(params, rho0, 0.0, t_end, cfg.make_integrator(), marks);

    constexpr double slack = 1e-9;
    long violations = 0;
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const double rho = traj.heights[i];
        const auto [lower, upper] = growth_envelope(params, rho0, t);
        if (rho0 > 0.0 && (rho < lower * (1.0 - slack) || rho > upper * (1.0 + slack)))
            ++violations;
        rows.push_back({t, rho, params.forcing(t),
                        growth_rate(params, t, rho), lower, upper});
    }
    io::write_csv(out_path(opt, "trajectory.csv"),
                  {"t", "rho", "phi", "rhs", "lower_envelope", "upper_envelope"}, rows);

    const json summary = {
        {"final_t", traj.times.back()},
        {"final_rho", traj.heights.back()},
        {"accepted_steps", traj.accepted},
        {"rejected_steps", traj.rejected},
        {"max_error_estimate", traj.max_error_estimate},
        {"envelope_violations", violations},
        {"status", status_name(traj.status)},
    };
    io::write_text_file(out_path(opt, "summary.json"), summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";

    if (!traj.ok()) {
        std::cerr << "integration failure: " << status_name(traj.status)
                  << " (partial trajectory written)\n";
        return exit_integration_failure;
    }
    return exit_ok;
}

int cmd_classify(const io::RunConfig& cfg, const Options& opt) {
    const ModelParams params = cfg.make_params();
    const RegimeReport report = classify(params, cfg.classify_tol);
    const json doc = io::to_json(report);
    io::write_text_file(out_path(opt, "report.json"), doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    return exit_ok;
}

int cmd_periodic(const io::RunConfig& cfg, const Options& opt) {
    const ModelParams params = cfg.make_params();
    const double tol = opt.tol.value_or(cfg.tol);
    const RegimeReport report = classify(params, cfg.classify_tol);
    if (report.regime != Regime::persistence) {
        const json doc = {
            {"error", "persistence regime required (sigma_tilde < mean forcing)"},
            {"regime_report", io::to_json(report)},
        };
        io::write_text_file(out_path(opt, "summary.json"), doc.dump(2) + "\n");
        std::cout << doc.dump(2) << "\n";
        return exit_wrong_regime;
    }

    const IntegratorConfig integ = cfg.make_integrator();
    const Bracket bracket = compute_bracket(params);
    PeriodicSolution sol;
    try {
        sol = find_periodic(params, integ, tol, cfg.samples);
    } catch (const std::exception& e) {
        std::cerr << "integration failure: " << e.what() << "\n";
        return exit_integration_failure;
    }
    const double probe_rho0 = cfg.probe_deviation * sol.rho_star_0;
    const RateEstimate rate = convergence_rate(params, sol, probe_rho0);
    const double periodicity = verify_periodicity(sol, params, integ);

    std::vector<std::vector<double>> rows;
    rows.reserve(sol.times.size());
    for (std::size_t i = 0; i < sol.times.size(); ++i)
        rows.push_back({sol.times[i], sol.heights[i], params.forcing(sol.times[i])});
    io::write_csv(out_path(opt, "orbit.csv"), {"t", "rho_star", "phi"}, rows);

    const json summary = {
        {"rho_star_0", sol.rho_star_0},
        {"x_bar", bracket.x_bar},
        {"x2", bracket.x2},
        {"fixed_point_residual", sol.fixed_point_residual},
        {"rho_min", sol.rho_min},
        {"rho_max", sol.rho_max},
        {"probe_deviation", cfg.probe_deviation},
        {"delta", rate.delta},
        {"C", rate.C},
        {"periodicity_residual", periodicity},
        {"regime_report", io::to_json(report)},
    };
    io::write_text_file(out_path(opt, "summary.json"), summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";

    if (opt.svg)
        io::write_text_file(out_path(opt, "orbit.svg"),
                            io::render_orbit_svg(sol, params.forcing));
    return exit_ok;
}

int cmd_verify(const io::RunConfig& cfg, const Options& opt) {
    VerifyOptions vopt;
    vopt.seed = opt.seed.value_or(cfg.seed);
    vopt.integrator = cfg.make_integrator();
    vopt.fixed_point_tol = opt.tol.value_or(cfg.tol);
    vopt.convergence_periods = opt.periods.value_or(cfg.verify_periods);
    vopt.oracle_steps = cfg.oracle_steps;

    const VerificationReport report = run_verification(vopt);
    io::write_text_file(out_path(opt, "report.json"), io::to_json(report).dump(2) + "\n");
    for (const CheckResult& c : report.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << "  measured=" << io::format17(c.measured)
                  << "  threshold=" << io::format17(c.threshold) << "\n";
    }
    std::cout << (report.all_pass ? "all checks passed" : "verification FAILED") << "\n";
    return report.all_pass ? exit_ok : exit_verification_failure;
}

int run(int argc, char** argv) {
    CLI::App app{"flat-layer growth model under periodic nutrient supply"};
    app.require_subcommand(1);

    std::string config_path;
    Options opt;
    std::uint64_t seed_flag = 0;
    long periods_flag = 0;
    double tol_flag = 0.0;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "path to the run config JSON")->required();
        sub->add_option("--out", opt.out_dir, "output directory (default .)");
        sub->add_option("--seed", seed_flag, "override the config seed")
            ->each([&](const std::string&) { opt.seed = seed_flag; });
        sub->add_option("--periods", periods_flag, "override the period count")
            ->each([&](const std::string&) { opt.periods = periods_flag; });
        sub->add_option("--tol", tol_flag, "override the fixed-point tolerance")
            ->each([&](const std::string&) { opt.tol = tol_flag; });
        return sub;
    };

    CLI::App* simulate = add_common(app.add_subcommand("simulate", "integrate a trajectory"));
    CLI::App* classify_cmd =
        add_common(app.add_subcommand("classify", "extinction/persistence classification"));
    CLI::App* periodic = add_common(
        app.add_subcommand("periodic", "find the positive periodic solution"));
    periodic->add_flag("--svg", opt.svg, "also emit orbit.svg");
    CLI::App* verify = add_common(app.add_subcommand("verify", "run the property battery"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        const io::RunConfig cfg = io::RunConfig::load(config_path);
        if (simulate->parsed()) return cmd_simulate(cfg, opt);
        if (classify_cmd->parsed()) return cmd_classify(cfg, opt);
        if (periodic->parsed()) return cmd_periodic(cfg, opt);
        if (verify->parsed()) return cmd_verify(cfg, opt);
    } catch (const io::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_integration_failure;
    }
    return exit_config_error;
}

}  // namespace flatgrowth::cli
