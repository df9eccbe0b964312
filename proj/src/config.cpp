#include "flatgrowth/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace flatgrowth::io {

namespace {

using nlohmann::json;

const json& require_key(const json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end()) throw ConfigError(name, "missing required field");
    return *it;
}

double as_number(const json& value, const char* name) {
    if (!value.is_number()) throw ConfigError(name, "must be a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw ConfigError(name, "must be finite");
    return v;
}

double number_field(const json& doc, const char* name) {
    return as_number(require_key(doc, name), name);
}

double number_or(const json& doc, const char* name, double fallback) {
    const auto it = doc.find(name);
    return it == doc.end() ? fallback : as_number(*it, name);
}

long integer_or(const json& doc, const char* name, long fallback) {
    const auto it = doc.find(name);
    if (it == doc.end()) return fallback;
    if (!it->is_number_integer()) throw ConfigError(name, "must be an integer");
    return it->get<long>();
}

std::vector<double> number_array_or(const json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end()) return {};
    if (!it->is_array()) throw ConfigError(name, "must be an array of numbers");
    std::vector<double> out;
    out.reserve(it->size());
    for (const auto& v : *it) out.push_back(as_number(v, name));
    return out;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    if (!doc.is_object()) throw ConfigError("<document>", "config must be a JSON object");

    RunConfig cfg;
    cfg.mu = number_field(doc, "mu");
    if (!(cfg.mu > 0.0)) throw ConfigError("mu", "must be > 0");
    cfg.sigma_tilde = number_field(doc, "sigma_tilde");
    if (!(cfg.sigma_tilde > 0.0)) throw ConfigError("sigma_tilde", "must be > 0");
    cfg.period = number_field(doc, "period");
    if (!(cfg.period > 0.0)) throw ConfigError("period", "must be > 0");
    cfg.mean = number_field(doc, "mean");
    cfg.cos_coeffs = number_array_or(doc, "cos_coeffs");
    cfg.sin_coeffs = number_array_or(doc, "sin_coeffs");

    if (doc.contains("rho0")) {
        cfg.rho0 = as_number(doc["rho0"], "rho0");
        if (!(*cfg.rho0 >= 0.0)) throw ConfigError("rho0", "must be >= 0");
    }
    if (doc.contains("t_end")) {
        cfg.t_end = as_number(doc["t_end"], "t_end");
        if (!(*cfg.t_end > 0.0)) throw ConfigError("t_end", "must be > 0");
    }
    if (doc.contains("n_periods")) {
        cfg.n_periods = integer_or(doc, "n_periods", 0);
        if (*cfg.n_periods < 1) throw ConfigError("n_periods", "must be >= 1");
    }
    cfg.samples = static_cast<int>(integer_or(doc, "samples", cfg.samples));
    if (cfg.samples < 2) throw ConfigError("samples", "must be >= 2");

    cfg.rel_tol = number_or(doc, "rel_tol", cfg.rel_tol);
    if (!(cfg.rel_tol > 0.0)) throw ConfigError("rel_tol", "must be > 0");
    cfg.abs_tol = number_or(doc, "abs_tol", cfg.abs_tol);
    if (!(cfg.abs_tol > 0.0)) throw ConfigError("abs_tol", "must be > 0");
    cfg.max_step = number_or(doc, "max_step", cfg.max_step);
    if (cfg.max_step < 0.0) throw ConfigError("max_step", "must be >= 0");
    cfg.max_steps = integer_or(doc, "max_steps", cfg.max_steps);
    if (cfg.max_steps < 1) throw ConfigError("max_steps", "must be >= 1");

    cfg.tol = number_or(doc, "tol", cfg.tol);
    if (!(cfg.tol > 0.0)) throw ConfigError("tol", "must be > 0");
    cfg.classify_tol = number_or(doc, "classify_tol", cfg.classify_tol);
    if (cfg.classify_tol < 0.0) throw ConfigError("classify_tol", "must be >= 0");
    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (!s.is_number_integer() || s.get<long long>() < 0)
            throw ConfigError("seed", "must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.probe_deviation = number_or(doc, "probe_deviation", cfg.probe_deviation);
    if (!(cfg.probe_deviation > 0.0)) throw ConfigError("probe_deviation", "must be > 0");
    cfg.verify_periods = integer_or(doc, "verify_periods", cfg.verify_periods);
    if (cfg.verify_periods < 1) throw ConfigError("verify_periods", "must be >= 1");
    cfg.oracle_steps = integer_or(doc, "oracle_steps", cfg.oracle_steps);
    if (cfg.oracle_steps < 1) throw ConfigError("oracle_steps", "must be >= 1");
    cfg.extinction_threshold = number_or(doc, "extinction_threshold", cfg.extinction_threshold);
    if (!(cfg.extinction_threshold > 0.0))
        throw ConfigError("extinction_threshold", "must be > 0");

    // Validate the forcing invariants (positivity in particular) eagerly so
    // bad configs are rejected before any command runs.
    try {
        Forcing probe(cfg.period, cfg.mean, cfg.cos_coeffs, cfg.sin_coeffs);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("forcing", e.what());
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

ModelParams RunConfig::make_params() const {
    return ModelParams(mu, sigma_tilde, Forcing(period, mean, cos_coeffs, sin_coeffs));
}

IntegratorConfig RunConfig::make_integrator() const {
    IntegratorConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.max_step = max_step;
    cfg.max_steps = max_steps;
    return cfg;
}

}  // namespace flatgrowth::io
