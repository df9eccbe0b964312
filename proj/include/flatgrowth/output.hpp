#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatgrowth/periodic.hpp"
#include "flatgrowth/regime.hpp"
#include "flatgrowth/verify.hpp"

namespace flatgrowth::io {

/// 17 significant digits — enough to round-trip a double exactly.
std::string format17(double v);

void write_text_file(const std::string& path, const std::string& content);

/// CSV with one row per entry; numeric fields use format17.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

nlohmann::json to_json(const RegimeReport& report);
nlohmann::json to_json(const VerificationReport& report);

/// Self-contained SVG line chart of the periodic orbit and the forcing over
/// one period: two polylines, axes, and labels, with inline styling only.
std::string render_orbit_svg(const PeriodicSolution& sol, const Forcing& forcing);

}  // namespace flatgrowth::io
