#include "flatgrowth/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace flatgrowth::io {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format17(row[i]);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

nlohmann::json to_json(const RegimeReport& report) {
    return {
        {"phi_bar", report.phi_bar},
        {"phi_star", report.phi_star},
        {"phi_lower", report.phi_lower},
        {"sigma_tilde", report.sigma_tilde},
        {"margin", report.margin},
        {"regime", std::string(regime_name(report.regime))},
    };
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back({
            {"name", c.name},
            {"pass", c.pass},
            {"measured", c.measured},
            {"threshold", c.threshold},
            {"detail", c.detail},
        });
    }
    return {
        {"seed", report.seed},
        {"all_pass", report.all_pass},
        {"checks", checks},
    };
}

namespace {

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string render_orbit_svg(const PeriodicSolution& sol, const Forcing& forcing) {
    constexpr double width = 860, height = 520;
    constexpr double left = 70, right = 830, top = 40, bottom = 460;

    std::vector<double> phi(sol.times.size());
    for (std::size_t i = 0; i < sol.times.size(); ++i) phi[i] = forcing(sol.times[i]);

    double ymin = sol.heights[0], ymax = sol.heights[0];
    for (double v : sol.heights) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    }
    for (double v : phi) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    }
    if (ymax == ymin) {
        ymax += 0.5;
        ymin -= 0.5;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymax += pad;
        ymin -= pad;
    }
    const double t0 = sol.times.front(), t1 = sol.times.back();

    const auto x_of = [&](double t) { return left + (right - left) * (t - t0) / (t1 - t0); };
    const auto y_of = [&](double v) {
        return bottom - (bottom - top) * (v - ymin) / (ymax - ymin);
    };
    const auto polyline = [&](const std::vector<double>& values, const char* color) {
        std::ostringstream ps;
        ps << "  <polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < sol.times.size(); ++i) {
            if (i) ps << ' ';
            ps << coord(x_of(sol.times[i])) << ',' << coord(y_of(values[i]));
        }
        ps << "\"/>\n";
        return ps.str();
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
        << "  <line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
        << bottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // Axis tick labels at the ends plus axis titles.
    svg << "  <text x=\"" << left << "\" y=\"" << bottom + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << coord(t0) << "</text>\n"
        << "  <text x=\"" << right - 20 << "\" y=\"" << bottom + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << coord(t1) << "</text>\n"
        << "  <text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 40
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">t</text>\n"
        << "  <text x=\"" << left - 50 << "\" y=\"" << bottom
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << coord(ymin) << "</text>\n"
        << "  <text x=\"" << left - 50 << "\" y=\"" << top + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << coord(ymax) << "</text>\n"
        << "  <text x=\"" << left - 50 << "\" y=\"" << (top + bottom) / 2
        << "\" font-family=\"sans-serif\" font-size=\"14\">value</text>\n";
    svg << polyline(sol.heights, "#1f77b4") << polyline(phi, "#d62728");
    svg << "  <text x=\"" << right - 150 << "\" y=\"" << top + 10
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#1f77b4\">rho*(t)</text>\n"
        << "  <text x=\"" << right - 150 << "\" y=\"" << top + 28
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#d62728\">Phi(t)</text>\n"
        << "</svg>\n";
    return svg.str();
}

}  // namespace flatgrowth::io
