#pragma once

#include <string>

#include <json.hpp>

#include "specflow/asymptotics.hpp"
#include "specflow/critical.hpp"
#include "specflow/flow.hpp"
#include "specflow/nonneg.hpp"
#include "specflow/structured.hpp"
#include "specflow/verify.hpp"

namespace specflow {

using Json = nlohmann::json;

/// System file format: {"A": rows, "u": entries, "v": entries,
/// "structure": {"kind": "H"|"J", "G": rows}}. Every numeric entry is a
/// plain real number or a two-element [re, im] array. Structured inputs
/// must omit "v"; it is derived from the certificate.
RankOneSystem parse_system(const Json& doc);
RankOneSystem parse_system_file(const std::string& path);

Json emit_system(const RankOneSystem& sys);

Json to_json(Complex z);
Json to_json(const Poly& p);
Json to_json(const SpectralPortrait& p);
Json to_json(const Trajectory& t);
Json to_json(const LevelSet& ls);
Json to_json(const AsymptoticModel& m);
Json to_json(const AsymptoticsReport& r);
Json to_json(const HamiltonianForecast& f);
Json to_json(const SymmetryReport& r);
Json to_json(const DivergenceCount& d);
Json to_json(const VerificationReport& r);

std::string trajectory_csv(const Trajectory& t);
std::string levelset_csv(const LevelSet& ls);

/// Minimal SVG plotting: polylines plus point markers in a fixed viewport.
struct SvgPolyline {
    std::vector<Complex> points;
    std::string color = "#1f77b4";
    double width = 1.2;
};
struct SvgMarker {
    Complex pos;
    enum class Shape { circle, star, triangle } shape = Shape::circle;
    std::string color = "#2ca02c";
};
struct SvgPlot {
    std::vector<SvgPolyline> polylines;
    std::vector<SvgMarker> markers;
};

std::string render_svg(const SvgPlot& plot);

SvgPlot plot_trajectory(const SpectralPortrait& p, const Trajectory& t);
SvgPlot plot_levelset(const SpectralPortrait& p, const LevelSet& ls);

/// Writes via a temp file in the same directory, then renames.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace specflow
