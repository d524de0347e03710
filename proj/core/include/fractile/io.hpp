#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fractile/ifs.hpp"
#include "fractile/region.hpp"
#include "fractile/tiling.hpp"

namespace fractile {

// System specification document (JSON).
//
//   { "label": "gasket", "dimension": 2,
//     "maps": [ {"type": "similitude", "r": 0.5, "theta_deg": 0, "reflect": false, "tx": 0, "ty": 0},
//               {"type": "affine", "matrix": [[a, b], [c, d]], "tx": 0, "ty": 0} ],
//     "open_set": "hull-interior" | "envelope-interior"
//                 | {"polygons": [{"outer": [[x, y], ...], "holes": [[[x, y], ...]]}]}
//                 | {"intervals": [[lo, hi], ...]} }
//
// Numbers may be given as strings holding arithmetic with sqrt and pi, e.g. "sqrt(3)/8".
struct SystemSpec {
    enum class OpenSet { None, HullInterior, EnvelopeInterior, Explicit };
    IfsSystem system;
    OpenSet open_set = OpenSet::None;
    std::optional<Region> explicit_open_set;
};

// Throws ParseError with a "line L, column C" or "field maps[2].r" location.
SystemSpec parse_spec(const std::string& text);
SystemSpec load_spec(const std::string& path);

// Closure K of the declared open set; envelope depth applies to "envelope-interior".
Region resolve_open_set(const SystemSpec& spec, int envelope_depth = 6, const Tolerance& tol = {});

// Evaluates +, -, *, /, ^, parentheses, sqrt(), pi.
double eval_expression(const std::string& expr);

// Geometry dump: "dimension d", then one ring per line ("x y, x y, ...") or one interval per line ("lo hi").
// Holes are clockwise and follow their outer ring. '#' starts a comment.
std::string write_geometry(const Region& r);
Region read_geometry(const std::string& text);

// Tile dump: a geometry dump where each tile starts with "tile <word> <q> <ratio> <diameter>" (q 1-based).
std::string write_tiles(int dimension, const std::vector<Tile>& tiles);

struct SvgLayer {
    std::vector<Region> regions;
    std::string fill = "none";
    std::string stroke = "#000000";
    double stroke_width = 1.0;
};

struct SvgScene {
    int dimension = 2;
    std::vector<SvgLayer> layers;
    std::vector<Vec2> points;  // drawn as dots above all layers
    std::string title;
};

std::string render_svg(const SvgScene& scene, int width_px = 800);

void write_file(const std::string& path, const std::string& content);

}  // namespace fractile
