#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "fractile/io.hpp"

namespace fixtures {

inline std::string spec_path(const std::string& name) { return std::string(FRACTILE_DATA_DIR) + "/" + name + ".json"; }

inline fractile::SystemSpec spec(const std::string& name) { return fractile::load_spec(spec_path(name)); }

inline fractile::IfsSystem system(const std::string& name) { return spec(name).system; }

inline const double kSqrt3 = std::sqrt(3.0);

inline fractile::Region unit_triangle() {
    return fractile::Region::polygon({{0, 0}, {1, 0}, {0.5, kSqrt3 / 2}});
}

inline fractile::Region unit_square() { return fractile::Region::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

}  // namespace fixtures
