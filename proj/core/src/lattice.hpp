#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fractile/ifs.hpp"

namespace fractile::detail {

struct LatticeData {
    double base_ratio = 0.0;  // r_j = base_ratio^{k_j}
    std::vector<int> exponents;
    std::vector<std::complex<double>> roots;  // roots of sum z^{k_j} = 1, polished
    std::vector<int> multiplicity;
};

// Empty when the log ratios are not commensurable within 1e-9.
std::optional<LatticeData> lattice_data(const IfsSystem& s);

}  // namespace fractile::detail
