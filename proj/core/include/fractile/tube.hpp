#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "fractile/ifs.hpp"
#include "fractile/region.hpp"
#include "fractile/tiling.hpp"

namespace fractile {

struct CompatReport;

// gamma(x) = measure of the inner x-parallel set of one generator.
class GeneratorProfile {
public:
    enum class Kind { Polynomial, ConvexExact, Tabulated };

    static GeneratorProfile build(const Region& g, const Tolerance& tol = {});

    double operator()(double x) const;
    Kind kind() const { return kind_; }
    double measure() const { return measure_; }
    double inradius() const { return rho_; }
    // gamma(x) = sum_k kappa[k] x^(d-k), k < d, for x <= inradius (Polynomial kind only).
    const std::vector<double>& kappa() const { return kappa_; }
    double interpolation_error() const { return interp_err_; }

private:
    Kind kind_ = Kind::Tabulated;
    int dim_ = 2;
    double measure_ = 0.0;
    double rho_ = 0.0;
    std::vector<double> kappa_;
    Region region_;
    Tolerance tol_;
    std::vector<double> tab_x_, tab_y_;
    double interp_err_ = 0.0;
};

// V(T_{-eps}) as an explicit word sum plus the exact geometric tail.
class ScalingSum {
public:
    explicit ScalingSum(const Tiling& t);
    double operator()(double eps) const;
    const std::vector<GeneratorProfile>& profiles() const { return profiles_; }

private:
    const Tiling* tiling_;
    std::vector<GeneratorProfile> profiles_;
    std::vector<double> ratios_;
    double total_;  // sum over all words of r_w^d
};

double scaling_sum_inner_volume(const Tiling& t, double eps);

struct VolumeEstimate {
    double value = 0.0;
    double error_bar = 0.0;
    std::string method;
};

// V(F_eps) = V(T_{-eps}) + V(K_eps \ K). Refuses unless the report is consistent and compatible.
VolumeEstimate outer_decomposition_volume(const Tiling& t, double eps, const CompatReport& report);

struct ComplexPole {
    std::complex<double> s;
    double residual = 0.0;
    int multiplicity = 1;
};

struct ComplexDimensionSet {
    std::vector<ComplexPole> poles;
    bool lattice = false;
    double base_ratio = 0.0;     // lattice case: r_j = base_ratio^{k_j}
    std::vector<int> exponents;  // k_j
    double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
};

// Poles of 1 / (1 - sum r_j^s) with Im s in [im_lo, im_hi].
ComplexDimensionSet complex_dimensions(const IfsSystem& s, double im_lo, double im_hi);

struct ResidueResult {
    double value = 0.0;
    double tail_bound = 0.0;
    int lines = 0;  // pole lines m = -M..M used
};

// Lattice residue expansion of V(T_{-eps}); valid for eps <= inradius of the single generator.
ResidueResult residue_tube_formula(const Tiling& t, double eps, double rel_tol = 1e-7);

struct TubeSample {
    double eps = 0.0;
    std::string method;
    double volume = 0.0;
    double error_bar = 0.0;
    std::string status;
};

struct TubeCurve {
    std::vector<TubeSample> samples;
    bool disagreement = false;
};

// Methods: scaling_sum, grid, residue, steiner-outer.
TubeCurve tube_curve(const Tiling& t, std::span<const double> eps, const std::vector<std::string>& methods);

std::string to_csv(const TubeCurve& c);
std::string to_csv(const ComplexDimensionSet& d);

}  // namespace fractile
