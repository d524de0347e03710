#pragma once

#include <string>
#include <vector>

#include "fractile/ifs.hpp"
#include "fractile/region.hpp"
#include "fractile/tiling.hpp"
#include "fractile/verdict.hpp"

namespace fractile {

// Complement of the unbounded component of the complement of Phi^n(C).
struct Envelope {
    Region region;
    int depth = 0;
    double hausdorff_bound = 0.0;  // (max r_j)^n diam C
};

Envelope envelope(const IfsSystem& s, int depth, const Tolerance& tol = {}, std::uint64_t budget = 20'000'000);

struct BoundaryCheckOptions {
    double step = 0.0;       // boundary sample spacing; 0 picks diam(C) / 500
    double precision = 1e-9; // attractor distance precision
    double eta = 0.0;        // 0 picks 3 (precision + step)
};

// Holds iff every boundary sample is within eta of F; violated iff some sample is farther than 3 eta.
Verdict check_boundary_subset(const Region& boundary_of, const IfsSystem& s, const BoundaryCheckOptions& opt = {});

// Holds iff hull(E_n) \ E_n has measure <= area_eps.
Verdict envelope_convex(const IfsSystem& s, int depth, const Tolerance& tol = {});

struct CompatReport {
    Verdict tiling_boundary;      // (i)   bd T = F
    Verdict base_boundary;        // (ii)  bd K in F
    Verdict generator_union;      // (iii) bd (K \ Phi(K)) in F
    Verdict generators;           // (iv)  bd G_q in F for all q
    Verdict inner_volumes;        // (v)   F_eps cap K = T_{-eps}
    Verdict outer_volumes;        // (vi)  F_eps cap K^c = K_eps \ K
    Verdict envelope_is_hull;     // (a)   E = [F]
    Verdict envelope_is_convex;   // (b)   E convex
    bool canonical = false;       // K equals the hull, so (a) and (b) take part
    bool consistent = false;      // all participating verdicts decided and equal
    bool compatible = false;      // consistent and all hold
    std::vector<double> eps;
    int envelope_depth = 0;

    std::vector<std::pair<std::string, const Verdict*>> entries() const;
    std::string summary() const;
    std::string to_text() const;
    std::string to_json() const;
};

struct CompatOptions {
    int envelope_depth = 5;
    BoundaryCheckOptions boundary;
};

CompatReport compatibility_report(const IfsSystem& s, const Region& K, const std::vector<double>& eps_samples,
                                  const CompatOptions& opt = {}, const Tolerance& tol = {});

struct ObstructionReport {
    Verdict connected_complement;
    std::vector<double> envelope_measures;  // at depths n-2, n-1, n
    double extrapolated_measure = 0.0;
    Verdict int_envelope_feasible;          // only evaluated when the complement is disconnected
    std::string advice;
};

ObstructionReport obstruction_classifier(const IfsSystem& s, int depth = 5, const Tolerance& tol = {});

}  // namespace fractile
