#pragma once

// Structural invariant checks shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fractile/compat.hpp"
#include "fractile/kernel.hpp"
#include "fractile/tiling.hpp"

namespace invariants {

using namespace fractile;

struct Outcome {
    bool ok = true;
    double worst = 0.0;  // largest measured defect
    double bound = 0.0;
    std::string detail;
};

// measure(Phi(T_k) sym T_{k+1}) <= 10 area_eps for k < kmax.
inline Outcome propagation(const IfsSystem& s, const Region& K, int kmax, const Tolerance& tol = {}) {
    Outcome o;
    o.bound = 10 * tol.area_eps;
    Region prev = tileset_level(s, K, 0, tol).region;
    for (int k = 0; k < kmax; ++k) {
        const Region next = tileset_level(s, K, k + 1, tol).region;
        const double d = boolean(apply_maps(s, prev, tol), next, BoolOp::SymmetricDifference, tol).measure();
        if (d > o.worst) {
            o.worst = d;
            o.detail = "k = " + std::to_string(k);
        }
        prev = next;
    }
    o.ok = o.worst <= o.bound;
    return o;
}

inline std::vector<Tile> tiles_to_depth(const Tiling& t, int depth) {
    std::vector<Tile> out;
    auto stream = enumerate_tiles(t, StopPolicy{depth});
    while (auto tile = stream.next()) out.push_back(std::move(*tile));
    return out;
}

// Random tile pairs intersect in measure <= area_eps.
inline Outcome disjoint_pairs(const Tiling& t, int depth, int pairs, unsigned seed) {
    Outcome o;
    o.bound = t.tolerance().area_eps;
    const auto tiles = tiles_to_depth(t, depth);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, tiles.size() - 1);
    for (int i = 0; i < pairs; ++i) {
        const size_t a = pick(rng);
        size_t b = pick(rng);
        while (b == a) b = pick(rng);
        const double m = boolean(tiles[a].region, tiles[b].region, BoolOp::Intersection, t.tolerance()).measure();
        if (m > o.worst) {
            o.worst = m;
            o.detail = tiles[a].word.to_string() + " / " + tiles[b].word.to_string();
        }
    }
    o.ok = o.worst <= o.bound;
    return o;
}

// measure(K) - sum of tile measures to depth n - analytic tail, relative to measure(K).
inline Outcome exhaustion(const Tiling& t, int depth, double rel_bound = 1e-6) {
    const IfsSystem& s = t.system();
    const int d = s.dimension();
    double S = 0.0;
    for (double r : s.ratios()) S += std::pow(r, d);
    double gen = 0.0;
    for (const auto& g : t.generators()) gen += g.measure;
    double sum = 0.0;
    for (const Tile& tile : tiles_to_depth(t, depth)) sum += tile.region.measure();
    const double tail = gen * std::pow(S, depth + 1) / (1.0 - S);
    Outcome o;
    const double K = t.base().measure();
    o.worst = std::abs(K - sum - tail) / K;
    o.bound = rel_bound;
    o.ok = o.worst <= o.bound;
    o.detail = "tiles " + std::to_string(sum) + ", tail " + std::to_string(tail);
    return o;
}

// A point deep inside each tile keeps its distance to F.
inline Outcome tiles_avoid_attractor(const Tiling& t, int depth) {
    Outcome o;
    const AttractorDistance F(t.system());
    std::vector<Vec2> inner;
    for (const auto& g : t.generators()) {
        const Region core = erode(g.region, 0.5 * g.inradius, t.tolerance());
        inner.push_back(core.dimension() == 1 ? Vec2{core.intervals()[0].lo, 0} : core.faces()[0].outer[0]);
    }
    for (const Tile& tile : tiles_to_depth(t, depth)) {
        const Affine2 f = compose(t.system(), tile.word);
        const double want = 0.49 * t.generators()[tile.q].inradius * f.linear.min_singular();
        const DistanceBounds b = F.bounds(f(inner[tile.q]), 1e-12, -1.0, want);
        if (!(b.lo > want)) {
            o.ok = false;
            o.worst = std::max(o.worst, want - b.lo);
            o.detail = "tile " + tile.word.to_string();
        }
    }
    return o;
}

// F in E_n in C, and E_{n+1} in E_n with non-increasing measure.
inline Outcome envelope_sandwich(const IfsSystem& s, int n0, int n1, const Tolerance& tol = {}) {
    Outcome o;
    o.bound = tol.area_eps;
    const Region C = attractor_hull(s).hull;
    const PointCloud cloud = attractor_points(s, 6, s[0].fixed_point());
    Region prev;
    for (int n = n0; n <= n1; ++n) {
        const Envelope E = envelope(s, n, tol);
        for (const Vec2 p : cloud.points)
            if (!E.region.contains(p, 1e-9)) {
                o.ok = false;
                o.detail = "cloud point outside E_" + std::to_string(n);
            }
        const double outside = boolean(E.region, C, BoolOp::Difference, tol).measure();
        o.worst = std::max(o.worst, outside);
        if (n > n0) {
            const double grow = boolean(E.region, prev, BoolOp::Difference, tol).measure();
            o.worst = std::max(o.worst, grow);
            if (E.region.measure() > prev.measure() + tol.area_eps) {
                o.ok = false;
                o.detail = "measure grows at depth " + std::to_string(n);
            }
        }
        prev = E.region;
    }
    if (o.worst > o.bound) o.ok = false;
    return o;
}

}  // namespace invariants
