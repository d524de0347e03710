#include "fractile/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fractile/error.hpp"
#include "fractile/kernel.hpp"

namespace fractile {

const char* to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Violated: return "violated";
        case Status::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict combine(const std::vector<Verdict>& parts, std::string reason) {
    Verdict v;
    v.reason = std::move(reason);
    bool all_hold = !parts.empty();
    const Verdict* worst = nullptr;
    for (const auto& p : parts) {
        v.margin = std::max(v.margin, p.margin);
        v.tolerance = std::max(v.tolerance, p.tolerance);
        v.depth = std::max(v.depth, p.depth);
        if (!p.holds()) all_hold = false;
        if (p.violated() && (!worst || !worst->violated() || p.margin > worst->margin)) worst = &p;
        if (!p.decided() && !worst) worst = &p;
    }
    if (worst && worst->violated()) {
        v.status = Status::Violated;
        v.indices = worst->indices;
        v.witness = worst->witness;
        if (!worst->reason.empty()) v.reason += ": " + worst->reason;
    } else if (all_hold) {
        v.status = Status::Holds;
    } else {
        v.status = Status::Inconclusive;
        if (worst && !worst->reason.empty()) v.reason += ": " + worst->reason;
    }
    return v;
}

Region apply_maps(const IfsSystem& s, const Region& r, const Tolerance& tol) {
    std::vector<Region> parts;
    parts.reserve(s.size());
    for (const auto& m : s.maps()) parts.push_back(r.transformed(m.map()));
    return union_all(parts, tol);
}

Verdict check_tsc(const IfsSystem& s, const Tolerance& tol) {
    const Region C = attractor_hull(s).hull;
    std::vector<Region> img;
    for (const auto& m : s.maps()) img.push_back(C.transformed(m.map()));
    Verdict v;
    v.tolerance = tol.area_eps;
    v.status = Status::Holds;
    v.reason = "hull images overlap in measure zero";
    for (size_t j = 0; j < img.size(); ++j)
        for (size_t k = j + 1; k < img.size(); ++k) {
            const double m = boolean(img[j], img[k], BoolOp::Intersection, tol).measure();
            if (m > tol.area_eps && !v.violated()) {
                v.status = Status::Violated;
                v.indices = {static_cast<int>(j) + 1, static_cast<int>(k) + 1};
                v.margin = m;
                v.reason = "hull images " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + " overlap";
            }
        }
    return v;
}

Verdict check_feasible(const IfsSystem& s, const Region& K, const Tolerance& tol) {
    if (K.empty() || K.measure() <= tol.area_eps) throw InvalidArgument("open set is empty");
    if (K.dimension() != s.dimension()) throw InvalidArgument("open set dimension does not match the system");
    std::vector<Region> img;
    for (const auto& m : s.maps()) img.push_back(K.transformed(m.map()));
    Verdict v;
    v.tolerance = tol.area_eps;
    for (size_t j = 0; j < img.size(); ++j) {
        const double out = boolean(img[j], K, BoolOp::Difference, tol).measure();
        if (out > tol.area_eps) {
            v.status = Status::Violated;
            v.indices = {static_cast<int>(j) + 1};
            v.margin = out;
            v.reason = "containment fails: image " + std::to_string(j + 1) + " leaves O";
            return v;
        }
    }
    for (size_t j = 0; j < img.size(); ++j)
        for (size_t k = j + 1; k < img.size(); ++k) {
            const double m = boolean(img[j], img[k], BoolOp::Intersection, tol).measure();
            if (m > tol.area_eps) {
                v.status = Status::Violated;
                v.indices = {static_cast<int>(j) + 1, static_cast<int>(k) + 1};
                v.margin = m;
                v.reason = "disjointness fails: images " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                           " overlap";
                return v;
            }
        }
    v.status = Status::Holds;
    v.reason = "images nested in O and pairwise disjoint";
    return v;
}

Verdict check_nontrivial(const IfsSystem& s, const Region& K, const Tolerance& tol) {
    if (!check_feasible(s, K, tol).holds()) throw PreconditionFailed("open set is not feasible");
    const double left = boolean(K, apply_maps(s, K, tol), BoolOp::Difference, tol).measure();
    Verdict v;
    v.tolerance = tol.area_eps;
    v.margin = left;
    v.status = left > tol.area_eps ? Status::Holds : Status::Violated;
    v.reason = left > tol.area_eps ? "O is not covered by its images" : "trivial: images cover O";
    return v;
}

std::vector<Region> generators(const IfsSystem& s, const Region& K, const Tolerance& tol) {
    const Verdict nt = check_nontrivial(s, K, tol);
    if (!nt.holds()) throw PreconditionFailed("trivial system: no generators exist");
    const Region diff = boolean(K, apply_maps(s, K, tol), BoolOp::Difference, tol);
    std::vector<Region> out;
    for (auto& c : components(diff))
        if (c.measure() > tol.area_eps) out.push_back(std::move(c));
    if (out.empty()) throw PreconditionFailed("trivial system: no generators exist");
    return out;
}

TilesetLevel tileset_level(const IfsSystem& s, const Region& K, int k, const Tolerance& tol) {
    if (k < 0) throw InvalidArgument("level must be non-negative");
    Region cur = K;
    for (int i = 0; i < k; ++i) cur = apply_maps(s, cur, tol);
    const Region next = apply_maps(s, cur, tol);
    return {k, boolean(cur, next, BoolOp::Difference, tol)};
}

Tiling::Tiling(const IfsSystem& s, const Region& K, const Tolerance& tol) : sys_(s), K_(K), tol_(tol) {
    for (auto& g : fractile::generators(s, K, tol)) {
        Generator gen;
        gen.measure = g.measure();
        gen.inradius = inradius(g, tol);
        gen.region = std::move(g);
        gens_.push_back(std::move(gen));
    }
}

double Tiling::max_inradius() const {
    double r = 0.0;
    for (const auto& g : gens_) r = std::max(r, g.inradius);
    return r;
}

TileStream::TileStream(const Tiling& t, StopPolicy stop) : tiling_(&t), stop_(stop) {
    if (stop.max_depth < 0) throw InvalidArgument("max_depth must be non-negative");
    stop_.max_depth = std::min(stop_.max_depth, 18);
    base_diam_ = t.base().diameter();
    queue_.push_back({Word{}, Affine2::identity()});
}

std::optional<Tile> TileStream::next() {
    const IfsSystem& s = tiling_->system();
    while (true) {
        if (current_ && q_ < static_cast<int>(tiling_->generators().size())) {
            if (emitted_ >= stop_.tile_cap) {
                truncated_ = true;
                return std::nullopt;
            }
            Tile t;
            t.word = current_->word;
            t.q = q_++;
            t.ratio = s.all_similitudes() ? word_ratio(s, t.word) : std::abs(current_->map.linear.det());
            t.region = tiling_->generators()[t.q].region.transformed(current_->map);
            t.diameter = t.region.diameter();
            ++emitted_;
            return t;
        }
        if (current_) {
            const Pending& p = *current_;
            double wdiam;
            if (s.all_similitudes())
                wdiam = word_ratio(s, p.word) * base_diam_;
            else
                wdiam = tiling_->base().transformed(p.map).diameter();
            if (static_cast<int>(p.word.size()) < stop_.max_depth && wdiam >= stop_.min_diam) {
                for (size_t j = 0; j < s.size(); ++j)
                    queue_.push_back({p.word.extended(static_cast<int>(j)), p.map.then_inner(s[j].map())});
            }
            current_.reset();
        }
        if (queue_.empty()) return std::nullopt;
        current_ = std::move(queue_.front());
        queue_.pop_front();
        q_ = 0;
    }
}

TileStream enumerate_tiles(const Tiling& t, StopPolicy stop) { return TileStream(t, stop); }

BoundaryDimensionReport boundary_dimension_report(const IfsSystem& s, const Region& K) {
    BoundaryDimensionReport r;
    r.dim_bd_T0 = static_cast<double>(K.dimension() - 1);
    if (s.all_similitudes()) {
        r.dim_F = similarity_dimension(s).value;
    } else {
        r.partial = true;
        r.dim_F = std::numeric_limits<double>::quiet_NaN();
    }
    r.dim_bd_T = r.partial ? r.dim_bd_T0 : std::max(r.dim_F, r.dim_bd_T0);
    return r;
}

}  // namespace fractile
