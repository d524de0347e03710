#include "fractile/grid_volume.hpp"

#include <algorithm>
#include <cmath>

#include "fractile/error.hpp"
#include "fractile/tiling.hpp"
#include "parallel.hpp"

namespace fractile {

SegmentField::SegmentField(int dimension, std::vector<std::pair<Vec2, Vec2>> segments)
    : dim_(dimension), segs_(std::move(segments)) {
    if (segs_.empty()) throw InvalidArgument("distance field needs a non-empty target");
    for (const auto& [a, b] : segs_) {
        box_.add(a);
        box_.add(b);
    }
    const double w = std::max(box_.width(), 1e-12), h = std::max(box_.height(), 1e-12);
    const double n = static_cast<double>(segs_.size());
    cell_ = dim_ == 1 ? std::max(w / n, 1e-9) : std::max(std::sqrt(w * h / n), std::max(w, h) / 1024.0);
    nx_ = std::clamp(static_cast<int>(std::ceil(w / cell_)), 1, 4096);
    ny_ = dim_ == 1 ? 1 : std::clamp(static_cast<int>(std::ceil(h / cell_)), 1, 4096);
    cell_ = std::max(w / nx_, dim_ == 1 ? 0.0 : h / ny_);
    grid_.resize(static_cast<size_t>(nx_) * ny_);
    auto cx = [&](double x) { return std::clamp(static_cast<int>(std::floor((x - box_.lo.x) / cell_)), 0, nx_ - 1); };
    auto cy = [&](double y) { return std::clamp(static_cast<int>(std::floor((y - box_.lo.y) / cell_)), 0, ny_ - 1); };
    for (size_t i = 0; i < segs_.size(); ++i) {
        const auto [a, b] = segs_[i];
        for (int ix = cx(std::min(a.x, b.x)); ix <= cx(std::max(a.x, b.x)); ++ix)
            for (int iy = cy(std::min(a.y, b.y)); iy <= cy(std::max(a.y, b.y)); ++iy)
                grid_[static_cast<size_t>(iy) * nx_ + ix].push_back(static_cast<int>(i));
    }
}

SegmentField SegmentField::boundary_of(const Region& r) { return SegmentField(r.dimension(), r.boundary_segments()); }

DistanceBounds SegmentField::bounds(Vec2 x, double decide_below, double decide_above) const {
    if (dim_ == 1) x.y = 0.0;
    const int ix0 = std::clamp(static_cast<int>(std::floor((x.x - box_.lo.x) / cell_)), 0, nx_ - 1);
    const int iy0 = std::clamp(static_cast<int>(std::floor((x.y - box_.lo.y) / cell_)), 0, ny_ - 1);
    // Distance from x to the clamped start cell lower-bounds everything at ring >= 1 less a ring width.
    const double base = box_.distance(x);
    double best = std::numeric_limits<double>::infinity();
    const int rmax = std::max(nx_, ny_);
    for (int r = 0; r <= rmax; ++r) {
        for (int iy = iy0 - r; iy <= iy0 + r; ++iy) {
            if (iy < 0 || iy >= ny_) continue;
            const bool edge_row = (iy == iy0 - r || iy == iy0 + r);
            for (int ix = ix0 - r; ix <= ix0 + r; ix += (edge_row ? 1 : 2 * std::max(r, 1))) {
                if (ix < 0 || ix >= nx_) continue;
                for (int si : grid_[static_cast<size_t>(iy) * nx_ + ix])
                    best = std::min(best, point_segment_distance(x, segs_[si].first, segs_[si].second));
                if (r == 0) break;
            }
        }
        const double lb = std::max(base, static_cast<double>(r) * cell_);
        if (best <= lb || best <= decide_below) return {best, best};
        if (lb > decide_above) return {lb, best};
    }
    return {best, best};
}

namespace {

std::vector<std::pair<Vec2, Vec2>> point_segments(const PointCloud& c) {
    std::vector<std::pair<Vec2, Vec2>> s;
    s.reserve(c.points.size());
    for (Vec2 p : c.points) s.push_back({p, p});
    return s;
}

}  // namespace

PointCloudField::PointCloudField(int dimension, const PointCloud& cloud) : field_(dimension, point_segments(cloud)) {}

AttractorField::AttractorField(const IfsSystem& s, double precision) : dist_(s), precision_(precision) {}

TilingBoundaryField::TilingBoundaryField(const Tiling& t) : tiling_(&t), rho_max_(t.max_inradius()) {
    for (const auto& m : t.system().maps()) inv_.push_back(m.map().inverse());
}

int TilingBoundaryField::dimension() const { return tiling_->system().dimension(); }

Box TilingBoundaryField::extent() const { return tiling_->base().bbox(); }

DistanceBounds TilingBoundaryField::bounds(Vec2 x, double decide_below, double /*decide_above*/) const {
    const IfsSystem& s = tiling_->system();
    const Region& K = tiling_->base();
    if (s.dimension() == 1) x.y = 0.0;
    if (!K.contains(x, 0.0)) return {0.0, 0.0};
    const bool sim = s.all_similitudes();
    Vec2 y = x;
    Affine2 M = Affine2::identity();
    double scale = 1.0;
    for (int depth = 0; depth < 64; ++depth) {
        for (const auto& g : tiling_->generators()) {
            if (!g.region.contains(y, 0.0)) continue;
            double d;
            if (sim)
                d = scale * g.region.boundary_distance(y);
            else
                d = g.region.transformed(M).boundary_distance(x);
            return {d, d};
        }
        const double hi_tile = scale * rho_max_;
        if (hi_tile <= decide_below) return {0.0, hi_tile};
        int found = -1;
        for (size_t j = 0; j < inv_.size() && found < 0; ++j)
            if (K.contains(inv_[j](y), 0.0)) found = static_cast<int>(j);
        if (found < 0) {
            // Only boundary points of the tile set remain here.
            const double hi = sim ? scale * K.boundary_distance(y) : K.transformed(M).boundary_distance(x);
            return {0.0, hi};
        }
        y = inv_[found](y);
        M = M.then_inner(s[found].map());
        scale *= s[found].ratio();
    }
    return {0.0, scale * rho_max_};
}

namespace {

enum class Cls { In, Out, Mixed };

struct Counter {
    std::uint64_t count = 0;
    std::uint64_t mixed = 0;
};

class GridRunner {
public:
    GridRunner(const TubeQuery& q, double cell) : q_(q), cell_(cell), dim_(q.field->dimension()) {
        Box w = q.field->extent().inflated(q.eps + 2.0 * cell);
        if (q.side == Side::Inside && q.reference) {
            const Box r = q.reference->bbox().inflated(2.0 * cell);
            w.lo.x = std::max(w.lo.x, r.lo.x);
            w.lo.y = std::max(w.lo.y, r.lo.y);
            w.hi.x = std::min(w.hi.x, r.hi.x);
            w.hi.y = std::min(w.hi.y, r.hi.y);
        }
        origin_ = w.lo;
        if (dim_ == 1) origin_.y = -0.5 * cell;
        const double nx = std::ceil(std::max(w.width(), cell) / cell);
        const double ny = dim_ == 1 ? 1.0 : std::ceil(std::max(w.height(), cell) / cell);
        if (nx * ny > 4e12) throw BudgetExceeded("grid too fine for the window");
        levels_ = 0;
        while (static_cast<double>(std::int64_t{1} << levels_) < std::max(nx, ny)) ++levels_;
    }

    Counter run() {
        // Split the root into blocks for the workers; reduce in block order.
        const int split = std::min(levels_, dim_ == 1 ? 8 : 4);
        const std::int64_t per = std::int64_t{1} << split;
        const std::int64_t size = std::int64_t{1} << (levels_ - split);
        const std::size_t nblocks = static_cast<std::size_t>(dim_ == 1 ? per : per * per);
        std::vector<Counter> parts(nblocks);
        detail::parallel_for(nblocks, [&](std::size_t b) {
            const std::int64_t bx = static_cast<std::int64_t>(b) % per;
            const std::int64_t by = dim_ == 1 ? 0 : static_cast<std::int64_t>(b) / per;
            node(bx * size, by * size, size, parts[b]);
        });
        Counter total;
        for (const auto& p : parts) {
            total.count += p.count;
            total.mixed += p.mixed;
        }
        return total;
    }

private:
    Cls classify(Vec2 c, double h) const {
        bool mixed = false;
        if (q_.side != Side::Any && q_.reference) {
            const bool inside = q_.reference->contains(c, 0.0);
            const double bd = q_.reference->boundary_distance(c);
            if (bd > h) {
                if ((q_.side == Side::Inside) != inside) return Cls::Out;
            } else {
                mixed = true;
            }
        }
        const DistanceBounds b = q_.field->bounds(c, q_.eps - h, q_.eps + h);
        if (b.lo - h > q_.eps) return Cls::Out;
        if (b.hi + h <= q_.eps && !mixed) return Cls::In;
        return Cls::Mixed;
    }

    bool center_in(Vec2 c) const {
        if (q_.side != Side::Any && q_.reference) {
            const bool inside = q_.reference->contains(c, 0.0);
            if ((q_.side == Side::Inside) != inside) return false;
        }
        const DistanceBounds b = q_.field->bounds(c, q_.eps, q_.eps);
        if (b.hi <= q_.eps) return true;
        if (b.lo > q_.eps) return false;
        return 0.5 * (b.lo + b.hi) <= q_.eps;
    }

    void node(std::int64_t ix, std::int64_t iy, std::int64_t size, Counter& out) const {
        const double half = 0.5 * static_cast<double>(size) * cell_;
        const Vec2 c{origin_.x + static_cast<double>(ix) * cell_ + half,
                     origin_.y + static_cast<double>(iy) * cell_ + half};
        const double h = dim_ == 1 ? half : half * std::sqrt(2.0);
        const Cls k = classify(c, h);
        const std::uint64_t cells = static_cast<std::uint64_t>(size) * static_cast<std::uint64_t>(dim_ == 1 ? 1 : size);
        if (k == Cls::Out) return;
        if (k == Cls::In) {
            out.count += cells;
            return;
        }
        if (size == 1) {
            ++out.mixed;
            if (center_in(c)) ++out.count;
            return;
        }
        const std::int64_t s2 = size / 2;
        node(ix, iy, s2, out);
        node(ix + s2, iy, s2, out);
        if (dim_ == 2) {
            node(ix, iy + s2, s2, out);
            node(ix + s2, iy + s2, s2, out);
        }
    }

    TubeQuery q_;
    double cell_;
    int dim_;
    Vec2 origin_;
    int levels_ = 0;
};

}  // namespace

GridVolume grid_tube_volume(const TubeQuery& q, double cell) {
    if (!q.field) throw InvalidArgument("tube query without a target");
    if (!(cell > 0.0)) throw InvalidArgument("cell must be positive");
    if (!(q.eps >= 0.0)) throw InvalidArgument("eps must be non-negative");
    if (q.side != Side::Any && !q.reference) throw InvalidArgument("side restriction needs a reference region");
    GridRunner runner(q, cell);
    const Counter c = runner.run();
    const double unit = q.field->dimension() == 1 ? cell : cell * cell;
    GridVolume g;
    g.cell = cell;
    g.value = static_cast<double>(c.count) * unit;
    g.mixed_cells = c.mixed;
    g.error_bar = static_cast<double>(c.mixed) * unit;
    g.precision_warning = cell > q.eps / 4.0;
    return g;
}

GridVolume grid_tube_volume_refined(const TubeQuery& q, double cell) {
    const GridVolume coarse = grid_tube_volume(q, cell);
    GridVolume fine = grid_tube_volume(q, 0.5 * cell);
    fine.error_bar += std::abs(fine.value - coarse.value);
    fine.precision_warning = coarse.precision_warning;
    return fine;
}

}  // namespace fractile
