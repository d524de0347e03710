#include "fractile/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "fractile/error.hpp"
#include "fractile/kernel.hpp"

namespace fractile {

Contraction Contraction::similitude(int dimension, double ratio, double theta, bool reflect, Vec2 translation) {
    if (dimension != 1 && dimension != 2) throw InvalidArgument("dimension must be 1 or 2");
    if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("similarity ratio must lie in (0, 1)");
    if (!std::isfinite(theta) || !std::isfinite(translation.x) || !std::isfinite(translation.y))
        throw InvalidArgument("non-finite map parameter");
    Contraction c;
    c.kind_ = MapKind::Similitude;
    c.dim_ = dimension;
    c.ratio_ = ratio;
    c.theta_ = theta;
    c.reflect_ = reflect;
    if (dimension == 1) {
        if (theta != 0.0) throw InvalidArgument("rotation is meaningless in dimension 1");
        c.map_.linear = {reflect ? -ratio : ratio, 0.0, 0.0, 0.0};
        c.map_.offset = {translation.x, 0.0};
    } else {
        Mat2 m = Mat2::rotation(theta);
        if (reflect) m = m * Mat2{1.0, 0.0, 0.0, -1.0};
        m = Mat2::scale(ratio) * m;
        c.map_.linear = m;
        c.map_.offset = translation;
    }
    return c;
}

Contraction Contraction::affine(int dimension, Mat2 linear, Vec2 translation) {
    if (dimension != 2) throw InvalidArgument("affine maps are supported in dimension 2 only");
    const double smax = linear.max_singular();
    if (!std::isfinite(smax) || !(smax < 1.0)) throw InvalidArgument("affine map is not a contraction (operator norm >= 1)");
    if (std::abs(linear.det()) < 1e-15) throw InvalidArgument("affine map is singular");
    Contraction c;
    c.kind_ = MapKind::Affine;
    c.dim_ = dimension;
    c.ratio_ = smax;
    c.map_ = {linear, translation};
    return c;
}

Vec2 Contraction::fixed_point() const {
    if (dim_ == 1) return {map_.offset.x / (1.0 - map_.linear.a), 0.0};
    const Mat2 im{1.0 - map_.linear.a, -map_.linear.b, -map_.linear.c, 1.0 - map_.linear.d};
    return im.inverse() * map_.offset;
}

IfsSystem::IfsSystem(int dimension, std::vector<Contraction> maps, std::string label)
    : dim_(dimension), maps_(std::move(maps)), label_(std::move(label)) {
    if (dimension != 1 && dimension != 2) throw InvalidArgument("dimension must be 1 or 2");
    if (maps_.size() < 2) throw InvalidArgument("a system needs at least two maps");
    for (const auto& m : maps_)
        if (m.dimension() != dim_) throw InvalidArgument("map dimension does not match system dimension");
}

bool IfsSystem::all_similitudes() const {
    return std::all_of(maps_.begin(), maps_.end(), [](const Contraction& c) { return c.kind() == MapKind::Similitude; });
}

double IfsSystem::max_ratio() const {
    double r = 0.0;
    for (const auto& m : maps_) r = std::max(r, m.ratio());
    return r;
}

std::vector<double> IfsSystem::ratios() const {
    std::vector<double> r;
    for (const auto& m : maps_) r.push_back(m.ratio());
    return r;
}

Word Word::from_one_based(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters) w.idx.push_back(l - 1);
    return w;
}

std::string Word::to_string() const {
    if (idx.empty()) return "-";
    std::string s;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(idx[i] + 1);
    }
    return s;
}

Affine2 compose(const IfsSystem& s, const Word& w) {
    Affine2 m;
    for (int j : w.idx) {
        if (j < 0 || static_cast<size_t>(j) >= s.size()) throw InvalidArgument("word letter out of range");
        m = m.then_inner(s[j].map());
    }
    return m;
}

double word_ratio(const IfsSystem& s, const Word& w) {
    if (s.all_similitudes()) {
        double r = 1.0;
        for (int j : w.idx) {
            if (j < 0 || static_cast<size_t>(j) >= s.size()) throw InvalidArgument("word letter out of range");
            r *= s[j].ratio();
        }
        return r;
    }
    return compose(s, w).linear.max_singular();
}

namespace {

double convex_distance(const Region& hull, Vec2 p) {
    if (hull.contains(p, 0.0)) return 0.0;
    return hull.boundary_distance(p);
}

void points_rec(const IfsSystem& s, const Affine2& m, int depth, Vec2 seed, std::vector<Vec2>& out) {
    if (depth == 0) {
        out.push_back(m(seed));
        return;
    }
    for (size_t j = 0; j < s.size(); ++j) points_rec(s, m.then_inner(s[j].map()), depth - 1, seed, out);
}

}  // namespace

PointCloud attractor_points(const IfsSystem& s, int depth, Vec2 seed, std::uint64_t point_budget) {
    if (depth < 0) throw InvalidArgument("depth must be non-negative");
    double count = std::pow(static_cast<double>(s.size()), depth);
    if (count > static_cast<double>(point_budget)) throw BudgetExceeded("point cloud exceeds the point budget");
    if (s.dimension() == 1) seed.y = 0.0;
    const Region hull = attractor_hull(s).hull;
    PointCloud pc;
    pc.points.reserve(static_cast<size_t>(count));
    points_rec(s, Affine2::identity(), depth, seed, pc.points);
    pc.err = std::pow(s.max_ratio(), depth) * (hull.diameter() + convex_distance(hull, seed));
    return pc;
}

namespace {

// Distance from p to the convex hull of ring (1, 2 or more CCW points).
double hull_ring_distance(const std::vector<Vec2>& ring, Vec2 p) {
    if (ring.size() == 1) return dist(ring[0], p);
    if (ring.size() == 2) return point_segment_distance(p, ring[0], ring[1]);
    bool inside = true;
    double edge = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < ring.size(); ++i) {
        const Vec2 a = ring[i], b = ring[(i + 1) % ring.size()];
        if (orient(a, b, p) < 0.0) inside = false;
        edge = std::min(edge, point_segment_distance(p, a, b));
    }
    return inside ? 0.0 : edge;
}

}  // namespace

HullResult attractor_hull(const IfsSystem& s, double tol, int max_iter) {
    const int dim = s.dimension();
    auto hull_of = [&](std::vector<Vec2> pts) {
        if (dim == 1) {
            double lo = pts[0].x, hi = pts[0].x;
            for (Vec2 p : pts) {
                lo = std::min(lo, p.x);
                hi = std::max(hi, p.x);
            }
            return lo == hi ? std::vector<Vec2>{{lo, 0.0}} : std::vector<Vec2>{{lo, 0.0}, {hi, 0.0}};
        }
        return convex_hull_ring(pts, 1e-14);
    };
    std::vector<Vec2> pts;
    for (const auto& m : s.maps()) pts.push_back(m.fixed_point());
    std::vector<Vec2> h = hull_of(pts);
    const double r = s.max_ratio();
    HullResult res;
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<Vec2> img;
        for (const auto& m : s.maps())
            for (Vec2 v : h) img.push_back(m(v));
        img.insert(img.end(), h.begin(), h.end());
        std::vector<Vec2> next = hull_of(img);
        double change = 0.0;
        for (Vec2 v : next) change = std::max(change, hull_ring_distance(h, v));
        h = std::move(next);
        res.iterations = it;
        res.change = change;
        if (change * r / (1.0 - r) <= tol) {
            if (dim == 1) {
                if (h.size() < 2) throw InvalidArgument("attractor is a single point");
                res.hull = Region::interval(h[0].x, h[1].x);
            } else {
                if (h.size() < 3) throw InvalidArgument("attractor hull is degenerate (no interior)");
                res.hull = Region::polygon(h);
            }
            return res;
        }
    }
    throw Inconclusive("attractor hull iteration did not converge");
}

DimensionResult similarity_dimension(const IfsSystem& s) {
    if (!s.all_similitudes()) throw Unsupported("similarity dimension needs similitudes");
    const auto r = s.ratios();
    auto f = [&](double t) {
        double acc = 0.0;
        for (double x : r) acc += std::pow(x, t);
        return acc - 1.0;
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) > 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    const double v = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
    return {v, std::abs(f(v))};
}

AttractorDistance::AttractorDistance(const IfsSystem& s, double hull_tol)
    : sys_(s), hull_(attractor_hull(s, hull_tol).hull), hull_pts_(hull_.vertices()) {}

namespace {

struct Node {
    double lb;
    Affine2 m;
    bool operator>(const Node& o) const { return lb > o.lb; }
};

double image_hull_distance(const std::vector<Vec2>& hv, int dim, const Affine2& m, Vec2 x, double* ub) {
    double best_ub = std::numeric_limits<double>::infinity();
    if (dim == 1) {
        const double a = m(hv.front()).x, b = m(hv.back()).x;
        best_ub = std::min(std::abs(x.x - a), std::abs(x.x - b));
        *ub = best_ub;
        const double lo = std::min(a, b), hi = std::max(a, b);
        return std::max({lo - x.x, 0.0, x.x - hi});
    }
    const size_t n = hv.size();
    Vec2 img[64];
    std::vector<Vec2> big;
    Vec2* v = img;
    if (n > 64) {
        big.resize(n);
        v = big.data();
    }
    for (size_t i = 0; i < n; ++i) {
        v[i] = m(hv[i]);
        best_ub = std::min(best_ub, dist(x, v[i]));
    }
    *ub = best_ub;
    const double sgn = m.linear.det() < 0.0 ? -1.0 : 1.0;
    bool inside = true;
    double edge = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % n];
        if (sgn * orient(a, b, x) < 0.0) inside = false;
        edge = std::min(edge, point_segment_distance(x, a, b));
    }
    return inside ? 0.0 : edge;
}

}  // namespace

DistanceBounds AttractorDistance::bounds(Vec2 x, double precision, double decide_below, double decide_above) const {
    const int dim = sys_.dimension();
    if (dim == 1) x.y = 0.0;
    std::vector<Vec2> hv = hull_pts_;
    if (dim == 1) hv = {hull_pts_.front(), hull_pts_.back()};
    double ub;
    const double lb0 = image_hull_distance(hv, dim, Affine2::identity(), x, &ub);
    double best_ub = ub;
    double pruned_min = std::numeric_limits<double>::infinity();
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> pq;
    pq.push({lb0, Affine2::identity()});
    const double slack = 1e-12;
    size_t expansions = 0;
    while (!pq.empty()) {
        const Node top = pq.top();
        const double lo = std::min(top.lb, pruned_min);
        if (best_ub <= decide_below || lo > decide_above || lo >= best_ub - precision || ++expansions > 2'000'000)
            return {std::max(0.0, lo - slack), best_ub};
        pq.pop();
        for (const auto& c : sys_.maps()) {
            const Affine2 m = top.m.then_inner(c.map());
            double cub;
            const double clb = std::max(top.lb, image_hull_distance(hv, dim, m, x, &cub));
            best_ub = std::min(best_ub, cub);
            if (clb >= best_ub - precision)
                pruned_min = std::min(pruned_min, clb);
            else
                pq.push({clb, m});
        }
    }
    return {std::max(0.0, std::min(pruned_min, best_ub) - slack), best_ub};
}

}  // namespace fractile
