#include "fractile/region.hpp"

#include <algorithm>
#include <cmath>

#include "fractile/error.hpp"

namespace fractile {

double signed_area(const Ring& ring) {
    const size_t n = ring.size();
    if (n < 3) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += cross(ring[i], ring[(i + 1) % n]);
    return 0.5 * s;
}

double ring_perimeter(const Ring& ring) {
    double s = 0.0;
    for (size_t i = 0; i < ring.size(); ++i) s += dist(ring[i], ring[(i + 1) % ring.size()]);
    return s;
}

namespace {

void orient_ring(Ring& r, bool ccw) {
    if ((signed_area(r) > 0.0) != ccw) std::reverse(r.begin(), r.end());
}

// Crossing-number parity test; boundary handling is left to the caller.
bool ring_contains(const Ring& r, Vec2 p) {
    bool in = false;
    const size_t n = r.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = r[i], b = r[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) in = !in;
        }
    }
    return in;
}

double ring_distance(const Ring& r, Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < r.size(); ++i) best = std::min(best, point_segment_distance(p, r[i], r[(i + 1) % r.size()]));
    return best;
}

}  // namespace

Region Region::polygon(Ring outer, std::vector<Ring> holes) {
    Face f{std::move(outer), std::move(holes)};
    return from_faces({std::move(f)});
}

Region Region::from_faces(std::vector<Face> faces) {
    Region r(2);
    for (auto& f : faces) {
        if (f.outer.size() < 3) throw InvalidArgument("polygon ring needs at least 3 vertices");
        orient_ring(f.outer, true);
        for (auto& h : f.holes) {
            if (h.size() < 3) throw InvalidArgument("hole ring needs at least 3 vertices");
            orient_ring(h, false);
        }
        r.faces_.push_back(std::move(f));
    }
    return r;
}

Region Region::from_intervals(std::vector<Interval> intervals, double coord_eps) {
    Region r(1);
    for (const auto& iv : intervals)
        if (!(iv.lo <= iv.hi)) throw InvalidArgument("interval with lo > hi");
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    for (const auto& iv : intervals) {
        if (!r.intervals_.empty() && iv.lo <= r.intervals_.back().hi + coord_eps)
            r.intervals_.back().hi = std::max(r.intervals_.back().hi, iv.hi);
        else
            r.intervals_.push_back(iv);
    }
    return r;
}

Region Region::box(const Box& b) {
    return polygon({b.lo, {b.hi.x, b.lo.y}, b.hi, {b.lo.x, b.hi.y}});
}

double Region::measure() const {
    double s = 0.0;
    if (dim_ == 1) {
        for (const auto& iv : intervals_) s += iv.length();
        return s;
    }
    for (const auto& f : faces_) {
        s += signed_area(f.outer);
        for (const auto& h : f.holes) s += signed_area(h);
    }
    return s;
}

Box Region::bbox() const {
    Box b;
    if (dim_ == 1) {
        for (const auto& iv : intervals_) {
            b.add(Vec2{iv.lo, 0.0});
            b.add(Vec2{iv.hi, 0.0});
        }
        return b;
    }
    for (const auto& f : faces_)
        for (Vec2 p : f.outer) b.add(p);
    return b;
}

double Region::diameter() const {
    if (dim_ == 1) return empty() ? 0.0 : intervals_.back().hi - intervals_.front().lo;
    std::vector<Vec2> pts;
    for (const auto& f : faces_) pts.insert(pts.end(), f.outer.begin(), f.outer.end());
    double d = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, dist(pts[i], pts[j]));
    return d;
}

Region Region::transformed(const Affine2& f) const {
    if (dim_ == 1) {
        std::vector<Interval> out;
        for (const auto& iv : intervals_) {
            const double a = f(Vec2{iv.lo, 0.0}).x, b = f(Vec2{iv.hi, 0.0}).x;
            out.push_back({std::min(a, b), std::max(a, b)});
        }
        return from_intervals(std::move(out), 0.0);
    }
    std::vector<Face> out;
    out.reserve(faces_.size());
    for (const auto& face : faces_) {
        Face g;
        g.outer.reserve(face.outer.size());
        for (Vec2 p : face.outer) g.outer.push_back(f(p));
        for (const auto& h : face.holes) {
            Ring hh;
            hh.reserve(h.size());
            for (Vec2 p : h) hh.push_back(f(p));
            g.holes.push_back(std::move(hh));
        }
        out.push_back(std::move(g));
    }
    return from_faces(std::move(out));
}

std::vector<std::pair<Vec2, Vec2>> Region::boundary_segments() const {
    std::vector<std::pair<Vec2, Vec2>> segs;
    if (dim_ == 1) {
        for (const auto& iv : intervals_) {
            segs.push_back({{iv.lo, 0.0}, {iv.lo, 0.0}});
            segs.push_back({{iv.hi, 0.0}, {iv.hi, 0.0}});
        }
        return segs;
    }
    auto add = [&](const Ring& r) {
        for (size_t i = 0; i < r.size(); ++i) segs.push_back({r[i], r[(i + 1) % r.size()]});
    };
    for (const auto& f : faces_) {
        add(f.outer);
        for (const auto& h : f.holes) add(h);
    }
    return segs;
}

std::vector<Vec2> Region::vertices() const {
    std::vector<Vec2> v;
    if (dim_ == 1) {
        for (const auto& iv : intervals_) {
            v.push_back({iv.lo, 0.0});
            v.push_back({iv.hi, 0.0});
        }
        return v;
    }
    for (const auto& f : faces_) {
        v.insert(v.end(), f.outer.begin(), f.outer.end());
        for (const auto& h : f.holes) v.insert(v.end(), h.begin(), h.end());
    }
    return v;
}

double Region::boundary_distance(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    if (dim_ == 1) {
        for (const auto& iv : intervals_) best = std::min({best, std::abs(p.x - iv.lo), std::abs(p.x - iv.hi)});
        return best;
    }
    for (const auto& f : faces_) {
        best = std::min(best, ring_distance(f.outer, p));
        for (const auto& h : f.holes) best = std::min(best, ring_distance(h, p));
    }
    return best;
}

bool Region::contains(Vec2 p, double coord_eps) const {
    if (dim_ == 1) {
        for (const auto& iv : intervals_)
            if (p.x >= iv.lo - coord_eps && p.x <= iv.hi + coord_eps) return true;
        return false;
    }
    for (const auto& f : faces_) {
        if (ring_contains(f.outer, p)) {
            bool in_hole = false;
            for (const auto& h : f.holes)
                if (ring_contains(h, p) && ring_distance(h, p) > coord_eps) in_hole = true;
            if (!in_hole) return true;
        } else if (ring_distance(f.outer, p) <= coord_eps) {
            return true;
        }
    }
    return false;
}

bool Region::contains_interior(Vec2 p, double coord_eps) const {
    return contains(p, 0.0) && boundary_distance(p) > coord_eps;
}

bool Region::is_convex(double coord_eps) const {
    if (dim_ == 1) return intervals_.size() == 1;
    if (faces_.size() != 1 || !faces_[0].holes.empty()) return false;
    const Ring& r = faces_[0].outer;
    const size_t n = r.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = r[(i + n - 1) % n], b = r[i], c = r[(i + 1) % n];
        const double l = std::max(dist(a, b), dist(b, c));
        if (l > 0.0 && orient(a, b, c) / l < -coord_eps) return false;
    }
    return true;
}

}  // namespace fractile
