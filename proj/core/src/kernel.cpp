#include "fractile/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arrangement.hpp"
#include "fractile/error.hpp"

namespace fractile {

namespace {

bool select(BoolOp op, bool a, bool b) {
    switch (op) {
        case BoolOp::Union: return a || b;
        case BoolOp::Intersection: return a && b;
        case BoolOp::Difference: return a && !b;
        case BoolOp::SymmetricDifference: return a != b;
    }
    return false;
}

void require_same_dimension(const Region& a, const Region& b) {
    if (a.dimension() != b.dimension()) throw InvalidArgument("regions of different dimension");
}

Region boolean_1d(const Region& a, const Region& b, BoolOp op, const Tolerance& tol) {
    std::vector<double> cuts;
    for (const auto& iv : a.intervals()) cuts.insert(cuts.end(), {iv.lo, iv.hi});
    for (const auto& iv : b.intervals()) cuts.insert(cuts.end(), {iv.lo, iv.hi});
    std::sort(cuts.begin(), cuts.end());
    std::vector<Interval> out;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi - lo <= tol.coord_eps) continue;
        const Vec2 mid{0.5 * (lo + hi), 0.0};
        if (!select(op, a.contains(mid, 0.0), b.contains(mid, 0.0))) continue;
        if (!out.empty() && lo <= out.back().hi + tol.coord_eps)
            out.back().hi = hi;
        else
            out.push_back({lo, hi});
    }
    std::erase_if(out, [&](const Interval& iv) { return iv.length() <= tol.area_eps; });
    return Region::from_intervals(std::move(out), tol.coord_eps);
}

// Sutherland-Hodgman clip of a convex ring against {x : dot(n, x) >= c}.
Ring clip_halfplane(const Ring& poly, Vec2 n, double c) {
    Ring out;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const Vec2 p = poly[i], q = poly[(i + 1) % m];
        const double fp = dot(n, p) - c, fq = dot(n, q) - c;
        if (fp >= 0.0) out.push_back(p);
        if ((fp >= 0.0) != (fq >= 0.0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
    }
    return out;
}

Ring erode_convex_ring(const Ring& ring, double eps) {
    Ring cur = ring;
    const size_t m = ring.size();
    for (size_t i = 0; i < m && cur.size() >= 3; ++i) {
        const Vec2 a = ring[i], b = ring[(i + 1) % m];
        const Vec2 d = b - a;
        const double l = norm(d);
        if (l == 0.0) continue;
        const Vec2 n{-d.y / l, d.x / l};  // inward for a CCW ring
        cur = clip_halfplane(cur, n, dot(n, a) + eps);
    }
    if (cur.size() < 3 || signed_area(cur) <= 0.0) return {};
    return cur;
}

constexpr int kDiskSegments = 256;

Region erode_face_general(const Face& face, double eps, const Tolerance& tol) {
    detail::Arrangement arr(tol.coord_eps, 2);
    arr.add_ring(face.outer, 0);
    for (const auto& h : face.holes) arr.add_ring(h, 0);
    auto add_ring_cutters = [&](const Ring& r) {
        const size_t m = r.size();
        for (size_t i = 0; i < m; ++i) {
            const Vec2 a = r[i], b = r[(i + 1) % m];
            const Vec2 d = b - a;
            const double l = norm(d);
            if (l == 0.0) continue;
            const Vec2 n = (eps / l) * Vec2{-d.y, d.x};
            const Ring rect{a - n, b - n, b + n, a + n};
            arr.add_ring(rect, 1);
            // Interior lies left of every ring edge, so a right turn is a reflex corner.
            const Vec2 c = r[(i + 2) % m];
            if (orient(a, b, c) < 0.0) {
                const double rad = eps / std::cos(std::numbers::pi / kDiskSegments);
                Ring disk;
                for (int k = 0; k < kDiskSegments; ++k) {
                    const double t = 2.0 * std::numbers::pi * k / kDiskSegments;
                    disk.push_back(b + rad * Vec2{std::cos(t), std::sin(t)});
                }
                arr.add_ring(disk, 1);
            }
        }
    };
    add_ring_cutters(face.outer);
    for (const auto& h : face.holes) add_ring_cutters(h);
    arr.build();
    return arr.extract([&](int f) { return arr.winding(f, 0) > 0 && arr.winding(f, 1) == 0; }, tol.area_eps, nullptr);
}

}  // namespace

Region boolean(const Region& a, const Region& b, BoolOp op, const Tolerance& tol, OperationLog* log) {
    require_same_dimension(a, b);
    if (a.dimension() == 1) return boolean_1d(a, b, op, tol);
    detail::Arrangement arr(tol.coord_eps, 2);
    arr.add_region(a, 0);
    arr.add_region(b, 1);
    arr.build();
    return arr.extract([&](int f) { return select(op, arr.winding(f, 0) > 0, arr.winding(f, 1) > 0); }, tol.area_eps, log);
}

Region union_all(std::span<const Region> parts, const Tolerance& tol, OperationLog* log) {
    if (parts.empty()) throw InvalidArgument("union of no regions");
    const int dim = parts[0].dimension();
    for (const auto& p : parts)
        if (p.dimension() != dim) throw InvalidArgument("regions of different dimension");
    if (dim == 1) {
        std::vector<Interval> all;
        for (const auto& p : parts) all.insert(all.end(), p.intervals().begin(), p.intervals().end());
        std::erase_if(all, [&](const Interval& iv) { return iv.length() <= tol.area_eps; });
        return Region::from_intervals(std::move(all), tol.coord_eps);
    }
    detail::Arrangement arr(tol.coord_eps, 1);
    for (const auto& p : parts) arr.add_region(p, 0);
    arr.build();
    return arr.extract([&](int f) { return arr.winding(f, 0) > 0; }, tol.area_eps, log);
}

std::vector<Region> components(const Region& r) {
    std::vector<Region> out;
    if (r.dimension() == 1) {
        for (const auto& iv : r.intervals()) out.push_back(Region::interval(iv.lo, iv.hi));
        return out;
    }
    for (const auto& f : r.faces()) out.push_back(Region::from_faces({f}));
    auto anchor = [](const Region& x) {
        Vec2 best = x.faces()[0].outer[0];
        for (Vec2 p : x.faces()[0].outer)
            if (p.y < best.y || (p.y == best.y && p.x < best.x)) best = p;
        return best;
    };
    std::stable_sort(out.begin(), out.end(), [&](const Region& x, const Region& y) {
        const Vec2 a = anchor(x), b = anchor(y);
        return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
    return out;
}

Region fill_holes_of_union(std::span<const Region> parts, const Tolerance& tol, OperationLog* log) {
    if (parts.empty()) throw InvalidArgument("union of no regions");
    if (parts[0].dimension() == 1) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& p : parts)
            for (const auto& iv : p.intervals()) {
                lo = std::min(lo, iv.lo);
                hi = std::max(hi, iv.hi);
            }
        return Region::interval(lo, hi);
    }
    detail::Arrangement arr(tol.coord_eps, 1);
    for (const auto& p : parts) arr.add_region(p, 0);
    arr.build();
    // Every arrangement edge lies in the closed cover, so each bounded face is either
    // covered or a bounded complementary component.
    return arr.extract([](int) { return true; }, tol.area_eps, log);
}

std::vector<Vec2> convex_hull_ring(std::span<const Vec2> pts_in, double coord_eps) {
    std::vector<Vec2> pts(pts_in.begin(), pts_in.end());
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    double scale = 0.0;
    for (Vec2 p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double thr = coord_eps * std::max(scale, 1.0);
    std::vector<Vec2> h(2 * pts.size());
    size_t k = 0;
    auto keep = [&](Vec2 a, Vec2 b, Vec2 c) {
        const double l = dist(a, c);
        return l > 0.0 && orient(a, b, c) / l > thr;
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && !keep(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && !keep(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() == 2 && dist(h[0], h[1]) == 0.0) h.pop_back();
    return h;
}

Region convex_hull(std::span<const Vec2> pts, int dimension, double coord_eps) {
    if (pts.empty()) throw InvalidArgument("hull of no points");
    if (dimension == 1) {
        double lo = pts[0].x, hi = pts[0].x;
        for (Vec2 p : pts) {
            lo = std::min(lo, p.x);
            hi = std::max(hi, p.x);
        }
        return Region::interval(lo, hi);
    }
    auto ring = convex_hull_ring(pts, coord_eps);
    if (ring.size() < 3) throw InvalidArgument("points span no area");
    return Region::polygon(std::move(ring));
}

Region convex_hull(const Region& r, double coord_eps) {
    const auto v = r.vertices();
    return convex_hull(v, r.dimension(), coord_eps);
}

Region erode(const Region& r, double eps, const Tolerance& tol) {
    if (!(eps >= 0.0)) throw InvalidArgument("erosion radius must be non-negative");
    if (eps == 0.0) return r;
    if (r.dimension() == 1) {
        std::vector<Interval> out;
        for (const auto& iv : r.intervals())
            if (iv.lo + eps <= iv.hi - eps) out.push_back({iv.lo + eps, iv.hi - eps});
        Region res(1);
        res = Region::from_intervals(std::move(out), 0.0);
        return res;
    }
    std::vector<Face> faces;
    for (const auto& f : r.faces()) {
        if (f.holes.empty() && Region::from_faces({f}).is_convex(tol.coord_eps)) {
            Ring e = erode_convex_ring(f.outer, eps);
            if (!e.empty() && signed_area(e) > tol.area_eps) faces.push_back({std::move(e), {}});
            continue;
        }
        Region g = erode_face_general(f, eps, tol);
        for (const auto& gf : g.faces()) faces.push_back(gf);
    }
    return Region::from_faces(std::move(faces));
}

double inner_tube_volume(const Region& r, double eps, const Tolerance& tol) {
    return r.measure() - erode(r, eps, tol).measure();
}

double outer_tube_volume_convex(const Region& r, double eps, double coord_eps) {
    if (!(eps >= 0.0)) throw InvalidArgument("tube radius must be non-negative");
    if (!r.is_convex(coord_eps)) throw Unsupported("region is not convex; use the grid estimate");
    if (r.dimension() == 1) return 2.0 * eps;
    return ring_perimeter(r.faces()[0].outer) * eps + std::numbers::pi * eps * eps;
}

namespace {

// Largest inscribed disk of a convex ring: its centre is equidistant from three edge lines.
double convex_inradius(const Ring& ring) {
    const size_t n = ring.size();
    std::vector<Vec2> nrm(n);
    std::vector<double> off(n);
    const double orient_sign = signed_area(ring) > 0.0 ? 1.0 : -1.0;
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = ring[i], b = ring[(i + 1) % n];
        const Vec2 d = (1.0 / dist(a, b)) * (b - a);
        nrm[i] = orient_sign * Vec2{-d.y, d.x};
        off[i] = dot(nrm[i], a);
        scale = std::max({scale, std::abs(a.x), std::abs(a.y)});
    }
    double best = 0.0;
    const double slack = 1e-12 * std::max(scale, 1.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                // n_m . x - r = off_m for m in {i, j, k}
                const double M[3][3] = {{nrm[i].x, nrm[i].y, -1.0}, {nrm[j].x, nrm[j].y, -1.0}, {nrm[k].x, nrm[k].y, -1.0}};
                const double rhs[3] = {off[i], off[j], off[k]};
                const double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                                   M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                                   M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
                if (std::abs(det) < 1e-12) continue;
                double sol[3];
                for (int c = 0; c < 3; ++c) {
                    double A[3][3];
                    for (int rr = 0; rr < 3; ++rr)
                        for (int cc = 0; cc < 3; ++cc) A[rr][cc] = cc == c ? rhs[rr] : M[rr][cc];
                    sol[c] = (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                              A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                              A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])) /
                             det;
                }
                const Vec2 x{sol[0], sol[1]};
                const double rad = sol[2];
                if (rad <= best) continue;
                bool ok = true;
                for (size_t m = 0; m < n && ok; ++m) ok = dot(nrm[m], x) - off[m] >= rad - slack;
                if (ok) best = rad;
            }
    return best;
}

}  // namespace

double inradius(const Region& r, const Tolerance& tol) {
    if (r.empty()) return 0.0;
    if (r.dimension() == 1) {
        double best = 0.0;
        for (const auto& iv : r.intervals()) best = std::max(best, 0.5 * iv.length());
        return best;
    }
    const bool convex = r.is_convex(tol.coord_eps);
    if (convex && r.faces()[0].outer.size() <= 64) return convex_inradius(r.faces()[0].outer);
    double lo = 0.0, hi = 0.5 * r.diameter();
    const int iters = convex ? 200 : 48;
    Tolerance t = tol;
    t.area_eps = 0.0;
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        bool nonempty;
        if (convex)
            nonempty = !erode_convex_ring(r.faces()[0].outer, mid).empty();
        else
            nonempty = erode(r, mid, t).measure() > 0.0;
        (nonempty ? lo : hi) = mid;
    }
    return lo;
}

std::vector<Vec2> boundary_sample(const Region& r, double step) {
    if (!(step > 0.0)) throw InvalidArgument("sample step must be positive");
    std::vector<Vec2> out;
    if (r.dimension() == 1) return r.vertices();
    auto ring = [&](const Ring& rg) {
        for (size_t i = 0; i < rg.size(); ++i) {
            const Vec2 a = rg[i], b = rg[(i + 1) % rg.size()];
            const int m = std::max(1, static_cast<int>(std::ceil(dist(a, b) / step)));
            for (int k = 0; k < m; ++k) out.push_back(a + (static_cast<double>(k) / m) * (b - a));
        }
    };
    for (const auto& f : r.faces()) {
        ring(f.outer);
        for (const auto& h : f.holes) ring(h);
    }
    return out;
}

namespace {

double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    double cmax = 0.0;
    for (Vec2 p : a) {
        double cmin = std::numeric_limits<double>::infinity();
        for (Vec2 q : b) {
            const double d = dist(p, q);
            if (d < cmin) {
                cmin = d;
                if (cmin <= cmax) break;
            }
        }
        cmax = std::max(cmax, cmin);
    }
    return cmax;
}

double directed_to_segments(const std::vector<Vec2>& a, const Region& r) {
    const auto segs = r.boundary_segments();
    double cmax = 0.0;
    for (Vec2 p : a) {
        double cmin = std::numeric_limits<double>::infinity();
        for (const auto& [u, v] : segs) cmin = std::min(cmin, point_segment_distance(p, u, v));
        cmax = std::max(cmax, cmin);
    }
    return cmax;
}

}  // namespace

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty()) throw InvalidArgument("empty point cloud");
    return std::max(directed_hausdorff(a.points, b.points), directed_hausdorff(b.points, a.points));
}

double hausdorff_distance(const Region& a, const Region& b, double step) {
    return std::max(directed_to_segments(boundary_sample(a, step), b), directed_to_segments(boundary_sample(b, step), a));
}

double hausdorff_distance(const PointCloud& a, const Region& b, double step) {
    if (a.points.empty()) throw InvalidArgument("empty point cloud");
    return std::max(directed_to_segments(a.points, b), directed_hausdorff(boundary_sample(b, step), a.points));
}

}  // namespace fractile
