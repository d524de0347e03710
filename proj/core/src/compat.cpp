#include "fractile/compat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include "json.hpp"

#include "fractile/error.hpp"
#include "fractile/grid_volume.hpp"
#include "fractile/kernel.hpp"
#include "fractile/tube.hpp"

namespace fractile {

Envelope envelope(const IfsSystem& s, int depth, const Tolerance& tol, std::uint64_t budget) {
    if (depth < 1) throw InvalidArgument("envelope depth must be at least 1");
    if (std::pow(static_cast<double>(s.size()), depth) > static_cast<double>(budget))
        throw BudgetExceeded("envelope cover has more than " + std::to_string(budget) + " pieces");
    const Region C = attractor_hull(s).hull;
    // Filling holes after every level gives the same set as filling once at the end:
    // phi_j maps a filled hole of E_k into the closure of a hole of Phi(E_k).
    Region E = C;
    for (int k = 0; k < depth; ++k) {
        std::vector<Region> parts;
        for (const auto& m : s.maps()) parts.push_back(E.transformed(m.map()));
        E = fill_holes_of_union(parts, tol);
    }
    Envelope out;
    out.region = std::move(E);
    out.depth = depth;
    out.hausdorff_bound = std::pow(s.max_ratio(), depth) * C.diameter();
    return out;
}

Verdict check_boundary_subset(const Region& boundary_of, const IfsSystem& s, const BoundaryCheckOptions& opt) {
    const AttractorDistance dist(s);
    const double step = opt.step > 0.0 ? opt.step : dist.hull().diameter() / 500.0;
    const double eta = opt.eta > 0.0 ? opt.eta : 3.0 * (opt.precision + step);
    Verdict v;
    v.tolerance = eta;
    if (eta <= opt.precision + 0.5 * step) {
        v.reason = "tolerance below the certifiable floor (precision + half step)";
        return v;
    }
    const auto pts = boundary_sample(boundary_of, step);
    double worst_hi = 0.0;
    std::optional<Witness> far;
    for (Vec2 p : pts) {
        const DistanceBounds b = dist.bounds(p, opt.precision, eta - 0.5 * step, 3.0 * eta);
        if (b.lo > 3.0 * eta && (!far || b.lo > far->distance)) far = Witness{p, b.lo};
        if (b.hi > worst_hi) {
            worst_hi = b.hi;
            if (!far) v.witness = Witness{p, b.hi};
        }
    }
    v.margin = far ? far->distance : worst_hi;
    if (far) {
        v.status = Status::Violated;
        v.witness = far;
        v.reason = "boundary point at distance " + std::to_string(far->distance) + " from F";
    } else if (worst_hi + 0.5 * step <= eta) {
        v.status = Status::Holds;
        v.witness.reset();
        v.reason = "boundary within tolerance of F";
    } else {
        v.reason = "boundary distance in the undecided band";
    }
    return v;
}

Verdict envelope_convex(const IfsSystem& s, int depth, const Tolerance& tol) {
    const Envelope E = envelope(s, depth, tol);
    const Region H = convex_hull(E.region);
    const double gap = boolean(H, E.region, BoolOp::Difference, tol).measure();
    Verdict v;
    v.depth = depth;
    v.tolerance = tol.area_eps;
    v.margin = gap;
    v.status = gap <= tol.area_eps ? Status::Holds : Status::Violated;
    v.reason = gap <= tol.area_eps ? "envelope is convex" : "hull of the envelope exceeds it";
    return v;
}

namespace {

Verdict compare_volumes(double a, double bar_a, double b, double bar_b, const std::string& what) {
    Verdict v;
    const double bar = bar_a + bar_b + 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    const double delta = std::abs(a - b);
    v.tolerance = bar;
    v.margin = delta;
    if (delta <= bar) {
        v.status = Status::Holds;
        v.reason = what + " agree within error bars";
    } else if (delta > 3.0 * bar) {
        v.status = Status::Violated;
        v.reason = what + " differ by more than 3x the error bars";
    } else {
        v.reason = what + " differ inside the undecided band";
    }
    return v;
}

std::vector<std::pair<Vec2, Vec2>> tile_segments(const Tiling& t, int depth) {
    std::vector<std::pair<Vec2, Vec2>> segs;
    TileStream ts(t, {depth, 0.0, 200'000});
    while (auto tile = ts.next()) {
        auto b = tile->region.boundary_segments();
        segs.insert(segs.end(), b.begin(), b.end());
    }
    return segs;
}

// (i): tile boundaries lie in F, and F lies near enumerated tile boundaries.
Verdict tiling_boundary(const Tiling& t, const BoundaryCheckOptions& opt) {
    const IfsSystem& s = t.system();
    std::vector<Verdict> to_f;
    TileStream ts(t, {1, 0.0, 10'000});
    while (auto tile = ts.next()) {
        Verdict v = check_boundary_subset(tile->region, s, opt);
        if (v.violated()) v.reason = "tile " + tile->word.to_string() + " boundary: " + v.reason;
        to_f.push_back(std::move(v));
    }
    Verdict a = combine(to_f, "tile boundaries in F");

    int L = 0;
    double tiles = static_cast<double>(t.generators().size());
    while (L < 12 && tiles * static_cast<double>(s.size()) <= 3000.0) {
        ++L;
        tiles *= static_cast<double>(s.size());
    }
    int m = 1;
    while (m < 14 && std::pow(static_cast<double>(s.size()), m + 1) <= 5000.0) ++m;
    const PointCloud cloud = attractor_points(s, m, s[0].fixed_point());
    const SegmentField field(s.dimension(), tile_segments(t, L));
    const double bound = std::pow(s.max_ratio(), L) * t.base().diameter() + cloud.err + opt.precision;
    Verdict b;
    b.tolerance = bound;
    b.status = Status::Holds;
    b.reason = "F within the depth bound of tile boundaries";
    for (Vec2 p : cloud.points) {
        const double d = field.bounds(p, -1.0, std::numeric_limits<double>::infinity()).hi;
        b.margin = std::max(b.margin, d);
        if (d > bound) {
            b.status = Status::Inconclusive;
            b.reason = "attractor point farther from tile boundaries than the depth bound";
            b.witness = Witness{p, d};
        }
    }
    return combine({a, b}, "bd T = F");
}

VolumeEstimate outer_volume(const Region& K, double eps) {
    VolumeEstimate e;
    if (K.is_convex()) {
        e.value = outer_tube_volume_convex(K, eps);
        e.method = "steiner";
        return e;
    }
    const SegmentField f = SegmentField::boundary_of(K);
    const GridVolume g = grid_tube_volume_refined({&f, eps, Side::Outside, &K}, eps / 20.0);
    e.value = g.value;
    e.error_bar = g.error_bar;
    e.method = "grid";
    return e;
}

}  // namespace

std::vector<std::pair<std::string, const Verdict*>> CompatReport::entries() const {
    return {{"i", &tiling_boundary},   {"ii", &base_boundary},    {"iii", &generator_union},
            {"iv", &generators},       {"v", &inner_volumes},     {"vi", &outer_volumes},
            {"a", &envelope_is_hull},  {"b", &envelope_is_convex}};
}

std::string CompatReport::summary() const {
    std::string out;
    for (const auto& [name, v] : entries()) {
        if (!out.empty()) out += ", ";
        out += "(" + name + ") " + to_string(v->status);
    }
    out += std::string("; consistent: ") + (consistent ? "yes" : "no");
    out += std::string("; compatible: ") + (compatible ? "yes" : "no");
    return out;
}

std::string CompatReport::to_text() const {
    static const char* labels[] = {"bd T = F",          "bd K in F",    "bd (K \\ Phi K) in F", "bd G_q in F",
                                   "F_eps cap K = T_-eps", "F_eps cap K^c = K_eps \\ K", "E = hull",
                                   "E convex"};
    std::string out;
    int i = 0;
    char buf[512];
    for (const auto& [name, v] : entries()) {
        std::snprintf(buf, sizeof buf, "(%s) %-28s %-12s margin %.6g tol %.6g", name.c_str(), labels[i++],
                      to_string(v->status), v->margin, v->tolerance);
        out += buf;
        if (v->witness) {
            std::snprintf(buf, sizeof buf, " witness (%.9g, %.9g) d=%.6g", v->witness->point.x, v->witness->point.y,
                          v->witness->distance);
            out += buf;
        }
        if (!canonical && (name == "a" || name == "b")) out += " [not used: O is not the hull interior]";
        out += '\n';
    }
    out += std::string("consistent: ") + (consistent ? "yes" : "no") + "\n";
    out += std::string("compatible: ") + (compatible ? "yes" : "no") + "\n";
    return out;
}

std::string CompatReport::to_json() const {
    nlohmann::ordered_json j;
    j["canonical"] = canonical;
    j["consistent"] = consistent;
    j["compatible"] = compatible;
    j["eps"] = eps;
    j["envelope_depth"] = envelope_depth;
    auto& conds = j["conditions"] = nlohmann::ordered_json::object();
    for (const auto& [name, v] : entries()) {
        nlohmann::ordered_json c;
        c["status"] = to_string(v->status);
        c["reason"] = v->reason;
        c["margin"] = v->margin;
        c["tolerance"] = v->tolerance;
        if (!v->indices.empty()) c["indices"] = v->indices;
        if (v->witness) c["witness"] = {{"x", v->witness->point.x}, {"y", v->witness->point.y},
                                        {"distance", v->witness->distance}};
        conds[name] = c;
    }
    return j.dump(2) + "\n";
}

CompatReport compatibility_report(const IfsSystem& s, const Region& K, const std::vector<double>& eps_samples,
                                  const CompatOptions& opt, const Tolerance& tol) {
    const Tiling t(s, K, tol);
    const Region C = attractor_hull(s).hull;
    const double diamC = C.diameter();
    for (double e : eps_samples)
        if (!(e > 0.0) || e >= diamC) throw InvalidArgument("eps samples must lie in (0, diam C)");
    CompatReport r;
    r.eps = eps_samples;
    r.envelope_depth = opt.envelope_depth;

    r.tiling_boundary = tiling_boundary(t, opt.boundary);
    r.base_boundary = check_boundary_subset(K, s, opt.boundary);
    std::vector<Region> gens;
    std::vector<Verdict> gv;
    for (size_t q = 0; q < t.generators().size(); ++q) {
        gens.push_back(t.generators()[q].region);
        Verdict v = check_boundary_subset(gens.back(), s, opt.boundary);
        if (v.violated()) v.indices = {static_cast<int>(q) + 1};
        gv.push_back(std::move(v));
    }
    r.generator_union = check_boundary_subset(union_all(gens, tol), s, opt.boundary);
    r.generators = combine(gv, "generator boundaries in F");

    const AttractorField F(s);
    std::optional<ScalingSum> sum;
    if (s.all_similitudes()) sum.emplace(t);
    const TilingBoundaryField T(t);
    std::vector<Verdict> inner, outer;
    for (double e : eps_samples) {
        const double cell = e / 20.0;
        const GridVolume fin = grid_tube_volume_refined({&F, e, Side::Inside, &K}, cell);
        double vt, bt;
        if (sum) {
            vt = (*sum)(e);
            bt = 1e-12 * vt;
        } else {
            const GridVolume g = grid_tube_volume_refined({&T, e, Side::Inside, &K}, cell);
            vt = g.value;
            bt = g.error_bar;
        }
        inner.push_back(compare_volumes(fin.value, fin.error_bar, vt, bt, "V(F_eps cap K) and V(T_-eps)"));
        const GridVolume fout = grid_tube_volume_refined({&F, e, Side::Outside, &K}, cell);
        const VolumeEstimate ko = outer_volume(K, e);
        outer.push_back(compare_volumes(fout.value, fout.error_bar, ko.value, ko.error_bar,
                                        "V(F_eps cap K^c) and V(K_eps \\ K)"));
    }
    r.inner_volumes = combine(inner, "inner volumes");
    r.outer_volumes = combine(outer, "outer volumes");

    const Envelope E = envelope(s, opt.envelope_depth, tol);
    const double sd = boolean(E.region, C, BoolOp::SymmetricDifference, tol).measure();
    const double tol_a = std::max(tol.area_eps, 1e-9 * C.measure());
    r.envelope_is_hull.depth = opt.envelope_depth;
    r.envelope_is_hull.tolerance = tol_a;
    r.envelope_is_hull.margin = sd;
    r.envelope_is_hull.status = sd <= tol_a ? Status::Holds : Status::Violated;
    r.envelope_is_hull.reason = sd <= tol_a ? "envelope equals the hull" : "envelope is strictly smaller than the hull";
    const double gap = boolean(convex_hull(E.region), E.region, BoolOp::Difference, tol).measure();
    r.envelope_is_convex.depth = opt.envelope_depth;
    r.envelope_is_convex.tolerance = tol.area_eps;
    r.envelope_is_convex.margin = gap;
    r.envelope_is_convex.status = gap <= tol.area_eps ? Status::Holds : Status::Violated;
    r.envelope_is_convex.reason = gap <= tol.area_eps ? "envelope is convex" : "hull of the envelope exceeds it";

    r.canonical = boolean(K, C, BoolOp::SymmetricDifference, tol).measure() <= tol_a;
    std::vector<const Verdict*> used;
    for (const auto& [name, v] : r.entries())
        if (r.canonical || (name != "a" && name != "b")) used.push_back(v);
    r.consistent = std::all_of(used.begin(), used.end(),
                               [&](const Verdict* v) { return v->decided() && v->status == used.front()->status; });
    r.compatible = r.consistent && used.front()->holds();
    return r;
}

ObstructionReport obstruction_classifier(const IfsSystem& s, int depth, const Tolerance& tol) {
    if (depth < 3) throw InvalidArgument("classifier needs depth >= 3");
    ObstructionReport out;
    const double area = attractor_hull(s).hull.measure();
    Region last;
    for (int n = depth - 2; n <= depth; ++n) {
        Envelope E = envelope(s, n, tol);
        out.envelope_measures.push_back(E.region.measure());
        last = std::move(E.region);
    }
    const double a0 = out.envelope_measures[0], a1 = out.envelope_measures[1], a2 = out.envelope_measures[2];
    Verdict& v = out.connected_complement;
    v.depth = depth;
    v.tolerance = 1e-3 * area;
    if (a1 > a0 + tol.area_eps || a2 > a1 + tol.area_eps) {
        v.reason = "envelope measures are not monotone";
        out.advice = "no classification: refine the depth or tolerance";
        return out;
    }
    double L = a2;
    const double den = a2 - 2.0 * a1 + a0;
    if (a2 > tol.area_eps && std::abs(den) > 1e-12 * std::max(a0, 1e-300)) L = std::max(0.0, a2 - (a2 - a1) * (a2 - a1) / den);
    out.extrapolated_measure = L;
    v.margin = L;
    const bool shrinking = a2 <= tol.area_eps || a2 < a1 * (1.0 - 1e-6);
    if (L <= 1e-3 * area && shrinking) {
        v.status = Status::Holds;
        v.reason = "envelope measure tends to zero";
        out.advice = "complement of F is connected: no feasible open set satisfies the compatibility conditions";
        return out;
    }
    if (L >= 1e-2 * area) {
        v.status = Status::Violated;
        v.reason = "envelope keeps positive measure";
        out.int_envelope_feasible = check_feasible(s, last, tol);
        if (out.int_envelope_feasible.holds()) {
            out.advice = "complement of F is disconnected; int E is feasible: use O = int E";
        } else {
            std::string pair;
            for (size_t i = 0; i < out.int_envelope_feasible.indices.size(); ++i)
                pair += (i ? "," : "") + std::to_string(out.int_envelope_feasible.indices[i]);
            out.advice = "complement of F is disconnected, but int E is not feasible (" +
                         out.int_envelope_feasible.reason + ", pair (" + pair +
                         ")); no compatible open set was constructed";
        }
        return out;
    }
    v.reason = "extrapolated envelope measure in the undecided band";
    out.advice = "no classification: increase the depth";
    return out;
}

}  // namespace fractile
