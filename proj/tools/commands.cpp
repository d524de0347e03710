#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "fractile/compat.hpp"
#include "fractile/error.hpp"
#include "fractile/io.hpp"
#include "fractile/kernel.hpp"
#include "fractile/tiling.hpp"
#include "fractile/tube.hpp"

namespace fractile::cli {

namespace {

Tolerance tolerance(const Options& o) {
    if (!(o.tol > 0.0)) throw InvalidArgument("--tol must be positive");
    Tolerance t;
    t.coord_eps = o.tol;
    t.area_eps = 0.1 * o.tol;
    return t;
}

std::string pair_of(const Verdict& v) {
    std::string s;
    for (size_t i = 0; i < v.indices.size(); ++i) s += (i ? "," : "") + std::to_string(v.indices[i]);
    return s;
}

std::string describe(const char* name, const Verdict& v) {
    std::string s = std::string(name) + " " + to_string(v.status);
    if (v.violated() && !v.indices.empty()) s += " (" + std::string(v.indices.size() > 1 ? "pair " : "map ") + pair_of(v) + ")";
    return s;
}

void emit(const Options& o, std::ostream& out, const std::string& content) {
    if (o.out.empty())
        out << content;
    else
        write_file(o.out, content);
}

std::string format_or(const Options& o, const std::string& def, std::initializer_list<const char*> allowed) {
    const std::string f = o.format.empty() ? def : o.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw InvalidArgument("--format " + f + " is not available for this command");
}

SvgLayer outline(const Region& r, const char* stroke) {
    SvgLayer l;
    l.regions = {r};
    l.stroke = stroke;
    l.stroke_width = 1.0;
    return l;
}

PointCloud overlay_cloud(const IfsSystem& s) {
    int depth = 1;
    while (std::pow(static_cast<double>(s.size()), depth + 1) <= 20000.0 && depth < 16) ++depth;
    return attractor_points(s, depth, s[0].fixed_point());
}

}  // namespace

int cmd_check(const Options& o, std::ostream& out, std::ostream&) {
    const Tolerance tol = tolerance(o);
    const SystemSpec spec = load_spec(o.spec);
    const IfsSystem& s = spec.system;
    const int depth = o.depth > 0 ? o.depth : 5;
    bool inconclusive = false;
    std::vector<std::string> summary;
    auto note = [&](const Verdict& v) { inconclusive = inconclusive || !v.decided(); };

    out << "system: " << (s.label().empty() ? o.spec : s.label()) << " (" << s.size() << " maps, dimension "
        << s.dimension() << ")\n";
    const Region C = attractor_hull(s).hull;
    const Region K = resolve_open_set(spec, depth, tol);

    Verdict feasible;
    if (spec.open_set != SystemSpec::OpenSet::None) {
        feasible = check_feasible(s, K, tol);
        note(feasible);
        out << "OSC: O " << (feasible.holds() ? "feasible" : "not feasible") << " - " << feasible.reason << "\n";
        summary.push_back(std::string("OSC ") + (feasible.holds() ? "feasible" : feasible.violated() ? "infeasible" : "inconclusive"));
    }
    const Verdict tsc = check_tsc(s, tol);
    note(tsc);
    out << "TSC: " << to_string(tsc.status) << " - " << tsc.reason << "\n";
    summary.push_back(describe("TSC", tsc));
    if (tsc.holds()) {
        const Verdict ntc = check_nontrivial(s, C, tol);
        note(ntc);
        out << "NTC: " << to_string(ntc.status) << " - " << ntc.reason << "\n";
        summary.push_back(describe("NTC", ntc));
    } else {
        out << "NTC: not applicable (int C is not feasible)\n";
    }

    const bool have_o = spec.open_set != SystemSpec::OpenSet::None ? feasible.holds() : tsc.holds();
    if (have_o) {
        const Verdict nt = check_nontrivial(s, K, tol);
        note(nt);
        out << "triviality: " << (nt.holds() ? "nontrivial" : "trivial") << " (leftover measure " << nt.margin << ")\n";
        if (nt.holds()) {
            const double d = C.diameter();
            CompatOptions copt;
            copt.envelope_depth = depth;
            const CompatReport rep = compatibility_report(s, K, {0.02 * d, 0.05 * d, 0.1 * d}, copt, tol);
            out << "compatibility report:\n" << rep.to_text();
            for (const auto& [name, v] : rep.entries())
                if (rep.canonical || (name != "a" && name != "b")) note(*v);
            summary.push_back(std::string("compatible: ") + (rep.compatible ? "yes" : "no"));
            if (!o.out.empty()) write_file(o.out, rep.to_json());
        } else {
            out << "trivial system: O is covered by its images, so the closure of O is the attractor and no tiles "
                   "exist\n";
            summary.push_back("trivial");
        }
    }
    const Verdict conv = envelope_convex(s, depth, tol);
    note(conv);
    out << "envelope (depth " << depth << "): " << (conv.holds() ? "convex" : conv.violated() ? "not convex" : "undecided")
        << " - " << conv.reason << "\n";

    std::string line;
    for (size_t i = 0; i < summary.size(); ++i) line += (i ? "; " : "") + summary[i];
    out << line << "\n";
    return inconclusive ? kInconclusive : kOk;
}

int cmd_tile(const Options& o, std::ostream& out, std::ostream&) {
    const Tolerance tol = tolerance(o);
    const SystemSpec spec = load_spec(o.spec);
    const IfsSystem& s = spec.system;
    const std::string fmt = format_or(o, "svg", {"svg", "geo"});
    const Region K = resolve_open_set(spec, 6, tol);
    const Verdict feas = check_feasible(s, K, tol);
    if (!feas.holds()) throw PreconditionFailed("open set is not feasible: " + feas.reason);
    const Verdict nt = check_nontrivial(s, K, tol);
    if (!nt.holds())
        throw PreconditionFailed(
            "trivial system: the images of O cover O, so cl O equals the attractor and there is no tile; a "
            "nontrivial system needs a point of O at positive distance from F");
    const Tiling t(s, K, tol);
    StopPolicy stop;
    stop.max_depth = o.depth >= 0 ? o.depth : 5;
    stop.min_diam = o.min_diam;
    TileStream ts(t, stop);
    std::vector<Tile> tiles;
    while (auto tile = ts.next()) tiles.push_back(std::move(*tile));
    if (fmt == "geo") {
        emit(o, out, write_tiles(s.dimension(), tiles));
    } else {
        SvgScene scene;
        scene.dimension = s.dimension();
        scene.title = s.label() + ": " + std::to_string(tiles.size()) + " tiles";
        SvgLayer fill;
        fill.fill = "#9ec5e8";
        fill.stroke = "#2c5d8a";
        fill.stroke_width = 0.3;
        for (const auto& tl : tiles) fill.regions.push_back(tl.region);
        scene.layers.push_back(std::move(fill));
        scene.layers.push_back(outline(attractor_hull(s).hull, "#333333"));
        if (s.dimension() == 2 && spec.open_set != SystemSpec::OpenSet::HullInterior)
            scene.layers.push_back(outline(K, "#8e44ad"));
        scene.points = overlay_cloud(s).points;
        emit(o, out, render_svg(scene));
    }
    if (!o.out.empty()) out << tiles.size() << " tiles written to " << o.out << (ts.truncated() ? " (truncated)" : "") << "\n";
    return ts.truncated() ? kInconclusive : kOk;
}

int cmd_tube(const Options& o, std::ostream& out, std::ostream& err) {
    const Tolerance tol = tolerance(o);
    const SystemSpec spec = load_spec(o.spec);
    if (!(o.eps_min > 0.0) || !(o.eps_max >= o.eps_min) || o.eps_n < 0)
        throw InvalidArgument("need 0 < --eps-min <= --eps-max and --eps-n >= 0");
    const Region K = resolve_open_set(spec, 6, tol);
    const Tiling t(spec.system, K, tol);
    std::vector<double> eps;
    for (int i = 0; i < o.eps_n; ++i) {
        const double f = o.eps_n == 1 ? 0.0 : static_cast<double>(i) / (o.eps_n - 1);
        eps.push_back(o.eps_min * std::pow(o.eps_max / o.eps_min, f));
    }
    const TubeCurve c = tube_curve(t, eps, o.methods);
    emit(o, out, to_csv(c));
    bool failed = false;
    for (const auto& smp : c.samples)
        if (smp.status.rfind("error", 0) == 0) failed = true;
    if (c.disagreement) {
        err << "methods disagree beyond their error bars\n";
        return kRefused;
    }
    return failed ? kInconclusive : kOk;
}

int cmd_dims(const Options& o, std::ostream& out, std::ostream& err) {
    const SystemSpec spec = load_spec(o.spec);
    const IfsSystem& s = spec.system;
    if (!(o.im_max >= 0.0)) throw InvalidArgument("--im-max must be non-negative");
    const DimensionResult dim = similarity_dimension(s);
    const ComplexDimensionSet d = complex_dimensions(s, -o.im_max, o.im_max);
    std::ostream& info = o.out.empty() ? err : out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "similarity dimension: %.15g (residual %.1e)\n", dim.value, dim.residual);
    info << buf;
    if (d.lattice) {
        std::snprintf(buf, sizeof buf, "lattice: base ratio %.15g, exponents", d.base_ratio);
        info << buf;
        for (int k : d.exponents) info << ' ' << k;
        info << "\n";
    } else {
        info << "nonlattice\n";
    }
    info << d.poles.size() << " poles with |Im| <= " << o.im_max << "\n";
    emit(o, out, to_csv(d));
    return kOk;
}

int cmd_envelope(const Options& o, std::ostream& out, std::ostream& err) {
    const Tolerance tol = tolerance(o);
    const SystemSpec spec = load_spec(o.spec);
    const IfsSystem& s = spec.system;
    const std::string fmt = format_or(o, "report", {"svg", "geo", "report"});
    const int depth = o.depth > 0 ? o.depth : 5;
    const Envelope E = envelope(s, depth, tol);
    const Region C = attractor_hull(s).hull;
    const double sd = boolean(E.region, C, BoolOp::SymmetricDifference, tol).measure();
    const Verdict conv = envelope_convex(s, depth, tol);
    std::ostream& info = (o.out.empty() && fmt != "report") ? err : out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "envelope depth %d: measure %.12g, hull measure %.12g, symmetric difference %.3g\n",
                  depth, E.region.measure(), C.measure(), sd);
    info << buf;
    info << "convex: " << to_string(conv.status) << " - " << conv.reason << "\n";
    bool inconclusive = !conv.decided();
    if (E.region.measure() > tol.area_eps) {
        const Verdict f = check_feasible(s, E.region, tol);
        inconclusive = inconclusive || !f.decided();
        info << "int E feasible: " << to_string(f.status) << " - " << f.reason;
        if (f.violated() && f.indices.size() == 2) info << " (pair " << pair_of(f) << ")";
        info << "\n";
    } else {
        info << "int E feasible: not applicable (envelope has measure zero)\n";
    }
    if (fmt == "geo") {
        emit(o, out, write_geometry(E.region));
    } else if (fmt == "svg") {
        SvgScene scene;
        scene.dimension = s.dimension();
        scene.title = s.label() + ": envelope at depth " + std::to_string(depth);
        SvgLayer fill;
        fill.regions = {E.region};
        fill.fill = "#f5d76e";
        fill.stroke = "#a0802a";
        fill.stroke_width = 0.5;
        scene.layers.push_back(std::move(fill));
        scene.layers.push_back(outline(C, "#333333"));
        scene.points = overlay_cloud(s).points;
        emit(o, out, render_svg(scene));
    }
    return inconclusive ? kInconclusive : kOk;
}

int run(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
    try {
        if (command == "check") return cmd_check(o, out, err);
        if (command == "tile") return cmd_tile(o, out, err);
        if (command == "tube") return cmd_tube(o, out, err);
        if (command == "dims") return cmd_dims(o, out, err);
        if (command == "envelope") return cmd_envelope(o, out, err);
        err << "unknown command '" << command << "'\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << o.spec << ": " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionFailed& e) {
        err << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const Unsupported& e) {
        err << "unsupported: " << e.what() << "\n";
        return kRefused;
    } catch (const Error& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    }
}

}  // namespace fractile::cli
