#include "fractile/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "fractile/compat.hpp"
#include "fractile/error.hpp"
#include "json.hpp"

namespace fractile {

using nlohmann::json;

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    double parse() {
        const double v = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("bad expression \"" + s_ + "\": " + what);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    double sum() {
        double v = product();
        while (true) {
            if (eat('+')) v += product();
            else if (eat('-')) v -= product();
            else return v;
        }
    }
    double product() {
        double v = unary();
        while (true) {
            if (eat('*')) v *= unary();
            else if (eat('/')) v /= unary();
            else return v;
        }
    }
    double unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        const double b = atom();
        if (eat('^')) return std::pow(b, unary());
        return b;
    }
    double atom() {
        skip();
        if (eat('(')) {
            const double v = sum();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
            const size_t start = i_;
            while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
            const std::string name = s_.substr(start, i_ - start);
            if (name == "pi") return std::numbers::pi;
            if (name == "sqrt") {
                if (!eat('(')) fail("sqrt needs '('");
                const double v = sum();
                if (!eat(')')) fail("missing ')'");
                if (v < 0.0) fail("sqrt of a negative number");
                return std::sqrt(v);
            }
            fail("unknown name '" + name + "'");
        }
        const char* begin = s_.c_str() + i_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("number expected");
        i_ += static_cast<size_t>(end - begin);
        return v;
    }

    const std::string& s_;
    size_t i_ = 0;
};

struct Ctx {
    std::string path;
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(path.empty() ? "document: " + what : "field " + path + ": " + what);
    }
    Ctx at(const std::string& key) const { return {path.empty() ? key : path + "." + key}; }
    Ctx at(size_t i) const { return {path + "[" + std::to_string(i) + "]"}; }
};

double number(const json& j, const Ctx& c) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            return eval_expression(j.get<std::string>());
        } catch (const ParseError& e) {
            c.fail(e.what());
        }
    }
    c.fail("number expected");
}

void only_keys(const json& j, const Ctx& c, std::initializer_list<const char*> keys) {
    if (!j.is_object()) c.fail("object expected");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) c.at(it.key()).fail("unknown field");
}

double opt_number(const json& j, const char* key, const Ctx& c, double def) {
    return j.contains(key) ? number(j.at(key), c.at(key)) : def;
}

Ring ring_of(const json& j, const Ctx& c) {
    if (!j.is_array() || j.size() < 3) c.fail("ring needs at least 3 points");
    Ring r;
    for (size_t i = 0; i < j.size(); ++i) {
        const Ctx pc = c.at(i);
        if (!j[i].is_array() || j[i].size() != 2) pc.fail("point [x, y] expected");
        r.push_back({number(j[i][0], pc.at(0)), number(j[i][1], pc.at(1))});
    }
    return r;
}

Contraction map_of(const json& j, int dim, const Ctx& c) {
    if (!j.is_object()) c.fail("object expected");
    if (j.contains("type") && !j.at("type").is_string()) c.at("type").fail("string expected");
    const std::string type = j.value("type", "similitude");
    try {
        if (type == "similitude") {
            only_keys(j, c, {"type", "r", "theta_deg", "reflect", "tx", "ty"});
            if (!j.contains("r")) c.at("r").fail("missing");
            const double r = number(j.at("r"), c.at("r"));
            if (!(r > 0.0 && r < 1.0)) c.at("r").fail("similarity ratio must lie in (0, 1) for a contraction");
            const double theta = opt_number(j, "theta_deg", c, 0.0) * std::numbers::pi / 180.0;
            bool reflect = false;
            if (j.contains("reflect")) {
                if (!j.at("reflect").is_boolean()) c.at("reflect").fail("boolean expected");
                reflect = j.at("reflect").get<bool>();
            }
            if (dim == 1 && (j.contains("ty") || j.contains("theta_deg"))) c.fail("1-d maps take only r, reflect, tx");
            const Vec2 t{opt_number(j, "tx", c, 0.0), opt_number(j, "ty", c, 0.0)};
            return Contraction::similitude(dim, r, theta, reflect, t);
        }
        if (type == "affine") {
            only_keys(j, c, {"type", "matrix", "tx", "ty"});
            if (dim != 2) c.fail("affine maps need dimension 2");
            const json& m = j.contains("matrix") ? j.at("matrix") : json();
            const Ctx mc = c.at("matrix");
            if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
                m[1].size() != 2)
                mc.fail("2x2 matrix [[a, b], [c, d]] expected");
            const Mat2 L{number(m[0][0], mc.at(0).at(0)), number(m[0][1], mc.at(0).at(1)),
                         number(m[1][0], mc.at(1).at(0)), number(m[1][1], mc.at(1).at(1))};
            if (!(L.max_singular() < 1.0)) mc.fail("not a contraction (operator norm >= 1)");
            return Contraction::affine(dim, L, {opt_number(j, "tx", c, 0.0), opt_number(j, "ty", c, 0.0)});
        }
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidArgument& e) {
        c.fail(e.what());
    }
    c.at("type").fail("must be \"similitude\" or \"affine\"");
}

std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double eval_expression(const std::string& expr) { return ExprParser(expr).parse(); }

SystemSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        const auto pos = msg.find("parse error");
        throw ParseError("JSON syntax error at " + location(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                         (pos == std::string::npos ? msg : msg.substr(pos)));
    }
    const Ctx root{};
    only_keys(doc, root, {"label", "dimension", "maps", "open_set"});
    if (!doc.contains("dimension")) root.at("dimension").fail("missing");
    if (!doc.at("dimension").is_number_integer()) root.at("dimension").fail("1 or 2 expected");
    const int dim = doc.at("dimension").get<int>();
    if (dim != 1 && dim != 2) root.at("dimension").fail("1 or 2 expected");
    std::string label;
    if (doc.contains("label")) {
        if (!doc.at("label").is_string()) root.at("label").fail("string expected");
        label = doc.at("label").get<std::string>();
    }
    if (!doc.contains("maps") || !doc.at("maps").is_array()) root.at("maps").fail("array of maps expected");
    std::vector<Contraction> maps;
    for (size_t i = 0; i < doc.at("maps").size(); ++i) maps.push_back(map_of(doc.at("maps")[i], dim, root.at("maps").at(i)));
    if (maps.size() < 2) root.at("maps").fail("at least 2 maps required");

    SystemSpec spec{IfsSystem(dim, std::move(maps), label), SystemSpec::OpenSet::None, std::nullopt};
    if (doc.contains("open_set")) {
        const json& o = doc.at("open_set");
        const Ctx oc = root.at("open_set");
        if (o.is_string()) {
            const std::string v = o.get<std::string>();
            if (v == "hull-interior") spec.open_set = SystemSpec::OpenSet::HullInterior;
            else if (v == "envelope-interior") spec.open_set = SystemSpec::OpenSet::EnvelopeInterior;
            else oc.fail("\"hull-interior\", \"envelope-interior\" or explicit geometry expected");
        } else {
            only_keys(o, oc, {"polygons", "intervals"});
            spec.open_set = SystemSpec::OpenSet::Explicit;
            if (o.contains("intervals")) {
                if (dim != 1) oc.at("intervals").fail("intervals need dimension 1");
                const json& a = o.at("intervals");
                if (!a.is_array() || a.empty()) oc.at("intervals").fail("non-empty array expected");
                std::vector<Interval> ivs;
                for (size_t i = 0; i < a.size(); ++i) {
                    const Ctx ic = oc.at("intervals").at(i);
                    if (!a[i].is_array() || a[i].size() != 2) ic.fail("[lo, hi] expected");
                    const double lo = number(a[i][0], ic.at(0)), hi = number(a[i][1], ic.at(1));
                    if (!(hi > lo)) ic.fail("lo < hi required");
                    ivs.push_back({lo, hi});
                }
                spec.explicit_open_set = Region::from_intervals(std::move(ivs));
            } else if (o.contains("polygons")) {
                if (dim != 2) oc.at("polygons").fail("polygons need dimension 2");
                const json& a = o.at("polygons");
                if (!a.is_array() || a.empty()) oc.at("polygons").fail("non-empty array expected");
                std::vector<Face> faces;
                for (size_t i = 0; i < a.size(); ++i) {
                    const Ctx fc = oc.at("polygons").at(i);
                    only_keys(a[i], fc, {"outer", "holes"});
                    if (!a[i].contains("outer")) fc.at("outer").fail("missing");
                    Face f;
                    f.outer = ring_of(a[i].at("outer"), fc.at("outer"));
                    if (a[i].contains("holes")) {
                        const json& h = a[i].at("holes");
                        if (!h.is_array()) fc.at("holes").fail("array of rings expected");
                        for (size_t k = 0; k < h.size(); ++k) f.holes.push_back(ring_of(h[k], fc.at("holes").at(k)));
                    }
                    faces.push_back(std::move(f));
                }
                spec.explicit_open_set = Region::from_faces(std::move(faces));
            } else {
                oc.fail("\"polygons\" or \"intervals\" expected");
            }
            if (spec.explicit_open_set->measure() <= 0.0) oc.fail("open set has zero measure");
        }
    }
    return spec;
}

SystemSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

Region resolve_open_set(const SystemSpec& spec, int envelope_depth, const Tolerance& tol) {
    switch (spec.open_set) {
        case SystemSpec::OpenSet::None:
        case SystemSpec::OpenSet::HullInterior:
            return attractor_hull(spec.system).hull;
        case SystemSpec::OpenSet::EnvelopeInterior:
            return envelope(spec.system, envelope_depth, tol).region;
        case SystemSpec::OpenSet::Explicit:
            return *spec.explicit_open_set;
    }
    return attractor_hull(spec.system).hull;
}

namespace {

void write_region_lines(const Region& r, std::string& out) {
    if (r.dimension() == 1) {
        for (const auto& iv : r.intervals()) out += fmt(iv.lo) + ' ' + fmt(iv.hi) + '\n';
        return;
    }
    auto ring = [&](const Ring& rg) {
        for (size_t i = 0; i < rg.size(); ++i) {
            if (i) out += ", ";
            out += fmt(rg[i].x) + ' ' + fmt(rg[i].y);
        }
        out += '\n';
    };
    for (const auto& f : r.faces()) {
        ring(f.outer);
        for (const auto& h : f.holes) ring(h);
    }
}

}  // namespace

std::string write_geometry(const Region& r) {
    std::string out = "dimension " + std::to_string(r.dimension()) + "\n";
    write_region_lines(r, out);
    return out;
}

std::string write_tiles(int dimension, const std::vector<Tile>& tiles) {
    std::string out = "dimension " + std::to_string(dimension) + "\n";
    for (const auto& t : tiles) {
        out += "tile " + t.word.to_string() + ' ' + std::to_string(t.q + 1) + ' ' + fmt(t.ratio) + ' ' +
               fmt(t.diameter) + '\n';
        write_region_lines(t.region, out);
    }
    return out;
}

Region read_geometry(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0, dim = 0;
    std::vector<Face> faces;
    std::vector<Interval> ivs;
    auto fail = [&](const std::string& what) {
        throw ParseError("geometry line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first);
        if (line.rfind("dimension", 0) == 0) {
            std::istringstream ls(line.substr(9));
            if (!(ls >> dim) || (dim != 1 && dim != 2)) fail("dimension 1 or 2 expected");
            continue;
        }
        if (line.rfind("tile", 0) == 0) continue;
        if (dim == 0) fail("missing 'dimension' header");
        if (dim == 1) {
            std::istringstream ls(line);
            double lo, hi;
            std::string rest;
            if (!(ls >> lo >> hi) || (ls >> rest)) fail("'lo hi' expected");
            ivs.push_back({lo, hi});
            continue;
        }
        Ring ring;
        std::istringstream ls(line);
        std::string pt;
        while (std::getline(ls, pt, ',')) {
            std::istringstream ps(pt);
            double x, y;
            std::string rest;
            if (!(ps >> x >> y) || (ps >> rest)) fail("'x y' pair expected");
            ring.push_back({x, y});
        }
        if (ring.size() < 3) fail("ring needs at least 3 points");
        if (signed_area(ring) < 0.0) {
            if (faces.empty()) fail("hole ring before any outer ring");
            faces.back().holes.push_back(std::move(ring));
        } else {
            faces.push_back({std::move(ring), {}});
        }
    }
    if (dim == 0) throw ParseError("geometry: missing 'dimension' header");
    return dim == 1 ? Region::from_intervals(std::move(ivs)) : Region::from_faces(std::move(faces));
}

std::string render_svg(const SvgScene& scene, int width_px) {
    Box box;
    for (const auto& l : scene.layers)
        for (const auto& r : l.regions)
            if (!r.empty()) {
                const Box b = r.bbox();
                box.add(b.lo);
                box.add(b.hi);
            }
    for (Vec2 p : scene.points) box.add(p);
    if (box.lo.x > box.hi.x) box = Box{{0, 0}, {1, 1}};
    const double w = std::max(box.width(), 1e-12);
    const bool one_d = scene.dimension == 1;
    const double h = one_d ? 0.1 * w : std::max(box.height(), 1e-12 * w);
    const double margin = 0.03 * std::max(w, h);
    const double scale = (width_px - 2.0) / (w + 2.0 * margin);
    const int height_px = static_cast<int>(std::ceil((h + 2.0 * margin) * scale)) + 2;
    char buf[256];
    auto X = [&](double x) { return 1.0 + (x - box.lo.x + margin) * scale; };
    auto Y = [&](double y) { return one_d ? 0.0 : 1.0 + (box.hi.y - y + margin) * scale; };

    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  width_px, height_px, width_px, height_px);
    out += buf;
    if (!scene.title.empty()) {
        std::string t;
        for (char ch : scene.title) {
            if (ch == '<') t += "&lt;";
            else if (ch == '>') t += "&gt;";
            else if (ch == '&') t += "&amp;";
            else t += ch;
        }
        out += "<title>" + t + "</title>\n";
    }
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    const double band_y = 1.0 + margin * scale, band_h = h * scale;
    for (const auto& l : scene.layers) {
        std::snprintf(buf, sizeof buf, "<g fill=\"%s\" stroke=\"%s\" stroke-width=\"%.3f\" fill-rule=\"evenodd\">\n",
                      l.fill.c_str(), l.stroke.c_str(), l.stroke_width);
        out += buf;
        for (const auto& r : l.regions) {
            if (one_d) {
                for (const auto& iv : r.intervals()) {
                    std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/>\n",
                                  X(iv.lo), band_y, std::max((iv.hi - iv.lo) * scale, 0.1), band_h);
                    out += buf;
                }
                continue;
            }
            for (const auto& f : r.faces()) {
                std::string d;
                auto ring = [&](const Ring& rg) {
                    for (size_t i = 0; i < rg.size(); ++i) {
                        std::snprintf(buf, sizeof buf, "%c%.3f %.3f ", i ? 'L' : 'M', X(rg[i].x), Y(rg[i].y));
                        d += buf;
                    }
                    d += "Z ";
                };
                ring(f.outer);
                for (const auto& hr : f.holes) ring(hr);
                d.pop_back();
                out += "<path d=\"" + d + "\"/>\n";
            }
        }
        out += "</g>\n";
    }
    if (!scene.points.empty()) {
        out += "<g fill=\"#c0392b\" stroke=\"none\">\n";
        for (Vec2 p : scene.points) {
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"0.8\"/>\n", X(p.x),
                          one_d ? band_y + 0.5 * band_h : Y(p.y));
            out += buf;
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << content;
    if (!out) throw InvalidArgument("write failed for '" + path + "'");
}

}  // namespace fractile
