#include "arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "fractile/error.hpp"

namespace fractile::detail {

namespace {

std::uint64_t cell_key(std::int64_t ix, std::int64_t iy) {
    return static_cast<std::uint64_t>(ix) * 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(iy) + 0x632BE59BD9B4E019ULL);
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

bool ring_contains(const std::vector<Vec2>& r, Vec2 p) {
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

Ring clean_ring(Ring r, double tol) {
    bool changed = true;
    while (changed && r.size() >= 3) {
        changed = false;
        Ring out;
        out.reserve(r.size());
        const size_t n = r.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec2 a = out.empty() ? r[(i + n - 1) % n] : out.back();
            const Vec2 b = r[i], c = r[(i + 1) % n];
            const double l = dist(a, c);
            if (dist(a, b) <= tol || l <= tol || std::abs(orient(a, b, c)) / l <= tol) {
                changed = true;
                continue;
            }
            out.push_back(b);
        }
        r.swap(out);
    }
    if (r.size() < 3) r.clear();
    return r;
}

}  // namespace

Arrangement::Arrangement(double snap_tol, int groups) : tol_(snap_tol), groups_(groups) {
    if (!(snap_tol > 0.0)) throw InvalidArgument("snap tolerance must be positive");
}

int Arrangement::vertex_id(Vec2 p) {
    const double cs = 2.0 * tol_;
    const auto ix = static_cast<std::int64_t>(std::floor(p.x / cs));
    const auto iy = static_cast<std::int64_t>(std::floor(p.y / cs));
    for (std::int64_t dx = -1; dx <= 1; ++dx)
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
            auto it = vgrid_.find(cell_key(ix + dx, iy + dy));
            if (it == vgrid_.end()) continue;
            for (int id : it->second)
                if (dist(verts_[id], p) <= tol_) return id;
        }
    const int id = static_cast<int>(verts_.size());
    verts_.push_back(p);
    vgrid_[cell_key(ix, iy)].push_back(id);
    return id;
}

void Arrangement::add_ring(std::span<const Vec2> ring, int group) {
    if (built_) throw InvalidArgument("arrangement already built");
    const size_t n = ring.size();
    if (n < 2) return;
    std::vector<int> ids(n);
    for (size_t i = 0; i < n; ++i) ids[i] = vertex_id(ring[i]);
    for (size_t i = 0; i < n; ++i) {
        const int u = ids[i], v = ids[(i + 1) % n];
        if (u != v) segs_.push_back({u, v, group});
    }
}

void Arrangement::add_region(const Region& r, int group) {
    for (const auto& f : r.faces()) {
        add_ring(f.outer, group);
        for (const auto& h : f.holes) add_ring(h, group);
    }
}

void Arrangement::build() {
    if (built_) return;
    built_ = true;
    split_segments();
    build_dcel();
    assign_faces();
    compute_windings();
}

void Arrangement::split_segments() {
    const size_t ns = segs_.size();
    std::vector<std::vector<int>> splits(ns);
    if (ns == 0) return;

    Box all;
    double total_len = 0.0;
    for (const auto& s : segs_) {
        all.add(verts_[s.u]);
        all.add(verts_[s.v]);
        total_len += dist(verts_[s.u], verts_[s.v]);
    }
    const double cs = std::max({total_len / static_cast<double>(ns), all.diagonal() / 4096.0, 8.0 * tol_});
    auto cx = [&](double x) { return static_cast<std::int64_t>(std::floor((x - all.lo.x) / cs)); };
    auto cy = [&](double y) { return static_cast<std::int64_t>(std::floor((y - all.lo.y) / cs)); };

    std::unordered_map<std::uint64_t, std::vector<int>> cells;
    auto register_segment = [&](int si) {
        const Vec2 a = verts_[segs_[si].u], b = verts_[segs_[si].v];
        const double x0 = std::min(a.x, b.x) - tol_, x1 = std::max(a.x, b.x) + tol_;
        for (std::int64_t ix = cx(x0); ix <= cx(x1); ++ix) {
            const double sx0 = std::max(x0, all.lo.x + static_cast<double>(ix) * cs);
            const double sx1 = std::min(x1, all.lo.x + static_cast<double>(ix + 1) * cs);
            double ylo, yhi;
            if (std::abs(b.x - a.x) <= 1e-300) {
                ylo = std::min(a.y, b.y);
                yhi = std::max(a.y, b.y);
            } else {
                auto yat = [&](double x) {
                    const double t = std::clamp((x - a.x) / (b.x - a.x), 0.0, 1.0);
                    return a.y + t * (b.y - a.y);
                };
                ylo = std::min(yat(sx0), yat(sx1));
                yhi = std::max(yat(sx0), yat(sx1));
            }
            for (std::int64_t iy = cy(ylo - tol_); iy <= cy(yhi + tol_); ++iy) cells[cell_key(ix, iy)].push_back(si);
        }
    };
    for (size_t i = 0; i < ns; ++i) register_segment(static_cast<int>(i));

    std::vector<std::uint64_t> pairs;
    for (auto& [key, list] : cells)
        for (size_t i = 0; i < list.size(); ++i)
            for (size_t j = i + 1; j < list.size(); ++j) {
                const auto a = static_cast<std::uint64_t>(std::min(list[i], list[j]));
                const auto b = static_cast<std::uint64_t>(std::max(list[i], list[j]));
                if (a != b) pairs.push_back(a << 32 | b);
            }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    const size_t first_new = verts_.size();
    auto on_segment = [&](int q, const Segment& s) {
        return q != s.u && q != s.v && point_segment_distance(verts_[q], verts_[s.u], verts_[s.v]) <= tol_;
    };
    for (std::uint64_t key : pairs) {
        const int i = static_cast<int>(key >> 32), j = static_cast<int>(key & 0xffffffffULL);
        const Segment s = segs_[i], t = segs_[j];
        for (int q : {t.u, t.v})
            if (on_segment(q, s)) splits[i].push_back(q);
        for (int q : {s.u, s.v})
            if (on_segment(q, t)) splits[j].push_back(q);
        if (s.u == t.u || s.u == t.v || s.v == t.u || s.v == t.v) continue;
        const Vec2 p0 = verts_[s.u], p1 = verts_[s.v], q0 = verts_[t.u], q1 = verts_[t.v];
        const double lp = dist(p0, p1), lq = dist(q0, q1);
        const double d1 = orient(p0, p1, q0) / lp, d2 = orient(p0, p1, q1) / lp;
        const double d3 = orient(q0, q1, p0) / lq, d4 = orient(q0, q1, p1) / lq;
        const bool cross_q = (d1 > tol_ && d2 < -tol_) || (d1 < -tol_ && d2 > tol_);
        const bool cross_p = (d3 > tol_ && d4 < -tol_) || (d3 < -tol_ && d4 > tol_);
        if (!cross_q || !cross_p) continue;
        const double tpar = d1 / (d1 - d2);
        const int id = vertex_id(q0 + tpar * (q1 - q0));
        if (id != s.u && id != s.v) splits[i].push_back(id);
        if (id != t.u && id != t.v) splits[j].push_back(id);
    }
    // Crossing points may land within tolerance of a third segment.
    for (size_t q = first_new; q < verts_.size(); ++q) {
        const Vec2 p = verts_[q];
        auto it = cells.find(cell_key(cx(p.x), cy(p.y)));
        if (it == cells.end()) continue;
        for (int si : it->second)
            if (on_segment(static_cast<int>(q), segs_[si])) splits[si].push_back(static_cast<int>(q));
    }

    std::unordered_map<std::uint64_t, int> edge_index;
    auto add_edge = [&](int a, int b, int group) {
        if (a == b) return;
        const int u = std::min(a, b), v = std::max(a, b);
        const std::uint64_t key = static_cast<std::uint64_t>(u) << 32 | static_cast<std::uint64_t>(v);
        auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(edges_.size()));
        if (inserted) {
            edges_.push_back({u, v});
            edge_count_.emplace_back(groups_, 0);
        }
        edge_count_[it->second][group] += (a == u) ? 1 : -1;
    };
    for (size_t i = 0; i < ns; ++i) {
        const Segment& s = segs_[i];
        auto& sp = splits[i];
        const Vec2 a = verts_[s.u], d = verts_[s.v] - a;
        std::sort(sp.begin(), sp.end(), [&](int x, int y) { return dot(verts_[x] - a, d) < dot(verts_[y] - a, d); });
        sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
        int prev = s.u;
        for (int q : sp) {
            add_edge(prev, q, s.group);
            prev = q;
        }
        add_edge(prev, s.v, s.group);
    }

    // Edges whose net multiplicity vanishes in every group separate nothing.
    std::vector<std::pair<int, int>> kept;
    std::vector<std::vector<int>> kept_count;
    for (size_t e = 0; e < edges_.size(); ++e) {
        if (std::any_of(edge_count_[e].begin(), edge_count_[e].end(), [](int c) { return c != 0; })) {
            kept.push_back(edges_[e]);
            kept_count.push_back(std::move(edge_count_[e]));
        }
    }
    edges_.swap(kept);
    edge_count_.swap(kept_count);
}

void Arrangement::build_dcel() {
    const size_t ne = edges_.size();
    half_.assign(2 * ne, {});
    std::vector<std::vector<std::pair<double, int>>> out(verts_.size());
    for (size_t e = 0; e < ne; ++e) {
        const auto [u, v] = edges_[e];
        half_[2 * e].origin = u;
        half_[2 * e + 1].origin = v;
        const Vec2 d = verts_[v] - verts_[u];
        out[u].push_back({std::atan2(d.y, d.x), static_cast<int>(2 * e)});
        out[v].push_back({std::atan2(-d.y, -d.x), static_cast<int>(2 * e + 1)});
    }
    std::vector<int> pos(2 * ne);
    for (auto& list : out) {
        std::sort(list.begin(), list.end());
        for (size_t k = 0; k < list.size(); ++k) pos[list[k].second] = static_cast<int>(k);
    }
    for (size_t h = 0; h < 2 * ne; ++h) {
        const int tw = static_cast<int>(h ^ 1U);
        const auto& list = out[half_[tw].origin];
        const int deg = static_cast<int>(list.size());
        half_[h].next = list[(pos[tw] - 1 + deg) % deg].second;
    }
    int cycles = 0;
    for (size_t h = 0; h < 2 * ne; ++h) {
        if (half_[h].cycle >= 0) continue;
        double area = 0.0;
        int cur = static_cast<int>(h);
        do {
            half_[cur].cycle = cycles;
            area += cross(verts_[half_[cur].origin], verts_[half_[cur ^ 1].origin]);
            cur = half_[cur].next;
        } while (cur != static_cast<int>(h));
        cycle_area_.push_back(0.5 * area);
        ++cycles;
    }
}

void Arrangement::assign_faces() {
    const int nc = static_cast<int>(cycle_area_.size());
    UnionFind uf(verts_.size());
    for (const auto& [u, v] : edges_) uf.unite(u, v);

    std::vector<int> comp_of_cycle(nc, -1);
    std::vector<std::vector<int>> cycle_verts(nc);
    std::vector<Box> cycle_box(nc);
    for (size_t h = 0; h < half_.size(); ++h) {
        const int c = half_[h].cycle;
        comp_of_cycle[c] = uf.find(half_[h].origin);
    }
    // Cycle vertex lists in traversal order.
    std::vector<char> seen(nc, 0);
    for (size_t h = 0; h < half_.size(); ++h) {
        const int c = half_[h].cycle;
        if (seen[c]) continue;
        seen[c] = 1;
        int cur = static_cast<int>(h);
        do {
            cycle_verts[c].push_back(half_[cur].origin);
            cycle_box[c].add(verts_[half_[cur].origin]);
            cur = half_[cur].next;
        } while (cur != static_cast<int>(h));
    }

    std::unordered_map<int, int> outer_of_comp;
    for (int c = 0; c < nc; ++c) {
        auto [it, inserted] = outer_of_comp.try_emplace(comp_of_cycle[c], c);
        if (!inserted && cycle_area_[c] < cycle_area_[it->second]) it->second = c;
    }
    cycle_face_.assign(nc, -1);
    int faces = 1;
    std::vector<int> bounded;
    for (int c = 0; c < nc; ++c) {
        if (outer_of_comp[comp_of_cycle[c]] == c) continue;
        cycle_face_[c] = faces++;
        bounded.push_back(c);
    }
    std::vector<std::pair<int, int>> comps(outer_of_comp.begin(), outer_of_comp.end());
    std::sort(comps.begin(), comps.end());
    for (const auto& [comp, oc] : comps) {
        const Vec2 p = verts_[cycle_verts[oc].front()];
        int best = -1;
        for (int c : bounded) {
            if (comp_of_cycle[c] == comp || !cycle_box[c].contains(p)) continue;
            if (best >= 0 && cycle_area_[c] >= cycle_area_[best]) continue;
            std::vector<Vec2> ring;
            ring.reserve(cycle_verts[c].size());
            for (int v : cycle_verts[c]) ring.push_back(verts_[v]);
            if (ring_contains(ring, p)) best = c;
        }
        cycle_face_[oc] = best < 0 ? 0 : cycle_face_[best];
    }
    face_winding_.assign(faces, std::vector<int>(groups_, 0));
}

void Arrangement::compute_windings() {
    const int nf = static_cast<int>(face_winding_.size());
    std::vector<std::vector<std::pair<int, int>>> adj(nf);  // (neighbour face, half edge)
    for (size_t h = 0; h < half_.size(); ++h) {
        const int l = cycle_face_[half_[h].cycle];
        const int r = cycle_face_[half_[h ^ 1U].cycle];
        if (l != r) adj[r].push_back({l, static_cast<int>(h)});
    }
    std::vector<char> done(nf, 0);
    std::deque<int> queue{0};
    done[0] = 1;
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop_front();
        for (const auto& [g, h] : adj[f]) {
            if (done[g]) continue;
            done[g] = 1;
            const int e = h / 2;
            const int sign = (h % 2 == 0) ? 1 : -1;
            for (int k = 0; k < groups_; ++k) face_winding_[g][k] = face_winding_[f][k] + sign * edge_count_[e][k];
            queue.push_back(g);
        }
    }
}

Region Arrangement::extract(const std::function<bool(int)>& selected, double area_eps, OperationLog* log) const {
    const int nf = face_count();
    std::vector<char> sel(nf, 0);
    for (int f = 1; f < nf; ++f) sel[f] = selected(f) ? 1 : 0;
    auto face_of = [&](int h) { return cycle_face_[half_[h].cycle]; };
    auto is_boundary = [&](int h) { return sel[face_of(h)] && !sel[face_of(h ^ 1)]; };

    UnionFind uf(nf);
    for (size_t h = 0; h < half_.size(); h += 2) {
        const int a = face_of(static_cast<int>(h)), b = face_of(static_cast<int>(h + 1));
        if (sel[a] && sel[b]) uf.unite(a, b);
    }

    std::vector<char> visited(half_.size(), 0);
    std::unordered_map<int, Face> comps;
    std::vector<int> comp_order;
    const size_t cap = half_.size() + 1;
    for (size_t h0 = 0; h0 < half_.size(); ++h0) {
        if (visited[h0] || !is_boundary(static_cast<int>(h0))) continue;
        Ring ring;
        int cur = static_cast<int>(h0);
        size_t steps = 0;
        do {
            visited[cur] = 1;
            ring.push_back(verts_[half_[cur].origin]);
            int c = half_[cur].next;
            while (!is_boundary(c)) c = half_[c ^ 1].next;
            cur = c;
            if (++steps > cap) throw Error("arrangement boundary trace did not close");
        } while (cur != static_cast<int>(h0));
        const int comp = uf.find(face_of(static_cast<int>(h0)));
        ring = clean_ring(std::move(ring), tol_);
        if (ring.empty()) continue;
        const double a = signed_area(ring);
        auto [it, inserted] = comps.try_emplace(comp);
        if (inserted) comp_order.push_back(comp);
        if (a > 0.0) {
            if (!it->second.outer.empty()) {
                // Defensive: keep the larger outer ring; the smaller becomes its own component.
                Face extra{std::move(ring), {}};
                const int key = -static_cast<int>(comps.size()) - 1;
                comps.emplace(key, std::move(extra));
                comp_order.push_back(key);
                continue;
            }
            it->second.outer = std::move(ring);
        } else {
            if (-a <= area_eps) {
                if (log) log->note("dropped hole below area tolerance");
                continue;
            }
            it->second.holes.push_back(std::move(ring));
        }
    }

    std::vector<Face> faces;
    for (int key : comp_order) {
        Face& f = comps[key];
        if (f.outer.empty()) {
            if (log && !f.holes.empty()) log->note("component without outer ring dropped");
            continue;
        }
        double m = signed_area(f.outer);
        for (const auto& h : f.holes) m += signed_area(h);
        if (m <= area_eps) {
            if (log) log->note("dropped component below area tolerance");
            continue;
        }
        faces.push_back(std::move(f));
    }
    auto anchor = [](const Ring& r) {
        Vec2 best = r.front();
        for (Vec2 p : r)
            if (p.y < best.y || (p.y == best.y && p.x < best.x)) best = p;
        return best;
    };
    for (auto& f : faces) {
        // Start each ring at its lowest-leftmost vertex for deterministic output.
        auto rot = [&](Ring& r) {
            const Vec2 a = anchor(r);
            auto it = std::find(r.begin(), r.end(), a);
            std::rotate(r.begin(), it, r.end());
        };
        rot(f.outer);
        for (auto& h : f.holes) rot(h);
        std::sort(f.holes.begin(), f.holes.end(), [&](const Ring& x, const Ring& y) {
            const Vec2 a = anchor(x), b = anchor(y);
            return a.y < b.y || (a.y == b.y && a.x < b.x);
        });
    }
    std::sort(faces.begin(), faces.end(), [&](const Face& x, const Face& y) {
        const Vec2 a = anchor(x.outer), b = anchor(y.outer);
        return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
    return Region::from_faces(std::move(faces));
}

}  // namespace fractile::detail
