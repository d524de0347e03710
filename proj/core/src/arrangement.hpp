#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "fractile/region.hpp"

namespace fractile::detail {

// Planar arrangement of polygon rings with snapping. Each ring belongs to a group;
// faces carry per-group winding numbers, so booleans, unions and hole filling are
// selections over faces.
class Arrangement {
public:
    Arrangement(double snap_tol, int groups);

    // Interior must lie to the left (outer rings CCW, holes CW).
    void add_ring(std::span<const Vec2> ring, int group);
    void add_region(const Region& r, int group);
    void build();

    int face_count() const { return static_cast<int>(face_winding_.size()); }
    int unbounded_face() const { return 0; }
    int winding(int face, int group) const { return face_winding_[face][group]; }

    // Closed union of the selected faces, regularized. Components are returned as faces.
    Region extract(const std::function<bool(int face)>& selected, double area_eps, OperationLog* log) const;

private:
    struct Segment {
        int u, v, group;
    };
    struct HalfEdge {
        int origin;
        int next = -1;
        int cycle = -1;
    };

    int vertex_id(Vec2 p);
    void split_segments();
    void build_dcel();
    void assign_faces();
    void compute_windings();

    double tol_;
    int groups_;
    std::vector<Vec2> verts_;
    std::unordered_map<std::uint64_t, std::vector<int>> vgrid_;
    std::vector<Segment> segs_;

    // Undirected edges u < v with per-group net multiplicity in the u -> v direction.
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> edge_count_;
    std::vector<HalfEdge> half_;  // half edge 2e is u->v, 2e+1 is v->u

    std::vector<double> cycle_area_;
    std::vector<int> cycle_face_;       // face id per cycle
    std::vector<std::vector<int>> face_winding_;
    bool built_ = false;
};

}  // namespace fractile::detail
