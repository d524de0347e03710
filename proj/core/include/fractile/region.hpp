#pragma once

#include <string>
#include <vector>

#include "fractile/geometry.hpp"

namespace fractile {

struct Tolerance {
    double coord_eps = 1e-9;
    double area_eps = 1e-10;
    double sample_step = 1e-2;
};

// Closed polygon ring; the closing edge is implicit.
using Ring = std::vector<Vec2>;

double signed_area(const Ring& ring);
double ring_perimeter(const Ring& ring);

// Outer ring counter-clockwise, holes clockwise.
struct Face {
    Ring outer;
    std::vector<Ring> holes;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// Non-fatal events recorded by geometric operations (dropped slivers and the like).
struct OperationLog {
    std::vector<std::string> entries;
    void note(std::string s) { entries.push_back(std::move(s)); }
};

// A closed, regularized subset of R^d for d in {1, 2}.
// In d = 2 it is a list of polygon faces; in d = 1 a sorted list of disjoint intervals.
class Region {
public:
    Region() = default;
    explicit Region(int dimension) : dim_(dimension) {}

    static Region polygon(Ring outer, std::vector<Ring> holes = {});
    static Region from_faces(std::vector<Face> faces);
    static Region from_intervals(std::vector<Interval> intervals, double coord_eps = 1e-9);
    static Region interval(double lo, double hi) { return from_intervals({{lo, hi}}); }
    static Region box(const Box& b);

    int dimension() const { return dim_; }
    bool empty() const { return dim_ == 2 ? faces_.empty() : intervals_.empty(); }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Interval>& intervals() const { return intervals_; }

    // Lebesgue measure (area or length).
    double measure() const;
    Box bbox() const;
    double diameter() const;
    Region transformed(const Affine2& f) const;

    // Boundary as a list of segments (d = 2) or points (d = 1, as degenerate segments).
    std::vector<std::pair<Vec2, Vec2>> boundary_segments() const;
    std::vector<Vec2> vertices() const;

    // Does the closed region contain p (within coord_eps of the boundary counts as inside)?
    bool contains(Vec2 p, double coord_eps = 1e-9) const;
    // Strict interior test: inside and farther than coord_eps from the boundary.
    bool contains_interior(Vec2 p, double coord_eps = 1e-9) const;
    double boundary_distance(Vec2 p) const;
    // True for a single convex face without holes (or a single interval).
    bool is_convex(double coord_eps = 1e-9) const;

private:
    int dim_ = 2;
    std::vector<Face> faces_;
    std::vector<Interval> intervals_;
};

}  // namespace fractile
