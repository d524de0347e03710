#pragma once

#include <span>
#include <vector>

#include "fractile/ifs.hpp"
#include "fractile/region.hpp"

namespace fractile {

enum class BoolOp { Union, Intersection, Difference, SymmetricDifference };

// Regularized boolean operation: closure of the interior of the exact result.
// Components below tol.area_eps are dropped and noted in the log.
Region boolean(const Region& a, const Region& b, BoolOp op, const Tolerance& tol = {}, OperationLog* log = nullptr);
Region union_all(std::span<const Region> parts, const Tolerance& tol = {}, OperationLog* log = nullptr);

// Connected components (faces in d = 2, intervals in d = 1) in lowest-leftmost order.
std::vector<Region> components(const Region& r);

// Complement of the unbounded component of the complement of the union of parts.
Region fill_holes_of_union(std::span<const Region> parts, const Tolerance& tol = {}, OperationLog* log = nullptr);

// Counter-clockwise hull vertices; collinear points within coord_eps are dropped.
// Fewer than three points are returned for degenerate input.
std::vector<Vec2> convex_hull_ring(std::span<const Vec2> pts, double coord_eps = 1e-12);
// Smallest convex set containing the region (polygon or interval).
Region convex_hull(const Region& r, double coord_eps = 1e-12);
// Throws InvalidArgument when the points span no area (d = 2).
Region convex_hull(std::span<const Vec2> pts, int dimension, double coord_eps = 1e-12);

// {x in r : dist(x, complement of r) >= eps}
Region erode(const Region& r, double eps, const Tolerance& tol = {});
// measure(r) - measure(erode(r, eps))
double inner_tube_volume(const Region& r, double eps, const Tolerance& tol = {});
// Steiner formula; requires a convex region.
double outer_tube_volume_convex(const Region& r, double eps, double coord_eps = 1e-9);
// Largest eps with a non-empty erosion.
double inradius(const Region& r, const Tolerance& tol = {});

// Points along every boundary ring with spacing at most step; vertices included.
std::vector<Vec2> boundary_sample(const Region& r, double step);

double hausdorff_distance(const PointCloud& a, const PointCloud& b);
// Between region boundaries, by sampling at `step`.
double hausdorff_distance(const Region& a, const Region& b, double step);
double hausdorff_distance(const PointCloud& a, const Region& b, double step);

}  // namespace fractile
