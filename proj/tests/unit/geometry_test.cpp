#include <gtest/gtest.h>

#include <numbers>

#include "fixtures.hpp"
#include "fractile/error.hpp"
#include "fractile/grid_volume.hpp"
#include "fractile/kernel.hpp"

using namespace fractile;
using fixtures::kSqrt3;

namespace {

Region half_triangle_at(Vec2 o) {
    return Region::polygon({o, o + Vec2{0.5, 0}, o + Vec2{0.25, kSqrt3 / 4}});
}

}  // namespace

TEST(Boolean, IntervalIntersection) {
    const Region r = boolean(Region::interval(0, 1.0 / 3), Region::interval(1.0 / 9, 2.0 / 9), BoolOp::Intersection);
    ASSERT_EQ(r.intervals().size(), 1u);
    EXPECT_NEAR(r.intervals()[0].lo, 1.0 / 9, 1e-15);
    EXPECT_NEAR(r.intervals()[0].hi, 2.0 / 9, 1e-15);
    EXPECT_NEAR(r.measure(), 1.0 / 9, 1e-15);
}

TEST(Boolean, SelfDifferenceIsEmpty) {
    const Region sq = fixtures::unit_square();
    EXPECT_TRUE(boolean(sq, sq, BoolOp::Difference).empty());
}

TEST(Boolean, TriangleMinusCornersLeavesMiddle) {
    const Region tri = fixtures::unit_triangle();
    const std::vector<Region> corners{half_triangle_at({0, 0}), half_triangle_at({0.5, 0}),
                                      half_triangle_at({0.25, kSqrt3 / 4})};
    const Region rest = boolean(tri, union_all(corners), BoolOp::Difference);
    EXPECT_NEAR(rest.measure(), kSqrt3 / 16, 1e-12);
    ASSERT_EQ(components(rest).size(), 1u);
    EXPECT_TRUE(rest.contains_interior({0.5, kSqrt3 / 6}));
}

TEST(Boolean, UnionOfOverlappingSquares) {
    const Region a = Region::box({{0, 0}, {2, 2}});
    const Region b = Region::box({{1, 1}, {3, 3}});
    EXPECT_NEAR(boolean(a, b, BoolOp::Union).measure(), 7.0, 1e-12);
    EXPECT_NEAR(boolean(a, b, BoolOp::Intersection).measure(), 1.0, 1e-12);
    EXPECT_NEAR(boolean(a, b, BoolOp::SymmetricDifference).measure(), 6.0, 1e-12);
}

TEST(Boolean, HoleFromDifference) {
    const Region outer = Region::box({{0, 0}, {3, 3}});
    const Region inner = Region::box({{1, 1}, {2, 2}});
    const Region ring = boolean(outer, inner, BoolOp::Difference);
    ASSERT_EQ(ring.faces().size(), 1u);
    EXPECT_EQ(ring.faces()[0].holes.size(), 1u);
    EXPECT_NEAR(ring.measure(), 8.0, 1e-12);
    EXPECT_FALSE(ring.contains({1.5, 1.5}));
    EXPECT_NEAR(fill_holes_of_union(std::vector<Region>{ring}).measure(), 9.0, 1e-12);
}

TEST(Boolean, SliverIsDroppedAndLogged) {
    const Region a = Region::box({{0, 0}, {1, 1}});
    const Region b = Region::box({{0, 0}, {1, 1 - 1e-6}});
    Tolerance tol;
    tol.area_eps = 1e-5;
    OperationLog log;
    EXPECT_TRUE(boolean(a, b, BoolOp::Difference, tol, &log).empty());
    EXPECT_FALSE(log.entries.empty());
}

TEST(Boolean, MixedDimensionsRejected) {
    EXPECT_THROW(boolean(fixtures::unit_square(), Region::interval(0, 1), BoolOp::Union), InvalidArgument);
}

TEST(Components, TwoSquares) {
    const std::vector<Region> parts{Region::box({{0, 0}, {1, 1}}), Region::box({{2, 0}, {3, 1}})};
    EXPECT_EQ(components(union_all(parts)).size(), 2u);
}

TEST(Hull, PointsAndRegion) {
    const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0.5, 0.2}, {1, 1}, {0, 1}, {0.5, 1}};
    const auto ring = convex_hull_ring(pts);
    EXPECT_EQ(ring.size(), 4u);
    EXPECT_GT(signed_area(ring), 0.0);
    const Region l = Region::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    EXPECT_NEAR(convex_hull(l).measure(), 3.5, 1e-12);
    EXPECT_FALSE(l.is_convex());
    EXPECT_TRUE(convex_hull(l).is_convex());
}

TEST(Erode, Square) {
    const Region e = erode(fixtures::unit_square(), 0.25);
    EXPECT_NEAR(e.measure(), 0.25, 1e-12);
    EXPECT_TRUE(e.contains({0.25, 0.25}));
    EXPECT_FALSE(e.contains({0.2, 0.5}));
}

TEST(Erode, TriangleToInradiusIsEmpty) {
    const Region t = half_triangle_at({0, 0});
    EXPECT_TRUE(erode(t, 1 / (4 * kSqrt3) + 1e-9).empty());
    EXPECT_NEAR(inradius(t), 1 / (4 * kSqrt3), 1e-12);
}

TEST(Erode, Intervals) {
    const Region r = Region::from_intervals({{0, 1}, {2, 5}});
    const Region e = erode(r, 0.5);
    EXPECT_NEAR(e.measure(), 2.0, 1e-12);
    EXPECT_TRUE(e.contains({0.5, 0}));
    EXPECT_TRUE(e.contains({4.5, 0}));
    EXPECT_FALSE(e.contains({1.0, 0}));
}

TEST(InnerTube, SquareAndTriangle) {
    EXPECT_NEAR(inner_tube_volume(fixtures::unit_square(), 0.1), 0.36, 1e-12);
    const double rho = 1 / (4 * kSqrt3);
    const Region g = Region::polygon({{0.25, kSqrt3 / 4}, {0.5, 0}, {0.75, kSqrt3 / 4}});
    EXPECT_NEAR(inner_tube_volume(g, rho / 2), 3 * kSqrt3 / 64, 1e-12);
    for (double e : {0.01, 0.03, 0.06, 0.1})
        EXPECT_NEAR(inner_tube_volume(g, e), kSqrt3 / 16 * (1 - std::pow(1 - std::min(e, rho) / rho, 2)), 1e-12);
    EXPECT_EQ(inner_tube_volume(g, 0.0), 0.0);
}

TEST(Steiner, ConvexBodies) {
    EXPECT_NEAR(outer_tube_volume_convex(fixtures::unit_square(), 1.0), 4 + std::numbers::pi, 1e-12);
    EXPECT_NEAR(outer_tube_volume_convex(fixtures::unit_triangle(), 0.1), 0.3 + 0.01 * std::numbers::pi, 1e-12);
    EXPECT_NEAR(outer_tube_volume_convex(Region::interval(0, 1), 0.25), 0.5, 1e-15);
    const Region l = Region::polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
    EXPECT_THROW(outer_tube_volume_convex(l, 0.1), Unsupported);
}

TEST(Grid, Disk) {
    const SegmentField f(2, {{{0, 0}, {0, 0}}});
    const GridVolume v = grid_tube_volume(TubeQuery{&f, 1.0}, 0.002);
    EXPECT_NEAR(v.value, std::numbers::pi, 0.03);
    EXPECT_LE(std::abs(v.value - std::numbers::pi), v.error_bar);
    EXPECT_FALSE(v.precision_warning);
}

TEST(Grid, Stadium) {
    const SegmentField f(2, {{{0, 0}, {1, 0}}});
    const GridVolume v = grid_tube_volume_refined(TubeQuery{&f, 0.1}, 0.001);
    const double exact = 0.2 + 0.01 * std::numbers::pi;
    EXPECT_LE(std::abs(v.value - exact), v.error_bar);
    EXPECT_LT(v.error_bar, 3e-3);
}

TEST(Grid, CoarseCellWarns) {
    const SegmentField f(2, {{{0, 0}, {0, 0}}});
    EXPECT_TRUE(grid_tube_volume(TubeQuery{&f, 0.1}, 0.05).precision_warning);
}

TEST(Grid, OneSidedAroundSquare) {
    const Region sq = fixtures::unit_square();
    const SegmentField f = SegmentField::boundary_of(sq);
    const GridVolume in = grid_tube_volume_refined(TubeQuery{&f, 0.1, Side::Inside, &sq}, 0.004);
    const GridVolume out = grid_tube_volume_refined(TubeQuery{&f, 0.1, Side::Outside, &sq}, 0.004);
    EXPECT_LE(std::abs(in.value - 0.36), in.error_bar);
    EXPECT_LE(std::abs(out.value - (0.4 + 0.01 * std::numbers::pi)), out.error_bar);
}

TEST(Hausdorff, Clouds) {
    const PointCloud a{{{0, 0}, {1, 0}}, 0.0};
    EXPECT_EQ(hausdorff_distance(a, a), 0.0);
    EXPECT_EQ(hausdorff_distance(PointCloud{{{0, 0}}, 0}, PointCloud{{{1, 0}}, 0}), 1.0);
}

TEST(Hausdorff, DilatedSquare) {
    const Region big = Region::box({{-0.1, -0.1}, {1.1, 1.1}});
    EXPECT_NEAR(hausdorff_distance(fixtures::unit_square(), big, 0.01), 0.1 * std::sqrt(2.0), 1e-9);
}

TEST(BoundarySample, Shapes) {
    const auto sq = boundary_sample(fixtures::unit_square(), 0.5);
    EXPECT_GE(sq.size(), 8u);
    for (Vec2 c : {Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}})
        EXPECT_NE(std::find(sq.begin(), sq.end(), c), sq.end());
    const auto iv = boundary_sample(Region::interval(0, 1), 0.1);
    ASSERT_EQ(iv.size(), 2u);
    EXPECT_EQ(iv[0].x, 0.0);
    EXPECT_EQ(iv[1].x, 1.0);
    const auto tri = boundary_sample(fixtures::unit_triangle(), 0.1);
    EXPECT_GE(tri.size(), 30u);
    for (size_t i = 0; i < tri.size(); ++i) EXPECT_LE(dist(tri[i], tri[(i + 1) % tri.size()]), 0.1 + 1e-12);
}

TEST(Region, MeasureAndTransform) {
    const Region r = Region::box({{0, 0}, {2, 1}});
    const Affine2 f{Mat2::rotation(0.3) * Mat2::scale(0.5), {1, 2}};
    EXPECT_NEAR(r.transformed(f).measure(), 0.5, 1e-14);
    const Region flipped = r.transformed({Mat2{-1, 0, 0, 1}, {}});
    EXPECT_GT(signed_area(flipped.faces()[0].outer), 0.0);
}
