#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "fractile/error.hpp"
#include "fractile/ifs.hpp"

using namespace fractile;
using fixtures::kSqrt3;

TEST(Contraction, RejectsNonContractions) {
    EXPECT_THROW(Contraction::similitude(2, 1.2, 0, false, {}), InvalidArgument);
    EXPECT_THROW(Contraction::similitude(2, 1.0, 0, false, {}), InvalidArgument);
    EXPECT_THROW(Contraction::affine(2, Mat2{0.5, 0, 0, 1.0}, {}), InvalidArgument);
    EXPECT_NO_THROW(Contraction::affine(2, Mat2{0.5, 0.2, 0, 0.6}, {}));
}

TEST(IfsSystem, NeedsTwoMapsOfOneDimension) {
    const auto m = Contraction::similitude(2, 0.5, 0, false, {});
    EXPECT_THROW(IfsSystem(2, {m}), InvalidArgument);
    EXPECT_THROW(IfsSystem(2, {m, Contraction::similitude(1, 0.5, 0, false, {})}), InvalidArgument);
}

TEST(Compose, Examples) {
    const IfsSystem g = fixtures::system("gasket");
    const Affine2 id = compose(g, Word{});
    EXPECT_EQ(id({0.3, 0.7}), (Vec2{0.3, 0.7}));
    const Affine2 one = compose(g, Word::from_one_based({1}));
    EXPECT_NEAR(one({1, 1}).x, 0.5, 1e-15);
    EXPECT_NEAR(one({1, 1}).y, 0.5, 1e-15);

    const IfsSystem l = fixtures::system("line_system");
    const Word w = Word::from_one_based({1, 3});
    const Affine2 f = compose(l, w);
    EXPECT_NEAR(f.linear.a, 1.0 / 27, 1e-16);
    EXPECT_NEAR(f.offset.x, 1.0 / 27, 1e-16);
    EXPECT_NEAR(word_ratio(l, w), 1.0 / 27, 1e-16);
    EXPECT_EQ(w.to_string(), "1.3");
}

TEST(Compose, HomomorphismOnRandomWords) {
    const IfsSystem s = fixtures::system("koch");
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> letter(0, int(s.size()) - 1), len(0, 7);
    std::uniform_real_distribution<double> coord(-1, 2);
    for (int trial = 0; trial < 200; ++trial) {
        Word u, v;
        for (int i = len(rng); i > 0; --i) u.idx.push_back(letter(rng));
        for (int i = len(rng); i > 0; --i) v.idx.push_back(letter(rng));
        Word uv = u;
        uv.idx.insert(uv.idx.end(), v.idx.begin(), v.idx.end());
        const Vec2 p{coord(rng), coord(rng)};
        const Vec2 a = compose(s, uv)(p), b = compose(s, u)(compose(s, v)(p));
        EXPECT_NEAR(a.x, b.x, 1e-12);
        EXPECT_NEAR(a.y, b.y, 1e-12);
        EXPECT_NEAR(word_ratio(s, uv), word_ratio(s, u) * word_ratio(s, v), 1e-15);
    }
}

TEST(AttractorPoints, SmallCases) {
    const IfsSystem g = fixtures::system("gasket");
    const PointCloud c0 = attractor_points(g, 0, {0, 0});
    ASSERT_EQ(c0.points.size(), 1u);
    EXPECT_NEAR(c0.err, 1.0, 1e-12);

    const IfsSystem c = fixtures::system("cantor");
    const PointCloud c2 = attractor_points(c, 2, {0, 0});
    ASSERT_EQ(c2.points.size(), 4u);
    const double want[] = {0, 2.0 / 9, 2.0 / 3, 8.0 / 9};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(c2.points[i].x, want[i], 1e-15);
    EXPECT_NEAR(c2.err, 1.0 / 9, 1e-15);

    const PointCloud c8 = attractor_points(g, 8, {0, 0});
    EXPECT_EQ(c8.points.size(), 6561u);
    EXPECT_NEAR(c8.err, 1.0 / 256, 1e-15);
}

TEST(AttractorPoints, BudgetExceeded) {
    EXPECT_THROW(attractor_points(fixtures::system("gasket"), 20, {0, 0}, 1000), BudgetExceeded);
}

TEST(AttractorHull, Examples) {
    const Region g = attractor_hull(fixtures::system("gasket")).hull;
    EXPECT_NEAR(g.measure(), kSqrt3 / 4, 1e-12);
    for (Vec2 v : {Vec2{0, 0}, Vec2{1, 0}, Vec2{0.5, kSqrt3 / 2}}) EXPECT_TRUE(g.contains(v, 1e-12));
    for (const char* name : {"cantor", "line_system"}) {
        const Region c = attractor_hull(fixtures::system(name)).hull;
        ASSERT_EQ(c.intervals().size(), 1u);
        EXPECT_NEAR(c.intervals()[0].lo, 0.0, 1e-12);
        EXPECT_NEAR(c.intervals()[0].hi, 1.0, 1e-12);
    }
}

TEST(AttractorHull, IsInvariantAndContainsCloud) {
    for (const char* name : {"koch", "rotation_system", "modified_gasket"}) {
        const IfsSystem s = fixtures::system(name);
        const Region C = attractor_hull(s).hull;
        for (const Vec2 p : attractor_points(s, 6, s[0].fixed_point()).points) EXPECT_TRUE(C.contains(p, 1e-9)) << name;
        for (const Contraction& m : s.maps())
            for (const Vec2 v : C.vertices()) EXPECT_TRUE(C.contains(m(v), 1e-9)) << name;
    }
}

TEST(SimilarityDimension, Examples) {
    const auto g = similarity_dimension(fixtures::system("gasket"));
    EXPECT_NEAR(g.value, std::log(3.0) / std::log(2.0), 1e-12);
    EXPECT_LE(g.residual, 1e-12);
    const IfsSystem halves(1, {Contraction::similitude(1, 0.5, 0, false, {0, 0}),
                               Contraction::similitude(1, 0.5, 0, false, {0.5, 0})});
    EXPECT_NEAR(similarity_dimension(halves).value, 1.0, 1e-15);
    EXPECT_NEAR(similarity_dimension(fixtures::system("koch")).value, std::log(4.0) / std::log(3.0), 1e-12);
    const IfsSystem aff(2, {Contraction::affine(2, Mat2{0.5, 0.1, 0, 0.4}, {}),
                            Contraction::affine(2, Mat2{0.5, 0, 0, 0.4}, {0.5, 0})});
    EXPECT_THROW(similarity_dimension(aff), Unsupported);
}

TEST(AttractorDistance, PointsOnAndOffTheGasket) {
    const AttractorDistance d(fixtures::system("gasket"));
    EXPECT_LE(d.distance({0.5, 0}, 1e-10), 1e-9);
    EXPECT_LE(d.distance({0.25, kSqrt3 / 4}, 1e-10), 1e-9);
    // centroid of the removed middle triangle: inradius 1/(4 sqrt3)
    EXPECT_NEAR(d.distance({0.5, kSqrt3 / 6}, 1e-10), 1 / (4 * kSqrt3), 1e-9);
    EXPECT_NEAR(d.distance({0.5, -1}, 1e-10), 1.0, 1e-9);
    const DistanceBounds b = d.bounds({0.4, 0.3}, 1e-6);
    EXPECT_LE(b.lo, b.hi);
    EXPECT_LE(b.hi - b.lo, 1e-6);
}

TEST(AttractorDistance, CantorGap) {
    const AttractorDistance d(fixtures::system("cantor"));
    EXPECT_NEAR(d.distance({0.5, 0}), 1.0 / 6, 1e-10);
    EXPECT_NEAR(d.distance({0.4, 0}), 0.4 - 1.0 / 3, 1e-10);
    EXPECT_LE(d.distance({0.25, 0}), 1e-9);
}
