#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "fractile/error.hpp"
#include "fractile/kernel.hpp"
#include "fractile/tiling.hpp"

using namespace fractile;
using fixtures::kSqrt3;

namespace {

Region hull_of(const IfsSystem& s) { return attractor_hull(s).hull; }

Region line_open_set() { return Region::from_intervals({{0, 1.0 / 3}, {2.0 / 3, 1}}); }

}  // namespace

TEST(Tsc, Corpus) {
    EXPECT_TRUE(check_tsc(fixtures::system("gasket")).holds());
    EXPECT_TRUE(check_tsc(fixtures::system("carpet")).holds());
    EXPECT_TRUE(check_tsc(fixtures::system("cantor")).holds());
    EXPECT_TRUE(check_tsc(fixtures::system("koch")).holds());

    const Verdict line = check_tsc(fixtures::system("line_system"));
    ASSERT_TRUE(line.violated());
    EXPECT_EQ(line.indices, (std::vector<int>{1, 3}));
    EXPECT_NEAR(line.margin, 1.0 / 9, 1e-12);

    EXPECT_TRUE(check_tsc(fixtures::system("rotation_system")).violated());
    const Verdict mod = check_tsc(fixtures::system("modified_gasket"));
    ASSERT_TRUE(mod.violated());
    EXPECT_EQ(mod.indices, (std::vector<int>{1, 4}));
}

TEST(Feasible, Examples) {
    const IfsSystem line = fixtures::system("line_system");
    EXPECT_TRUE(check_feasible(line, line_open_set()).holds());
    const IfsSystem g = fixtures::system("gasket");
    EXPECT_TRUE(check_feasible(g, hull_of(g)).holds());
    const Region far = Region::box({{5, 5}, {5.1, 5.1}});
    const Verdict v = check_feasible(g, far);
    EXPECT_TRUE(v.violated());
    EXPECT_NE(v.reason.find("contain"), std::string::npos);
    EXPECT_TRUE(check_feasible(line, hull_of(line)).violated());
}

TEST(Feasible, ConvexFeasibleImpliesTsc) {
    for (const char* name : {"gasket", "carpet", "cantor", "koch", "line_system", "rotation_system",
                             "modified_gasket", "square4", "nonlattice"}) {
        const IfsSystem s = fixtures::system(name);
        const Verdict f = check_feasible(s, hull_of(s));
        const Verdict t = check_tsc(s);
        EXPECT_EQ(f.holds(), t.holds()) << name;
    }
}

TEST(Nontrivial, Examples) {
    const IfsSystem g = fixtures::system("gasket");
    const Verdict vg = check_nontrivial(g, hull_of(g));
    EXPECT_TRUE(vg.holds());
    EXPECT_NEAR(vg.margin, kSqrt3 / 16, 1e-12);

    const IfsSystem sq = fixtures::system("square4");
    const Verdict vs = check_nontrivial(sq, hull_of(sq));
    EXPECT_TRUE(vs.violated());
    EXPECT_NEAR(vs.margin, 0.0, 1e-12);

    const Verdict vl = check_nontrivial(fixtures::system("line_system"), line_open_set());
    EXPECT_TRUE(vl.holds());
    EXPECT_NEAR(vl.margin, 4.0 / 27, 1e-12);
}

TEST(Generators, Examples) {
    const IfsSystem g = fixtures::system("gasket");
    const auto gg = generators(g, hull_of(g));
    ASSERT_EQ(gg.size(), 1u);
    EXPECT_NEAR(gg[0].measure(), kSqrt3 / 16, 1e-12);
    EXPECT_TRUE(gg[0].contains_interior({0.5, kSqrt3 / 6}));

    const auto gl = generators(fixtures::system("line_system"), line_open_set());
    ASSERT_EQ(gl.size(), 2u);
    EXPECT_NEAR(gl[0].intervals()[0].lo, 4.0 / 27, 1e-12);
    EXPECT_NEAR(gl[0].intervals()[0].hi, 5.0 / 27, 1e-12);
    EXPECT_NEAR(gl[1].intervals()[0].lo, 7.0 / 9, 1e-12);
    EXPECT_NEAR(gl[1].intervals()[0].hi, 8.0 / 9, 1e-12);

    const auto gc = generators(fixtures::system("cantor"), Region::interval(0, 1));
    ASSERT_EQ(gc.size(), 1u);
    EXPECT_NEAR(gc[0].intervals()[0].lo, 1.0 / 3, 1e-12);
    EXPECT_NEAR(gc[0].intervals()[0].hi, 2.0 / 3, 1e-12);

    const IfsSystem sq = fixtures::system("square4");
    EXPECT_THROW(generators(sq, hull_of(sq)), PreconditionFailed);
    const IfsSystem line = fixtures::system("line_system");
    EXPECT_THROW(generators(line, hull_of(line)), PreconditionFailed);
}

TEST(Tiling, GeneratorData) {
    const IfsSystem g = fixtures::system("gasket");
    const Tiling t(g, hull_of(g));
    ASSERT_EQ(t.generators().size(), 1u);
    EXPECT_NEAR(t.generators()[0].inradius, 1 / (4 * kSqrt3), 1e-12);
    EXPECT_NEAR(t.max_inradius(), 1 / (4 * kSqrt3), 1e-12);
}

TEST(TileStream, GasketDepthOne) {
    const IfsSystem g = fixtures::system("gasket");
    const Tiling t(g, hull_of(g));
    auto stream = enumerate_tiles(t, StopPolicy{1});
    std::vector<Tile> tiles;
    while (auto tile = stream.next()) tiles.push_back(*tile);
    ASSERT_EQ(tiles.size(), 4u);
    EXPECT_NEAR(tiles[0].region.measure(), kSqrt3 / 16, 1e-12);
    for (int i = 1; i < 4; ++i) {
        EXPECT_NEAR(tiles[i].region.measure(), kSqrt3 / 64, 1e-12);
        EXPECT_EQ(tiles[i].word.size(), 1u);
        EXPECT_EQ(tiles[i].word.idx[0], i - 1);
        EXPECT_NEAR(tiles[i].ratio, 0.5, 1e-15);
    }
    EXPECT_FALSE(stream.truncated());
}

TEST(TileStream, CantorDepthTwo) {
    const Tiling t(fixtures::system("cantor"), Region::interval(0, 1));
    auto stream = enumerate_tiles(t, StopPolicy{2});
    std::vector<double> lengths;
    while (auto tile = stream.next()) lengths.push_back(tile->region.measure());
    ASSERT_EQ(lengths.size(), 7u);
    EXPECT_NEAR(lengths[0], 1.0 / 3, 1e-15);
    for (int i = 1; i < 3; ++i) EXPECT_NEAR(lengths[i], 1.0 / 9, 1e-15);
    for (int i = 3; i < 7; ++i) EXPECT_NEAR(lengths[i], 1.0 / 27, 1e-15);
}

TEST(TileStream, DepthZeroIsGenerators) {
    const Tiling t(fixtures::system("line_system"), line_open_set());
    auto stream = enumerate_tiles(t, StopPolicy{0});
    int n = 0;
    while (auto tile = stream.next()) {
        EXPECT_TRUE(tile->word.idx.empty());
        EXPECT_EQ(tile->q, n);
        ++n;
    }
    EXPECT_EQ(n, 2);
}

TEST(TileStream, MinDiameterAndCap) {
    const IfsSystem g = fixtures::system("gasket");
    const Tiling t(g, hull_of(g));
    auto a = enumerate_tiles(t, StopPolicy{18, 0.1});
    double smallest = 1.0;
    while (auto tile = a.next()) smallest = std::min(smallest, tile->ratio);
    // words are expanded while r_w diam K >= 0.1, so the last level has r_w = 1/16
    EXPECT_NEAR(smallest, 1.0 / 16, 1e-15);
    auto b = enumerate_tiles(t, StopPolicy{18, 0.0, 50});
    std::size_t n = 0;
    while (b.next()) ++n;
    EXPECT_EQ(n, 50u);
    EXPECT_TRUE(b.truncated());
}

TEST(TileStream, TileIsMappedGenerator) {
    const IfsSystem k = fixtures::system("koch");
    const Tiling t(k, hull_of(k));
    auto stream = enumerate_tiles(t, StopPolicy{3});
    while (auto tile = stream.next()) {
        const Affine2 f = compose(k, tile->word);
        const auto want = t.generators()[tile->q].region.transformed(f).vertices();
        const auto got = tile->region.vertices();
        ASSERT_EQ(want.size(), got.size());
        for (size_t i = 0; i < got.size(); ++i) EXPECT_LE(dist(want[i], got[i]), 1e-9);
    }
}

TEST(TilesetLevel, GasketLevels) {
    const IfsSystem g = fixtures::system("gasket");
    const Region C = hull_of(g);
    EXPECT_NEAR(tileset_level(g, C, 0).region.measure(), kSqrt3 / 16, 1e-12);
    EXPECT_NEAR(tileset_level(g, C, 1).region.measure(), 3 * kSqrt3 / 64, 1e-12);
    const IfsSystem sq = fixtures::system("square4");
    EXPECT_TRUE(tileset_level(sq, hull_of(sq), 2).region.empty());
}

TEST(BoundaryDimension, Canonical) {
    for (auto [name, dim_bd] : {std::pair{"gasket", 1.0}, std::pair{"cantor", 0.0}, std::pair{"koch", 1.0}}) {
        const IfsSystem s = fixtures::system(name);
        const auto r = boundary_dimension_report(s, hull_of(s));
        const double dF = similarity_dimension(s).value;
        EXPECT_NEAR(r.dim_F, dF, 1e-12) << name;
        EXPECT_NEAR(r.dim_bd_T, std::max(dF, dim_bd), 1e-12) << name;
        EXPECT_FALSE(r.partial);
    }
}
