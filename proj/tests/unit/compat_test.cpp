#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "fractile/compat.hpp"
#include "fractile/kernel.hpp"
#include "json.hpp"

using namespace fractile;
using fixtures::kSqrt3;

TEST(Envelope, GasketIsItsHull) {
    const IfsSystem g = fixtures::system("gasket");
    const Region C = attractor_hull(g).hull;
    for (int n : {1, 3, 5}) {
        const Envelope E = envelope(g, n);
        EXPECT_LE(boolean(E.region, C, BoolOp::SymmetricDifference).measure(), 1e-10) << n;
        EXPECT_NEAR(E.hausdorff_bound, std::pow(0.5, n), 1e-15);
    }
}

TEST(Envelope, KochShrinks) {
    const IfsSystem k = fixtures::system("koch");
    const double m3 = envelope(k, 3).region.measure();
    const double m6 = envelope(k, 6).region.measure();
    EXPECT_GT(m3, 0.0);
    EXPECT_LT(m6, m3);
    EXPECT_LT(m6, 0.5 * m3);
}

TEST(Envelope, ModifiedGasketIsItsHull) {
    const IfsSystem m = fixtures::system("modified_gasket");
    const Region C = attractor_hull(m).hull;
    const Envelope E = envelope(m, 5);
    EXPECT_LE(boolean(E.region, C, BoolOp::SymmetricDifference).measure(), 1e-6 * C.measure());
    EXPECT_TRUE(envelope_convex(m, 5).holds());
    const Verdict f = check_feasible(m, E.region);
    ASSERT_TRUE(f.violated());
    EXPECT_EQ(f.indices, (std::vector<int>{1, 4}));
}

TEST(Envelope, Convexity) {
    EXPECT_TRUE(envelope_convex(fixtures::system("gasket"), 5).holds());
    EXPECT_TRUE(envelope_convex(fixtures::system("koch"), 5).violated());
    EXPECT_TRUE(envelope_convex(fixtures::system("cantor"), 5).holds());
}

TEST(BoundarySubset, HullBoundaries) {
    const IfsSystem g = fixtures::system("gasket");
    EXPECT_TRUE(check_boundary_subset(attractor_hull(g).hull, g).holds());

    const IfsSystem k = fixtures::system("koch");
    const Verdict v = check_boundary_subset(attractor_hull(k).hull, k);
    ASSERT_TRUE(v.violated());
    ASSERT_TRUE(v.witness.has_value());
    // witness lies on the base edge, strictly between curve and hull
    EXPECT_NEAR(v.witness->point.y, 0.0, 1e-9);
    EXPECT_GT(v.witness->distance, v.tolerance);

    const IfsSystem c = fixtures::system("cantor");
    EXPECT_TRUE(check_boundary_subset(Region::interval(0, 1), c).holds());
}

TEST(CompatReport, GasketAllHold) {
    const IfsSystem g = fixtures::system("gasket");
    const std::vector<double> eps{0.02, 0.05, 0.1};
    const CompatReport r = compatibility_report(g, attractor_hull(g).hull, eps);
    for (const auto& [name, v] : r.entries()) EXPECT_TRUE(v->holds()) << name << ": " << v->reason;
    EXPECT_TRUE(r.canonical);
    EXPECT_TRUE(r.consistent);
    EXPECT_TRUE(r.compatible);
    EXPECT_EQ(r.entries().size(), 8u);
}

TEST(CompatReport, KochConsistentlyFalse) {
    const IfsSystem k = fixtures::system("koch");
    const std::vector<double> eps{0.02, 0.05};
    const CompatReport r = compatibility_report(k, attractor_hull(k).hull, eps);
    EXPECT_TRUE(r.base_boundary.violated());
    EXPECT_TRUE(r.inner_volumes.violated());
    EXPECT_TRUE(r.outer_volumes.violated());
    EXPECT_TRUE(r.consistent);
    EXPECT_FALSE(r.compatible);
}

TEST(CompatReport, LineSystemBaseBoundary) {
    const SystemSpec sp = fixtures::spec("line_system");
    const std::vector<double> eps{0.01};
    const CompatReport r = compatibility_report(sp.system, *sp.explicit_open_set, eps);
    EXPECT_FALSE(r.canonical);
    // 1/3 = phi_1(1) and 2/3 = phi_2(0) lie in F, so bd K is in F here
    EXPECT_TRUE(r.base_boundary.holds());
    EXPECT_NEAR(AttractorDistance(sp.system).distance({1.0 / 3, 0}), 0.0, 1e-12);
}

TEST(CompatReport, JsonShape) {
    const IfsSystem k = fixtures::system("koch");
    const std::vector<double> eps{0.05};
    const CompatReport r = compatibility_report(k, attractor_hull(k).hull, eps);
    const auto j = nlohmann::json::parse(r.to_json());
    EXPECT_TRUE(j.contains("consistent"));
    EXPECT_TRUE(j.contains("compatible"));
    EXPECT_EQ(r.to_json(), compatibility_report(k, attractor_hull(k).hull, eps).to_json());
    EXPECT_FALSE(r.summary().empty());
}

TEST(Obstruction, Corpus) {
    const auto koch = obstruction_classifier(fixtures::system("koch"));
    EXPECT_TRUE(koch.connected_complement.holds());
    EXPECT_EQ(koch.envelope_measures.size(), 3u);

    const auto gasket = obstruction_classifier(fixtures::system("gasket"));
    EXPECT_TRUE(gasket.connected_complement.violated());
    EXPECT_NEAR(gasket.extrapolated_measure, kSqrt3 / 4, 1e-6);
    EXPECT_TRUE(gasket.int_envelope_feasible.holds());

    const auto mod = obstruction_classifier(fixtures::system("modified_gasket"));
    EXPECT_TRUE(mod.connected_complement.violated());
    ASSERT_TRUE(mod.int_envelope_feasible.violated());
    EXPECT_EQ(mod.int_envelope_feasible.indices, (std::vector<int>{1, 4}));
    EXPECT_NE(mod.advice.find("(1,4)"), std::string::npos);
}
