#include <gtest/gtest.h>

#include <numbers>

#include "fixtures.hpp"
#include "fractile/error.hpp"
#include "fractile/io.hpp"
#include "fractile/kernel.hpp"

using namespace fractile;
using fixtures::kSqrt3;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_spec(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Expression, Arithmetic) {
    EXPECT_DOUBLE_EQ(eval_expression("1/3"), 1.0 / 3);
    EXPECT_DOUBLE_EQ(eval_expression("sqrt(3)/8"), kSqrt3 / 8);
    EXPECT_DOUBLE_EQ(eval_expression("-2^2"), -4.0);
    EXPECT_DOUBLE_EQ(eval_expression("2*(1+pi)"), 2 * (1 + std::numbers::pi));
    EXPECT_DOUBLE_EQ(eval_expression(" 1e-3 + 2 "), 2.001);
    EXPECT_THROW(eval_expression("sqrt(-1)"), ParseError);
    EXPECT_THROW(eval_expression("1/"), ParseError);
    EXPECT_THROW(eval_expression("foo"), ParseError);
}

TEST(Spec, FixturesLoad) {
    for (const char* name : {"gasket", "carpet", "cantor", "koch", "line_system", "rotation_system",
                             "modified_gasket", "square4", "nonlattice"}) {
        const SystemSpec sp = fixtures::spec(name);
        EXPECT_GE(sp.system.size(), 2u) << name;
    }
    const SystemSpec line = fixtures::spec("line_system");
    EXPECT_EQ(line.open_set, SystemSpec::OpenSet::Explicit);
    ASSERT_TRUE(line.explicit_open_set.has_value());
    EXPECT_NEAR(line.explicit_open_set->measure(), 2.0 / 3, 1e-15);
}

TEST(Spec, MapConventions) {
    const SystemSpec sp = parse_spec(R"({"dimension": 2, "maps": [
        {"r": 0.5, "theta_deg": 90, "tx": 1, "ty": 0},
        {"type": "affine", "matrix": [[0.5, 0], [0, 0.25]], "tx": 0, "ty": "1/2"}]})");
    const Vec2 p = sp.system[0]({1, 0});
    EXPECT_NEAR(p.x, 1.0, 1e-15);
    EXPECT_NEAR(p.y, 0.5, 1e-15);
    EXPECT_EQ(sp.system[1].kind(), MapKind::Affine);
    EXPECT_NEAR(sp.system[1]({1, 1}).y, 0.75, 1e-15);
    const SystemSpec d1 = parse_spec(R"({"dimension": 1, "maps": [{"r": 0.5, "reflect": true, "tx": 1}, {"r": 0.5}]})");
    EXPECT_NEAR(d1.system[0]({1, 0}).x, 0.5, 1e-15);
}

TEST(Spec, Diagnostics) {
    EXPECT_NE(error_of(R"({"dimension": 2, "maps": [{"r": 1.2}, {"r": 0.5}]})").find("maps[0].r"), std::string::npos);
    EXPECT_NE(error_of(R"({"dimension": 2, "maps": [{"r": 0.5}, {"r": 0.5, "colour": 1}]})").find("maps[1].colour"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"dimension": 3, "maps": []})").find("dimension"), std::string::npos);
    EXPECT_NE(error_of("{\"dimension\": 2,\n \"maps\": [}").find("line 2"), std::string::npos);
    EXPECT_NE(error_of(R"({"dimension": 2, "maps": [{"r": 0.5}]})").find("at least 2"), std::string::npos);
    EXPECT_NE(error_of(R"({"dimension": 1, "maps": [{"r": 0.5, "ty": 1}, {"r": 0.5}]})").find("maps[0]"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"dimension": 2, "maps": [{"r": "1/"}, {"r": 0.5}]})").find("maps[0].r"), std::string::npos);
    EXPECT_THROW(load_spec("/nonexistent/spec.json"), InvalidArgument);
}

TEST(Spec, OpenSetResolution) {
    SystemSpec g = fixtures::spec("gasket");
    EXPECT_NEAR(resolve_open_set(g).measure(), kSqrt3 / 4, 1e-12);
    g.open_set = SystemSpec::OpenSet::EnvelopeInterior;
    EXPECT_NEAR(resolve_open_set(g, 4).measure(), kSqrt3 / 4, 1e-10);
}

TEST(Geometry, RoundTrip) {
    const Region outer = Region::box({{0, 0}, {3, 3}});
    const Region ring = boolean(outer, Region::box({{1, 1}, {2, 2}}), BoolOp::Difference);
    const Region two = boolean(ring, Region::box({{4, 0}, {5, 1}}), BoolOp::Union);
    const std::string text = write_geometry(two);
    const Region back = read_geometry(text);
    EXPECT_EQ(write_geometry(back), text);
    EXPECT_NEAR(back.measure(), 9.0, 1e-15);
    ASSERT_EQ(back.faces().size(), 2u);

    const Region iv = Region::from_intervals({{0, 1.0 / 3}, {2.0 / 3, 1}});
    const Region ivb = read_geometry(write_geometry(iv));
    EXPECT_EQ(ivb.intervals().size(), 2u);
    EXPECT_EQ(ivb.intervals()[0].hi, 1.0 / 3);
}

TEST(Geometry, ReadErrors) {
    EXPECT_THROW(read_geometry("dimension 2\n0 0, 1 0\n"), ParseError);
    EXPECT_THROW(read_geometry("0 0, 1 0, 1 1\n"), ParseError);
    EXPECT_THROW(read_geometry("dimension 1\n1\n"), ParseError);
    EXPECT_NO_THROW(read_geometry("# comment\ndimension 1\n0 1\n"));
}

TEST(Svg, Deterministic) {
    SvgScene scene;
    scene.layers.push_back({{fixtures::unit_triangle()}, "#cccccc"});
    scene.points = {{0.5, 0.2}};
    scene.title = "t";
    const std::string a = render_svg(scene), b = render_svg(scene);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("<svg", 0), 0u);
    EXPECT_NE(a.find("#cccccc"), std::string::npos);
}
