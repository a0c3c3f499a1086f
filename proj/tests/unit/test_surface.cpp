#include <doctest.h>

#include "dpw/catalog.hpp"
#include "dpw/surface.hpp"

using namespace dpw;

namespace {

const SurfaceComponent& by_role(const FiberComplex& f, const std::string& role) {
    for (auto& c : f.components)
        if (c.role == role) return c;
    throw DomainError("no component " + role);
}

}  // namespace

TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("0.5"), DomainError);
    CHECK_THROWS_AS(parse_rational("1e2"), DomainError);
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("x"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
    CHECK(to_string(Rational(-2, 6)) == "-1/3");
}

TEST_CASE("affine text") {
    CHECK(Affine{-1, 2}.text() == "-1+2c");
    CHECK(Affine{0, -3}.text() == "-3c");
    CHECK(Affine{1, 0}.text() == "1");
    CHECK(Affine{-2, 1}.text() == "-2+c");
}

TEST_CASE("weight floor") {
    CHECK(weight_floor(3) == Rational(1, 9));
    CHECK(weight_floor(4) == Rational(1, 4));
}

TEST_CASE("Eckardt point bounds the weight at 2/3") {
    auto f = smooth_cubic_with_eckardt_point();
    REQUIRE(f.special_points.size() == 1);
    auto slc = slc_interval(f);
    REQUIRE(slc.c_max);
    CHECK(*slc.c_max == Rational(2, 3));
    CHECK(slc.witness->line_weight() == 3);
    CHECK(slc.witness->double_count() == 0);
}

TEST_CASE("Eckardt augmentation adds a plane ample above 2/3") {
    auto f = apply_eckardt_augmentation(smooth_cubic_with_eckardt_point(), 0);
    CHECK(validate(f).empty());
    CHECK(f.components.size() == 2);
    CHECK(f.special_points.empty());
    auto& p = by_role(f, "P2_eckardt");
    auto r = polarization_restriction(f, p.id);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0] == Affine{-2, 3});
    auto iv = ample_interval(p, r);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].lo == Rational(2, 3));
    CHECK(iv[0].hi == 1);
    for (auto c : {Rational(1), Rational(5, 6), Rational(7, 10)})
        CHECK(total_degree(f, c) == expected_total_degree(3, c));
    CHECK_THROWS_AS(apply_eckardt_augmentation(f, 0), DomainError);
}

TEST_CASE("total degree polynomial of a smooth fiber") {
    auto f = build_fiber("smooth3");
    auto q = total_degree_polynomial(f);
    // 3(9c-1)^2
    CHECK(q == Quadratic{3, -54, 243});
    auto g = build_fiber("smooth4");
    CHECK(total_degree_polynomial(g) == Quadratic{4, -32, 64});
}

TEST_CASE("the restriction of a smooth fiber is ample on the whole domain") {
    auto f = build_fiber("smooth3");
    auto r = polarization_restriction(f, 0);
    auto iv = ample_interval(f.components[0], r);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].lo == Rational(1, 9));
    CHECK(ample_breakpoints(f.components[0], r).front() == Rational(1, 9));
}

TEST_CASE("extremal classes of a quadric") {
    auto f = build_fiber("deg4_div");
    auto& q = by_role(f, "F0");
    auto ex = extremal_classes(q);
    CHECK(std::find(ex.begin(), ex.end(), QVector{1, 0}) != ex.end());
    CHECK(std::find(ex.begin(), ex.end(), QVector{0, 1}) != ex.end());
}

TEST_CASE("stable model at a weight without degeneration changes nothing") {
    auto f = build_fiber("a");
    CHECK(stable_model(f, Rational(3, 4)) == f);
}

TEST_CASE("stable model of type a at 1/2") {
    auto f = build_fiber("a");
    auto g = stable_model(f, Rational(1, 2));
    CHECK(g.components.size() == 2);
    CHECK(validate(g).empty());
    for (auto c : {Rational(1, 2), Rational(1, 3), Rational(1, 5)})
        CHECK(total_degree(g, c) == expected_total_degree(3, c));
}

TEST_CASE("validate reports broken data") {
    auto f = build_fiber("deg4_div");
    f.components[0].gram[0][1] += 1;
    CHECK_FALSE(validate(f).empty());
    auto g = build_fiber("deg4_div");
    for (auto& cv : g.components[0].curves)
        if (cv.kind == CurveKind::Line) cv.mult = 3;
    CHECK_FALSE(validate(g).empty());
    auto h = build_fiber("deg4_div");
    for (auto& cv : h.components[0].curves) cv.glue.reset();
    CHECK_FALSE(validate(h).empty());
}

TEST_CASE("json round trip") {
    for (auto& t : catalog_labels()) {
        auto f = build_fiber(t);
        auto j = to_json(f);
        CHECK(fiber_from_json(j) == f);
        CHECK(to_json(fiber_from_json(j)) == j);
    }
}

TEST_CASE("malformed json is rejected") {
    auto j = to_json(build_fiber("b"));
    j["components"][0]["gram"] = "oops";
    CHECK_THROWS(fiber_from_json(j));
}
