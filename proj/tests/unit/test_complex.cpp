#include <doctest.h>

#include "dpw/complex.hpp"

using namespace dpw;

TEST_CASE("vertex counts of the boundary complexes") {
    BoundaryComplex c5(5, CompatMode::Geometric), c6(6, CompatMode::Geometric), c7(7, CompatMode::Geometric);
    CHECK(c5.vertices().size() == 10);
    CHECK(c6.vertices().size() == 76);
    CHECK(c7.vertices().size() == 1065);
    CHECK(c6.vertex_counts_by_type() == std::map<std::string, std::size_t>{{"A1", 36}, {"A2xA2xA2", 40}});
    CHECK(c7.vertex_counts_by_type() ==
          std::map<std::string, std::size_t>{{"A1", 63}, {"A2", 336}, {"A3xA3", 630}, {"A7", 36}});
    CHECK(c5.count_faces(0) == 10);
}

TEST_CASE("edges of the D5 complex agree with a brute-force pair scan") {
    BoundaryComplex c(5, CompatMode::OrthogonalOnly);
    const auto& v = c.vertices();
    int oracle = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            bool orth = true;
            for (auto& a : v[i].sub.roots)
                for (auto& b : v[j].sub.roots) orth = orth && pairing(a, b) == 0;
            oracle += orth;
        }
    CHECK(oracle == 15);
    CHECK(c.count_faces(1) == 15);
    // M_{0,5} has 15 boundary points; in D5 the geometric mode agrees
    CHECK(BoundaryComplex(5, CompatMode::Geometric).count_faces(1) == 15);
}

TEST_CASE("four pairwise orthogonal A1 vertices in E6") {
    BoundaryComplex c(6, CompatMode::OrthogonalOnly);
    CHECK(c.count_faces(3, "A1") == 135);
    CHECK(c.count_faces(1, "A1") == 270);
    CHECK(c.count_faces(4, "A1") == 0);
}

TEST_CASE("compatibility predicates") {
    auto a = subsystem_from_labels(6, {"12"});
    auto b = subsystem_from_labels(6, {"34"});
    auto c = subsystem_from_labels(6, {"23"});
    auto big = subsystem_from_labels(6, {"12", "23", "45", "56", "123", "456"});
    CHECK(compatible(a, b, CompatMode::Geometric));
    CHECK_FALSE(compatible(a, c, CompatMode::Geometric));
    CHECK(compatible(a, c, CompatMode::Verbatim));
    CHECK(compatible(a, big, CompatMode::Geometric));
    CHECK_FALSE(compatible(a, big, CompatMode::Verbatim));
    CHECK_FALSE(compatible(a, big, CompatMode::OrthogonalOnly));
    CHECK(parse_mode("verbatim") == CompatMode::Verbatim);
    CHECK_THROWS_AS(parse_mode("loose"), DomainError);
}

TEST_CASE("compatibility is symmetric and Weyl invariant") {
    for (auto mode : {CompatMode::Geometric, CompatMode::Verbatim}) {
        BoundaryComplex c(6, mode);
        const auto& v = c.vertices();
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (i == j) continue;
                bool base = compatible(v[i].sub, v[j].sub, mode);
                CHECK(base == compatible(v[j].sub, v[i].sub, mode));
                CHECK(base == c.adjacent(i, j));
                for (auto& g : weyl_generators(6)) CHECK(base == compatible(reflect(v[i].sub, g), reflect(v[j].sub, g), mode));
            }
    }
}

TEST_CASE("faces are closed under subsets and E7 excludes seven orthogonal A1") {
    BoundaryComplex c(6, CompatMode::Geometric);
    for (auto& f : c.maximal_faces()) {
        CHECK(c.is_face(f));
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            auto g = f;
            g.erase(g.begin() + drop);
            CHECK(c.is_face(g));
        }
    }
    BoundaryComplex c7(7, CompatMode::Geometric);
    CHECK(c7.count_faces(6, "A1") == 0);
    CHECK(c7.count_faces(5, "A1") > 0);
}
