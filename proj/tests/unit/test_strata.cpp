#include <doctest.h>

#include <set>

#include "dpw/strata.hpp"

using namespace dpw;

TEST_CASE("stratum labels parse") {
    CHECK(parse_stratum_type("aa2b").sizes == std::vector<int>{1, 2});
    CHECK(parse_stratum_type("aa2b").b);
    CHECK(parse_stratum_type("a3").label() == "a3");
    CHECK_THROWS_AS(parse_stratum_type("a2a"), DomainError);
    CHECK_THROWS_AS(parse_stratum_type("a5"), DomainError);
    CHECK_THROWS_AS(parse_stratum_type(""), DomainError);
    CHECK_THROWS_AS(parse_stratum_type("ba"), DomainError);
}

TEST_CASE("basic strata counts") {
    CHECK(count_strata("a") == 36);
    CHECK(count_strata("b") == 40);
    CHECK(count_strata("a4") == 135);
}

TEST_CASE("a2 count against an exhaustive pair oracle") {
    auto R = enumerate_roots(6);
    std::size_t oracle = 0;
    for (std::size_t i = 0; i < R.size(); ++i)
        for (std::size_t j = i + 1; j < R.size(); ++j) oracle += pairing(R[i], R[j]) == 0;
    CHECK(oracle == 270);
    CHECK(count_strata("a2") == oracle);
}

TEST_CASE("chains and b parts are consistent") {
    for (const auto& lbl : {"aa2", "a2a4", "ab", "a2b", "aa3b"}) {
        for (const auto& s : enumerate_strata(lbl)) {
            CHECK(s.type_string() == lbl);
            for (std::size_t i = 0; i + 1 < s.flag.size(); ++i)
                for (auto& r : s.flag[i])
                    CHECK(std::find(s.flag[i + 1].begin(), s.flag[i + 1].end(), r) != s.flag[i + 1].end());
            if (s.b_part)
                for (auto& r : s.flag.back()) CHECK(s.b_part->has(r));
        }
    }
    CHECK(count_strata("ab") == 40 * 9);
    CHECK(count_strata("a4b") == 0);
}

TEST_CASE("strata counts are invariant under simple reflections") {
    for (const auto& lbl : {"a2", "a3", "ab", "a2b"}) {
        auto strata = enumerate_strata(lbl);
        std::set<std::vector<std::vector<LatticeVector>>> keys;
        auto key = [](const StratumLabel& s) {
            auto k = s.flag;
            if (s.b_part) k.push_back(s.b_part->roots);
            return k;
        };
        for (auto& s : strata) keys.insert(key(s));
        for (auto& g : weyl_generators(6)) {
            std::size_t hit = 0;
            for (auto& s : strata) {
                StratumLabel t;
                for (auto& f : s.flag) {
                    std::vector<LatticeVector> img;
                    for (auto& r : f) img.push_back(positive_rep(reflect(r, g)));
                    std::sort(img.begin(), img.end());
                    t.flag.push_back(img);
                }
                if (s.b_part) t.b_part = reflect(*s.b_part, g);
                hit += keys.count(key(t));
            }
            CHECK(hit == strata.size());
        }
    }
}

TEST_CASE("eckardt triples") {
    auto T = enumerate_eckardt_triples();
    CHECK(T.size() == 45);
    for (auto& t : T)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                CHECK(pairing(t[i], t[j]) == 0);
                CHECK(pairing(line_of_horizontal_root(t[i]), line_of_horizontal_root(t[j])) == 1);
            }
    auto a = root_from_label(7, "17"), b = root_from_label(7, "127"), c = root_from_label(7, "2");
    CHECK(pairing(a, b) == 0);
    CHECK(pairing(a, c) == 0);
    CHECK(pairing(b, c) == 0);
    CHECK(T.size() == 45);
}

TEST_CASE("census covers every shape") {
    auto rows = strata_census();
    CHECK(rows.size() == 31);
    for (auto& r : rows) CHECK(r.count == count_strata(r.type));
}
