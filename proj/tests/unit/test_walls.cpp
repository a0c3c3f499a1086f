#include <doctest.h>

#include <algorithm>
#include <random>

#include "dpw/walls.hpp"

using namespace dpw;

namespace {

// Five weights strictly inside (lo, hi], hi included.
std::vector<Rational> samples(const Interval& iv) {
    std::vector<Rational> out{iv.hi};
    for (int k = 1; k <= 4; ++k) out.push_back(iv.lo + (iv.hi - iv.lo) * Rational(k, 5));
    return out;
}

FiberComplex relabel(const FiberComplex& f, unsigned seed) {
    std::vector<int> perm(f.components.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::mt19937 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    FiberComplex g = f;
    for (auto& c : f.components) {
        auto copy = c;
        copy.id = perm[c.id];
        for (auto& cv : copy.curves)
            if (cv.glue) cv.glue->comp = perm[cv.glue->comp];
        g.components[perm[c.id]] = copy;
    }
    for (auto& p : g.special_points)
        for (auto& r : p.curves) r.comp = perm[r.comp];
    return g;
}

}  // namespace

TEST_CASE("wall sets") {
    auto d3 = compute_walls(3);
    CHECK(d3.walls == std::vector<Rational>{{2, 3}, {1, 2}, {1, 3}, {1, 4}, {1, 6}});
    auto d4 = compute_walls(4);
    CHECK(d4.walls == std::vector<Rational>{{1, 2}});
    CHECK(d3.chambers.back().interval.lo == Rational(1, 9));
    CHECK(d4.chambers.back().interval.lo == Rational(1, 4));
}

TEST_CASE("wall classification") {
    CHECK(classify_wall(3, Rational(2, 3)).tag == "isomorphism");
    CHECK(classify_wall(3, Rational(1, 2)).tag == "isomorphism");
    CHECK(classify_wall(3, Rational(1, 3)).tag == "isomorphism");
    auto w = classify_wall(3, Rational(1, 4));
    CHECK(w.tag == "contraction");
    CHECK(w.merged == std::vector<std::pair<std::string, std::string>>{{"a2", "aa2"}});
    CHECK(classify_wall(3, Rational(1, 6)).tag == "isomorphism");
    CHECK(classify_wall(4, Rational(1, 2)).tag == "isomorphism");
    CHECK_THROWS_AS(classify_wall(3, Rational(1, 5)), DomainError);
}

TEST_CASE("thread count does not change the report") {
    CHECK(to_json(compute_walls(3, 1)) == to_json(compute_walls(3, 4)));
}

TEST_CASE("chamber models") {
    CHECK(chamber_model("a", Rational(2, 5)).components.size() == 2);
    auto m = chamber_model("deg4_codim2", Rational(1, 3));
    CHECK(m.components.size() == 4);
    CHECK(m.count_role("P2") == 4);
    CHECK(chamber_model("b", Rational(1, 8)).components.size() == 3);
    CHECK(chamber_model("b", Rational(1, 8)).count_role("P2") == 3);
    CHECK_THROWS_AS(chamber_model("a", Rational(1, 9)), DomainError);
    CHECK_THROWS_AS(chamber_model("a", Rational(11, 10)), DomainError);
    CHECK_THROWS_AS(chamber_model("deg4_div", Rational(1, 5)), DomainError);
}

TEST_CASE("total degree is conserved in every chamber") {
    for (auto& t : catalog_labels()) {
        INFO(t);
        for (auto& ch : catalog_sweep(t).chambers)
            for (auto& c : samples(ch.interval)) CHECK(total_degree(ch.model, c) == expected_total_degree(ch.model.degree, c));
    }
}

TEST_CASE("models are constant inside a chamber and stable_model is idempotent") {
    for (auto& t : catalog_labels()) {
        INFO(t);
        for (auto& ch : catalog_sweep(t).chambers) {
            CHECK(validate(ch.model).empty());
            for (auto& c : samples(ch.interval)) {
                if (c == ch.interval.hi) continue;
                CHECK(chamber_model(t, c) == ch.model);
                CHECK(stable_model(ch.model, c) == ch.model);
            }
            auto once = stable_model(ch.model, ch.interval.lo);
            if (ch.interval.lo > weight_floor(ch.model.degree)) CHECK(stable_model(once, ch.interval.lo) == once);
        }
    }
}

TEST_CASE("no phantom walls") {
    for (int d : {3, 4}) {
        auto r = compute_walls(d);
        for (auto& w : r.walls) {
            bool changed = false;
            for (auto& t : catalog_labels(d)) {
                Rational above = 1;
                for (auto& x : r.walls)
                    if (x > w) above = x;
                changed |= !(chamber_model(t, w) == chamber_model(t, above));
            }
            CHECK(changed);
        }
    }
}

TEST_CASE("the Eckardt fiber returns to the marked cubic below 2/3") {
    auto m = chamber_model("smooth3_eckardt", Rational(1, 2));
    CHECK(m.components.size() == 1);
    CHECK(canonical_form(m) == canonical_form(smooth_cubic_with_eckardt_point()));
    CHECK(canonical_form(m) != canonical_form(chamber_model("smooth3", Rational(1, 2))));
}

TEST_CASE("kA1 models collapse to one component") {
    for (auto& t : {"a", "a2", "aa2", "a3", "a4"}) {
        INFO(t);
        CHECK(chamber_model(t, Rational(1, 6)).components.size() == 1);
        CHECK(chamber_model(t, Rational(1, 5)).components.size() > 1);
    }
}

TEST_CASE("canonical form ignores component ids") {
    for (auto& t : {"a2", "ab", "deg4_codim2"}) {
        auto f = build_fiber(t);
        auto cf = canonical_form(f);
        for (unsigned seed : {1u, 2u, 3u}) CHECK(canonical_form(relabel(f, seed)) == cf);
    }
}

TEST_CASE("canonical form separates the b-type models near the floor") {
    std::vector<std::string> cfs;
    for (auto& t : {"b", "ab", "a2b", "a3b"}) cfs.push_back(canonical_form(chamber_model(t, Rational(1, 8))));
    std::sort(cfs.begin(), cfs.end());
    CHECK(std::adjacent_find(cfs.begin(), cfs.end()) == cfs.end());
}

TEST_CASE("report json") {
    auto j = to_json(compute_walls(4));
    CHECK(j["degree"] == 4);
    CHECK(j["walls"] == nlohmann::json::array({"1/2"}));
    CHECK(j["chambers"][0]["models"]["deg4_div"] == 6);
    CHECK(j["chambers"][1]["models"]["deg4_div"] == 2);
    CHECK(j["chambers"][1]["crossing_tag"] == "isomorphism");
    CHECK_THROWS_AS(compute_walls(5), DomainError);
}
