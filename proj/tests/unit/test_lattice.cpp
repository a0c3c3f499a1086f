#include <doctest.h>

#include <set>

#include "dpw/lattice.hpp"

using namespace dpw;

namespace {

LatticeVector V(std::vector<int> c) { return LatticeVector((int)c.size() - 1, c); }

// Independent oracle: scan a box and test the defining equations with explicit sums.
std::vector<LatticeVector> scan(int n, int dmax, int mabs, bool roots) {
    std::vector<LatticeVector> out;
    std::vector<int> c(n + 1, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i > n) {
            long long sq = (long long)c[0] * c[0], dotk = -3LL * c[0];
            for (int t = 1; t <= n; ++t) {
                sq -= (long long)c[t] * c[t];
                dotk -= c[t];
            }
            bool pos = false;
            for (int x : c)
                if (x != 0) {
                    pos = x > 0;
                    break;
                }
            if (roots ? (sq == -2 && dotk == 0 && pos) : (sq == -1 && dotk == -1)) out.push_back(LatticeVector(n, c));
            return;
        }
        for (int x = -mabs; x <= mabs; ++x) {
            c[i] = x;
            self(self, i + 1);
        }
    };
    for (int d = -dmax; d <= dmax; ++d) {
        c[0] = d;
        rec(rec, 1);
    }
    return out;
}

}  // namespace

TEST_CASE("pairing basics") {
    CHECK(pairing(h_class(6), h_class(6)) == 1);
    CHECK(pairing(e_class(6, 1), e_class(6, 2)) == 0);
    CHECK(pairing(e_class(6, 3), e_class(6, 3)) == -1);
    auto r = V({1, -1, -1, -1, 0, 0, 0});
    CHECK(pairing(r, r) == -2);
    CHECK_THROWS_AS(pairing(h_class(5), h_class(6)), DomainError);
}

TEST_CASE("pairing is symmetric and bilinear on samples") {
    std::vector<LatticeVector> s;
    for (int a = -2; a <= 2; ++a)
        for (int b = -1; b <= 1; ++b) s.push_back(V({a, b, -b, a, 1, 0, b}));
    for (auto& u : s)
        for (auto& v : s) {
            CHECK(pairing(u, v) == pairing(v, u));
            CHECK(pairing(u + v, u) == pairing(u, u) + pairing(v, u));
        }
}

TEST_CASE("canonical class") {
    CHECK(canonical_class(6) == V({-3, 1, 1, 1, 1, 1, 1}));
    CHECK(pairing(canonical_class(6), canonical_class(6)) == 3);
    CHECK(pairing(canonical_class(5), canonical_class(5)) == 4);
    CHECK_THROWS_AS(canonical_class(4), DomainError);
}

TEST_CASE("root and line predicates") {
    CHECK(is_root(V({0, 1, -1, 0, 0, 0, 0})));
    CHECK(is_root(V({1, -1, -1, -1, 0, 0, 0})));
    CHECK_FALSE(is_root(e_class(6, 1)));
    CHECK(is_line(e_class(6, 1)));
    CHECK(is_line(V({1, -1, -1, 0, 0, 0, 0})));
    CHECK_FALSE(is_line(h_class(6)));
}

TEST_CASE("root enumeration matches a wider brute force") {
    const int expected[] = {20, 36, 63};
    for (int n = 5; n <= 7; ++n) {
        auto roots = enumerate_roots(n);
        auto oracle = scan(n, 3, 2, true);
        CHECK(roots.size() == (std::size_t)expected[n - 5]);
        CHECK(std::set<LatticeVector>(roots.begin(), roots.end()) == std::set<LatticeVector>(oracle.begin(), oracle.end()));
        for (auto& r : roots) CHECK(is_root(r));
        CHECK(std::is_sorted(roots.begin(), roots.end()));
    }
}

TEST_CASE("line enumeration, sums and incidences") {
    const int expected[] = {16, 27, 56};
    for (int n = 5; n <= 7; ++n) {
        auto lines = enumerate_lines(n);
        auto oracle = scan(n, 4, 3, false);
        CHECK(lines.size() == (std::size_t)expected[n - 5]);
        CHECK(std::set<LatticeVector>(lines.begin(), lines.end()) == std::set<LatticeVector>(oracle.begin(), oracle.end()));
    }
    LatticeVector s6(6), s5(5);
    for (auto& l : enumerate_lines(6)) s6 = s6 + l;
    for (auto& l : enumerate_lines(5)) s5 = s5 + l;
    CHECK(s6 == canonical_class(6) * -9);
    CHECK(s5 == canonical_class(5) * -4);
    auto L = enumerate_lines(6);
    for (auto& a : L) {
        int meets = 0;
        for (auto& b : L)
            if (!(a == b) && pairing(a, b) == 1) ++meets;
        CHECK(meets == 10);
    }
}

TEST_CASE("text and labels round trip") {
    auto v = V({2, -1, -1, 0, -1, -1, -1, -1});
    CHECK(LatticeVector::parse(v.text()) == v);
    CHECK(v.text() == "2;-1,-1,0,-1,-1,-1,-1");
    CHECK_THROWS_AS(LatticeVector::parse("1,2,3"), DomainError);
    for (int n = 5; n <= 7; ++n)
        for (auto& r : enumerate_roots(n)) CHECK(root_from_label(n, root_label(r)) == r);
    CHECK(root_label(root_from_label(6, "123456")) == "123456");
    CHECK(root_from_label(7, "3") == v);
    CHECK_THROWS_AS(root_from_label(6, "21"), DomainError);
}
