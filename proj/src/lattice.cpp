#include "dpw/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace dpw {

namespace {

void check_rank(int n) {
    if (n < 1 || n > 8) throw DomainError("lattice rank must be in 1..8, got " + std::to_string(n));
}

void check_enum_rank(int n) {
    if (n < 5 || n > 7) throw DomainError("enumeration supports 5 <= n <= 7, got " + std::to_string(n));
}

// Depth-first search over all coefficient vectors in a box.
template <class F>
void for_each_in_box(int n, int dlo, int dhi, int mlo, int mhi, F&& f) {
    LatticeVector v(n);
    auto rec = [&](auto&& self, int i) -> void {
        if (i > n) {
            f(v);
            return;
        }
        for (int x = mlo; x <= mhi; ++x) {
            v.c[i] = x;
            self(self, i + 1);
        }
    };
    for (int d = dlo; d <= dhi; ++d) {
        v.c[0] = d;
        rec(rec, 1);
    }
}

}  // namespace

LatticeVector::LatticeVector(int rank) : n(rank), c(rank + 1, 0) { check_rank(rank); }

LatticeVector::LatticeVector(int rank, std::vector<int> coeffs) : n(rank), c(std::move(coeffs)) {
    check_rank(rank);
    if ((int)c.size() != n + 1) throw DomainError("coefficient count does not match rank");
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
    if (n != o.n) throw DomainError("rank mismatch");
    LatticeVector r = *this;
    for (int i = 0; i <= n; ++i) r.c[i] += o.c[i];
    return r;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const { return *this + (-o); }

LatticeVector LatticeVector::operator-() const {
    LatticeVector r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

LatticeVector LatticeVector::operator*(int k) const {
    LatticeVector r = *this;
    for (auto& x : r.c) x *= k;
    return r;
}

bool LatticeVector::operator<(const LatticeVector& o) const {
    if (n != o.n) return n < o.n;
    return c < o.c;
}

bool LatticeVector::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

std::string LatticeVector::text() const {
    std::ostringstream os;
    os << c[0] << ';';
    for (int i = 1; i <= n; ++i) {
        if (i > 1) os << ',';
        os << c[i];
    }
    return os.str();
}

LatticeVector LatticeVector::parse(const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) throw DomainError("vector text must look like d;m1,...,mn: " + s);
    std::vector<int> coeffs;
    try {
        coeffs.push_back(std::stoi(s.substr(0, semi)));
        std::string rest = s.substr(semi + 1);
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) coeffs.push_back(std::stoi(tok));
    } catch (const std::logic_error&) {
        throw DomainError("malformed vector text: " + s);
    }
    return LatticeVector((int)coeffs.size() - 1, coeffs);
}

LatticeVector h_class(int n) {
    LatticeVector v(n);
    v.c[0] = 1;
    return v;
}

LatticeVector e_class(int n, int i) {
    LatticeVector v(n);
    if (i < 1 || i > n) throw DomainError("exceptional index out of range");
    v.c[i] = 1;
    return v;
}

int pairing(const LatticeVector& u, const LatticeVector& v) {
    if (u.n != v.n) throw DomainError("pairing of vectors with different rank");
    int s = u.c[0] * v.c[0];
    for (int i = 1; i <= u.n; ++i) s -= u.c[i] * v.c[i];
    return s;
}

LatticeVector canonical_class(int n) {
    if (n < 5 || n > 8) throw DomainError("canonical_class needs 5 <= n <= 8");
    LatticeVector k(n);
    k.c[0] = -3;
    for (int i = 1; i <= n; ++i) k.c[i] = 1;
    return k;
}

bool is_root(const LatticeVector& v) {
    int s = v.c[0] * 3;  // -pairing(v,k) with k = (-3;1..1)
    for (int i = 1; i <= v.n; ++i) s += v.c[i];
    return s == 0 && pairing(v, v) == -2;
}

bool is_line(const LatticeVector& v) {
    int vk = -3 * v.c[0];
    for (int i = 1; i <= v.n; ++i) vk -= v.c[i];
    return vk == -1 && pairing(v, v) == -1;
}

bool is_positive(const LatticeVector& v) {
    for (int x : v.c)
        if (x != 0) return x > 0;
    return false;
}

std::vector<LatticeVector> enumerate_roots(int n) {
    check_enum_rank(n);
    std::vector<LatticeVector> out;
    for_each_in_box(n, 0, 2, -1, 1, [&](const LatticeVector& v) {
        if (is_positive(v) && is_root(v)) out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LatticeVector> enumerate_lines(int n) {
    check_enum_rank(n);
    std::vector<LatticeVector> out;
    // for n = 7 the lines 3h - 2e_i - ... need the wider box
    for_each_in_box(n, 0, 3, -2, 1, [&](const LatticeVector& v) {
        if (is_line(v)) out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::string root_label(const LatticeVector& r) {
    std::string s;
    if (r.d() == 0) {
        int i = 0, j = 0;
        for (int t = 1; t <= r.n; ++t) {
            if (r.c[t] == 1) i = t;
            if (r.c[t] == -1) j = t;
        }
        return std::to_string(i) + std::to_string(j);
    }
    if (r.d() == 1) {
        for (int t = 1; t <= r.n; ++t)
            if (r.c[t] == -1) s += std::to_string(t);
        return s;
    }
    // d == 2: either the missing index (n == 7) or all six (n == 6)
    std::string in, out;
    for (int t = 1; t <= r.n; ++t) (r.c[t] == -1 ? in : out) += std::to_string(t);
    return out.empty() ? in : out;
}

LatticeVector root_from_label(int n, const std::string& label) {
    LatticeVector v(n);
    std::vector<int> idx;
    for (char ch : label) {
        if (ch < '1' || ch > '9' || ch - '0' > n) throw DomainError("bad root label '" + label + "'");
        idx.push_back(ch - '0');
    }
    if (idx.size() == 2) {
        if (idx[0] >= idx[1]) throw DomainError("root label ij needs i < j: " + label);
        v.c[idx[0]] = 1;
        v.c[idx[1]] = -1;
    } else if (idx.size() == 3) {
        v.c[0] = 1;
        for (int i : idx) v.c[i] = -1;
    } else if (idx.size() == 1 && n >= 7) {
        v.c[0] = 2;
        for (int t = 1; t <= n; ++t)
            if (t != idx[0]) v.c[t] = -1;
    } else if (idx.size() == 6) {
        v.c[0] = 2;
        for (int i : idx) v.c[i] = -1;
    } else {
        throw DomainError("bad root label '" + label + "'");
    }
    if (!is_root(v)) throw DomainError("label '" + label + "' is not a root for n=" + std::to_string(n));
    return v;
}

}  // namespace dpw
