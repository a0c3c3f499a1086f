#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dpw {

// Raised for violated preconditions on domain inputs.  The CLI maps it to exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An element d*h - sum m_i e_i of the lattice Lambda_{1,n}, stored as (d; m_1..m_n)
// with the convention that coeffs[i] is the coefficient of e_i.  So e_1 is (0;1,0,...)
// and h - e_1 is (1;-1,0,...).
struct LatticeVector {
    int n = 0;
    std::vector<int> c;  // size n+1, c[0] = coefficient of h

    LatticeVector() = default;
    explicit LatticeVector(int rank);
    LatticeVector(int rank, std::vector<int> coeffs);

    int d() const { return c[0]; }
    int m(int i) const { return c[i]; }  // 1-based

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-(const LatticeVector& o) const;
    LatticeVector operator-() const;
    LatticeVector operator*(int k) const;
    bool operator==(const LatticeVector& o) const { return n == o.n && c == o.c; }
    bool operator!=(const LatticeVector& o) const { return !(*this == o); }
    // lexicographic on (d, m_1..m_n)
    bool operator<(const LatticeVector& o) const;

    bool is_zero() const;
    std::string text() const;  // "d;m1,...,mn"
    static LatticeVector parse(const std::string& s);
};

LatticeVector h_class(int n);
LatticeVector e_class(int n, int i);

int pairing(const LatticeVector& u, const LatticeVector& v);
LatticeVector canonical_class(int n);
bool is_root(const LatticeVector& v);
bool is_line(const LatticeVector& v);

// Positive roots: d > 0, or d == 0 with the first nonzero coefficient positive.
bool is_positive(const LatticeVector& v);

std::vector<LatticeVector> enumerate_roots(int n);
std::vector<LatticeVector> enumerate_lines(int n);

// Short labels used throughout the fiber tables: "12" = e1-e2, "123" = h-e1-e2-e3,
// "3" = 2h - sum_{j != 3} e_j (n >= 7), "123456" = 2h - e1 - ... - e6 (n == 6).
std::string root_label(const LatticeVector& r);
LatticeVector root_from_label(int n, const std::string& label);

}  // namespace dpw
