#pragma once

#include <bitset>
#include <string>
#include <vector>

#include "dpw/lattice.hpp"

namespace dpw {

struct RootSubsystem {
    int ambient_n = 0;
    std::vector<LatticeVector> roots;  // sorted positive roots
    std::string type;                  // e.g. "A1", "A2xA2xA2", "A3xA3", "A7", "D2", "A1xA5"

    std::size_t rank() const;
    bool has(const LatticeVector& r) const;  // r or -r is a member
    bool operator==(const RootSubsystem& o) const { return ambient_n == o.ambient_n && roots == o.roots; }
    bool operator<(const RootSubsystem& o) const { return roots < o.roots; }
};

// Normalizes a root to its positive representative.
LatticeVector positive_rep(const LatticeVector& r);

// Smallest set of positive roots containing the generators and stable under the
// reflections they generate.  This is the root subsystem generated by the input.
RootSubsystem closure(int ambient_n, const std::vector<LatticeVector>& generators);

// All ambient positive roots lying in the rational span of the generators.
// Differs from closure() for full-rank subsystems such as A7 in E7 or A2^3 in E6,
// whose span is the whole root lattice.
RootSubsystem span_closure(int ambient_n, const std::vector<LatticeVector>& generators);

std::vector<LatticeVector> simple_roots(const std::vector<LatticeVector>& positive_roots);
std::string dynkin_type(const std::vector<LatticeVector>& positive_roots);

// Supported labels: "D2" (n=5), "A1", "A2", "A2xA2xA2" (alias "A2^3"), "A3xA3" (alias "A3^2"),
// "A7", "2A1", "3A1", "4A1" (pairwise orthogonal A1 tuples, n=6), "D4" (n=7).
std::vector<RootSubsystem> enumerate_vertex_subsystems(int ambient_n, const std::string& type);
std::string normalize_type_label(const std::string& type);

bool are_orthogonal(const RootSubsystem& a, const RootSubsystem& b);
bool are_disjoint(const RootSubsystem& a, const RootSubsystem& b);
bool contains(const RootSubsystem& big, const RootSubsystem& small);

RootSubsystem orthogonal_complement(const RootSubsystem& s);

struct Restriction {
    RootSubsystem sub;  // roots with zero e_n coefficient, embedded in rank n-1
    std::string type;   // "" when empty (horizontal)
    bool horizontal() const { return sub.roots.empty(); }
};
Restriction restrict_and_classify(const RootSubsystem& s, int m);

// Drops the last coordinate of a vector whose e_n coefficient is zero.
LatticeVector drop_last(const LatticeVector& v);
LatticeVector extend(const LatticeVector& v, int n);

LatticeVector reflect(const LatticeVector& v, const LatticeVector& alpha);
RootSubsystem reflect(const RootSubsystem& s, const LatticeVector& alpha);

// Simple roots of E_n in the lattice: e1-e2, ..., e_{n-1}-e_n, h-e1-e2-e3.
std::vector<LatticeVector> weyl_generators(int n);

// The horizontal roots of E_n over E_{n-1} (nonzero e_n coefficient) and the line of
// the smaller del Pezzo they correspond to: r -> r + (coefficient) e_n, dropped to rank n-1.
std::vector<LatticeVector> horizontal_roots(int n);
LatticeVector line_of_horizontal_root(const LatticeVector& r);

// Bit i set iff the i-th positive root of E_n (canonical order) is present.
using RootMask = std::bitset<128>;
RootMask mask_of(const RootSubsystem& s);
RootMask mask_of(int n, const LatticeVector& root);
// Positive roots orthogonal to every root of s.
RootMask orthogonal_mask(const RootSubsystem& s);
int positive_root_count(int n);
const LatticeVector& positive_root(int n, int index);

RootSubsystem subsystem_from_labels(int n, const std::vector<std::string>& labels);

}  // namespace dpw
