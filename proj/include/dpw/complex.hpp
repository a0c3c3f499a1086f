#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpw/roots.hpp"

namespace dpw {

enum class CompatMode { Geometric, Verbatim, OrthogonalOnly };

CompatMode parse_mode(const std::string& s);
std::string mode_name(CompatMode m);

// Compatibility of two vertices:
//   geometric:       orthogonal, or one contains the other
//   verbatim:        orthogonal, or no common root
//   orthogonal-only: orthogonal
bool compatible(const RootSubsystem& a, const RootSubsystem& b, CompatMode mode);

struct Vertex {
    RootSubsystem sub;
    std::string tag;  // vertex type as enumerated, e.g. "A1", "A2xA2xA2", "D2"
    RootMask mask;
    RootMask orth;
};

class BoundaryComplex {
public:
    BoundaryComplex(int n, CompatMode mode);

    int ambient_n() const { return n_; }
    CompatMode mode() const { return mode_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    std::map<std::string, std::size_t> vertex_counts_by_type() const;

    bool adjacent(std::size_t i, std::size_t j) const;
    bool is_face(const std::vector<std::size_t>& vs) const;

    // Number of faces with dim+1 vertices.  Optionally restricted to faces whose
    // vertices all carry the given type tag.
    std::uint64_t count_faces(int dim, const std::string& only_tag = "") const;
    std::vector<std::uint64_t> f_vector_prefix(int max_dim) const;
    std::vector<std::vector<std::size_t>> maximal_faces() const;

private:
    int n_;
    CompatMode mode_;
    std::vector<Vertex> vertices_;
    std::vector<std::vector<std::uint64_t>> adj_;  // bitset rows

    bool excluded(const std::vector<std::size_t>& face) const;
};

std::vector<std::string> vertex_types(int n);

}  // namespace dpw
