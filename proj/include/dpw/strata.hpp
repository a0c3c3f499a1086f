#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpw/roots.hpp"

namespace dpw {

// A stratum of the blown-up E6 moduli space in the flag model: a chain of sets of
// pairwise orthogonal A1 roots, optionally together with an A2^3 vertex.
struct StratumLabel {
    std::vector<std::vector<LatticeVector>> flag;  // each element sorted, sizes strictly increasing
    std::optional<RootSubsystem> b_part;
    std::string type_string() const;
};

struct StratumShape {
    std::vector<int> sizes;  // strictly increasing, each in 1..4
    bool b = false;
    std::string label() const;
};

StratumShape parse_stratum_type(const std::string& label);
std::vector<StratumLabel> enumerate_strata(const std::string& label);
std::size_t count_strata(const std::string& label);

struct CensusRow {
    std::string type;
    std::size_t count;
    bool model_dependent;  // three A1 inside an A2^3: depends on the cone subdivision
};
std::vector<CensusRow> strata_census();

// Unordered triples of pairwise orthogonal horizontal roots of E7 whose orthogonal
// complement in E7 has type D4.
std::vector<std::vector<LatticeVector>> enumerate_eckardt_triples();

}  // namespace dpw
