#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpw/surface.hpp"

namespace dpw {

// One row of the fiber table: which boundary configuration produces how many
// components of which kind.
struct TableRow {
    std::string label;                // "4a"
    std::string root_systems;         // as printed, e.g. "2A1A7"
    std::vector<std::string> types;   // normalized multiset, e.g. {"A1","A1","A7"}
    std::string role;                 // component role, e.g. "Bl4F0"
    int count = 0;
};

struct CatalogEntry {
    std::string fiber_type;
    int degree = 3;
    int tier = 1;  // 1: full lattice data checked in full, 2: checked against the table rows
    std::vector<TableRow> rows;  // empty for entries not in the table
    std::string provenance;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& fiber_type);
std::vector<std::string> catalog_labels(int degree = 0);  // 0: all

FiberComplex build_fiber(const std::string& fiber_type);

// The raw JSON shipped for a solved entry (empty json when the entry is built in code).
nlohmann::json stored_fiber_json(const std::string& name);

// Replaces the X component by M05 + 3 F0.  The new components' gluing curves are
// attached to whatever the matching X curve was glued to.
FiberComplex apply_x_degeneration(const FiberComplex& f, int comp_id);

// Blows up the Eckardt point special_points[point_index] and attaches a plane carrying the
// three lines, glued along the exceptional curve.
FiberComplex apply_eckardt_augmentation(const FiberComplex& f, int point_index);

// Smooth cubic with one Eckardt point recorded as a special point (before augmentation).
FiberComplex smooth_cubic_with_eckardt_point();

// Component multiset keyed by (role, sorted source types).
std::map<std::pair<std::string, std::string>, int> component_multiset(const FiberComplex& f);
std::map<std::pair<std::string, std::string>, int> table_multiset(const CatalogEntry& e);

struct LineCheck {
    std::size_t labels = 0;               // distinct marked lines seen
    std::vector<std::string> bad_labels;  // total degree over components differs from (N/d)c - 1
};
// Only meaningful for complexes whose lines are unmerged (catalog entries at weight 1).
LineCheck check_line_degrees(const FiberComplex& f);

}  // namespace dpw
