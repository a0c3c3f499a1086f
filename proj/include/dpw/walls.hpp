#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpw/catalog.hpp"
#include "dpw/surface.hpp"

namespace dpw {

struct Chamber {
    Interval interval;  // (lo, hi]
    FiberComplex model;
    std::optional<Rational> slc_max;
};

// A component breakpoint that never becomes a wall because the component changes first.
struct Screening {
    Rational at;
    Rational screened_by;  // lower end of the chamber in which the component lives
    std::string role;
};

struct FiberSweep {
    std::string fiber_type;
    int degree = 3;
    int tier = 1;
    std::vector<Chamber> chambers;  // descending
    std::vector<Screening> screened;
};

FiberSweep sweep_fiber(const FiberComplex& f, int tier = 1);
// Cached sweep of a catalog entry.
const FiberSweep& catalog_sweep(const std::string& fiber_type);

FiberComplex chamber_model(const std::string& fiber_type, const Rational& c);

// Exact isomorphism certificate of a fiber complex up to relabelling of components and
// curve indices.  Line labels, intersection numbers and special points are part of it.
std::string canonical_form(const FiberComplex& f);

struct WallWitness {
    std::string fiber_type;
    std::string kind;  // "ample" or "slc"
    int tier = 1;
};

struct WallClassification {
    std::string tag;  // "isomorphism" or "contraction"
    std::vector<std::pair<std::string, std::string>> merged;  // fiber types identified below the wall
};

struct ChamberReport {
    Interval interval;
    std::map<std::string, int> models;  // fiber type -> component count
    std::string crossing_tag;           // classification of the wall at the top, "none" for the first
};

struct WallReport {
    int degree = 3;
    std::vector<Rational> walls;  // descending
    std::map<Rational, std::vector<WallWitness>> witnesses;
    std::vector<ChamberReport> chambers;
};

WallReport compute_walls(int degree, int threads = 1);
WallClassification classify_wall(int degree, const Rational& wall);

nlohmann::json to_json(const WallReport& r);

}  // namespace dpw
