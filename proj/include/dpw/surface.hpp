#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include "json.hpp"

#include "dpw/lattice.hpp"

// Boost 1.74's mixed rational/integer equality recurses forever under C++20's reversed
// operator candidates.  Exact-match overloads found by ADL take precedence.
namespace boost {
inline bool operator==(const rational<long long>& a, long long b) {
    return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<long long>& a, int b) { return a == static_cast<long long>(b); }
inline bool operator!=(const rational<long long>& a, long long b) { return !(a == b); }
inline bool operator!=(const rational<long long>& a, int b) { return !(a == b); }
inline bool operator==(long long b, const rational<long long>& a) { return a == b; }
inline bool operator==(int b, const rational<long long>& a) { return a == b; }
inline bool operator!=(long long b, const rational<long long>& a) { return !(a == b); }
inline bool operator!=(int b, const rational<long long>& a) { return !(a == b); }
}  // namespace boost

namespace dpw {

using Rational = boost::rational<long long>;
using QVector = std::vector<Rational>;

// Accepts "p/q" or an integer.  Anything with a decimal point or exponent is rejected.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

// const + slope * c
struct Affine {
    Rational a{0}, b{0};

    Rational at(const Rational& c) const { return a + b * c; }
    bool is_zero() const { return a == 0 && b == 0; }
    Affine operator+(const Affine& o) const { return {a + o.a, b + o.b}; }
    Affine operator-(const Affine& o) const { return {a - o.a, b - o.b}; }
    Affine operator*(const Rational& k) const { return {a * k, b * k}; }
    bool operator==(const Affine& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Affine& o) const { return !(*this == o); }
    std::string text() const;  // "-1+2c"
};

// A class whose coefficients are affine in the weight c.
struct WeightedClass {
    std::vector<Affine> entries;

    QVector at(const Rational& c) const;
    QVector constant() const;
    QVector slope() const;
    bool operator==(const WeightedClass& o) const { return entries == o.entries; }
    std::string text(const std::vector<std::string>& basis) const;
};

// Quadratic p0 + p1 c + p2 c^2
struct Quadratic {
    Rational p0{0}, p1{0}, p2{0};
    Rational at(const Rational& c) const { return p0 + c * (p1 + c * p2); }
    Quadratic operator+(const Quadratic& o) const { return {p0 + o.p0, p1 + o.p1, p2 + o.p2}; }
    bool operator==(const Quadratic& o) const { return p0 == o.p0 && p1 == o.p1 && p2 == o.p2; }
};

enum class CurveKind { Line, Double, Other };
std::string kind_name(CurveKind k);
CurveKind parse_kind(const std::string& s);

struct CurveRef {
    int comp = -1;
    int curve = -1;
    bool operator==(const CurveRef& o) const { return comp == o.comp && curve == o.curve; }
    bool operator<(const CurveRef& o) const {
        return comp != o.comp ? comp < o.comp : curve < o.curve;
    }
};

struct CurveRecord {
    QVector cls;
    CurveKind kind = CurveKind::Line;
    int mult = 1;                 // lines only
    std::optional<CurveRef> glue;  // double curves only
    std::string label;             // horizontal root label for lines

    bool operator==(const CurveRecord& o) const;
};

struct SurfaceComponent {
    int id = 0;
    std::string role;
    std::vector<std::string> basis;
    std::vector<std::vector<int>> gram;
    QVector K;
    std::vector<CurveRecord> curves;
    // Classes contracted by earlier moves.  The surface's class group is their
    // orthogonal complement; all stored classes already lie in it.
    std::vector<QVector> contracted;
    std::string source;  // root-system signature of the stratum giving this component

    int rank() const { return static_cast<int>(basis.size()); }
    int picard_rank() const { return rank() - static_cast<int>(contracted.size()); }
    Rational dot(const QVector& u, const QVector& v) const;
    Rational K2() const { return dot(K, K); }
    bool operator==(const SurfaceComponent& o) const;
};

// A point where several curves of one component meet.  Pairwise incidences are derived on
// the fly from the intersection numbers; stored points record concurrencies that the
// pairwise data cannot see (Eckardt points, images of contracted curves).
struct SpecialPoint {
    std::vector<CurveRef> curves;
    std::vector<int> mults;  // line multiplicity per curve, 0 for double curves
    bool has_double = false;

    int double_count() const;
    int line_weight() const;
    bool operator==(const SpecialPoint& o) const;
};

struct FiberComplex {
    std::string fiber_type;
    int degree = 3;
    Rational lo{1, 9}, hi{1};  // chamber (lo, hi]
    std::vector<SurfaceComponent> components;
    std::vector<SpecialPoint> special_points;

    const SurfaceComponent& component(int id) const;
    const CurveRecord& curve(const CurveRef& r) const { return component(r.comp).curves.at(r.curve); }
    std::size_t count_role(const std::string& role) const;
    bool operator==(const FiberComplex& o) const;
};

// Weight domain lower end d/N: 1/9 for cubics, 1/4 for degree 4.
Rational weight_floor(int degree);

WeightedClass polarization_restriction(const FiberComplex& f, int comp_id);
Quadratic restriction_square(const SurfaceComponent& comp, const WeightedClass& r);
Affine restriction_degree(const SurfaceComponent& comp, const WeightedClass& r, const QVector& cls);

// Classes tested by Nakai: (-1)-classes, conic classes, recorded curves, all projected to the
// orthogonal complement of the contracted classes.
std::vector<QVector> extremal_classes(const SurfaceComponent& comp);

struct Interval {
    Rational lo, hi;
    bool hi_closed = true;  // always open at lo
    bool contains(const Rational& c) const { return c > lo && (hi_closed ? c <= hi : c < hi); }
};

// Maximal intervals inside (0,1] where the restriction is ample.
std::vector<Interval> ample_interval(const SurfaceComponent& comp, const WeightedClass& d);
// Weights where some extremal degree changes sign; sorted descending.
std::vector<Rational> ample_breakpoints(const SurfaceComponent& comp, const WeightedClass& d);

// All points checked for the slc coefficient bound: stored concurrencies plus every
// pairwise line-line and line-double incidence not already covered by one.
std::vector<SpecialPoint> incidence_points(const FiberComplex& f);

struct SlcBound {
    std::optional<Rational> c_max;  // empty when no point constrains c
    std::optional<SpecialPoint> witness;
};
SlcBound slc_interval(const FiberComplex& f);

Rational total_degree(const FiberComplex& f, const Rational& c);
Quadratic total_degree_polynomial(const FiberComplex& f);
Rational expected_total_degree(int degree, const Rational& c);

// Contracts everything on which the restriction degenerates at the weight w.
FiberComplex stable_model(const FiberComplex& f, const Rational& w);

// Structural checks.  Returns a list of human readable violations (empty when valid).
std::vector<std::string> validate(const FiberComplex& f);

nlohmann::json to_json(const FiberComplex& f);
FiberComplex fiber_from_json(const nlohmann::json& j);

}  // namespace dpw
