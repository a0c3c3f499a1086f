#include "dpw/surface.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace dpw {

using nlohmann::json;

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational");
    for (char ch : s) {
        if (ch == '.' || ch == 'e' || ch == 'E')
            throw DomainError("weights must be exact rationals p/q, got '" + s + "'");
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
            throw DomainError("malformed rational '" + s + "'");
    }
    auto slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            long long p = std::stoll(s, &used);
            if (used != s.size()) throw DomainError("malformed rational '" + s + "'");
            return Rational(p);
        }
        std::string ps = s.substr(0, slash), qs = s.substr(slash + 1);
        long long p = std::stoll(ps, &used);
        if (used != ps.size()) throw DomainError("malformed rational '" + s + "'");
        long long q = std::stoll(qs, &used);
        if (used != qs.size() || qs.empty() || qs[0] == '-' || qs[0] == '+')
            throw DomainError("malformed rational '" + s + "'");
        if (q == 0) throw DomainError("zero denominator in '" + s + "'");
        return Rational(p, q);
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational '" + s + "'");
    } catch (const std::out_of_range&) {
        throw DomainError("rational out of range '" + s + "'");
    }
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string Affine::text() const {
    std::string slope = b == 1 ? "c" : b == -1 ? "-c" : to_string(b) + "c";
    if (b == 0) return to_string(a);
    if (a == 0) return slope;
    return to_string(a) + (b > 0 ? "+" : "") + slope;
}

QVector WeightedClass::at(const Rational& c) const {
    QVector v;
    for (auto& e : entries) v.push_back(e.at(c));
    return v;
}
QVector WeightedClass::constant() const {
    QVector v;
    for (auto& e : entries) v.push_back(e.a);
    return v;
}
QVector WeightedClass::slope() const {
    QVector v;
    for (auto& e : entries) v.push_back(e.b);
    return v;
}
std::string WeightedClass::text(const std::vector<std::string>& basis) const {
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        const Affine& e = entries[i];
        std::string coeff = e.b == 0 && e.a == 1 ? "" : "(" + e.text() + ")";
        out += coeff + (i < basis.size() ? basis[i] : "?");
    }
    return out.empty() ? "0" : out;
}

std::string kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::Line: return "line";
        case CurveKind::Double: return "double";
        default: return "other";
    }
}
CurveKind parse_kind(const std::string& s) {
    if (s == "line") return CurveKind::Line;
    if (s == "double") return CurveKind::Double;
    if (s == "other") return CurveKind::Other;
    throw DomainError("unknown curve kind '" + s + "'");
}

bool CurveRecord::operator==(const CurveRecord& o) const {
    return cls == o.cls && kind == o.kind && mult == o.mult && glue == o.glue && label == o.label;
}

Rational SurfaceComponent::dot(const QVector& u, const QVector& v) const {
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (gram[i][j] != 0 && v[j] != 0) s += u[i] * v[j] * Rational(gram[i][j]);
    }
    return s;
}

bool SurfaceComponent::operator==(const SurfaceComponent& o) const {
    return id == o.id && role == o.role && basis == o.basis && gram == o.gram && K == o.K &&
           curves == o.curves && contracted == o.contracted && source == o.source;
}

int SpecialPoint::double_count() const {
    return static_cast<int>(std::count(mults.begin(), mults.end(), 0));
}
int SpecialPoint::line_weight() const { return std::accumulate(mults.begin(), mults.end(), 0); }
bool SpecialPoint::operator==(const SpecialPoint& o) const {
    return curves == o.curves && mults == o.mults && has_double == o.has_double;
}

const SurfaceComponent& FiberComplex::component(int id) const {
    for (auto& c : components)
        if (c.id == id) return c;
    throw DomainError("unknown component id " + std::to_string(id));
}

std::size_t FiberComplex::count_role(const std::string& role) const {
    return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                  [&](auto& c) { return c.role == role; }));
}

bool FiberComplex::operator==(const FiberComplex& o) const {
    return fiber_type == o.fiber_type && degree == o.degree && lo == o.lo && hi == o.hi &&
           components == o.components && special_points == o.special_points;
}

Rational weight_floor(int degree) {
    if (degree == 3) return Rational(1, 9);
    if (degree == 4) return Rational(1, 4);
    throw DomainError("degree must be 3 or 4");
}

WeightedClass polarization_restriction(const FiberComplex& f, int comp_id) {
    const auto& comp = f.component(comp_id);
    WeightedClass r;
    for (auto& k : comp.K) r.entries.push_back({k, 0});
    for (auto& cv : comp.curves) {
        for (std::size_t i = 0; i < cv.cls.size(); ++i) {
            if (cv.kind == CurveKind::Double) r.entries[i].a += cv.cls[i];
            else if (cv.kind == CurveKind::Line) r.entries[i].b += cv.cls[i] * Rational(cv.mult);
        }
    }
    return r;
}

Quadratic restriction_square(const SurfaceComponent& comp, const WeightedClass& r) {
    auto a = r.constant(), b = r.slope();
    return {comp.dot(a, a), 2 * comp.dot(a, b), comp.dot(b, b)};
}

Affine restriction_degree(const SurfaceComponent& comp, const WeightedClass& r, const QVector& cls) {
    return {comp.dot(r.constant(), cls), comp.dot(r.slope(), cls)};
}

namespace {

enum class LatticeKind { Plane, Quadric };

LatticeKind lattice_kind(const SurfaceComponent& c) {
    if (c.rank() >= 2 && c.gram[0][0] == 0 && c.gram[0][1] == 1) return LatticeKind::Quadric;
    return LatticeKind::Plane;
}

// Integer classes of the standard lattice with prescribed (C^2, K.C), in a box large enough
// for every surface in the catalog (blowups of P^2 in at most 7 points, of F0 in at most 6).
std::vector<QVector> base_classes(const SurfaceComponent& comp) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<QVector>> cache;
    auto kind = lattice_kind(comp);
    std::pair<int, int> key{static_cast<int>(kind), comp.rank()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    int n = comp.rank();
    int head = kind == LatticeKind::Quadric ? 2 : 1;
    std::vector<QVector> out;
    std::vector<int> v(n, 0);
    // standard canonical class for the lattice kind
    std::vector<int> K(n, 1);
    if (kind == LatticeKind::Quadric) K[0] = K[1] = -2;
    else K[0] = -3;
    auto sq = [&](const std::vector<int>& x) {
        long s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += static_cast<long>(comp.gram[i][j]) * x[i] * x[j];
        return s;
    };
    auto kd = [&](const std::vector<int>& x) {
        long s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += static_cast<long>(comp.gram[i][j]) * x[i] * K[j];
        return s;
    };
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        if (i < head) { lo[i] = 0; hi[i] = 3; }
        else { lo[i] = -2; hi[i] = 1; }
    }
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            long s = sq(v), k = kd(v);
            bool keep = (s == -1 && k == -1) || (s == 0 && k == -2) || (n == 1 && s == 1 && k == -3);
            if (keep) {
                QVector q;
                for (int x : v) q.push_back(Rational(x));
                out.push_back(q);
            }
            return;
        }
        for (int x = lo[i]; x <= hi[i]; ++x) {
            v[i] = x;
            rec(i + 1);
        }
        v[i] = 0;
    };
    rec(0);
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = out;
    return out;
}

QVector project_away(const SurfaceComponent& comp, const QVector& x, const QVector& e) {
    Rational ee = comp.dot(e, e);
    Rational t = comp.dot(x, e) / ee;
    QVector y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= t * e[i];
    return y;
}

bool is_zero(const QVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

}  // namespace

std::vector<QVector> extremal_classes(const SurfaceComponent& comp) {
    std::vector<QVector> raw = base_classes(comp);
    for (auto& cv : comp.curves) raw.push_back(cv.cls);
    std::set<QVector> seen;
    std::vector<QVector> out;
    for (auto x : raw) {
        for (auto& e : comp.contracted) x = project_away(comp, x, e);
        if (is_zero(x)) continue;
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

namespace {

// Rational roots of p0 + p1 c + p2 c^2 (only when the discriminant is a perfect square).
std::vector<Rational> rational_roots(const Quadratic& q, bool& irrational) {
    irrational = false;
    std::vector<Rational> out;
    if (q.p2 == 0) {
        if (q.p1 != 0) out.push_back(-q.p0 / q.p1);
        return out;
    }
    Rational disc = q.p1 * q.p1 - 4 * q.p2 * q.p0;
    if (disc < 0) return out;
    auto isqrt = [](long long x, bool& ok) {
        long long r = static_cast<long long>(std::sqrt(static_cast<long double>(x)));
        while (r * r > x) --r;
        while ((r + 1) * (r + 1) <= x) ++r;
        ok = r * r == x;
        return r;
    };
    bool okn = false, okd = false;
    long long sn = isqrt(disc.numerator(), okn), sd = isqrt(disc.denominator(), okd);
    if (!okn || !okd) {
        irrational = true;
        return out;
    }
    Rational s(sn, sd);
    out.push_back((-q.p1 - s) / (2 * q.p2));
    out.push_back((-q.p1 + s) / (2 * q.p2));
    return out;
}

bool ample_at(const SurfaceComponent& comp, const WeightedClass& d, const std::vector<QVector>& ext,
              const Rational& c) {
    auto v = d.at(c);
    if (comp.dot(v, v) <= 0) return false;
    for (auto& e : ext)
        if (comp.dot(v, e) <= 0) return false;
    return true;
}

}  // namespace

namespace {

bool linear_ok(const SurfaceComponent& comp, const WeightedClass& d, const std::vector<QVector>& ext,
               const Rational& c) {
    auto v = d.at(c);
    for (auto& e : ext)
        if (comp.dot(v, e) <= 0) return false;
    return true;
}

// Whether p0 + p1 c + p2 c^2 vanishes somewhere in the open interval (l, u).
bool has_root_in(const Quadratic& q, const Rational& l, const Rational& u) {
    Rational ql = q.at(l), qu = q.at(u);
    if ((ql < 0 && qu > 0) || (ql > 0 && qu < 0)) return true;
    if (q.p2 == 0) return false;
    Rational v = -q.p1 / (2 * q.p2);
    if (!(v > l && v < u)) return false;
    Rational qv = q.at(v);
    if (qv == 0) return true;
    return (qv < 0) != (ql < 0 || (ql == 0 && qu < 0));
}

}  // namespace

std::vector<Rational> ample_breakpoints(const SurfaceComponent& comp, const WeightedClass& d) {
    auto ext = extremal_classes(comp);
    if (ext.empty()) throw DomainError("component " + std::to_string(comp.id) + " has no extremal classes");
    std::set<Rational> pts;
    for (auto& e : ext) {
        Affine a = restriction_degree(comp, d, e);
        if (a.b != 0) pts.insert(-a.a / a.b);
    }
    bool irr = false;
    for (auto& r : rational_roots(restriction_square(comp, d), irr)) pts.insert(r);
    std::vector<Rational> out;
    for (auto& p : pts)
        if (p > 0 && p < 1) out.push_back(p);
    std::sort(out.rbegin(), out.rend());
    return out;
}

std::vector<Interval> ample_interval(const SurfaceComponent& comp, const WeightedClass& d) {
    auto ext = extremal_classes(comp);
    if (ext.empty()) throw DomainError("component " + std::to_string(comp.id) + " has no extremal classes");
    auto bps = ample_breakpoints(comp, d);
    auto sq = restriction_square(comp, d);
    std::vector<Rational> cuts{Rational(0)};
    for (auto it = bps.rbegin(); it != bps.rend(); ++it) cuts.push_back(*it);
    cuts.push_back(Rational(1));
    // Between consecutive cuts the sign pattern is constant; at a cut it may change.
    std::vector<Interval> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational mid = (cuts[i] + cuts[i + 1]) / 2;
        if (!linear_ok(comp, d, ext, mid)) continue;
        if (has_root_in(sq, cuts[i], cuts[i + 1]))
            throw DomainError("restriction square has an irrational root where the extremal degrees are "
                              "positive on component " + std::to_string(comp.id));
        if (!ample_at(comp, d, ext, mid)) continue;
        bool closed = ample_at(comp, d, ext, cuts[i + 1]);
        if (!out.empty() && out.back().hi == cuts[i] && out.back().hi_closed) {
            out.back().hi = cuts[i + 1];
            out.back().hi_closed = closed;
        } else {
            out.push_back({cuts[i], cuts[i + 1], closed});
        }
    }
    return out;
}

std::vector<SpecialPoint> incidence_points(const FiberComplex& f) {
    std::vector<SpecialPoint> out = f.special_points;
    auto covered = [&](const CurveRef& a, const CurveRef& b) {
        for (auto& p : f.special_points) {
            bool ha = std::find(p.curves.begin(), p.curves.end(), a) != p.curves.end();
            bool hb = std::find(p.curves.begin(), p.curves.end(), b) != p.curves.end();
            if (ha && hb) return true;
        }
        return false;
    };
    for (auto& comp : f.components) {
        for (std::size_t i = 0; i < comp.curves.size(); ++i) {
            for (std::size_t j = i + 1; j < comp.curves.size(); ++j) {
                auto& a = comp.curves[i];
                auto& b = comp.curves[j];
                if (a.kind == CurveKind::Other || b.kind == CurveKind::Other) continue;
                if (a.kind == CurveKind::Double && b.kind == CurveKind::Double) continue;
                if (comp.dot(a.cls, b.cls) <= 0) continue;
                CurveRef ra{comp.id, static_cast<int>(i)}, rb{comp.id, static_cast<int>(j)};
                if (covered(ra, rb)) continue;
                SpecialPoint p;
                p.curves = {ra, rb};
                p.mults = {a.kind == CurveKind::Line ? a.mult : 0, b.kind == CurveKind::Line ? b.mult : 0};
                p.has_double = a.kind == CurveKind::Double || b.kind == CurveKind::Double;
                out.push_back(p);
            }
        }
    }
    return out;
}

SlcBound slc_interval(const FiberComplex& f) {
    SlcBound best;
    for (auto& p : incidence_points(f)) {
        int w = p.line_weight();
        if (w == 0) continue;
        Rational bound(2 - p.double_count(), w);
        if (!best.c_max || bound < *best.c_max) {
            best.c_max = bound;
            best.witness = p;
        }
    }
    return best;
}

Quadratic total_degree_polynomial(const FiberComplex& f) {
    Quadratic q;
    for (auto& comp : f.components) q = q + restriction_square(comp, polarization_restriction(f, comp.id));
    return q;
}

Rational total_degree(const FiberComplex& f, const Rational& c) {
    return total_degree_polynomial(f).at(c);
}

Rational expected_total_degree(int degree, const Rational& c) {
    int N = degree == 3 ? 27 : degree == 4 ? 16 : 0;
    if (N == 0) throw DomainError("degree must be 3 or 4");
    Rational t = Rational(N, degree) * c - 1;
    return Rational(degree) * t * t;
}

// ---------------------------------------------------------------------------------------
// Contractions

namespace {


std::string derive_role(const SurfaceComponent& c, int minus_two) {
    int pr = c.picard_rank();
    Rational k2 = c.K2();
    if (minus_two > 0) {
        std::string base = c.role;
        if (base.rfind("wS_", 0) == 0) return "S_" + base.substr(3);
        return base + "_sing";
    }
    bool quadric = lattice_kind(c) == LatticeKind::Quadric;
    if (pr == 1) return "P2";
    if (pr == 2) {
        // F0 has no (-1)-classes, Bl1P2 has exactly one
        for (auto& x : extremal_classes(c))
            if (c.dot(x, x) == -1 && c.dot(x, c.K) == -1) return "Bl1P2";
        return "F0";
    }
    (void)k2;
    if (quadric) return "Bl" + std::to_string(pr - 2) + "F0";
    return "Bl" + std::to_string(pr - 1) + "P2";
}

int count_minus_two(const SurfaceComponent& c) {
    int n = 0;
    for (auto& e : c.contracted)
        if (c.dot(e, e) == -2) ++n;
    return n;
}

QVector primitive_direction(const QVector& v) {
    long long l = 1;
    for (auto& x : v) l = std::lcm(l, x.denominator());
    std::vector<long long> ints;
    for (auto& x : v) ints.push_back((x * l).numerator());
    long long g = 0;
    for (auto x : ints) g = std::gcd(g, std::llabs(x));
    QVector out;
    for (auto x : ints) out.push_back(Rational(x / g));
    return out;
}

}  // namespace

FiberComplex stable_model(const FiberComplex& input, const Rational& w) {
    FiberComplex f = input;
    const int max_rounds = 16;
    bool changed_any = false;
    for (int round = 0; round < max_rounds; ++round) {
        // classification at w
        std::vector<int> point_ids, ruled_ids;
        std::map<int, QVector> fibre_of;
        for (auto& comp : f.components) {
            auto r = polarization_restriction(f, comp.id).at(w);
            if (is_zero(r)) {
                point_ids.push_back(comp.id);
                continue;
            }
            if (comp.dot(r, r) == 0) {
                bool nef = true;
                for (auto& e : extremal_classes(comp))
                    if (comp.dot(r, e) < 0) nef = false;
                if (nef) {
                    ruled_ids.push_back(comp.id);
                    fibre_of[comp.id] = primitive_direction(r);
                }
            }
        }
        std::set<int> collapsing(point_ids.begin(), point_ids.end());
        collapsing.insert(ruled_ids.begin(), ruled_ids.end());

        // curves to contract inside surviving components: (comp id) -> classes
        std::map<int, std::vector<QVector>> to_contract;
        // curve replacements after ruled collapses: target ref -> (new kind, mult, labels, glue)
        struct Rewire {
            CurveKind kind;
            int mult;
            std::string label;
            std::optional<CurveRef> glue;
        };
        std::map<CurveRef, Rewire> rewires;

        auto mark_partner_contracted = [&](const CurveRecord& cv) {
            if (!cv.glue) return;
            int other = cv.glue->comp;
            if (collapsing.count(other)) return;
            const auto& oc = f.component(other);
            to_contract[other].push_back(oc.curves.at(cv.glue->curve).cls);
        };

        for (int id : point_ids) {
            for (auto& cv : f.component(id).curves)
                if (cv.kind == CurveKind::Double) mark_partner_contracted(cv);
        }
        for (int id : ruled_ids) {
            const auto& comp = f.component(id);
            const auto& fib = fibre_of[id];
            std::vector<CurveRef> sections;
            int weight = 0;
            std::set<std::string> labels;
            for (std::size_t i = 0; i < comp.curves.size(); ++i) {
                const auto& cv = comp.curves[i];
                Rational deg = comp.dot(fib, cv.cls);
                if (deg < 0) throw DomainError("ruled collapse: negative fibre degree on component " + std::to_string(id));
                if (deg == 0) {
                    if (cv.kind == CurveKind::Double) mark_partner_contracted(cv);
                    continue;
                }
                if (deg.denominator() != 1) throw DomainError("ruled collapse: fractional fibre degree");
                if (cv.kind == CurveKind::Double) {
                    if (deg != 1) throw DomainError("ruled collapse: double curve is a multisection");
                    if (!collapsing.count(cv.glue->comp)) sections.push_back(*cv.glue);
                } else if (cv.kind == CurveKind::Line) {
                    weight += cv.mult * static_cast<int>(deg.numerator());
                    std::istringstream parts(cv.label);
                    for (std::string part; std::getline(parts, part, '+');) labels.insert(part);
                }
            }
            std::string label;
            for (auto& l : labels) label += (label.empty() ? "" : "+") + l;
            if (sections.size() == 1) {
                if (weight > 0) rewires[sections[0]] = {CurveKind::Line, weight, label, std::nullopt};
                else rewires[sections[0]] = {CurveKind::Other, 1, "", std::nullopt};
            } else if (sections.size() == 2) {
                if (weight > 0)
                    throw DomainError("ruled collapse: lines would map onto a double curve");
                rewires[sections[0]] = {CurveKind::Double, 1, "", sections[1]};
                rewires[sections[1]] = {CurveKind::Double, 1, "", sections[0]};
            } else if (sections.empty()) {
                // every section is glued to another collapsing component: handled there
            } else {
                throw DomainError("ruled collapse onto more than two neighbours on component " + std::to_string(id));
            }
        }

        // blow-downs and (-2) contractions forced inside surviving components
        for (auto& comp : f.components) {
            if (collapsing.count(comp.id)) continue;
            auto r = polarization_restriction(f, comp.id).at(w);
            for (auto& cv : comp.curves) {
                Rational s = comp.dot(cv.cls, cv.cls);
                if ((s == -1 || s == -2) && comp.dot(r, cv.cls) == 0 && cv.kind != CurveKind::Other)
                    to_contract[comp.id].push_back(cv.cls);
            }
            for (auto& e : extremal_classes(comp)) {
                Rational s = comp.dot(e, e);
                if ((s == -1 && comp.dot(e, comp.K) == -1) && comp.dot(r, e) == 0)
                    to_contract[comp.id].push_back(e);
            }
        }

        if (collapsing.empty() && to_contract.empty()) break;
        changed_any = true;

        // apply contractions component by component
        std::vector<SpecialPoint> new_points;
        std::map<int, std::vector<bool>> removed_curve;
        for (auto& comp : f.components) removed_curve[comp.id] = std::vector<bool>(comp.curves.size(), false);

        for (auto& comp : f.components) {
            if (collapsing.count(comp.id)) continue;
            auto it = to_contract.find(comp.id);
            if (it == to_contract.end()) continue;
            for (auto e0 : it->second) {
                QVector e = e0;
                for (auto& done : comp.contracted) e = project_away(comp, e, done);
                if (is_zero(e)) continue;
                Rational ee = comp.dot(e, e);
                if (ee >= 0) throw DomainError("contraction of a non-negative class on component " + std::to_string(comp.id));
                // image point: the curves meeting e become concurrent
                SpecialPoint p;
                for (std::size_t i = 0; i < comp.curves.size(); ++i) {
                    auto& cv = comp.curves[i];
                    if (removed_curve[comp.id][i] || cv.kind == CurveKind::Other) continue;
                    if (cv.cls == e) {
                        removed_curve[comp.id][i] = true;
                        continue;
                    }
                    if (comp.dot(cv.cls, e) > 0) {
                        p.curves.push_back({comp.id, static_cast<int>(i)});
                        p.mults.push_back(cv.kind == CurveKind::Line ? cv.mult : 0);
                        if (cv.kind == CurveKind::Double) p.has_double = true;
                    }
                }
                // earlier concurrency points through the contracted curve merge into the image
                for (auto& sp : f.special_points) {
                    bool through = false;
                    for (auto& ref : sp.curves)
                        if (ref.comp == comp.id && comp.curves[ref.curve].cls == e) through = true;
                    if (!through) continue;
                    for (std::size_t k = 0; k < sp.curves.size(); ++k) {
                        auto ref = sp.curves[k];
                        if (comp.curves[ref.curve].cls == e) continue;
                        if (std::find(p.curves.begin(), p.curves.end(), ref) == p.curves.end()) {
                            p.curves.push_back(ref);
                            p.mults.push_back(sp.mults[k]);
                            p.has_double = p.has_double || sp.mults[k] == 0;
                        }
                    }
                }
                comp.K = project_away(comp, comp.K, e);
                for (auto& cv : comp.curves) cv.cls = project_away(comp, cv.cls, e);
                comp.contracted.push_back(e);
                for (std::size_t i = 0; i < comp.curves.size(); ++i)
                    if (is_zero(comp.curves[i].cls)) removed_curve[comp.id][i] = true;
                if (p.curves.size() >= 2 && p.line_weight() > 0) new_points.push_back(p);
            }
        }

        // rewires from ruled collapses
        for (auto& [ref, rw] : rewires) {
            auto cit = std::find_if(f.components.begin(), f.components.end(),
                                    [&](auto& c) { return c.id == ref.comp; });
            if (cit == f.components.end()) throw DomainError("rewire to unknown component");
            auto& comp = *cit;
            auto& cv = comp.curves.at(ref.curve);
            cv.kind = rw.kind;
            cv.mult = rw.mult;
            cv.label = rw.label;
            cv.glue = rw.glue;
        }

        // drop curves and components, compact indices
        std::map<CurveRef, CurveRef> remap;
        std::vector<SurfaceComponent> kept;
        std::map<int, int> id_map;
        for (auto& comp : f.components) {
            if (collapsing.count(comp.id)) continue;
            int nid = static_cast<int>(kept.size());
            id_map[comp.id] = nid;
            kept.push_back(comp);
        }
        for (auto& comp : kept) {
            int old = comp.id;
            std::vector<CurveRecord> curves;
            for (std::size_t i = 0; i < comp.curves.size(); ++i) {
                if (removed_curve[old][i]) continue;
                remap[{old, static_cast<int>(i)}] = {id_map[old], static_cast<int>(curves.size())};
                curves.push_back(comp.curves[i]);
            }
            comp.curves = std::move(curves);
        }
        for (auto& comp : kept) {
            int nid = id_map[comp.id];
            comp.id = nid;
            for (auto& cv : comp.curves) {
                if (!cv.glue) continue;
                auto it = remap.find(*cv.glue);
                if (it == remap.end()) {
                    // partner vanished: the curve is no longer part of the double locus
                    cv.glue.reset();
                    if (cv.kind == CurveKind::Double) cv.kind = CurveKind::Other;
                } else {
                    cv.glue = it->second;
                }
            }
            int m2 = count_minus_two(comp);
            if (!comp.contracted.empty()) comp.role = derive_role(comp, m2);
        }
        auto remap_point = [&](const SpecialPoint& p) -> std::optional<SpecialPoint> {
            SpecialPoint q;
            for (std::size_t k = 0; k < p.curves.size(); ++k) {
                auto it = remap.find(p.curves[k]);
                if (it == remap.end()) continue;
                q.curves.push_back(it->second);
                q.mults.push_back(p.mults[k]);
            }
            if (q.curves.size() < 2) return std::nullopt;
            return q;
        };
        std::vector<SpecialPoint> points;
        auto add_point = [&](SpecialPoint q, const std::vector<SurfaceComponent>& comps) {
            // refresh multiplicities and kinds from the curves themselves
            q.has_double = false;
            for (std::size_t k = 0; k < q.curves.size(); ++k) {
                auto& cv = comps[q.curves[k].comp].curves[q.curves[k].curve];
                q.mults[k] = cv.kind == CurveKind::Line ? cv.mult : 0;
                if (cv.kind == CurveKind::Double) q.has_double = true;
            }
            std::vector<std::size_t> order(q.curves.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](auto a, auto b) { return q.curves[a] < q.curves[b]; });
            SpecialPoint s;
            s.has_double = q.has_double;
            for (auto k : order) {
                auto& cv = comps[q.curves[k].comp].curves[q.curves[k].curve];
                if (cv.kind == CurveKind::Other) continue;
                s.curves.push_back(q.curves[k]);
                s.mults.push_back(q.mults[k]);
            }
            if (s.curves.size() < 2 || s.line_weight() == 0) return;
            if (std::find(points.begin(), points.end(), s) == points.end()) points.push_back(s);
        };
        for (auto& p : f.special_points)
            if (auto q = remap_point(p)) add_point(*q, kept);
        for (auto& p : new_points)
            if (auto q = remap_point(p)) add_point(*q, kept);
        f.components = std::move(kept);
        f.special_points = std::move(points);
    }
    if (changed_any) {
        f.hi = w;
    }
    return f;
}

// ---------------------------------------------------------------------------------------
// Validation

namespace {

// Inertia of a symmetric integer matrix by symmetric elimination over Q.
std::pair<int, int> inertia(const std::vector<std::vector<int>>& g) {
    int n = static_cast<int>(g.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = g[i][j];
    int pos = 0, neg = 0;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && a[i][i] != 0) { p = i; break; }
        if (p < 0) {
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a[i][j] != 0) { pi = i; pj = j; break; }
            if (pi < 0) break;
            for (int k = 0; k < n; ++k) a[pi][k] += a[pj][k];
            for (int k = 0; k < n; ++k) a[k][pi] += a[k][pj];
            p = pi;
        }
        Rational d = a[p][p];
        (d > 0 ? pos : neg)++;
        done[p] = true;
        for (int i = 0; i < n; ++i) {
            if (done[i] || a[i][p] == 0) continue;
            Rational t = a[i][p] / d;
            for (int j = 0; j < n; ++j) a[i][j] -= t * a[p][j];
        }
        for (int j = 0; j < n; ++j)
            if (!done[j]) a[p][j] = 0;
        for (int i = 0; i < n; ++i)
            if (!done[i]) a[i][p] = 0;
    }
    return {pos, neg};
}

std::optional<int> role_K2(const std::string& role) {
    static const std::map<std::string, int> table{
        {"P2", 9},     {"P2_eckardt", 9}, {"F0", 8},     {"Bl1P2", 8},     {"M05", 5},
        {"X", 4},      {"Z", 4},          {"wS_A1", 3},  {"wS_2A1", 3},    {"wS_3A1", 3},
        {"wS_4A1", 3}, {"wS_A2", 3},      {"wS_0A1", 3}};
    auto it = table.find(role);
    if (it != table.end()) return it->second;
    if (role.size() >= 5 && role.rfind("Bl", 0) == 0) {
        auto tail = role.substr(role.size() - 2);
        int m = std::stoi(role.substr(2, role.size() - 4));
        if (tail == "F0") return 8 - m;
        if (tail == "P2") return 9 - m;
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::string> validate(const FiberComplex& f) {
    std::vector<std::string> errs;
    auto err = [&](const std::string& s) { errs.push_back(f.fiber_type + ": " + s); };
    if (f.components.empty()) err("no components");
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        const auto& c = f.components[i];
        std::string tag = "component " + std::to_string(c.id) + " (" + c.role + ")";
        if (c.id != static_cast<int>(i)) err(tag + ": ids must be 0..n-1 in order");
        int n = c.rank();
        if (static_cast<int>(c.gram.size()) != n || static_cast<int>(c.K.size()) != n) {
            err(tag + ": basis/gram/K size mismatch");
            continue;
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (c.gram[a][b] != c.gram[b][a]) err(tag + ": gram not symmetric");
        auto [pos, neg] = inertia(c.gram);
        if (pos != 1 || neg != n - 1) err(tag + ": gram signature is not (1, rank-1)");
        int m2 = count_minus_two(c);
        if (c.K2() + m2 != 10 - c.picard_rank()) err(tag + ": K^2 inconsistent with Picard rank");
        if (c.contracted.empty())
            if (auto k2 = role_K2(c.role); k2 && c.K2() != *k2)
                err(tag + ": K^2 = " + to_string(c.K2()) + " does not match role");
        for (std::size_t j = 0; j < c.curves.size(); ++j) {
            const auto& cv = c.curves[j];
            std::string ctag = tag + " curve " + std::to_string(j);
            if (static_cast<int>(cv.cls.size()) != n) {
                err(ctag + ": class size mismatch");
                continue;
            }
            if (m2 == 0 && c.dot(cv.cls, cv.cls) + c.dot(cv.cls, c.K) != -2)
                err(ctag + ": not a smooth rational curve (genus formula)");
            if (cv.kind == CurveKind::Line && cv.mult != 1 && cv.mult != 2 && cv.mult != 4)
                err(ctag + ": line multiplicity " + std::to_string(cv.mult) + " not in {1,2,4}");
            if (cv.kind == CurveKind::Double) {
                if (!cv.glue) {
                    err(ctag + ": double curve without gluing");
                    continue;
                }
                auto g = *cv.glue;
                if (g.comp < 0 || g.comp >= static_cast<int>(f.components.size()) || g.comp == c.id) {
                    err(ctag + ": glue to invalid component");
                    continue;
                }
                const auto& other = f.components[g.comp];
                if (g.curve < 0 || g.curve >= static_cast<int>(other.curves.size())) {
                    err(ctag + ": glue to invalid curve");
                    continue;
                }
                const auto& back = other.curves[g.curve];
                if (back.kind != CurveKind::Double || !back.glue || back.glue->comp != c.id ||
                    back.glue->curve != static_cast<int>(j))
                    err(ctag + ": gluing not symmetric");
            } else if (cv.glue) {
                err(ctag + ": non-double curve carries a gluing");
            }
        }
    }
    // connectivity of the gluing graph
    if (!f.components.empty()) {
        std::vector<bool> seen(f.components.size(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto& cv : f.components[x].curves)
                if (cv.glue && cv.glue->comp >= 0 && cv.glue->comp < static_cast<int>(seen.size()) &&
                    !seen[cv.glue->comp]) {
                    seen[cv.glue->comp] = true;
                    stack.push_back(cv.glue->comp);
                }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) err("gluing graph is not connected");
    }
    for (auto& p : f.special_points) {
        if (p.curves.size() != p.mults.size()) err("special point with mismatched multiplicities");
        for (auto& r : p.curves)
            if (r.comp < 0 || r.comp >= static_cast<int>(f.components.size()) || r.curve < 0 ||
                r.curve >= static_cast<int>(f.components[r.comp].curves.size()))
                err("special point refers to a missing curve");
    }
    return errs;
}

// ---------------------------------------------------------------------------------------
// JSON

namespace {

json rational_json(const Rational& r) {
    if (r.denominator() == 1) return r.numerator();
    return to_string(r);
}

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw DomainError("expected an integer or a \"p/q\" string");
}

json qvec_json(const QVector& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(rational_json(x));
    return a;
}

QVector qvec_from(const json& j) {
    QVector v;
    for (auto& x : j) v.push_back(rational_from(x));
    return v;
}

}  // namespace

json to_json(const FiberComplex& f) {
    json j;
    j["fiber_type"] = f.fiber_type;
    j["degree"] = f.degree;
    j["chamber"] = {to_string(f.lo), to_string(f.hi)};
    j["components"] = json::array();
    for (auto& c : f.components) {
        json jc;
        jc["id"] = c.id;
        jc["role"] = c.role;
        jc["basis"] = c.basis;
        jc["gram"] = c.gram;
        jc["K"] = qvec_json(c.K);
        jc["curves"] = json::array();
        for (auto& cv : c.curves) {
            json x;
            x["class"] = qvec_json(cv.cls);
            x["kind"] = kind_name(cv.kind);
            x["mult"] = cv.mult;
            x["glue"] = cv.glue ? json::array({cv.glue->comp, cv.glue->curve}) : json(nullptr);
            if (!cv.label.empty()) x["label"] = cv.label;
            jc["curves"].push_back(x);
        }
        if (!c.contracted.empty()) {
            jc["contracted"] = json::array();
            for (auto& e : c.contracted) jc["contracted"].push_back(qvec_json(e));
        }
        if (!c.source.empty()) jc["source"] = c.source;
        j["components"].push_back(jc);
    }
    j["special_points"] = json::array();
    for (auto& p : f.special_points) {
        json jp;
        jp["curves"] = json::array();
        for (auto& r : p.curves) jp["curves"].push_back({r.comp, r.curve});
        jp["mults"] = p.mults;
        jp["has_double"] = p.has_double;
        j["special_points"].push_back(jp);
    }
    return j;
}

FiberComplex fiber_from_json(const json& j) {
    try {
        FiberComplex f;
        f.fiber_type = j.at("fiber_type").get<std::string>();
        f.degree = j.at("degree").get<int>();
        const auto& ch = j.at("chamber");
        f.lo = rational_from(ch.at(0));
        f.hi = rational_from(ch.at(1));
        for (auto& jc : j.at("components")) {
            SurfaceComponent c;
            c.id = jc.at("id").get<int>();
            c.role = jc.at("role").get<std::string>();
            c.basis = jc.at("basis").get<std::vector<std::string>>();
            c.gram = jc.at("gram").get<std::vector<std::vector<int>>>();
            c.K = qvec_from(jc.at("K"));
            for (auto& x : jc.at("curves")) {
                CurveRecord cv;
                cv.cls = qvec_from(x.at("class"));
                cv.kind = parse_kind(x.at("kind").get<std::string>());
                cv.mult = x.value("mult", 1);
                if (x.contains("glue") && !x["glue"].is_null())
                    cv.glue = CurveRef{x["glue"].at(0).get<int>(), x["glue"].at(1).get<int>()};
                cv.label = x.value("label", std::string());
                c.curves.push_back(cv);
            }
            if (jc.contains("contracted"))
                for (auto& e : jc["contracted"]) c.contracted.push_back(qvec_from(e));
            c.source = jc.value("source", std::string());
            f.components.push_back(std::move(c));
        }
        if (j.contains("special_points"))
            for (auto& jp : j["special_points"]) {
                SpecialPoint p;
                for (auto& r : jp.at("curves")) p.curves.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
                p.mults = jp.at("mults").get<std::vector<int>>();
                p.has_double = jp.at("has_double").get<bool>();
                f.special_points.push_back(p);
            }
        return f;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed fiber JSON: ") + e.what());
    }
}

}  // namespace dpw
