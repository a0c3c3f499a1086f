#include "dpw/catalog.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dpw/roots.hpp"
#include "dpw/strata.hpp"

namespace dpw {

namespace detail {
const std::map<std::string, std::string_view>& embedded_catalog();
}

using nlohmann::json;

namespace {

std::vector<std::string> split_types(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

TableRow row(const std::string& label, const std::string& printed, const std::string& types,
             const std::string& role, int count) {
    return {label, printed, split_types(types), role, count};
}

std::vector<CatalogEntry> make_catalog() {
    std::vector<CatalogEntry> c;
    c.push_back({"smooth3", 3, 1, {}, "smooth cubic surface, 27 lines from the horizontal roots of E7"});
    c.push_back({"smooth3_eckardt", 3, 1, {},
                 "smooth cubic with an Eckardt point, blown up there with a plane carrying the three lines"});
    c.push_back({"a", 3, 1,
                 {row("1", "A1", "A1", "wS_A1", 1), row("2", "A7", "A7", "Bl6F0", 1), row("3", "A2", "A2", "F0", 6)},
                 "table rows a 1-3; classes solved from the incidence data"});
    c.push_back({"a2", 3, 1,
                 {row("1", "2A1", "A1 A1", "wS_2A1", 1), row("2", "A1A7", "A1 A7", "Bl5F0", 2),
                  row("3", "A3^2", "A3^2", "X", 1), row("4", "A2A7", "A2 A7", "F0", 4),
                  row("5a", "A1A2", "A1 A2", "F0", 8), row("5b", "2A2", "A2 A2", "F0", 4)},
                 "table rows a2 1-5b; classes solved from the incidence data"});
    c.push_back({"aa2", 3, 1, {}, "a2 with its X component degenerated into M05 + 3 F0"});
    c.push_back({"b", 3, 1, {row("1", "A2", "A2", "wS_A2", 3), row("2", "A3^2", "A3^2", "F0", 9)},
                 "table rows b 1-2; classes solved from the incidence data"});
    c.push_back({"ab", 3, 1,
                 {row("1", "A1 < A2", "A1 A2", "wS_A2", 1), row("2", "A1 _|_ A2", "A1 A2", "Z", 2),
                  row("3", "2A2", "A2 A2", "F0", 6), row("4a", "A2A7", "A2 A7", "Bl4F0", 2),
                  row("4b", "A3^2A7", "A3^2 A7", "F0", 2), row("5", "A1 < A3^2", "A1 A3^2", "F0", 6),
                  row("6", "A1 _|_ A3^2", "A1 A3^2", "F0", 1), row("7", "A2A3^2", "A2 A3^2", "F0", 6)},
                 "table rows ab 1-7; classes solved from the incidence data"});
    c.push_back({"a3", 3, 2,
                 {row("1", "3A1", "A1 A1 A1", "wS_3A1", 1), row("2", "2A1A7", "A1 A1 A7", "Bl4F0", 3),
                  row("3", "A1A3^2", "A1 A3^2", "X", 3), row("4a", "A1A2A7", "A1 A2 A7", "F0", 12),
                  row("4b", "2A2A7", "A2 A2 A7", "F0", 12), row("5a", "2A1A2", "A1 A1 A2", "F0", 6),
                  row("5b", "A12A2", "A1 A2 A2", "F0", 6)},
                 "table rows a3 1-5b; F0 line classes solved from the incidence data"});
    c.push_back({"a4", 3, 2,
                 {row("1", "4A1", "A1 A1 A1 A1", "wS_4A1", 1), row("2", "3A1A7", "A1 A1 A1 A7", "Bl3F0", 4),
                  row("3", "2A1A3^2", "A1 A1 A3^2", "X", 6),
                  row("4a", "2A1A2A7", "A1 A1 A2 A7", "F0", 24),
                  row("4b", "A12A2A7", "A1 A2 A2 A7", "F0", 24)},
                 "table rows a4 1-4b; F0 line classes solved from the incidence data"});
    c.push_back({"a2b", 3, 2,
                 {row("1", "A1 _|_ (A1 < A2)", "A1 A1 A2", "Z", 2), row("2", "2A1 _|_ A2", "A1 A1 A2", "M05", 1),
                  row("3", "A2 _|_ (A1 < A2)", "A1 A2 A2", "F0", 6), row("4", "A3^2A2", "A2 A3^2", "X", 1),
                  row("5a", "A1 _|_ A2 _|_ A2", "A1 A2 A2", "F0", 2), row("5b", "3A2", "A2 A2 A2", "F0", 1),
                  row("6a", "(A1 _|_ A2) < A7", "A1 A2 A7", "Bl4F0", 2),
                  row("6b", "A1 < A2 < A7", "A1 A2 A7", "Bl3F0", 2), row("6c", "A1A7A3^2", "A1 A3^2 A7", "F0", 4),
                  row("6d", "2A2A7", "A2 A2 A7", "F0", 4), row("6e", "A2A7A3^2", "A2 A3^2 A7", "F0", 4),
                  row("7", "2A1 < A3^2", "A1 A1 A3^2", "F0", 3),
                  row("8", "A1 _|_ (A1 < A3^2)", "A1 A1 A3^2", "F0", 2),
                  row("9", "(A1 _|_ A2) < A3^2", "A1 A2 A3^2", "F0", 6), row("10", "2A2A3^2", "A2 A2 A3^2", "F0", 3),
                  row("11", "A1 _|_ (A2 < A3^2)", "A1 A2 A3^2", "F0", 2)},
                 "table rows a2b 1-11; F0 line classes solved from the incidence data"});
    c.push_back({"a3b", 3, 2,
                 {row("1", "3A1A2", "A1 A1 A1 A2", "M05", 3), row("2", "A1A3^2A2", "A1 A2 A3^2", "X", 3),
                  row("3a", "2A12A2", "A1 A1 A2 A2", "F0", 6), row("3b", "A13A2", "A1 A2 A2 A2", "F0", 3),
                  row("4a", "A72A1A2", "A1 A1 A2 A7", "M05", 6), row("4b", "A72A1A3^2", "A1 A1 A3^2 A7", "F0", 6),
                  row("4c", "A7A12A2", "A1 A2 A2 A7", "F0", 12), row("4d", "A7A1A2A3^2", "A1 A2 A3^2 A7", "F0", 12),
                  row("4e", "A72A2A3^2", "A2 A2 A3^2 A7", "F0", 6), row("5a", "3A1A3^2", "A1 A1 A1 A3^2", "F0", 3),
                  row("5b", "A22A1A3^2", "A1 A1 A2 A3^2", "F0", 6), row("5c", "A12A2A3^2", "A1 A2 A2 A3^2", "F0", 3)},
                 "table rows a3b 1-5c; F0 line classes solved from the incidence data"});
    c.push_back({"smooth4", 4, 1, {}, "smooth degree 4 del Pezzo, 16 lines from the horizontal roots of E6"});
    c.push_back({"deg4_div", 4, 1, {row("1", "A1", "A1", "Bl4F0", 2), row("2", "A2^3", "A2^3", "F0", 4)},
                 "degree 4 boundary divisor fiber: 2 Bl4F0 + 4 F0"});
    c.push_back({"deg4_codim2", 4, 1,
                 {row("1", "2A1", "A1 A1", "M05", 4), row("2", "A1A2^3", "A1 A2^3", "F0", 8)},
                 "degree 4 codimension 2 fiber: 4 M05 + 8 F0"});
    return c;
}

FiberComplex smooth_fiber(int degree) {
    int n = degree == 3 ? 7 : 6;  // E_n over E_{n-1}
    int rank = n;                  // h, e1..e_{n-1}
    FiberComplex f;
    f.fiber_type = degree == 3 ? "smooth3" : "smooth4";
    f.degree = degree;
    f.lo = weight_floor(degree);
    f.hi = 1;
    SurfaceComponent c;
    c.id = 0;
    c.role = degree == 3 ? "wS_0A1" : "Bl5P2";
    c.basis.push_back("h");
    for (int i = 1; i < rank; ++i) c.basis.push_back("e" + std::to_string(i));
    c.gram.assign(rank, std::vector<int>(rank, 0));
    c.gram[0][0] = 1;
    for (int i = 1; i < rank; ++i) c.gram[i][i] = -1;
    c.K.push_back(-3);
    for (int i = 1; i < rank; ++i) c.K.push_back(1);
    for (auto& r : horizontal_roots(n)) {
        auto line = line_of_horizontal_root(r);
        CurveRecord cv;
        for (int x : line.c) cv.cls.push_back(x);
        cv.kind = CurveKind::Line;
        cv.label = root_label(r);
        c.curves.push_back(cv);
    }
    std::sort(c.curves.begin(), c.curves.end(), [](auto& a, auto& b) { return a.label < b.label; });
    f.components.push_back(c);
    return f;
}

int find_curve_by_class(const SurfaceComponent& c, const QVector& cls, CurveKind kind) {
    for (std::size_t i = 0; i < c.curves.size(); ++i)
        if (c.curves[i].cls == cls && c.curves[i].kind == kind) return static_cast<int>(i);
    return -1;
}

QVector qvec(const json& j) {
    QVector v;
    for (auto& x : j) v.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>()));
    return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> c = make_catalog();
    return c;
}

const CatalogEntry& catalog_entry(const std::string& fiber_type) {
    for (auto& e : catalog())
        if (e.fiber_type == fiber_type) return e;
    throw DomainError("unknown fiber type '" + fiber_type + "'");
}

std::vector<std::string> catalog_labels(int degree) {
    std::vector<std::string> out;
    for (auto& e : catalog())
        if (degree == 0 || e.degree == degree) out.push_back(e.fiber_type);
    return out;
}

json stored_fiber_json(const std::string& name) {
    auto& m = detail::embedded_catalog();
    auto it = m.find(name);
    if (it == m.end()) return json();
    return json::parse(it->second);
}

FiberComplex build_fiber(const std::string& fiber_type) {
    const auto& entry = catalog_entry(fiber_type);
    if (fiber_type == "smooth3") return smooth_fiber(3);
    if (fiber_type == "smooth4") return smooth_fiber(4);
    if (fiber_type == "smooth3_eckardt") {
        auto f = apply_eckardt_augmentation(smooth_cubic_with_eckardt_point(), 0);
        f.fiber_type = fiber_type;
        return f;
    }
    if (fiber_type == "aa2") {
        auto a2 = build_fiber("a2");
        int x = -1;
        for (auto& c : a2.components)
            if (c.role == "X") x = c.id;
        auto f = apply_x_degeneration(a2, x);
        f.fiber_type = fiber_type;
        return f;
    }
    auto j = stored_fiber_json(fiber_type);
    if (j.is_null()) throw DomainError("no data shipped for fiber type '" + fiber_type + "'");
    auto f = fiber_from_json(j);
    f.degree = entry.degree;
    return f;
}

FiberComplex smooth_cubic_with_eckardt_point() {
    auto f = smooth_fiber(3);
    auto triples = enumerate_eckardt_triples();
    if (triples.empty()) throw DomainError("no Eckardt triple found");
    SpecialPoint p;
    for (auto& r : triples.front()) {
        auto label = root_label(r);
        const auto& curves = f.components[0].curves;
        auto it = std::find_if(curves.begin(), curves.end(), [&](auto& cv) { return cv.label == label; });
        if (it == curves.end()) throw DomainError("Eckardt line " + label + " missing");
        p.curves.push_back({0, static_cast<int>(it - curves.begin())});
        p.mults.push_back(1);
    }
    std::sort(p.curves.begin(), p.curves.end());
    f.special_points.push_back(p);
    f.fiber_type = "smooth3";
    return f;
}

FiberComplex apply_eckardt_augmentation(const FiberComplex& input, int point_index) {
    if (point_index < 0 || point_index >= static_cast<int>(input.special_points.size()))
        throw DomainError("no special point with index " + std::to_string(point_index));
    const auto& p = input.special_points[point_index];
    if (p.curves.size() != 3 || p.has_double) throw DomainError("point is not an Eckardt configuration");
    int cid = p.curves[0].comp;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& cv = input.curve(p.curves[k]);
        if (p.curves[k].comp != cid || cv.kind != CurveKind::Line || cv.mult != 1)
            throw DomainError("point is not an Eckardt configuration");
    }
    const auto& comp0 = input.component(cid);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b)
            if (comp0.dot(input.curve(p.curves[a]).cls, input.curve(p.curves[b]).cls) != 1)
                throw DomainError("point is not an Eckardt configuration");

    FiberComplex f = input;
    f.special_points.erase(f.special_points.begin() + point_index);
    auto& u = f.components[cid];
    int ecount = static_cast<int>(std::count_if(u.basis.begin(), u.basis.end(), [](auto& b) { return b[0] == 'e'; }));
    u.basis.push_back("e" + std::to_string(ecount + 1));
    if (u.basis[0] == "h" && u.contracted.empty()) u.role = "Bl" + std::to_string(ecount + 1) + "P2";
    int n = u.rank();
    for (auto& row : u.gram) row.push_back(0);
    u.gram.push_back(std::vector<int>(n, 0));
    u.gram[n - 1][n - 1] = -1;
    u.K.push_back(1);
    for (auto& cv : u.curves) cv.cls.push_back(0);
    for (auto& e : u.contracted) e.push_back(0);
    for (auto& ref : p.curves) u.curves[ref.curve].cls.back() = -1;

    int pid = static_cast<int>(f.components.size());
    CurveRecord ex;
    ex.cls.assign(n, 0);
    ex.cls.back() = 1;
    ex.kind = CurveKind::Double;
    ex.glue = CurveRef{pid, 0};
    u.curves.push_back(ex);
    int exi = static_cast<int>(u.curves.size()) - 1;

    SurfaceComponent plane;
    plane.id = pid;
    plane.role = "P2_eckardt";
    plane.basis = {"h"};
    plane.gram = {{1}};
    plane.K = {Rational(-3)};
    CurveRecord dbl;
    dbl.cls = {Rational(1)};
    dbl.kind = CurveKind::Double;
    dbl.glue = CurveRef{cid, exi};
    plane.curves.push_back(dbl);
    for (auto& ref : p.curves) {
        CurveRecord l;
        l.cls = {Rational(1)};
        l.kind = CurveKind::Line;
        l.label = input.curve(ref).label;
        plane.curves.push_back(l);
    }
    plane.source = "Eckardt point";
    f.components.push_back(plane);
    return f;
}

FiberComplex apply_x_degeneration(const FiberComplex& input, int comp_id) {
    const auto& x = input.component(comp_id);
    if (x.role != "X") throw DomainError("component " + std::to_string(comp_id) + " is not an X");
    static const json tmpl = stored_fiber_json("x_degeneration");
    if (x.basis != tmpl.at("x_basis").get<std::vector<std::string>>() || !x.contracted.empty())
        throw DomainError("X component is not in the standard basis");

    // template X curve -> curve of this X with the same class and kind
    std::vector<int> xmatch;
    std::map<std::string, std::string> relabel;
    for (auto& tc : tmpl.at("x_curves")) {
        auto kind = parse_kind(tc.at("kind").get<std::string>());
        int i = find_curve_by_class(x, qvec(tc.at("class")), kind);
        if (i < 0) throw DomainError("X component is not in the standard basis");
        xmatch.push_back(i);
        if (kind == CurveKind::Line) relabel[tc.at("label").get<std::string>()] = x.curves[i].label;
    }
    if (std::set<int>(xmatch.begin(), xmatch.end()).size() != x.curves.size())
        throw DomainError("X component is not in the standard basis");

    FiberComplex f = input;
    const auto& tcomps = tmpl.at("components");
    // the first template component takes the X slot, the rest are appended
    std::vector<int> new_id;
    for (std::size_t j = 0; j < tcomps.size(); ++j)
        new_id.push_back(j == 0 ? comp_id : static_cast<int>(f.components.size() + j - 1));

    std::vector<SurfaceComponent> built;
    for (std::size_t j = 0; j < tcomps.size(); ++j) {
        const auto& tc = tcomps[j];
        SurfaceComponent c;
        c.id = new_id[j];
        c.role = tc.at("role").get<std::string>();
        c.basis = tc.at("basis").get<std::vector<std::string>>();
        c.gram = tc.at("gram").get<std::vector<std::vector<int>>>();
        c.K = qvec(tc.at("K"));
        c.source = tc.value("source", std::string());
        for (auto& cvj : tc.at("curves")) {
            CurveRecord cv;
            cv.cls = qvec(cvj.at("class"));
            cv.kind = parse_kind(cvj.at("kind").get<std::string>());
            cv.mult = cvj.value("mult", 1);
            if (cv.kind == CurveKind::Line) {
                auto it = relabel.find(cvj.at("label").get<std::string>());
                if (it == relabel.end()) throw DomainError("X degeneration template has an unmatched line");
                cv.label = it->second;
            }
            if (cvj.contains("glue") && !cvj["glue"].is_null()) {
                cv.glue = CurveRef{new_id[cvj["glue"].at(0).get<int>()], cvj["glue"].at(1).get<int>()};
            } else if (cvj.contains("x_curve")) {
                int xi = find_curve_by_class(x, qvec(cvj["x_curve"]), CurveKind::Double);
                if (xi < 0 || !x.curves[xi].glue) throw DomainError("X degeneration template does not fit");
                cv.glue = *x.curves[xi].glue;
            }
            c.curves.push_back(cv);
        }
        built.push_back(std::move(c));
    }
    // re-point the neighbours
    for (auto& c : built)
        for (std::size_t k = 0; k < c.curves.size(); ++k) {
            auto& cv = c.curves[k];
            if (!cv.glue) continue;
            if (std::find(new_id.begin(), new_id.end(), cv.glue->comp) != new_id.end()) continue;
            f.components[cv.glue->comp].curves[cv.glue->curve].glue = CurveRef{c.id, static_cast<int>(k)};
        }
    f.components[comp_id] = built[0];
    for (std::size_t j = 1; j < built.size(); ++j) f.components.push_back(built[j]);
    // special points on the old X disappear with it
    std::vector<SpecialPoint> pts;
    for (auto& p : f.special_points)
        if (std::none_of(p.curves.begin(), p.curves.end(), [&](auto& r) { return r.comp == comp_id; }))
            pts.push_back(p);
    f.special_points = pts;
    return f;
}

std::map<std::pair<std::string, std::string>, int> component_multiset(const FiberComplex& f) {
    std::map<std::pair<std::string, std::string>, int> m;
    for (auto& c : f.components) {
        auto t = split_types(c.source);
        std::string key;
        for (auto& s : t) key += (key.empty() ? "" : " ") + s;
        m[{c.role, key}]++;
    }
    return m;
}

std::map<std::pair<std::string, std::string>, int> table_multiset(const CatalogEntry& e) {
    std::map<std::pair<std::string, std::string>, int> m;
    for (auto& r : e.rows) {
        std::string key;
        for (auto& s : r.types) key += (key.empty() ? "" : " ") + s;
        m[{r.role, key}] += r.count;
    }
    return m;
}

LineCheck check_line_degrees(const FiberComplex& f) {
    int N = f.degree == 3 ? 27 : 16;
    Affine expected{Rational(-1), Rational(N, f.degree)};
    std::map<std::string, Affine> per;
    for (auto& c : f.components) {
        auto r = polarization_restriction(f, c.id);
        for (auto& cv : c.curves)
            if (cv.kind == CurveKind::Line) per[cv.label] = per[cv.label] + restriction_degree(c, r, cv.cls);
    }
    LineCheck out;
    out.labels = per.size();
    for (auto& [label, a] : per)
        if (a != expected) out.bad_labels.push_back(label);
    return out;
}

}  // namespace dpw
