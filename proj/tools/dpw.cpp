#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpw/catalog.hpp"
#include "dpw/complex.hpp"
#include "dpw/strata.hpp"
#include "dpw/walls.hpp"

using namespace dpw;
using nlohmann::json;

namespace {

struct Output {
    json data;
    std::string table;
    bool failed = false;
};

struct Options {
    std::string format = "table";
    std::string out;
    int threads = 1;
};

Output roots_cmd(int n, const std::string& action) {
    auto R = enumerate_roots(n);
    Output o;
    o.data = {{"n", n}, {"count", R.size()}};
    std::ostringstream t;
    if (action == "list") {
        json list = json::array();
        for (auto& r : R) {
            list.push_back({{"label", root_label(r)}, {"class", r.text()}});
            t << root_label(r) << "\t" << r.text() << "\n";
        }
        o.data["roots"] = list;
    } else {
        t << R.size() << "\n";
    }
    o.table = t.str();
    return o;
}

Output lines_cmd(int n) {
    auto L = enumerate_lines(n);
    Output o;
    json list = json::array();
    std::ostringstream t;
    t << L.size() << " lines\n";
    for (auto& l : L) {
        list.push_back(l.text());
        t << l.text() << "\n";
    }
    o.data = {{"n", n}, {"count", L.size()}, {"lines", list}};
    o.table = t.str();
    return o;
}

Output subsystems_cmd(int n, const std::string& type, const std::string& action) {
    auto S = enumerate_vertex_subsystems(n, type);
    Output o;
    o.data = {{"n", n}, {"type", normalize_type_label(type)}, {"count", S.size()}};
    std::ostringstream t;
    if (action == "list") {
        json list = json::array();
        for (auto& s : S) {
            json labels = json::array();
            std::string row;
            for (auto& r : s.roots) {
                labels.push_back(root_label(r));
                row += (row.empty() ? "" : " ") + root_label(r);
            }
            list.push_back(labels);
            t << row << "\n";
        }
        o.data["subsystems"] = list;
    } else {
        t << S.size() << "\n";
    }
    o.table = t.str();
    return o;
}

Output complex_cmd(int n, const std::string& mode) {
    BoundaryComplex bc(n, parse_mode(mode));
    Output o;
    std::ostringstream t;
    json by_type = json::object();
    for (auto& [type, count] : bc.vertex_counts_by_type()) {
        by_type[type] = count;
        t << type << "\t" << count << "\n";
    }
    auto edges = bc.count_faces(1);
    t << "vertices\t" << bc.vertices().size() << "\n" << "edges\t" << edges << "\n";
    o.data = {{"n", n},
              {"mode", mode_name(bc.mode())},
              {"vertices", bc.vertices().size()},
              {"vertices_by_type", by_type},
              {"edges", edges}};
    o.table = t.str();
    return o;
}

Output strata_cmd(const std::string& type) {
    auto count = count_strata(type);
    return {{{"type", parse_stratum_type(type).label()}, {"count", count}}, std::to_string(count) + "\n"};
}

Output eckardt_cmd() {
    auto T = enumerate_eckardt_triples();
    return {{{"count", T.size()}}, std::to_string(T.size()) + "\n"};
}

std::string fiber_table(const FiberComplex& f) {
    std::ostringstream t;
    t << f.fiber_type << "  degree " << f.degree << "  chamber (" << to_string(f.lo) << ", " << to_string(f.hi)
      << "]  " << f.components.size() << " components\n";
    for (auto& c : f.components) {
        int lines = 0, doubles = 0;
        for (auto& cv : c.curves) {
            lines += cv.kind == CurveKind::Line;
            doubles += cv.kind == CurveKind::Double;
        }
        t << "  [" << c.id << "] " << c.role << "  K^2=" << to_string(c.K2()) << "  rho=" << c.picard_rank()
          << "  lines=" << lines << "  double=" << doubles << "  R=" << polarization_restriction(f, c.id).text(c.basis);
        if (!c.source.empty()) t << "  from " << c.source;
        t << "\n";
    }
    if (!f.special_points.empty()) t << "  special points: " << f.special_points.size() << "\n";
    return t.str();
}

Output fiber_cmd(const std::string& type, const std::string& weight) {
    auto f = weight.empty() ? build_fiber(type) : chamber_model(type, parse_rational(weight));
    return {to_json(f), fiber_table(f)};
}

Output stable_model_cmd(const std::string& type, const std::string& weight) {
    Rational c = parse_rational(weight);
    auto f = chamber_model(type, c);
    json j = to_json(f);
    json restr = json::array();
    for (auto& comp : f.components) restr.push_back(polarization_restriction(f, comp.id).text(comp.basis));
    return {{{"weight", to_string(c)}, {"model", j}, {"restrictions", restr}}, fiber_table(f)};
}

Output walls_cmd(int degree, int threads) {
    auto r = compute_walls(degree, threads);
    std::ostringstream t;
    for (std::size_t i = 0; i < r.walls.size(); ++i) t << (i ? " " : "") << to_string(r.walls[i]);
    t << "\n";
    for (auto& ch : r.chambers) {
        t << "(" << to_string(ch.interval.lo) << ", " << to_string(ch.interval.hi) << "]  " << ch.crossing_tag;
        for (auto& [type, count] : ch.models) t << "  " << type << ":" << count;
        t << "\n";
    }
    return {to_json(r), t.str()};
}

// Full invariant suite.  Each entry is (name, passed).
Output check_cmd(int threads) {
    std::vector<std::pair<std::string, std::function<bool()>>> checks;
    auto add = [&](std::string name, std::function<bool()> fn) { checks.emplace_back(std::move(name), std::move(fn)); };
    add("positive roots 20/36/63", [] {
        return enumerate_roots(5).size() == 20 && enumerate_roots(6).size() == 36 && enumerate_roots(7).size() == 63;
    });
    add("lines 16/27/56", [] {
        return enumerate_lines(5).size() == 16 && enumerate_lines(6).size() == 27 && enumerate_lines(7).size() == 56;
    });
    add("vertex counts", [] {
        std::size_t total = 0;
        for (auto& t : vertex_types(7)) total += enumerate_vertex_subsystems(7, t).size();
        return enumerate_vertex_subsystems(5, "D2").size() == 10 && enumerate_vertex_subsystems(6, "A1").size() == 36 &&
               enumerate_vertex_subsystems(6, "A2^3").size() == 40 && total == 1065;
    });
    add("horizontal roots 16/27", [] { return horizontal_roots(6).size() == 16 && horizontal_roots(7).size() == 27; });
    add("strata a/b/a4", [] { return count_strata("a") == 36 && count_strata("b") == 40 && count_strata("a4") == 135; });
    add("eckardt triples", [] { return enumerate_eckardt_triples().size() == 45; });
    add("catalog validates", [] {
        for (auto& t : catalog_labels())
            if (!validate(build_fiber(t)).empty()) return false;
        return true;
    });
    add("catalog json round trip", [] {
        for (auto& t : catalog_labels()) {
            auto f = build_fiber(t);
            if (!(fiber_from_json(to_json(f)) == f)) return false;
        }
        return true;
    });
    add("marked line degrees", [] {
        for (auto& t : catalog_labels())
            if (!check_line_degrees(build_fiber(t)).bad_labels.empty()) return false;
        return true;
    });
    add("walls degree 3", [threads] {
        return compute_walls(3, threads).walls ==
               std::vector<Rational>{{2, 3}, {1, 2}, {1, 3}, {1, 4}, {1, 6}};
    });
    add("walls degree 4", [threads] { return compute_walls(4, threads).walls == std::vector<Rational>{{1, 2}}; });
    add("total degree conserved", [] {
        for (auto& t : catalog_labels())
            for (auto& ch : catalog_sweep(t).chambers)
                for (int k = 0; k < 5; ++k) {
                    Rational c = ch.interval.hi - (ch.interval.hi - ch.interval.lo) * Rational(k, 5);
                    if (total_degree(ch.model, c) != expected_total_degree(ch.model.degree, c)) return false;
                }
        return true;
    });
    add("chamber models valid and stable", [] {
        for (auto& t : catalog_labels())
            for (auto& ch : catalog_sweep(t).chambers) {
                Rational mid = (ch.interval.lo + ch.interval.hi) / 2;
                if (!validate(ch.model).empty() || !(stable_model(ch.model, mid) == ch.model)) return false;
            }
        return true;
    });

    Output o;
    o.data = json::array();
    std::ostringstream t;
    bool all = true;
    for (auto& [name, fn] : checks) {
        bool ok = false;
        std::string err;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            err = e.what();
        }
        all = all && ok;
        json row = {{"check", name}, {"passed", ok}};
        if (!err.empty()) row["error"] = err;
        o.data.push_back(row);
        t << (ok ? "ok    " : "FAIL  ") << name << (err.empty() ? "" : "  (" + err + ")") << "\n";
    }
    o.table = t.str();
    o.failed = !all;
    return o;
}

void emit(const Output& o, const Options& opt) {
    std::string text = opt.format == "json" ? o.data.dump(2) + "\n" : o.table;
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw DomainError("cannot write " + opt.out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary complexes, stable fibers and weight walls for del Pezzo moduli"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--out", opt.out, "Write output to a file");
    app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1, 256));

    auto exact = CLI::Validator(
        [](std::string& s) {
            try {
                parse_rational(s);
            } catch (const DomainError& e) {
                return std::string(e.what());
            }
            return std::string();
        },
        "p/q");

    std::function<Output()> run;
    int n = 0, degree = 0;
    std::string action = "count", type, mode = "geometric", weight;

    auto* roots = app.add_subcommand("roots", "Positive roots of E_n");
    roots->add_option("--n", n)->required()->check(CLI::Range(3, 8));
    roots->add_option("action", action)->check(CLI::IsMember({"count", "list"}));
    roots->callback([&] { run = [&] { return roots_cmd(n, action); }; });

    auto* lines = app.add_subcommand("lines", "Lines on the del Pezzo surface of degree 9-n");
    lines->add_option("--n", n)->required()->check(CLI::Range(3, 8));
    lines->callback([&] { run = [&] { return lines_cmd(n); }; });

    auto* subs = app.add_subcommand("subsystems", "Vertex root subsystems");
    subs->add_option("--n", n)->required();
    subs->add_option("--type", type)->required();
    subs->add_option("action", action)->check(CLI::IsMember({"count", "list"}));
    subs->callback([&] { run = [&] { return subsystems_cmd(n, type, action); }; });

    auto* cx = app.add_subcommand("complex", "Boundary complex statistics");
    cx->add_option("--n", n)->required();
    cx->add_option("--mode", mode);
    cx->add_option("action", action)->check(CLI::IsMember({"stats"}));
    cx->callback([&] { run = [&] { return complex_cmd(n, mode); }; });

    auto* st = app.add_subcommand("strata", "Count boundary strata of a combinatorial type");
    st->add_option("--type", type)->required();
    st->add_option("action", action)->check(CLI::IsMember({"count"}));
    st->callback([&] { run = [&] { return strata_cmd(type); }; });

    auto* eck = app.add_subcommand("eckardt", "Count Eckardt triples");
    eck->add_option("action", action)->check(CLI::IsMember({"count"}));
    eck->callback([&] { run = [&] { return eckardt_cmd(); }; });

    auto* fib = app.add_subcommand("fiber", "Show a catalog fiber, optionally at a weight");
    fib->add_option("--type", type)->required();
    fib->add_option("--weight", weight)->check(exact);
    fib->add_option("action", action)->check(CLI::IsMember({"show"}));
    fib->callback([&] { run = [&] { return fiber_cmd(type, weight); }; });

    auto* sm = app.add_subcommand("stable-model", "Stable model of a fiber at a weight");
    sm->add_option("--type", type)->required();
    sm->add_option("--weight", weight)->required()->check(exact);
    sm->callback([&] { run = [&] { return stable_model_cmd(type, weight); }; });

    auto* wl = app.add_subcommand("walls", "Walls and chambers of the weight domain");
    wl->add_option("--degree", degree)->required()->check(CLI::IsMember({3, 4}));
    wl->callback([&] { run = [&] { return walls_cmd(degree, opt.threads); }; });

    bool all = false;
    auto* chk = app.add_subcommand("check", "Run the invariant suite");
    chk->add_flag("--all", all)->required();
    chk->callback([&] { run = [&] { return check_cmd(opt.threads); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    try {
        auto o = run();
        emit(o, opt);
        return o.failed ? 1 : 0;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
