#include "dpw/walls.hpp"

#include <algorithm>
#include <future>
#include <mutex>
#include <set>

namespace dpw {

using nlohmann::json;

FiberSweep sweep_fiber(const FiberComplex& input, int tier) {
    FiberSweep s;
    s.fiber_type = input.fiber_type;
    s.degree = input.degree;
    s.tier = tier;
    Rational floor = weight_floor(input.degree);
    Rational hi = 1;
    FiberComplex model = input;
    for (int guard = 0; guard < 32; ++guard) {
        Rational lo = floor;
        std::vector<std::pair<const SurfaceComponent*, Rational>> bounds;
        for (auto& comp : model.components) {
            auto r = polarization_restriction(model, comp.id);
            auto ivs = ample_interval(comp, r);
            auto it = std::find_if(ivs.begin(), ivs.end(), [&](auto& iv) { return iv.contains(hi); });
            if (it == ivs.end())
                throw DomainError(model.fiber_type + ": component " + std::to_string(comp.id) + " (" + comp.role +
                                  ") is not ample at c = " + to_string(hi));
            bounds.push_back({&comp, it->lo});
            lo = std::max(lo, it->lo);
        }
        for (auto& [comp, b] : bounds)
            if (b < lo && b > floor) s.screened.push_back({b, lo, comp->role});
        model.lo = lo;
        model.hi = hi;
        auto slc = slc_interval(model);
        if (slc.c_max && *slc.c_max < hi)
            throw DomainError(model.fiber_type + ": slc fails above c = " + to_string(*slc.c_max) +
                              " inside the chamber ending at " + to_string(hi));
        s.chambers.push_back({{lo, hi, true}, model, slc.c_max});
        if (lo <= floor) break;
        auto next = stable_model(model, lo);
        next.lo = lo;
        next.hi = lo;
        if (next.components == model.components && next.special_points == model.special_points)
            throw DomainError(model.fiber_type + ": no contraction applies at breakpoint " + to_string(lo));
        model = std::move(next);
        hi = lo;
    }
    return s;
}

const FiberSweep& catalog_sweep(const std::string& fiber_type) {
    static std::mutex mu;
    static std::map<std::string, std::shared_future<FiberSweep>> cache;
    std::shared_future<FiberSweep> fut;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(fiber_type);
        if (it == cache.end()) {
            const auto& entry = catalog_entry(fiber_type);
            fut = std::async(std::launch::deferred, [fiber_type, tier = entry.tier] {
                      return sweep_fiber(build_fiber(fiber_type), tier);
                  }).share();
            cache.emplace(fiber_type, fut);
        } else {
            fut = it->second;
        }
    }
    return fut.get();
}

FiberComplex chamber_model(const std::string& fiber_type, const Rational& c) {
    const auto& entry = catalog_entry(fiber_type);
    Rational floor = weight_floor(entry.degree);
    if (!(c > floor && c <= 1))
        throw DomainError("weight " + to_string(c) + " outside the domain (" + to_string(floor) + ", 1]");
    for (auto& ch : catalog_sweep(fiber_type).chambers)
        if (ch.interval.contains(c)) return ch.model;
    throw DomainError("no chamber of " + fiber_type + " contains " + to_string(c));
}

// ---------------------------------------------------------------------------------------
// Canonical forms

namespace {

struct Graph {
    std::vector<std::string> base;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, edge label id)
    std::vector<std::string> edge_labels;
    std::map<std::string, int> edge_ids;

    int add_node(std::string label) {
        base.push_back(std::move(label));
        adj.emplace_back();
        return static_cast<int>(base.size()) - 1;
    }
    void add_edge(int u, int v, const std::string& label) {
        auto it = edge_ids.find(label);
        int id;
        if (it == edge_ids.end()) {
            id = static_cast<int>(edge_labels.size());
            edge_ids.emplace(label, id);
            edge_labels.push_back(label);
        } else {
            id = it->second;
        }
        adj[u].push_back({v, id});
        adj[v].push_back({u, id});
    }
};

Graph build_graph(const FiberComplex& f) {
    Graph g;
    std::map<CurveRef, int> curve_node;
    for (auto& c : f.components) {
        int minus_two = 0;
        for (auto& e : c.contracted)
            if (c.dot(e, e) == -2) ++minus_two;
        int cn = g.add_node("C|" + to_string(c.K2()) + "|" + std::to_string(c.picard_rank()) + "|" +
                            std::to_string(minus_two));
        for (std::size_t i = 0; i < c.curves.size(); ++i) {
            const auto& cv = c.curves[i];
            std::string label = "V|" + kind_name(cv.kind) + "|" +
                                std::to_string(cv.kind == CurveKind::Line ? cv.mult : 0) + "|" +
                                to_string(c.dot(cv.cls, cv.cls)) + "|" + to_string(c.dot(cv.cls, c.K)) + "|" +
                                (cv.kind == CurveKind::Line ? cv.label : "");
            int vn = g.add_node(label);
            curve_node[{c.id, static_cast<int>(i)}] = vn;
            g.add_edge(cn, vn, "in");
        }
        for (std::size_t i = 0; i < c.curves.size(); ++i)
            for (std::size_t j = i + 1; j < c.curves.size(); ++j) {
                Rational x = c.dot(c.curves[i].cls, c.curves[j].cls);
                if (x != 0)
                    g.add_edge(curve_node[{c.id, static_cast<int>(i)}], curve_node[{c.id, static_cast<int>(j)}],
                               "x" + to_string(x));
            }
    }
    for (auto& c : f.components)
        for (std::size_t i = 0; i < c.curves.size(); ++i) {
            const auto& cv = c.curves[i];
            CurveRef me{c.id, static_cast<int>(i)};
            if (cv.glue && me < *cv.glue) g.add_edge(curve_node[me], curve_node.at(*cv.glue), "glue");
        }
    for (auto& p : f.special_points) {
        int pn = g.add_node("P");
        for (std::size_t k = 0; k < p.curves.size(); ++k) g.add_edge(pn, curve_node.at(p.curves[k]), "at");
    }
    return g;
}

// Colour refinement until stable.  Colours are renumbered by sorted signature so the result
// does not depend on node order.
std::vector<int> refine(const Graph& g, std::vector<int> colour) {
    std::size_t n = colour.size();
    std::size_t classes = std::set<int>(colour.begin(), colour.end()).size();
    while (true) {
        std::vector<std::pair<std::vector<long long>, int>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<long long> nb;
            for (auto& [u, e] : g.adj[v]) nb.push_back(static_cast<long long>(colour[u]) * 4096 + e);
            std::sort(nb.begin(), nb.end());
            nb.insert(nb.begin(), colour[v]);
            sig[v] = {std::move(nb), static_cast<int>(v)};
        }
        std::vector<std::vector<long long>> keys;
        for (auto& s : sig) keys.push_back(s.first);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<int> next(n);
        for (std::size_t v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v].first) - keys.begin());
        colour = std::move(next);
        if (keys.size() == classes) return colour;
        classes = keys.size();
    }
}

std::string encode(const Graph& g, const std::vector<int>& colour) {
    std::size_t n = colour.size();
    std::vector<int> order(n);
    for (std::size_t v = 0; v < n; ++v) order[colour[v]] = static_cast<int>(v);
    std::string out;
    for (int v : order) out += g.base[v] + "\n";
    std::vector<std::tuple<int, int, std::string>> edges;
    for (std::size_t v = 0; v < n; ++v)
        for (auto& [u, e] : g.adj[v])
            if (colour[v] < colour[u]) edges.emplace_back(colour[v], colour[u], g.edge_labels[e]);
    std::sort(edges.begin(), edges.end());
    for (auto& [a, b, l] : edges) out += std::to_string(a) + " " + std::to_string(b) + " " + l + "\n";
    return out;
}

struct Search {
    const Graph& g;
    std::optional<std::string> best;
    long leaves = 0;

    void run(std::vector<int> colour) {
        colour = refine(g, std::move(colour));
        std::size_t n = colour.size();
        std::vector<int> size(n, 0);
        for (int c : colour) size[c]++;
        int cell = -1;
        for (std::size_t c = 0; c < n; ++c)
            if (size[c] > 1) {
                cell = static_cast<int>(c);
                break;
            }
        if (cell < 0) {
            if (++leaves > 200000) throw DomainError("canonical form search exceeded its budget");
            auto s = encode(g, colour);
            if (!best || s < *best) best = std::move(s);
            return;
        }
        // Individualize each member of the first non-trivial cell in turn.
        std::vector<int> members;
        for (std::size_t v = 0; v < n; ++v)
            if (colour[v] == cell) members.push_back(static_cast<int>(v));
        for (int v : members) {
            std::vector<int> c2(n);
            for (std::size_t u = 0; u < n; ++u)
                c2[u] = 2 * colour[u] + ((colour[u] == cell && static_cast<int>(u) != v) ? 1 : 0);
            run(std::move(c2));
        }
    }
};

}  // namespace

std::string canonical_form(const FiberComplex& f) {
    Graph g = build_graph(f);
    std::vector<std::string> labels = g.base;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<int> colour(g.base.size());
    for (std::size_t v = 0; v < g.base.size(); ++v)
        colour[v] = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), g.base[v]) - labels.begin());
    Search s{g, std::nullopt, 0};
    s.run(colour);
    return *s.best;
}

// ---------------------------------------------------------------------------------------
// Walls

namespace {

std::vector<Rational> global_walls(int degree) {
    Rational floor = weight_floor(degree);
    std::set<Rational> w;
    for (auto& t : catalog_labels(degree))
        for (auto& ch : catalog_sweep(t).chambers)
            if (ch.interval.lo > floor) w.insert(ch.interval.lo);
    return {w.rbegin(), w.rend()};
}

}  // namespace

WallClassification classify_wall(int degree, const Rational& wall) {
    auto walls = global_walls(degree);
    auto it = std::find(walls.begin(), walls.end(), wall);
    if (it == walls.end()) throw DomainError("unknown wall " + to_string(wall));
    Rational above = it == walls.begin() ? Rational(1) : *(it - 1);
    Rational below = wall;
    auto types = catalog_labels(degree);
    std::vector<std::string> ca, cb;
    for (auto& t : types) {
        ca.push_back(canonical_form(chamber_model(t, above)));
        cb.push_back(canonical_form(chamber_model(t, below)));
    }
    WallClassification out;
    out.tag = "isomorphism";
    for (std::size_t i = 0; i < types.size(); ++i)
        for (std::size_t j = i + 1; j < types.size(); ++j)
            if (cb[i] == cb[j] && ca[i] != ca[j]) {
                out.tag = "contraction";
                out.merged.push_back({types[i], types[j]});
            }
    return out;
}

WallReport compute_walls(int degree, int threads) {
    if (degree != 3 && degree != 4) throw DomainError("degree must be 3 or 4");
    auto types = catalog_labels(degree);
    // warm the sweep cache, optionally in parallel
    if (threads > 1) {
        std::vector<std::future<void>> jobs;
        std::size_t next = 0;
        std::mutex mu;
        auto worker = [&] {
            while (true) {
                std::size_t k;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= types.size()) return;
                    k = next++;
                }
                catalog_sweep(types[k]);
            }
        };
        for (int t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, worker));
        for (auto& j : jobs) j.get();
    }
    WallReport r;
    r.degree = degree;
    r.walls = global_walls(degree);
    for (auto& t : types) {
        const auto& s = catalog_sweep(t);
        for (auto& ch : s.chambers) {
            if (std::find(r.walls.begin(), r.walls.end(), ch.interval.lo) != r.walls.end())
                r.witnesses[ch.interval.lo].push_back({t, "ample", s.tier});
            if (ch.slc_max && *ch.slc_max == ch.interval.hi && ch.interval.hi < 1)
                r.witnesses[ch.interval.hi].push_back({t, "slc", s.tier});
        }
    }
    std::vector<Rational> bounds{Rational(1)};
    bounds.insert(bounds.end(), r.walls.begin(), r.walls.end());
    bounds.push_back(weight_floor(degree));
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        ChamberReport ch;
        ch.interval = {bounds[i + 1], bounds[i], true};
        for (auto& t : types) ch.models[t] = static_cast<int>(chamber_model(t, bounds[i]).components.size());
        ch.crossing_tag = i == 0 ? "none" : classify_wall(degree, bounds[i]).tag;
        r.chambers.push_back(ch);
    }
    return r;
}

json to_json(const WallReport& r) {
    json j;
    j["degree"] = r.degree;
    j["walls"] = json::array();
    for (auto& w : r.walls) j["walls"].push_back(to_string(w));
    j["witnesses"] = json::object();
    for (auto& [w, list] : r.witnesses) {
        json a = json::array();
        for (auto& x : list) a.push_back({{"fiber_type", x.fiber_type}, {"kind", x.kind}, {"tier", x.tier}});
        j["witnesses"][to_string(w)] = a;
    }
    j["chambers"] = json::array();
    for (auto& ch : r.chambers) {
        json c;
        c["interval"] = {to_string(ch.interval.lo), to_string(ch.interval.hi)};
        c["models"] = ch.models;
        c["crossing_tag"] = ch.crossing_tag;
        j["chambers"].push_back(c);
    }
    return j;
}

}  // namespace dpw
