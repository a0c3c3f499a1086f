#include "dpw/complex.hpp"

#include <algorithm>
#include <functional>

namespace dpw {

CompatMode parse_mode(const std::string& s) {
    if (s == "geometric") return CompatMode::Geometric;
    if (s == "verbatim") return CompatMode::Verbatim;
    if (s == "orthogonal-only" || s == "orthogonal") return CompatMode::OrthogonalOnly;
    throw DomainError("unknown compatibility mode '" + s + "'");
}

std::string mode_name(CompatMode m) {
    switch (m) {
        case CompatMode::Geometric: return "geometric";
        case CompatMode::Verbatim: return "verbatim";
        case CompatMode::OrthogonalOnly: return "orthogonal-only";
    }
    return "";
}

bool compatible(const RootSubsystem& a, const RootSubsystem& b, CompatMode mode) {
    if (are_orthogonal(a, b)) return true;
    switch (mode) {
        case CompatMode::Geometric: return contains(a, b) || contains(b, a);
        case CompatMode::Verbatim: return are_disjoint(a, b);
        case CompatMode::OrthogonalOnly: return false;
    }
    return false;
}

std::vector<std::string> vertex_types(int n) {
    switch (n) {
        case 5: return {"D2"};
        case 6: return {"A1", "A2xA2xA2"};
        case 7: return {"A1", "A2", "A3xA3", "A7"};
    }
    throw DomainError("boundary complexes exist for n in {5,6,7}");
}

BoundaryComplex::BoundaryComplex(int n, CompatMode mode) : n_(n), mode_(mode) {
    for (const auto& t : vertex_types(n))
        for (auto& s : enumerate_vertex_subsystems(n, t)) vertices_.push_back({s, t, mask_of(s), orthogonal_mask(s)});
    std::size_t N = vertices_.size(), words = (N + 63) / 64;
    adj_.assign(N, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            const auto &a = vertices_[i], &b = vertices_[j];
            bool ok = (b.mask & ~a.orth).none();
            if (!ok && mode_ == CompatMode::Geometric) ok = (a.mask & ~b.mask).none() || (b.mask & ~a.mask).none();
            if (!ok && mode_ == CompatMode::Verbatim) ok = (a.mask & b.mask).none();
            if (ok) {
                adj_[i][j / 64] |= 1ULL << (j % 64);
                adj_[j][i / 64] |= 1ULL << (i % 64);
            }
        }
}

std::map<std::string, std::size_t> BoundaryComplex::vertex_counts_by_type() const {
    std::map<std::string, std::size_t> out;
    for (const auto& v : vertices_) out[v.tag]++;
    return out;
}

bool BoundaryComplex::adjacent(std::size_t i, std::size_t j) const { return (adj_[i][j / 64] >> (j % 64)) & 1ULL; }

bool BoundaryComplex::excluded(const std::vector<std::size_t>& face) const {
    // in E7, seven pairwise orthogonal A1 vertices do not span a face
    if (n_ != 7 || face.size() < 7) return false;
    std::vector<std::size_t> a1;
    for (auto v : face)
        if (vertices_[v].tag == "A1") a1.push_back(v);
    if (a1.size() < 7) return false;
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == 7) return true;
        for (std::size_t i = start; i < a1.size(); ++i) {
            const auto& v = vertices_[a1[i]];
            bool ok = true;
            for (auto p : pick) ok = ok && (v.mask & ~vertices_[p].orth).none();
            if (!ok) continue;
            pick.push_back(a1[i]);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(0);
}

bool BoundaryComplex::is_face(const std::vector<std::size_t>& vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j] || !adjacent(vs[i], vs[j])) return false;
    return !excluded(vs);
}

std::uint64_t BoundaryComplex::count_faces(int dim, const std::string& only_tag) const {
    if (dim < 0) return 0;
    std::size_t k = (std::size_t)dim + 1, N = vertices_.size(), words = adj_.empty() ? 0 : adj_[0].size();
    std::vector<std::uint64_t> allowed(words, 0);
    for (std::size_t i = 0; i < N; ++i)
        if (only_tag.empty() || vertices_[i].tag == only_tag) allowed[i / 64] |= 1ULL << (i % 64);
    std::uint64_t count = 0;
    std::vector<std::size_t> face;
    std::function<void(std::vector<std::uint64_t>&)> rec = [&](std::vector<std::uint64_t>& cand) {
        if (face.size() == k) {
            if (!excluded(face)) ++count;
            return;
        }
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                std::size_t v = w * 64 + b;
                std::vector<std::uint64_t> next(words, 0);
                // only later vertices, so each face is counted once
                for (std::size_t u = w; u < words; ++u) {
                    std::uint64_t m = adj_[v][u] & cand[u];
                    if (u == w) m &= (b == 63) ? 0 : (~0ULL << (b + 1));
                    next[u] = m;
                }
                face.push_back(v);
                rec(next);
                face.pop_back();
            }
        }
    };
    rec(allowed);
    return count;
}

std::vector<std::uint64_t> BoundaryComplex::f_vector_prefix(int max_dim) const {
    std::vector<std::uint64_t> f;
    for (int d = 0; d <= max_dim; ++d) f.push_back(count_faces(d));
    return f;
}

std::vector<std::vector<std::size_t>> BoundaryComplex::maximal_faces() const {
    // Bron-Kerbosch with pivoting on the compatibility graph
    std::size_t N = vertices_.size();
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> R;
    std::function<void(std::vector<std::size_t>, std::vector<std::size_t>)> bk = [&](std::vector<std::size_t> P,
                                                                                     std::vector<std::size_t> X) {
        if (P.empty() && X.empty()) {
            auto f = R;
            std::sort(f.begin(), f.end());
            out.push_back(f);
            return;
        }
        std::size_t pivot = !P.empty() ? P[0] : X[0];
        std::size_t best = 0;
        for (auto* S : {&P, &X})
            for (auto u : *S) {
                std::size_t c = 0;
                for (auto v : P) c += adjacent(u, v);
                if (c >= best) best = c, pivot = u;
            }
        std::vector<std::size_t> todo;
        for (auto v : P)
            if (!adjacent(pivot, v)) todo.push_back(v);
        for (auto v : todo) {
            std::vector<std::size_t> P2, X2;
            for (auto u : P)
                if (adjacent(u, v)) P2.push_back(u);
            for (auto u : X)
                if (adjacent(u, v)) X2.push_back(u);
            R.push_back(v);
            bk(P2, X2);
            R.pop_back();
            P.erase(std::find(P.begin(), P.end(), v));
            X.push_back(v);
        }
    };
    std::vector<std::size_t> all(N);
    for (std::size_t i = 0; i < N; ++i) all[i] = i;
    bk(all, {});
    // the E7 exclusion splits a 7-clique of A1 vertices into its 6-element subfaces
    std::vector<std::vector<std::size_t>> fixed;
    for (auto& f : out) {
        if (!excluded(f)) {
            fixed.push_back(f);
            continue;
        }
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            if (vertices_[f[drop]].tag != "A1") continue;
            auto g = f;
            g.erase(g.begin() + drop);
            if (!excluded(g)) fixed.push_back(g);
        }
    }
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    return fixed;
}

}  // namespace dpw
