#include "dpw/roots.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace dpw {

namespace {

using Bits = std::bitset<128>;

// All roots of E_n (both signs) with pairing and reflection tables.  Positive roots
// come first, in canonical lexicographic order, so bit order equals sorted order.
struct RootTable {
    int n;
    int npos;
    std::vector<LatticeVector> all;
    std::map<LatticeVector, int> index;
    std::vector<std::vector<int>> pair;
    std::vector<std::vector<int>> refl;  // refl[a][b] = s_a(b)

    explicit RootTable(int rank) : n(rank) {
        all = enumerate_roots(n);
        npos = (int)all.size();
        for (int i = 0; i < npos; ++i) all.push_back(-all[i]);
        for (int i = 0; i < (int)all.size(); ++i) index[all[i]] = i;
        int N = (int)all.size();
        pair.assign(N, std::vector<int>(N));
        refl.assign(N, std::vector<int>(N));
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                pair[a][b] = pairing(all[a], all[b]);
                refl[a][b] = index.at(all[b] + all[a] * pair[a][b]);
            }
    }
    int neg(int i) const { return i < npos ? i + npos : i - npos; }
    int pos(int i) const { return i < npos ? i : i - npos; }
    int find(const LatticeVector& v) const {
        auto it = index.find(v);
        if (it == index.end()) throw DomainError("not a root of E_" + std::to_string(n) + ": " + v.text());
        return it->second;
    }
};

const RootTable& table(int n) {
    if (n < 5 || n > 7) throw DomainError("root tables exist for 5 <= n <= 7");
    static const RootTable t5(5), t6(6), t7(7);
    return n == 5 ? t5 : n == 6 ? t6 : t7;
}

// Positive-root bitmask of the subsystem generated by the given roots.
Bits closure_bits(const RootTable& T, const std::vector<int>& gens) {
    Bits in;
    std::vector<int> members, queue;
    auto add = [&](int r) {
        if (in[r]) return;
        in[r] = true;
        in[T.neg(r)] = true;
        members.push_back(r);
        members.push_back(T.neg(r));
        queue.push_back(r);
    };
    for (int g : gens) add(g);
    while (!queue.empty()) {
        int a = queue.back();
        queue.pop_back();
        for (std::size_t k = 0; k < members.size(); ++k) {
            int b = members[k];
            add(T.refl[a][b]);
            add(T.refl[b][a]);
        }
    }
    Bits pos;
    for (int i = 0; i < T.npos; ++i)
        if (in[i]) pos[i] = true;
    return pos;
}

Bits bits_of(const RootTable& T, const std::vector<LatticeVector>& roots) {
    Bits b;
    for (const auto& r : roots) b[T.pos(T.find(r))] = true;
    return b;
}

bool orthogonal_bits(const RootTable& T, const Bits& a, const Bits& b) {
    for (int i = 0; i < T.npos; ++i)
        if (a[i])
            for (int j = 0; j < T.npos; ++j)
                if (b[j] && T.pair[i][j] != 0) return false;
    return true;
}

void check_same(const RootSubsystem& a, const RootSubsystem& b) {
    if (a.ambient_n != b.ambient_n) throw DomainError("subsystems live in different ambient lattices");
}

// Rank of a list of integer vectors by fraction-free elimination.
int integer_rank(std::vector<std::vector<long long>> rows) {
    int r = 0;
    if (rows.empty()) return 0;
    int cols = (int)rows[0].size();
    for (int col = 0; col < cols && r < (int)rows.size(); ++col) {
        int piv = -1;
        for (int i = r; i < (int)rows.size(); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = r + 1; i < (int)rows.size(); ++i) {
            long long a = rows[r][col], b = rows[i][col];
            if (b == 0) continue;
            long long g = 0;
            for (int k = 0; k < cols; ++k) {
                rows[i][k] = rows[i][k] * a - rows[r][k] * b;
                g = std::gcd(g, std::llabs(rows[i][k]));
            }
            if (g > 1)
                for (auto& x : rows[i]) x /= g;
        }
        ++r;
    }
    return r;
}

std::vector<long long> as_row(const LatticeVector& v) { return {v.c.begin(), v.c.end()}; }

RootSubsystem make(int n, std::vector<LatticeVector> roots) {
    RootSubsystem s;
    s.ambient_n = n;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    s.roots = std::move(roots);
    s.type = dynkin_type(s.roots);
    return s;
}

RootSubsystem make(const RootTable& T, const Bits& b) {
    std::vector<LatticeVector> r;
    for (int i = 0; i < T.npos; ++i)
        if (b[i]) r.push_back(T.all[i]);
    return make(T.n, r);
}

std::string join_types(std::vector<std::pair<char, int>> parts) {
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (auto& [ch, k] : parts) {
        if (!out.empty()) out += 'x';
        out += ch;
        out += std::to_string(k);
    }
    return out;
}

struct BitsLess {
    bool operator()(const Bits& a, const Bits& b) const {
        for (int i = 0; i < 128; ++i)
            if (a[i] != b[i]) return b[i];
        return false;
    }
};
using BitsSet = std::set<Bits, BitsLess>;

std::vector<RootSubsystem> to_subsystems(const RootTable& T, const BitsSet& s) {
    std::vector<RootSubsystem> out;
    for (const auto& b : s) out.push_back(make(T, b));
    std::sort(out.begin(), out.end());
    return out;
}

BitsSet a2_bits(const RootTable& T) {
    BitsSet out;
    for (int i = 0; i < T.npos; ++i)
        for (int j = i + 1; j < T.npos; ++j)
            if (T.pair[i][j] != 0) out.insert(closure_bits(T, {i, j}));
    return out;
}

BitsSet a3_bits(const RootTable& T) {
    BitsSet out;
    for (int i = 0; i < T.npos; ++i)
        for (int j = 0; j < T.npos; ++j) {
            if (i == j || T.pair[i][j] == 0) continue;
            for (int k = i + 1; k < T.npos; ++k)
                if (k != j && T.pair[j][k] != 0 && T.pair[i][k] == 0) out.insert(closure_bits(T, {i, j, k}));
        }
    return out;
}

BitsSet a3a3_bits(const RootTable& T) {
    auto a3 = a3_bits(T);
    std::vector<Bits> v(a3.begin(), a3.end());
    BitsSet out;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (orthogonal_bits(T, v[i], v[j])) out.insert(v[i] | v[j]);
    return out;
}

BitsSet a7_bits(const RootTable& T) {
    // Every A7 contains an A3xA3 (drop the middle node); adding one root joins the two halves.
    BitsSet out;
    for (const auto& p : a3a3_bits(T))
        for (int r = 0; r < T.npos; ++r) {
            if (p[r]) continue;
            std::vector<int> g{r};
            for (int i = 0; i < T.npos; ++i)
                if (p[i]) g.push_back(i);
            Bits c = closure_bits(T, g);
            if (c.count() == 28 && make(T, c).type == "A7") out.insert(c);
        }
    return out;
}

BitsSet a2_cubed_bits(const RootTable& T) {
    auto a2 = a2_bits(T);
    std::vector<Bits> v(a2.begin(), a2.end());
    BitsSet out;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (!orthogonal_bits(T, v[i], v[j])) continue;
            for (std::size_t k = j + 1; k < v.size(); ++k)
                if (orthogonal_bits(T, v[i], v[k]) && orthogonal_bits(T, v[j], v[k])) out.insert(v[i] | v[j] | v[k]);
        }
    return out;
}

void orthogonal_tuples(const RootTable& T, std::size_t size, std::vector<int>& cur, int start, BitsSet& out) {
    if (cur.size() == size) {
        Bits b;
        for (int i : cur) b[i] = true;
        out.insert(b);
        return;
    }
    for (int i = start; i < T.npos; ++i) {
        bool ok = true;
        for (int j : cur) ok = ok && T.pair[i][j] == 0;
        if (!ok) continue;
        cur.push_back(i);
        orthogonal_tuples(T, size, cur, i + 1, out);
        cur.pop_back();
    }
}

BitsSet d4_bits(const RootTable& T) {
    BitsSet out;
    // D4 = closure of a central root and three pairwise orthogonal neighbours
    for (int c = 0; c < T.npos; ++c) {
        std::vector<int> nb;
        for (int r = 0; r < T.npos; ++r)
            if (T.pair[r][c] != 0 && r != c) nb.push_back(r);
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                if (T.pair[nb[a]][nb[b]] != 0) continue;
                for (std::size_t d = b + 1; d < nb.size(); ++d) {
                    if (T.pair[nb[a]][nb[d]] != 0 || T.pair[nb[b]][nb[d]] != 0) continue;
                    Bits cl = closure_bits(T, {c, nb[a], nb[b], nb[d]});
                    if (cl.count() == 12) out.insert(cl);
                }
            }
    }
    return out;
}

}  // namespace

std::size_t RootSubsystem::rank() const { return simple_roots(roots).size(); }

bool RootSubsystem::has(const LatticeVector& r) const {
    return std::binary_search(roots.begin(), roots.end(), positive_rep(r));
}

LatticeVector positive_rep(const LatticeVector& r) { return is_positive(r) ? r : -r; }

RootSubsystem closure(int ambient_n, const std::vector<LatticeVector>& generators) {
    std::vector<int> g;
    for (const auto& x : generators) {
        if (x.n != ambient_n || !is_root(x)) throw DomainError("closure generator is not a root: " + x.text());
    }
    const RootTable& T = table(ambient_n);
    for (const auto& x : generators) g.push_back(T.find(x));
    return make(T, closure_bits(T, g));
}

RootSubsystem span_closure(int ambient_n, const std::vector<LatticeVector>& generators) {
    std::vector<std::vector<long long>> rows;
    for (const auto& g : generators) {
        if (g.n != ambient_n || !is_root(g)) throw DomainError("span_closure generator is not a root: " + g.text());
        rows.push_back(as_row(g));
    }
    int base = integer_rank(rows);
    std::vector<LatticeVector> out;
    for (const auto& r : enumerate_roots(ambient_n)) {
        rows.push_back(as_row(r));
        if (integer_rank(rows) == base) out.push_back(r);
        rows.pop_back();
    }
    return make(ambient_n, out);
}

std::vector<LatticeVector> simple_roots(const std::vector<LatticeVector>& pos) {
    std::set<LatticeVector> s(pos.begin(), pos.end());
    std::vector<LatticeVector> out;
    for (const auto& r : pos) {
        bool decomposable = false;
        for (const auto& a : pos) {
            if (a == r) continue;
            if (s.count(r - a)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) out.push_back(r);
    }
    return out;
}

std::string dynkin_type(const std::vector<LatticeVector>& pos) {
    if (pos.empty()) return "";
    auto simple = simple_roots(pos);
    int k = (int)simple.size();
    std::vector<std::vector<int>> adj(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int p = pairing(simple[i], simple[j]);
            if (p == 0) continue;
            if (p != 1 && p != -1) throw DomainError("non simply-laced Cartan entry in subsystem");
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    std::vector<int> comp(k, -1);
    std::vector<std::pair<char, int>> parts;
    for (int s = 0; s < k; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members{s};
        comp[s] = s;
        for (std::size_t q = 0; q < members.size(); ++q)
            for (int t : adj[members[q]])
                if (comp[t] < 0) {
                    comp[t] = s;
                    members.push_back(t);
                }
        int v = (int)members.size(), edges = 0, branch = -1;
        for (int m : members) {
            edges += (int)adj[m].size();
            if (adj[m].size() >= 3) {
                if (branch >= 0 || adj[m].size() > 3) throw DomainError("unclassifiable Dynkin component");
                branch = m;
            }
        }
        edges /= 2;
        if (edges != v - 1) throw DomainError("Dynkin component is not a tree");
        if (branch < 0) {
            parts.push_back({'A', v});
            continue;
        }
        // arm lengths from the branch node
        std::vector<int> arms;
        for (int start : adj[branch]) {
            int len = 1, prev = branch, cur = start;
            while (true) {
                int nxt = -1;
                for (int t : adj[cur])
                    if (t != prev) nxt = t;
                if (nxt < 0) break;
                prev = cur;
                cur = nxt;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1)
            parts.push_back({'D', v});
        else if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4)
            parts.push_back({'E', v});
        else
            throw DomainError("unclassifiable Dynkin component");
    }
    // ensure the closure really has the root count of the claimed type
    std::size_t expect = 0;
    for (auto& [ch, r] : parts) {
        if (ch == 'A') expect += (std::size_t)r * (r + 1) / 2;
        if (ch == 'D') expect += (std::size_t)r * (r - 1);
        if (ch == 'E') expect += r == 6 ? 36 : r == 7 ? 63 : 120;
    }
    if (expect != pos.size()) throw DomainError("root set is not closed (count mismatch for its Dynkin type)");
    return join_types(parts);
}

std::string normalize_type_label(const std::string& t) {
    static const std::map<std::string, std::string> alias = {
        {"D2", "D2"},         {"A1", "A1"},         {"A2", "A2"},     {"A2^3", "A2xA2xA2"},
        {"A2xA2xA2", "A2xA2xA2"}, {"3A2", "A2xA2xA2"}, {"A3^2", "A3xA3"}, {"A3xA3", "A3xA3"},
        {"2A3", "A3xA3"},     {"A7", "A7"},         {"2A1", "2A1"},   {"3A1", "3A1"},
        {"4A1", "4A1"},       {"D4", "D4"},         {"A3", "A3"},
    };
    auto it = alias.find(t);
    if (it == alias.end()) throw DomainError("unsupported subsystem type '" + t + "'");
    return it->second;
}

namespace {

std::vector<RootSubsystem> enumerate_uncached(int n, const std::string& t) {
    auto bad = [&]() { return DomainError("unsupported (n, type) pair (" + std::to_string(n) + ", " + t + ")"); };
    if (n < 5 || n > 7) throw bad();
    const RootTable& T = table(n);
    if (t == "D2") {
        if (n != 5) throw bad();
        BitsSet pairs;
        std::vector<int> cur;
        orthogonal_tuples(T, 2, cur, 0, pairs);
        std::vector<RootSubsystem> out;
        for (auto& p : to_subsystems(T, pairs))
            if (orthogonal_complement(p).type == "A3") {
                p.type = "D2";
                out.push_back(p);
            }
        return out;
    }
    if (t == "A1") {
        if (n != 6 && n != 7) throw bad();
        std::vector<RootSubsystem> out;
        for (int i = 0; i < T.npos; ++i) out.push_back(make(n, {T.all[i]}));
        return out;
    }
    if (t == "A2") {
        if (n != 7) throw bad();
        return to_subsystems(T, a2_bits(T));
    }
    if (t == "A3") return to_subsystems(T, a3_bits(T));
    if (t == "A2xA2xA2") {
        if (n != 6) throw bad();
        return to_subsystems(T, a2_cubed_bits(T));
    }
    if (t == "A3xA3") {
        if (n != 7) throw bad();
        return to_subsystems(T, a3a3_bits(T));
    }
    if (t == "A7") {
        if (n != 7) throw bad();
        return to_subsystems(T, a7_bits(T));
    }
    if (t == "2A1" || t == "3A1" || t == "4A1") {
        if (n != 6) throw bad();
        BitsSet tuples;
        std::vector<int> cur;
        orthogonal_tuples(T, (std::size_t)(t[0] - '0'), cur, 0, tuples);
        return to_subsystems(T, tuples);
    }
    if (t == "D4") {
        if (n != 7) throw bad();
        return to_subsystems(T, d4_bits(T));
    }
    throw bad();
}

}  // namespace

std::vector<RootSubsystem> enumerate_vertex_subsystems(int n, const std::string& type) {
    static std::mutex mu;
    static std::map<std::pair<int, std::string>, std::vector<RootSubsystem>> cache;
    std::string t = normalize_type_label(type);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, t});
        if (it != cache.end()) return it->second;
    }
    auto out = enumerate_uncached(n, t);
    std::lock_guard<std::mutex> lock(mu);
    cache[{n, t}] = out;
    return out;
}

bool are_orthogonal(const RootSubsystem& a, const RootSubsystem& b) {
    check_same(a, b);
    for (const auto& x : a.roots)
        for (const auto& y : b.roots)
            if (pairing(x, y) != 0) return false;
    return true;
}

bool are_disjoint(const RootSubsystem& a, const RootSubsystem& b) {
    check_same(a, b);
    for (const auto& x : a.roots)
        if (b.has(x)) return false;
    return true;
}

bool contains(const RootSubsystem& big, const RootSubsystem& small) {
    check_same(big, small);
    return std::includes(big.roots.begin(), big.roots.end(), small.roots.begin(), small.roots.end());
}

RootSubsystem orthogonal_complement(const RootSubsystem& s) { return make(table(s.ambient_n), orthogonal_mask(s)); }

LatticeVector drop_last(const LatticeVector& v) {
    if (v.c.back() != 0) throw DomainError("vector has a nonzero last coefficient");
    return LatticeVector(v.n - 1, std::vector<int>(v.c.begin(), v.c.end() - 1));
}

LatticeVector extend(const LatticeVector& v, int n) {
    std::vector<int> c = v.c;
    c.resize(n + 1, 0);
    return LatticeVector(n, c);
}

Restriction restrict_and_classify(const RootSubsystem& s, int m) {
    if (m != s.ambient_n - 1) throw DomainError("restriction must drop exactly one exceptional class");
    std::vector<LatticeVector> kept;
    for (const auto& r : s.roots)
        if (r.c.back() == 0) kept.push_back(drop_last(r));
    Restriction out;
    out.sub = make(m, kept);
    out.type = out.sub.type;
    return out;
}

LatticeVector reflect(const LatticeVector& v, const LatticeVector& alpha) {
    if (!is_root(alpha)) throw DomainError("reflection in a non-root " + alpha.text());
    return v + alpha * pairing(v, alpha);
}

RootSubsystem reflect(const RootSubsystem& s, const LatticeVector& alpha) {
    std::vector<LatticeVector> out;
    for (const auto& r : s.roots) out.push_back(positive_rep(reflect(r, alpha)));
    RootSubsystem t = make(s.ambient_n, out);
    if (s.type == "D2") t.type = "D2";
    return t;
}

std::vector<LatticeVector> weyl_generators(int n) {
    std::vector<LatticeVector> g;
    for (int i = 1; i < n; ++i) {
        LatticeVector v(n);
        v.c[i] = 1;
        v.c[i + 1] = -1;
        g.push_back(v);
    }
    LatticeVector v(n);
    v.c[0] = 1;
    v.c[1] = v.c[2] = v.c[3] = -1;
    g.push_back(v);
    return g;
}

std::vector<LatticeVector> horizontal_roots(int n) {
    std::vector<LatticeVector> out;
    for (const auto& r : enumerate_roots(n))
        if (r.c.back() != 0) out.push_back(r);
    return out;
}

LatticeVector line_of_horizontal_root(const LatticeVector& r) {
    if (r.c.back() != -1) throw DomainError("not a positive horizontal root: " + r.text());
    LatticeVector v = r;
    v.c.back() = 0;
    return drop_last(v);
}

RootMask mask_of(const RootSubsystem& s) { return bits_of(table(s.ambient_n), s.roots); }

RootMask mask_of(int n, const LatticeVector& root) {
    const RootTable& T = table(n);
    RootMask m;
    m[T.pos(T.find(root))] = true;
    return m;
}

RootMask orthogonal_mask(const RootSubsystem& s) {
    const RootTable& T = table(s.ambient_n);
    Bits in = bits_of(T, s.roots), out;
    for (int r = 0; r < T.npos; ++r) {
        bool orth = true;
        for (int i = 0; i < T.npos && orth; ++i)
            if (in[i]) orth = T.pair[r][i] == 0;
        out[r] = orth;
    }
    return out;
}

int positive_root_count(int n) { return table(n).npos; }

const LatticeVector& positive_root(int n, int index) { return table(n).all.at(index); }

RootSubsystem subsystem_from_labels(int n, const std::vector<std::string>& labels) {
    std::vector<LatticeVector> g;
    for (const auto& l : labels) g.push_back(root_from_label(n, l));
    return closure(n, g);
}

}  // namespace dpw
