#include "dpw/strata.hpp"

#include <algorithm>
#include <functional>

namespace dpw {

std::string StratumShape::label() const {
    std::string s;
    for (int k : sizes) s += k == 1 ? std::string("a") : "a" + std::to_string(k);
    if (b) s += 'b';
    return s;
}

std::string StratumLabel::type_string() const {
    StratumShape sh;
    for (const auto& f : flag) sh.sizes.push_back((int)f.size());
    sh.b = b_part.has_value();
    return sh.label();
}

StratumShape parse_stratum_type(const std::string& label) {
    StratumShape sh;
    std::size_t i = 0;
    auto bad = [&]() { return DomainError("malformed stratum label '" + label + "'"); };
    while (i < label.size() && label[i] == 'a') {
        int k = 1;
        if (i + 1 < label.size() && label[i + 1] >= '2' && label[i + 1] <= '4') {
            k = label[i + 1] - '0';
            ++i;
        }
        if (!sh.sizes.empty() && k <= sh.sizes.back()) throw bad();
        sh.sizes.push_back(k);
        ++i;
    }
    if (i < label.size() && label[i] == 'b') {
        sh.b = true;
        ++i;
    }
    if (i != label.size() || (sh.sizes.empty() && !sh.b)) throw bad();
    return sh;
}

std::vector<StratumLabel> enumerate_strata(const std::string& label) {
    StratumShape sh = parse_stratum_type(label);
    std::vector<StratumLabel> out;
    auto a2cubed = enumerate_vertex_subsystems(6, "A2xA2xA2");
    auto with_b = [&](StratumLabel base, const std::vector<LatticeVector>& top) {
        if (!sh.b) {
            out.push_back(std::move(base));
            return;
        }
        for (const auto& b : a2cubed) {
            bool ok = true;
            for (const auto& r : top) ok = ok && b.has(r);
            if (!ok) continue;
            StratumLabel s = base;
            s.b_part = b;
            out.push_back(std::move(s));
        }
    };
    if (sh.sizes.empty()) {
        with_b(StratumLabel{}, {});
        return out;
    }
    int top = sh.sizes.back();
    auto tops = enumerate_vertex_subsystems(6, top == 1 ? "A1" : std::to_string(top) + "A1");
    for (const auto& t : tops) {
        const auto& roots = t.roots;
        // choose the chain from the top down: each element is a subset of the next
        std::vector<std::vector<LatticeVector>> chain(sh.sizes.size());
        chain.back() = roots;
        std::function<void(int)> rec = [&](int level) {
            if (level < 0) {
                StratumLabel s;
                s.flag = chain;
                with_b(s, roots);
                return;
            }
            const auto& above = chain[level + 1];
            int k = sh.sizes[level];
            std::vector<int> pick(above.size(), 0);
            std::fill(pick.end() - k, pick.end(), 1);
            do {
                std::vector<LatticeVector> sub;
                for (std::size_t i = 0; i < above.size(); ++i)
                    if (pick[i]) sub.push_back(above[i]);
                chain[level] = sub;
                rec(level - 1);
            } while (std::next_permutation(pick.begin(), pick.end()));
        };
        rec((int)sh.sizes.size() - 2);
    }
    return out;
}

std::size_t count_strata(const std::string& label) { return enumerate_strata(label).size(); }

std::vector<CensusRow> strata_census() {
    std::vector<CensusRow> rows;
    for (int mask = 0; mask < 16; ++mask)
        for (int b = 0; b < 2; ++b) {
            StratumShape sh;
            for (int k = 1; k <= 4; ++k)
                if (mask & (1 << (k - 1))) sh.sizes.push_back(k);
            sh.b = b;
            if (sh.sizes.empty() && !sh.b) continue;
            std::size_t n = count_strata(sh.label());
            bool dep = sh.b && !sh.sizes.empty() && sh.sizes.back() >= 3;
            rows.push_back({sh.label(), n, dep});
        }
    std::sort(rows.begin(), rows.end(), [](const CensusRow& x, const CensusRow& y) {
        return std::make_pair(x.type.size(), x.type) < std::make_pair(y.type.size(), y.type);
    });
    return rows;
}

std::vector<std::vector<LatticeVector>> enumerate_eckardt_triples() {
    auto H = horizontal_roots(7);
    std::vector<std::vector<LatticeVector>> out;
    for (std::size_t i = 0; i < H.size(); ++i)
        for (std::size_t j = i + 1; j < H.size(); ++j) {
            if (pairing(H[i], H[j]) != 0) continue;
            for (std::size_t k = j + 1; k < H.size(); ++k) {
                if (pairing(H[i], H[k]) != 0 || pairing(H[j], H[k]) != 0) continue;
                auto s = closure(7, {H[i], H[j], H[k]});
                if (orthogonal_complement(s).type == "D4") out.push_back({H[i], H[j], H[k]});
            }
        }
    return out;
}

}  // namespace dpw
