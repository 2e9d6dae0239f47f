#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "steiner/errors.hpp"

namespace steiner {

using Permutation = std::vector<int>;

inline bool is_permutation(const Permutation& p, int degree) {
    if (static_cast<int>(p.size()) != degree) return false;
    std::vector<char> seen(degree, 0);
    for (int x : p) {
        if (x < 0 || x >= degree || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

inline Permutation compose(const Permutation& a, const Permutation& b) {
    // (a * b)(x) = a(b(x))
    Permutation r(b.size());
    for (std::size_t x = 0; x < b.size(); ++x) r[x] = a[b[x]];
    return r;
}

inline Permutation inverse(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
    return r;
}

/// A permutation group on [0, degree) given by explicit generators.
struct PermutationGroup {
    int degree = 0;
    std::vector<Permutation> generators;

    PermutationGroup(int deg, std::vector<Permutation> gens)
        : degree(deg), generators(std::move(gens)) {
        for (const auto& g : generators)
            if (!is_permutation(g, degree))
                throw BuildError("generator is not a permutation of [0, degree)");
    }
};

/// Orbit of each base block under the generated group, as a deduplicated,
/// sorted list of sorted blocks.
inline std::vector<std::vector<int>> develop_permutation(
    const PermutationGroup& group, const std::vector<std::vector<int>>& base_blocks) {
    std::set<std::vector<int>> out;
    for (const auto& base : base_blocks) {
        std::vector<int> b = base;
        for (int x : b)
            if (x < 0 || x >= group.degree) throw BuildError("block point out of range");
        std::sort(b.begin(), b.end());
        std::vector<std::vector<int>> work{b};
        out.insert(b);
        while (!work.empty()) {
            std::vector<int> cur = work.back();
            work.pop_back();
            for (const auto& g : group.generators) {
                std::vector<int> img(cur.size());
                for (std::size_t i = 0; i < cur.size(); ++i) img[i] = g[cur[i]];
                std::sort(img.begin(), img.end());
                if (out.insert(img).second) work.push_back(img);
            }
        }
    }
    return {out.begin(), out.end()};
}

/// Exact order of the group generated by the given permutations, by breadth-first
/// closure. Capped to keep pathological inputs from exhausting memory.
inline long long permutation_group_order(int degree, const std::vector<Permutation>& gens,
                                         long long cap = 2'000'000) {
    std::set<Permutation> elems;
    Permutation id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;
    elems.insert(id);
    std::vector<Permutation> work{id};
    while (!work.empty()) {
        Permutation cur = work.back();
        work.pop_back();
        for (const auto& g : gens) {
            if (!is_permutation(g, degree)) throw BuildError("bad permutation generator");
            Permutation nxt = compose(g, cur);
            if (elems.insert(nxt).second) {
                if (static_cast<long long>(elems.size()) > cap)
                    throw CapacityError("permutation group closure exceeds cap");
                work.push_back(std::move(nxt));
            }
        }
    }
    return static_cast<long long>(elems.size());
}

} // namespace steiner
