#pragma once

#include <map>
#include <string>
#include <thread>
#include <vector>

#include "steiner/design.hpp"
#include "steiner/errors.hpp"

namespace steiner {

/// Frequency map of the hyperbolic invariant: key -> number of quadruples.
struct Fingerprint {
    std::map<int, long long> freq;

    long long total() const {
        long long t = 0;
        for (auto& [k, c] : freq) t += c;
        return t;
    }

    /// "{key=count, ...}" with keys ascending and zero counts omitted.
    std::string render() const {
        std::string s = "{";
        bool first = true;
        for (auto& [k, c] : freq) {
            if (c == 0) continue;
            if (!first) s += ", ";
            s += std::to_string(k) + "=" + std::to_string(c);
            first = false;
        }
        s += "}";
        return s;
    }

    bool operator==(const Fingerprint& o) const = default;
};

/// Hyperbolic-frequency invariant of a Steiner design with k >= 3.
///
/// Iterates ordered triples (o, x, y) with x != o and y off the line ox, and
/// each point p on line xy other than x, y. The key of a quadruple is the
/// number of points u on line oy whose line pu is disjoint from line ox.
/// The outer loop may be split across threads; the merged result does not
/// depend on the split.
inline Fingerprint hyperbolic_fingerprint(const Design& d, int jobs = 1) {
    if (d.k() < 3) throw BuildError("fingerprint needs block size >= 3");
    if (auto rep = d.is_steiner(); !rep.ok)
        throw BuildError("fingerprint needs a Steiner design: " + rep.describe());

    const int v = d.v();
    const int k = d.k();
    const int nb = d.b();

    // per-block membership bitmaps for the y-not-on-ox test
    std::vector<Bitset> member(nb, Bitset(v));
    for (int bi = 0; bi < nb; ++bi)
        for (int p : d.blocks()[bi]) member[bi].set(p);

    auto run_range = [&](int o_begin, int o_end, std::vector<long long>& counts) {
        for (int o = o_begin; o < o_end; ++o) {
            for (int x = 0; x < v; ++x) {
                if (x == o) continue;
                const int lox = d.pair_block(o, x);
                const Bitset& lox_member = member[lox];
                const Bitset& lox_meets = d.meet_row(lox);
                for (int y = 0; y < v; ++y) {
                    if (y == o || lox_member.test(y)) continue;
                    const int loy = d.pair_block(o, y);
                    const int lxy = d.pair_block(x, y);
                    const auto& loy_points = d.blocks()[loy];
                    for (int p : d.blocks()[lxy]) {
                        if (p == x || p == y) continue;
                        int key = 0;
                        for (int u : loy_points)
                            if (!lox_meets.test(d.pair_block(p, u))) ++key;
                        ++counts[key];
                    }
                }
            }
        }
    };

    std::vector<long long> counts(k, 0);
    if (jobs <= 1 || v < 2 * jobs) {
        run_range(0, v, counts);
    } else {
        std::vector<std::vector<long long>> local(jobs, std::vector<long long>(k, 0));
        std::vector<std::thread> threads;
        const int chunk = (v + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j)
            threads.emplace_back(run_range, std::min(j * chunk, v),
                                 std::min((j + 1) * chunk, v), std::ref(local[j]));
        for (auto& t : threads) t.join();
        for (auto& lc : local)
            for (int i = 0; i < k; ++i) counts[i] += lc[i];
    }

    Fingerprint fp;
    for (int key = 0; key < k; ++key)
        if (counts[key] > 0) fp.freq[key] = counts[key];
    return fp;
}

} // namespace steiner
