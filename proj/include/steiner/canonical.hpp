#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "steiner/design.hpp"
#include "steiner/errors.hpp"
#include "steiner/fingerprint.hpp"
#include "steiner/perm.hpp"

namespace steiner {

inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex16(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 15];
        h >>= 4;
    }
    return s;
}

/// Bipartite point/block incidence graph. Vertices 0..v-1 are points,
/// v..v+b-1 are blocks. Blocks may be ragged (used by refine on raw input);
/// canonical certificates require a proper Design.
struct IncidenceGraph {
    int v = 0;
    std::vector<std::vector<int>> adj;  // over all v + b vertices

    IncidenceGraph(int points, const std::vector<std::vector<int>>& blocks) : v(points) {
        adj.resize(points + blocks.size());
        for (std::size_t bi = 0; bi < blocks.size(); ++bi)
            for (int p : blocks[bi]) {
                if (p < 0 || p >= points) throw BuildError("block point out of range");
                adj[p].push_back(points + static_cast<int>(bi));
                adj[points + bi].push_back(p);
            }
    }

    explicit IncidenceGraph(const Design& d) : IncidenceGraph(d.v(), d.blocks()) {}

    int n() const { return static_cast<int>(adj.size()); }
};

/// An ordered partition of the graph's vertices into cells. Cells are
/// contiguous segments of `seq`; a position starting a cell is marked in
/// `start`. Point cells and block cells are never mixed.
class OrderedPartition {
public:
    OrderedPartition(const IncidenceGraph& g, const std::vector<std::vector<int>>& cells) {
        const int n = g.n();
        seq_.reserve(n);
        start_.assign(n, 0);
        pos_.assign(n, -1);
        cell_start_of_.assign(n, 0);
        for (const auto& cell : cells) {
            if (cell.empty()) throw BuildError("empty partition cell");
            bool points = cell.front() < g.v;
            int s = static_cast<int>(seq_.size());
            start_[s] = 1;
            for (int u : cell) {
                if (u < 0 || u >= n || pos_[u] >= 0) throw BuildError("bad partition");
                if ((u < g.v) != points) throw BuildError("partition cell mixes points and blocks");
                pos_[u] = static_cast<int>(seq_.size());
                cell_start_of_[seq_.size()] = s;
                seq_.push_back(u);
            }
        }
        if (static_cast<int>(seq_.size()) != n) throw BuildError("partition does not cover all vertices");
        num_cells_ = static_cast<int>(cells.size());
    }

    static OrderedPartition unit(const IncidenceGraph& g) {
        std::vector<int> pts(g.v), blks(g.n() - g.v);
        for (int i = 0; i < g.v; ++i) pts[i] = i;
        for (int i = g.v; i < g.n(); ++i) blks[i - g.v] = i;
        std::vector<std::vector<int>> cells;
        cells.push_back(std::move(pts));
        if (!blks.empty()) cells.push_back(std::move(blks));
        return OrderedPartition(g, cells);
    }

    int n() const { return static_cast<int>(seq_.size()); }
    int num_cells() const { return num_cells_; }
    bool discrete() const { return num_cells_ == n(); }
    int vertex_at(int position) const { return seq_[position]; }
    int position_of(int vertex) const { return pos_[vertex]; }
    int cell_start(int position) const { return cell_start_of_[position]; }

    int cell_length(int s) const {
        int e = s + 1;
        while (e < n() && !start_[e]) ++e;
        return e - s;
    }

    std::vector<std::vector<int>> cells() const {
        std::vector<std::vector<int>> out;
        for (int p = 0; p < n();) {
            int len = cell_length(p);
            out.emplace_back(seq_.begin() + p, seq_.begin() + p + len);
            p += len;
        }
        return out;
    }

    /// Coarsest equitable refinement via splitter worklist. Every split event
    /// is folded into the returned invariant hash; the hash depends only on
    /// the isomorphism type of (graph, partition).
    std::uint64_t refine(const IncidenceGraph& g, std::deque<int> worklist) {
        std::uint64_t trace = 0xcbf29ce484222325ull;
        auto mix = [&trace](int x) { trace = fnv1a64(&x, sizeof(x), trace); };
        const int n = this->n();
        std::vector<int> cnt(n, 0);
        std::vector<int> touched;
        while (!worklist.empty() && !discrete()) {
            int s = worklist.front();
            worklist.pop_front();
            int slen = cell_length(s);
            touched.clear();
            for (int i = s; i < s + slen; ++i)
                for (int w : g.adj[seq_[i]]) {
                    if (cnt[w] == 0) touched.push_back(w);
                    ++cnt[w];
                }
            // affected cells, ascending by start position
            std::vector<int> affected;
            for (int w : touched) {
                int cs = cell_start_of_[pos_[w]];
                if (cell_length(cs) > 1) affected.push_back(cs);
            }
            std::sort(affected.begin(), affected.end());
            affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
            for (int cs : affected) {
                int clen = cell_length(cs);
                // stable sort members by neighbor count in the splitter
                std::stable_sort(seq_.begin() + cs, seq_.begin() + cs + clen,
                                 [&](int a, int b) { return cnt[a] < cnt[b]; });
                bool split = false;
                for (int i = cs; i < cs + clen; ++i) {
                    if (i > cs && cnt[seq_[i]] != cnt[seq_[i - 1]]) {
                        if (!start_[i]) {
                            start_[i] = 1;
                            ++num_cells_;
                            worklist.push_back(i);
                            split = true;
                        }
                    }
                }
                if (split) {
                    mix(cs);
                    worklist.push_back(cs);
                    int sub = cs;
                    for (int i = cs; i < cs + clen; ++i) {
                        if (start_[i]) sub = i;
                        pos_[seq_[i]] = i;
                        cell_start_of_[i] = sub;
                        if (i == sub) {
                            mix(cnt[seq_[i]]);
                        }
                    }
                    // subcell sizes
                    for (int i = cs; i < cs + clen;) {
                        int l = cell_length(i);
                        mix(l);
                        i += l;
                    }
                } else {
                    // counts may still have reordered equal-count members; restore pos
                    for (int i = cs; i < cs + clen; ++i) pos_[seq_[i]] = i;
                }
            }
            for (int w : touched) cnt[w] = 0;
        }
        // final cell-size sequence
        for (int p = 0; p < n;) {
            int l = cell_length(p);
            mix(l);
            p += l;
        }
        return trace;
    }

    std::uint64_t refine_all(const IncidenceGraph& g) {
        std::deque<int> wl;
        for (int p = 0; p < n();) {
            wl.push_back(p);
            p += cell_length(p);
        }
        return refine(g, wl);
    }

    /// Moves `vertex` to the front of its (non-singleton) cell and makes it a
    /// singleton cell. Returns the start positions to seed refinement with.
    std::pair<int, int> individualize(int vertex) {
        int p = pos_[vertex];
        int cs = cell_start_of_[p];
        std::swap(seq_[cs], seq_[p]);
        pos_[seq_[p]] = p;
        pos_[seq_[cs]] = cs;
        start_[cs + 1] = 1;
        ++num_cells_;
        for (int i = cs + 1; i < cs + 1 + cell_length(cs + 1); ++i) cell_start_of_[i] = cs + 1;
        cell_start_of_[cs] = cs;
        return {cs, cs + 1};
    }

private:
    std::vector<int> seq_;
    std::vector<char> start_;
    std::vector<int> pos_;
    std::vector<int> cell_start_of_;
    int num_cells_ = 0;
};

/// Coarsest equitable refinement of the given cells (point cells and block
/// cells listed separately; block vertex ids are v + block index).
inline std::vector<std::vector<int>> refine_partition(const IncidenceGraph& g,
                                                      const std::vector<std::vector<int>>& cells) {
    OrderedPartition p(g, cells);
    p.refine_all(g);
    return p.cells();
}

/// Canonical certificate: incidence matrix bitstring under the canonical
/// labeling, its 64-bit digest, and the order of the automorphism group.
struct CanonicalCert {
    int v = 0;
    int b = 0;
    std::vector<std::uint64_t> bits;  // v*b bits, row-major, MSB-first per word
    std::uint64_t hash = 0;
    long long aut_order = 1;

    std::string hash_hex() const { return hex16(hash); }
    bool same_bits(const CanonicalCert& o) const {
        return v == o.v && b == o.b && bits == o.bits;
    }
};

namespace detail {

// Individualization-refinement search. The canonical leaf is the one with the
// lexicographically smallest (invariant trace, incidence bitstring) pair;
// branches whose trace exceeds the current best path are pruned. At the first
// branching level, cells already reachable from explored choices under the
// discovered automorphisms are skipped.
class CanonicalSearch {
public:
    explicit CanonicalSearch(const Design& d) : design_(d), graph_(d), v_(d.v()), b_(d.b()) {}

    CanonicalCert run() {
        OrderedPartition root = OrderedPartition::unit(graph_);
        std::uint64_t t = root.refine_all(graph_);
        descend(root, 0, t, true);
        CanonicalCert cert;
        cert.v = v_;
        cert.b = b_;
        cert.bits = best_bits_;
        cert.hash = fnv1a64(best_bits_.data(), best_bits_.size() * sizeof(std::uint64_t));
        std::vector<Permutation> gens(aut_gens_.begin(), aut_gens_.end());
        cert.aut_order = gens.empty() ? 1 : permutation_group_order(v_, gens);
        return cert;
    }

private:
    // Target: first largest non-singleton point cell, lowest start first.
    int target_cell(const OrderedPartition& p) const {
        int best = -1, best_len = 1;
        for (int q = 0; q < v_;) {
            int l = p.cell_length(q);
            if (l > best_len) { best = q; best_len = l; }
            q += l;
        }
        return best;
    }

    void descend(OrderedPartition& p, int depth, std::uint64_t trace, bool top) {
        if (static_cast<int>(path_trace_.size()) <= depth) path_trace_.resize(depth + 1);
        path_trace_[depth] = trace;

        // compare this node's trace against the best leaf's path; cmp_depth_
        // below INT_MAX means the current path is already strictly better
        if (have_best_ && cmp_depth_ > depth) {
            if (depth >= static_cast<int>(best_trace_.size()))
                return;  // equal prefix but deeper than the best leaf: worse
            if (trace < best_trace_[depth]) cmp_depth_ = depth;
            else if (trace > best_trace_[depth]) return;  // prune
        }

        if (p.discrete()) {
            handle_leaf(p, depth);
            return;
        }
        int cell = target_cell(p);
        if (cell < 0) {
            // point side discrete but blocks are not: cannot happen for
            // well-formed designs (distinct blocks separate under refinement)
            throw BuildError("refinement stalled with indiscrete block cells");
        }
        int clen = p.cell_length(cell);
        std::vector<int> choices;
        for (int i = cell; i < cell + clen; ++i) choices.push_back(p.vertex_at(i));
        std::sort(choices.begin(), choices.end());

        std::vector<int> explored;
        for (int w : choices) {
            if (top && in_explored_orbit(explored, w)) continue;
            OrderedPartition child = p;
            auto [a, bpos] = child.individualize(w);
            std::uint64_t t = child.refine(graph_, {a, bpos});
            std::uint64_t node_trace = fnv1a64(&t, sizeof(t), trace);
            descend(child, depth + 1, node_trace, false);
            if (top) explored.push_back(w);
        }
    }

    void handle_leaf(OrderedPartition& p, int depth) {
        bool better = !have_best_ || cmp_depth_ <= depth ||
                      depth + 1 < static_cast<int>(best_trace_.size());
        if (!better) {
            std::vector<std::uint64_t> bits = leaf_bits(p);
            if (bits > best_bits_) return;
            if (bits == best_bits_) {
                record_automorphism(p);
                return;
            }
            best_bits_ = std::move(bits);
        } else {
            best_bits_ = leaf_bits(p);
        }
        best_trace_.assign(path_trace_.begin(), path_trace_.begin() + depth + 1);
        best_leaf_points_.resize(v_);
        for (int i = 0; i < v_; ++i) best_leaf_points_[i] = p.vertex_at(i);
        have_best_ = true;
        cmp_depth_ = std::numeric_limits<int>::max();
    }

    std::vector<std::uint64_t> leaf_bits(const OrderedPartition& p) const {
        const std::size_t nbits = static_cast<std::size_t>(v_) * b_;
        std::vector<std::uint64_t> bits((nbits + 63) / 64, 0);
        for (int row = 0; row < v_; ++row) {
            int pt = p.vertex_at(row);
            for (int bi : design_.blocks_through(pt)) {
                int col = p.position_of(v_ + bi) - v_;
                std::size_t idx = static_cast<std::size_t>(row) * b_ + col;
                bits[idx >> 6] |= std::uint64_t(1) << (63 - (idx & 63));  // MSB-first
            }
        }
        return bits;
    }

    void record_automorphism(const OrderedPartition& leaf) {
        if (!have_best_) return;
        // sigma maps best leaf's point at canonical position i to this leaf's
        Permutation sigma(v_);
        for (int i = 0; i < v_; ++i) sigma[best_leaf_points_[i]] = leaf.vertex_at(i);
        bool identity = true;
        for (int i = 0; i < v_ && identity; ++i) identity = sigma[i] == i;
        if (identity) return;
        aut_gens_.insert(std::move(sigma));
    }

    bool in_explored_orbit(const std::vector<int>& explored, int w) const {
        if (explored.empty() || aut_gens_.empty()) return false;
        std::vector<char> seen(v_, 0);
        std::vector<int> work;
        for (int e : explored) {
            seen[e] = 1;
            work.push_back(e);
        }
        while (!work.empty()) {
            int x = work.back();
            work.pop_back();
            for (const auto& g : aut_gens_) {
                int y = g[x];
                if (!seen[y]) {
                    if (y == w) return true;
                    seen[y] = 1;
                    work.push_back(y);
                }
            }
        }
        return seen[w];
    }

    const Design& design_;
    IncidenceGraph graph_;
    int v_, b_;
    bool have_best_ = false;
    std::vector<std::uint64_t> path_trace_;
    std::vector<std::uint64_t> best_trace_;
    std::vector<std::uint64_t> best_bits_;
    std::vector<int> best_leaf_points_;
    std::set<Permutation> aut_gens_;
    int cmp_depth_ = std::numeric_limits<int>::max();
};

}  // namespace detail

/// Canonical certificate of a design's incidence structure. Guarded to the
/// practical block-count bound of the labeling search.
inline CanonicalCert canonical_cert(const Design& d) {
    if (d.b() > 1000) throw CapacityError("canonical labeling guarded to b <= 1000");
    detail::CanonicalSearch s(d);
    return s.run();
}

/// Isomorphism test with (v, k, b) and fingerprint fast paths.
inline bool isomorphic(const Design& a, const Design& b) {
    if (a.v() != b.v() || a.k() != b.k() || a.b() != b.b()) return false;
    if (a.k() >= 3 && a.is_steiner().ok && b.is_steiner().ok)
        if (!(hyperbolic_fingerprint(a) == hyperbolic_fingerprint(b))) return false;
    return canonical_cert(a).same_bits(canonical_cert(b));
}

} // namespace steiner
