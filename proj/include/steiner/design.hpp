#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "steiner/bitset.hpp"
#include "steiner/errors.hpp"

namespace steiner {

/// Outcome of a Steiner pair-coverage check. On failure, carries the first
/// failing pair in lexicographic order together with its coverage count.
struct SteinerReport {
    bool ok = false;
    int x = -1;
    int y = -1;
    int coverage = -1;

    std::string describe() const {
        if (ok) return "ok";
        return "pair {" + std::to_string(x) + "," + std::to_string(y) + "} covered " +
               std::to_string(coverage) + " times";
    }
};

/// A block design as a full incidence structure: sorted blocks, an O(1)
/// unordered-pair -> block table and a packed block-intersection table.
/// Immutable after construction.
class Design {
public:
    Design(int v, int k, std::vector<std::vector<int>> blocks) : v_(v), k_(k) {
        if (v < 2 || k < 2) throw BuildError("need v >= 2 and k >= 2");
        for (auto& b : blocks) {
            if (static_cast<int>(b.size()) != k) throw BuildError("block has wrong size");
            std::sort(b.begin(), b.end());
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (b[i] < 0 || b[i] >= v) throw BuildError("block point out of range");
                if (i > 0 && b[i] == b[i - 1]) throw BuildError("repeated point in block");
            }
        }
        std::sort(blocks.begin(), blocks.end());
        for (std::size_t i = 1; i < blocks.size(); ++i)
            if (blocks[i] == blocks[i - 1]) throw BuildError("duplicate block");
        blocks_ = std::move(blocks);

        pair_block_.assign(static_cast<std::size_t>(v) * v, -1);
        pair_count_.assign(static_cast<std::size_t>(v) * v, 0);
        point_blocks_.assign(v, {});
        for (int bi = 0; bi < b(); ++bi) {
            const auto& blk = blocks_[bi];
            for (int p : blk) point_blocks_[p].push_back(bi);
            for (std::size_t i = 0; i < blk.size(); ++i)
                for (std::size_t j = i + 1; j < blk.size(); ++j) {
                    std::size_t xy = idx(blk[i], blk[j]);
                    std::size_t yx = idx(blk[j], blk[i]);
                    if (pair_block_[xy] < 0) { pair_block_[xy] = bi; pair_block_[yx] = bi; }
                    ++pair_count_[xy];
                    ++pair_count_[yx];
                }
        }

        meets_.assign(b(), Bitset(b()));
        for (int p = 0; p < v; ++p)
            for (std::size_t i = 0; i < point_blocks_[p].size(); ++i)
                for (std::size_t j = 0; j < point_blocks_[p].size(); ++j)
                    meets_[point_blocks_[p][i]].set(point_blocks_[p][j]);
    }

    int v() const { return v_; }
    int k() const { return k_; }
    int b() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& blocks_through(int p) const { return point_blocks_[p]; }

    /// Block id covering the unordered pair {x, y}, or -1.
    int pair_block(int x, int y) const { return pair_block_[idx(x, y)]; }

    bool blocks_meet(int bi, int bj) const { return meets_[bi].test(bj); }
    const Bitset& meet_row(int bi) const { return meets_[bi]; }

    /// True iff every unordered pair of distinct points lies in exactly one block.
    SteinerReport is_steiner() const {
        for (int x = 0; x < v_; ++x)
            for (int y = x + 1; y < v_; ++y)
                if (pair_count_[idx(x, y)] != 1)
                    return {false, x, y, pair_count_[idx(x, y)]};
        return {true, -1, -1, -1};
    }

    /// The unique block through two distinct points of a verified Steiner design.
    int line_through(int x, int y) const {
        if (x == y) throw BuildError("line_through needs two distinct points");
        int bi = pair_block(x, y);
        if (bi < 0) throw BuildError("pair not covered by any block");
        return bi;
    }

    /// Blocks-per-point count r; meaningful for Steiner designs.
    int replication(int p) const { return static_cast<int>(point_blocks_[p].size()); }

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(x) * v_ + y;
    }

    int v_;
    int k_;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> pair_block_;
    std::vector<int> pair_count_;
    std::vector<std::vector<int>> point_blocks_;
    std::vector<Bitset> meets_;
};

/// Applies a point relabeling and rebuilds the design.
inline Design relabel(const Design& d, const std::vector<int>& perm) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(d.blocks().size());
    for (const auto& blk : d.blocks()) {
        std::vector<int> nb(blk.size());
        for (std::size_t i = 0; i < blk.size(); ++i) nb[i] = perm[blk[i]];
        blocks.push_back(std::move(nb));
    }
    return Design(d.v(), d.k(), std::move(blocks));
}

} // namespace steiner
