#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "steiner/design.hpp"
#include "steiner/errors.hpp"
#include "steiner/group.hpp"

namespace steiner {

/// Canonical translate of a nonempty element set: the lexicographically
/// smallest (as a sorted index sequence) member of {b - x : x in b}.
/// Always contains 0; idempotent; invariant under translation of b.
inline std::vector<Element> normalize_block(const GroupSpec& g, const std::vector<Element>& b) {
    if (b.empty()) throw BuildError("block must be nonempty");
    std::vector<Element> best;
    std::vector<Element> cur(b.size());
    for (Element x : b) {
        for (std::size_t i = 0; i < b.size(); ++i) cur[i] = g.sub(b[i], x);
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) best = cur;
    }
    return best;
}

/// Outcome of difference-coverage validation. On failure, carries the first
/// over- or under-covered nonzero difference (by element index).
struct FamilyReport {
    bool ok = false;
    Element difference = -1;
    int coverage = -1;  // weighted coverage of that difference
    std::string detail;

    std::string describe() const {
        if (ok) return "ok";
        if (!detail.empty()) return detail;
        return "difference " + std::to_string(difference) + " covered " +
               std::to_string(coverage) + " times";
    }
};

/// A difference family over a finite abelian group: base blocks stored in
/// translation-normal form, sorted, with their translation stabilizers.
class DifferenceFamily {
public:
    DifferenceFamily(GroupSpec group, int k, std::vector<std::vector<Element>> blocks)
        : group_(std::move(group)), k_(k) {
        if (k < 2) throw BuildError("block size must be >= 2");
        if (k >= group_.order())
            throw BuildError("degenerate family: block size must be smaller than |G|");
        for (auto& b : blocks) {
            std::sort(b.begin(), b.end());
            if (static_cast<int>(b.size()) != k) throw BuildError("base block has wrong size");
            for (std::size_t i = 1; i < b.size(); ++i)
                if (b[i] == b[i - 1]) throw BuildError("repeated element in base block");
            b = normalize_block(group_, b);
        }
        std::sort(blocks.begin(), blocks.end());
        base_blocks_ = std::move(blocks);
        for (const auto& b : base_blocks_)
            stabilizers_.push_back(group_.block_stabilizer(b));
    }

    const GroupSpec& group() const { return group_; }
    int k() const { return k_; }
    const std::vector<std::vector<Element>>& base_blocks() const { return base_blocks_; }
    const std::vector<std::vector<Element>>& stabilizers() const { return stabilizers_; }

    /// Checks that every nonzero group element arises as a block difference
    /// with total weight exactly 1, where a block with stabilizer H counts
    /// each of its differences with weight 1/|H|.
    FamilyReport validate() const {
        const int n = group_.order();
        std::vector<int> total(n, 0);
        std::vector<int> counts(n, 0);
        for (std::size_t bi = 0; bi < base_blocks_.size(); ++bi) {
            const auto& b = base_blocks_[bi];
            const int h = static_cast<int>(stabilizers_[bi].size());
            if (h > 1) {
                // A short block under lambda = 1 must be exactly a subgroup of order k.
                if (h != k_ || b != stabilizers_[bi])
                    return {false, -1, -1,
                            "short base block " + std::to_string(bi) +
                                " is not a subgroup of order k"};
            }
            std::fill(counts.begin(), counts.end(), 0);
            for (Element x : b)
                for (Element y : b)
                    if (x != y) ++counts[group_.sub(y, x)];
            for (Element g = 1; g < n; ++g) {
                if (counts[g] % h != 0)
                    return {false, g, -1,
                            "difference count of block " + std::to_string(bi) +
                                " not a multiple of its stabilizer order"};
                total[g] += counts[g] / h;
            }
        }
        for (Element g = 1; g < n; ++g)
            if (total[g] != 1) return {false, g, total[g], ""};
        return {true, -1, -1, ""};
    }

    /// Develops the family into the design whose blocks are the distinct
    /// translates of the base blocks. Requires validate() to pass.
    Design develop() const {
        auto rep = validate();
        if (!rep.ok) throw BuildError("cannot develop invalid family: " + rep.describe());
        std::set<std::vector<Element>> translates;
        std::vector<Element> t(k_);
        for (const auto& b : base_blocks_) {
            for (Element s = 0; s < group_.order(); ++s) {
                for (int i = 0; i < k_; ++i) t[i] = group_.add(b[i], s);
                std::sort(t.begin(), t.end());
                translates.insert(t);
            }
        }
        return Design(group_.order(), k_,
                      std::vector<std::vector<int>>(translates.begin(), translates.end()));
    }

    /// Number of group automorphisms mapping the family to itself, with base
    /// blocks compared up to translation (normal forms). Always >= 1.
    long long multiplier() const {
        long long fixing = 0;
        std::vector<Element> img(k_);
        group_.automorphisms([&](const std::vector<Element>& images) {
            for (const auto& b : base_blocks_) {
                for (int i = 0; i < k_; ++i) img[i] = images[b[i]];
                auto norm = normalize_block(group_, img);
                if (!std::binary_search(base_blocks_.begin(), base_blocks_.end(), norm))
                    return;
            }
            ++fixing;
        });
        return fixing;
    }

private:
    GroupSpec group_;
    int k_;
    std::vector<std::vector<Element>> base_blocks_;
    std::vector<std::vector<Element>> stabilizers_;
};

} // namespace steiner
