#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "steiner/canonical.hpp"
#include "steiner/errors.hpp"
#include "steiner/family.hpp"
#include "steiner/fingerprint.hpp"
#include "steiner/group.hpp"

namespace steiner {

struct SearchConfig {
    GroupSpec group;
    int k = 3;
    bool reduce_by_aut = false;
    std::optional<long long> max_solutions;
    std::optional<double> time_budget_seconds;
    int jobs = 1;
};

/// Split of |G|-1 differences into s full blocks (k(k-1) differences each)
/// and t short blocks (k-1 each), t restricted to {0, 1}. At most one of the
/// two t values can balance, so the split is unique when it exists.
struct Feasibility {
    bool feasible = false;
    int full_blocks = 0;
    int short_blocks = 0;
};

inline Feasibility feasibility(int order, int k) {
    const long long full = static_cast<long long>(k) * (k - 1);
    for (int t = 0; t <= 1; ++t) {
        long long rem = order - 1 - static_cast<long long>(t) * (k - 1);
        if (rem >= 0 && rem % full == 0)
            return {true, static_cast<int>(rem / full), t};
    }
    return {};
}

struct SearchResult {
    DifferenceFamily family;
    long long multiplier = 0;
    Fingerprint fingerprint;  // empty for k = 2
};

struct SearchOutcome {
    std::vector<SearchResult> results;
    long long raw_count = 0;       // translation classes found before Aut reduction
    bool complete = true;          // full enumeration finished
    bool budget_exceeded = false;  // stopped by the time budget
};

namespace detail {

/// 256-bit difference set. Group orders are capped at 256 by the element
/// table limit, so four words always suffice. Bit 0 (identity) is preset in
/// the running cover so the hole scan never reports it.
struct DiffMask {
    std::uint64_t w[4] = {0, 0, 0, 0};

    void set(int b) { w[b >> 6] |= std::uint64_t{1} << (b & 63); }
    bool test(int b) const { return (w[b >> 6] >> (b & 63)) & 1; }
    bool intersects(const DiffMask& o) const {
        return ((w[0] & o.w[0]) | (w[1] & o.w[1]) | (w[2] & o.w[2]) | (w[3] & o.w[3])) != 0;
    }
    void merge(const DiffMask& o) {
        w[0] |= o.w[0];
        w[1] |= o.w[1];
        w[2] |= o.w[2];
        w[3] |= o.w[3];
    }
    int lowest_zero() const {
        for (int i = 0; i < 4; ++i)
            if (~w[i]) return i * 64 + std::countr_one(w[i]);
        return 256;
    }
    bool operator==(const DiffMask&) const = default;
};

/// Tables shared by every branch of one search: for each ordered pair (x, e)
/// the mask of the two directed differences {e-x, x-e}, the mask of each
/// short-block candidate, the full cover, and (when small enough to
/// precompute) a hash set of the difference set of every valid full block.
/// The hash set turns the last full block of a family into a constant-time
/// membership test: it exists iff the complement of the cover is the exact
/// difference set of some block.
struct DiffTables {
    int n;
    DiffMask full;
    std::vector<DiffMask> pair;      // n*n entries, symmetric in (x, e)
    std::vector<DiffMask> subgroup;  // aligned with the subgroup list
    bool has_block_masks = false;
    std::vector<std::uint64_t> block_masks;  // open-addressed, 0 = empty slot

    /// Counting prune over a proper subgroup H: a full block with n_i elements
    /// in the i-th H-coset covers exactly sum n_i(n_i - 1) differences lying
    /// in H, so the uncovered count inside H must be a sum of such values
    /// over the remaining blocks. feasible[r * width + u] says whether r full
    /// blocks can cover exactly u differences of H; with_short additionally
    /// allows the one pending short block.
    struct CosetCheck {
        DiffMask mask;  // nonzero elements of H
        int width;      // |H|
        std::vector<char> feasible;
        std::vector<char> with_short;
    };
    std::vector<CosetCheck> coset;

    DiffTables(const GroupSpec& g, const std::vector<std::vector<Element>>& subgroups,
               int k, int full_blocks)
        : n(g.order()), pair(static_cast<std::size_t>(n) * n) {
        for (int b = 0; b < n; ++b) full.set(b);
        for (Element x = 0; x < n; ++x)
            for (Element e = 0; e < n; ++e) {
                if (x == e) continue;
                DiffMask& m = pair[static_cast<std::size_t>(x) * n + e];
                m.set(g.sub(e, x));
                m.set(g.sub(x, e));
            }
        for (const auto& s : subgroups) {
            DiffMask m;
            for (Element x : s)
                if (x != 0) m.set(x);
            subgroup.push_back(m);
        }
        build_block_masks(k);
        build_coset_checks(g, k, full_blocks);
    }

    static std::uint64_t mask_hash(const DiffMask& m) {
        std::uint64_t h = fnv1a64(m.w, sizeof m.w);
        return h ? h : 1;  // 0 marks an empty slot
    }

    /// Conservative test: false means no full block has exactly this
    /// difference set; true may (rarely) be a hash collision, which the
    /// caller resolves by extension.
    bool maybe_block(const DiffMask& m) const {
        const std::uint64_t h = mask_hash(m);
        const std::size_t mask = block_masks.size() - 1;
        for (std::size_t i = h & mask;; i = (i + 1) & mask) {
            if (block_masks[i] == h) return true;
            if (block_masks[i] == 0) return false;
        }
    }

private:
    void build_coset_checks(const GroupSpec& g, int k, int full_blocks) {
        for (int q = 2; q <= 9; ++q) {  // coset count; beyond that blocks spread thin
            if (q >= n || n % q != 0) continue;
            const int o = n / q;  // |H|
            // per-block coverage counts inside H: sum n_i(n_i - 1) over all
            // ways to spread k elements across q cosets
            std::vector<char> per_block(static_cast<std::size_t>(k) * (k - 1) + 1, 0);
            std::function<void(int, int, int)> spread = [&](int part, int left, int c) {
                if (part == q - 1) {
                    per_block[c + left * (left - 1)] = 1;
                    return;
                }
                for (int m = 0; m <= left; ++m) spread(part + 1, left - m, c + m * (m - 1));
            };
            spread(0, k, 0);
            for (const auto& h : g.subgroups_of_order(o)) {
                CosetCheck cc;
                cc.width = o;
                for (Element x : h)
                    if (x != 0) cc.mask.set(x);
                cc.feasible.assign(static_cast<std::size_t>(full_blocks + 1) * o, 0);
                cc.feasible[0] = 1;  // r = 0 covers u = 0 only
                const int cmax = static_cast<int>(per_block.size()) - 1;
                for (int r = 1; r <= full_blocks; ++r)
                    for (int u = 0; u < o; ++u)
                        for (int c = 0; c <= std::min(u, cmax); ++c)
                            if (per_block[c] && cc.feasible[(r - 1) * o + (u - c)]) {
                                cc.feasible[r * o + u] = 1;
                                break;
                            }
                cc.with_short.assign(cc.feasible.size(), 0);
                for (const DiffMask& sm : subgroup) {
                    int c = 0;
                    for (int i = 0; i < 4; ++i)
                        c += std::popcount(sm.w[i] & cc.mask.w[i]);
                    for (int r = 0; r <= full_blocks; ++r)
                        for (int u = c; u < o; ++u)
                            if (cc.feasible[r * o + (u - c)]) cc.with_short[r * o + u] = 1;
                }
                if (coset.size() < 64) coset.push_back(std::move(cc));
            }
        }
    }

    void build_block_masks(int k) {
        if (k < 3) return;
        long long bound = 1;  // C(n-1, k-1): crude cap on the candidate count
        for (int i = 0; i < k - 1; ++i) {
            bound = bound * (n - 1 - i) / (i + 1);
            if (bound > 4'000'000) return;
        }
        std::vector<std::uint64_t> hashes;
        std::vector<Element> partial;
        partial.reserve(k);
        DiffMask below;  // identity plus every difference smaller than d
        below.set(0);
        for (Element d = 1; d < n; ++d) {
            // blocks whose smallest internal difference is d
            const DiffMask& first = pair[static_cast<std::size_t>(d)];  // pair(0, d)
            if (!first.intersects(below)) {
                partial.assign({0, d});
                collect_masks(partial, static_cast<Element>(d + 1), below, first, k,
                              hashes);
            }
            below.set(d);
        }
        std::size_t slots = 16;
        while (slots < hashes.size() * 2) slots *= 2;
        block_masks.assign(slots, 0);
        for (std::uint64_t h : hashes) {
            for (std::size_t i = h & (slots - 1);; i = (i + 1) & (slots - 1)) {
                if (block_masks[i] == h) break;
                if (block_masks[i] == 0) {
                    block_masks[i] = h;
                    break;
                }
            }
        }
        has_block_masks = true;
    }

    void collect_masks(std::vector<Element>& partial, Element start,
                       const DiffMask& below, const DiffMask& own, int k,
                       std::vector<std::uint64_t>& out) {
        if (static_cast<int>(partial.size()) == k) {
            out.push_back(mask_hash(own));
            return;
        }
        for (Element e = start; e < n; ++e) {
            if (own.test(e)) continue;
            DiffMask fresh;
            bool ok = true;
            for (Element x : partial) {
                const DiffMask& pm = pair[static_cast<std::size_t>(x) * n + e];
                if (below.intersects(pm) || own.intersects(pm) || fresh.intersects(pm)) {
                    ok = false;
                    break;
                }
                fresh.merge(pm);
            }
            if (!ok) continue;
            fresh.merge(own);
            partial.push_back(e);
            collect_masks(partial, e + 1, below, fresh, k, out);
            partial.pop_back();
        }
    }
};

/// Backtracking enumeration of difference families up to translation.
///
/// Blocks of a family are ordered by their smallest internal difference;
/// under lambda = 1 block difference sets are disjoint, so this order is
/// unique and at each step the next block must cover the smallest uncovered
/// difference d. A full block is represented by its unique translate
/// containing both 0 and d, extended with strictly increasing elements
/// (anything smaller would repeat an already covered difference). A short
/// block is a subgroup of order k containing d. Each family is therefore
/// produced exactly once.
class FamilyEnumerator {
public:
    using Clock = std::chrono::steady_clock;
    using Sink = std::function<bool(const std::vector<std::vector<Element>>&)>;

    struct Branch {
        std::vector<Element> block;
        bool is_short = false;
    };

    FamilyEnumerator(const DiffTables& tables, int k, int full_blocks, bool allow_short,
                     const std::vector<std::vector<Element>>& subgroups,
                     std::optional<Clock::time_point> deadline)
        : t_(tables), k_(k), n_(tables.n), subgroups_(subgroups),
          short_available_(allow_short), full_left_(full_blocks), deadline_(deadline) {
        const int depth_cap = full_blocks + (allow_short ? 1 : 0);
        blocks_.resize(depth_cap);
        partials_.resize(depth_cap);
        for (auto& b : blocks_) b.reserve(k);
        for (auto& p : partials_) p.reserve(k);
        scratch_.reserve(k);
        lists_.resize(n_);
        built_.assign(n_, 0);
    }

    /// Full search. Returns true iff the tree was exhausted.
    bool run(const Sink& sink) {
        sink_ = &sink;
        DiffMask used;
        used.set(0);
        descend(used);
        return !stopped_;
    }

    /// Enumerates the valid first blocks without recursing past them.
    std::vector<Branch> first_blocks() {
        std::vector<Branch> out;
        capture_ = &out;
        Sink nothing = [](const std::vector<std::vector<Element>>&) { return true; };
        sink_ = &nothing;
        DiffMask used;
        used.set(0);
        descend(used);
        capture_ = nullptr;
        return out;
    }

    /// Search restricted to the subtree below one first block.
    bool run_branch(const Branch& br, const Sink& sink) {
        sink_ = &sink;
        DiffMask used;
        used.set(0);
        if (br.is_short) {
            for (Element x : br.block)
                if (x != 0) used.set(x);
            short_available_ = false;
        } else {
            for (std::size_t i = 0; i < br.block.size(); ++i)
                for (std::size_t j = i + 1; j < br.block.size(); ++j)
                    used.merge(pair(br.block[i], br.block[j]));
            --full_left_;
        }
        blocks_[0] = br.block;
        depth_ = 1;
        base_used_ = used;
        descend(used);
        return !stopped_;
    }

    bool budget_exceeded() const { return budget_exceeded_; }

private:
    struct Cand {
        DiffMask mask;  // the block's own difference set
        std::vector<Element> block;
    };

    const DiffMask& pair(Element x, Element e) const {
        return t_.pair[static_cast<std::size_t>(x) * n_ + e];
    }

    bool checks(const DiffMask& used) {
        if (stopped_) return false;
        if (used == t_.full) {
            if (!(*sink_)({blocks_.begin(), blocks_.begin() + depth_})) stopped_ = true;
            return false;
        }
        if (deadline_ && (++tick_ & 0x3ff) == 0 && Clock::now() > *deadline_) {
            stopped_ = budget_exceeded_ = true;
            return false;
        }
        return true;
    }

    /// Short-block candidates at hole d; at most one per family.
    void try_shorts(const DiffMask& used, int d) {
        for (std::size_t si = 0; si < subgroups_.size(); ++si) {
            const DiffMask& sm = t_.subgroup[si];
            if (!sm.test(d) || used.intersects(sm)) continue;
            if (capture_ && depth_ == 0) {
                capture_->push_back({subgroups_[si], true});
            } else {
                DiffMask next = used;
                next.merge(sm);
                blocks_[depth_++] = subgroups_[si];
                if (depth_ == 1) base_used_ = next;
                short_available_ = false;
                descend(next);
                short_available_ = true;
                --depth_;
                if (depth_ == 0) clear_lists();
            }
            if (stopped_) return;
        }
    }

    void descend(const DiffMask& used) {
        if (!checks(used)) return;

        // counting prunes: the uncovered differences inside each tabled
        // subgroup must be coverable by the remaining blocks
        for (const auto& cc : t_.coset) {
            int u = 0;
            for (int i = 0; i < 4; ++i) u += std::popcount(~used.w[i] & cc.mask.w[i]);
            const auto& tab = short_available_ ? cc.with_short : cc.feasible;
            if (!tab[static_cast<std::size_t>(full_left_) * cc.width + u]) return;
        }

        const int d = used.lowest_zero();
        if (short_available_) {
            try_shorts(used, d);
            if (stopped_) return;
        }
        if (full_left_ == 0) return;  // only a short block could still cover d

        // With one full block left, the block's difference set must be the
        // exact complement of the cover; a set lookup rejects dead ends
        // without touching the extension loop.
        if (full_left_ == 1 && !short_available_ && t_.has_block_masks) {
            DiffMask need;
            for (int i = 0; i < 4; ++i) need.w[i] = t_.full.w[i] & ~used.w[i];
        }

        // Below the first block, generate candidates once per (subtree, hole)
        // against the after-first-block cover and reuse the list across the
        // subtree; a mask test filters out candidates the deeper cover rejects.
        if (depth_ >= 1) {
            if (!built_[d]) build_list(d);
            if (stopped_) return;
            for (const Cand& c : lists_[d]) {
                if (c.mask.intersects(used)) continue;
                DiffMask next = used;
                next.merge(c.mask);
                blocks_[depth_++] = c.block;
                --full_left_;
                descend(next);
                ++full_left_;
                --depth_;
                if (stopped_) return;
            }
            return;
        }

        DiffMask next = used;
        next.merge(pair(0, d));
        auto& partial = partials_[depth_];
        partial.assign({0, static_cast<Element>(d)});
        extend(partial, static_cast<Element>(d + 1), next);
    }

    void build_list(int d) {
        built_[d] = 1;
        if (deadline_ && Clock::now() > *deadline_) {
            stopped_ = budget_exceeded_ = true;
            return;
        }
        DiffMask used_b = base_used_;
        for (int i = 1; i < d; ++i) used_b.set(i);  // a block at hole d has no smaller diff
        const DiffMask& own = pair(0, static_cast<Element>(d));
        if (own.intersects(used_b)) return;
        scratch_.assign({0, static_cast<Element>(d)});
        collect(scratch_, static_cast<Element>(d + 1), used_b, own, lists_[d]);
    }

    void collect(std::vector<Element>& partial, Element start, const DiffMask& used,
                 const DiffMask& own, std::vector<Cand>& out) {
        if (static_cast<int>(partial.size()) == k_) {
            out.push_back({own, partial});
            return;
        }
        for (Element e = start; e < n_; ++e) {
            if (used.test(e) || own.test(e)) continue;
            DiffMask fresh;
            bool ok = true;
            for (Element x : partial) {
                const DiffMask& pm = pair(x, e);
                if (used.intersects(pm) || own.intersects(pm) || fresh.intersects(pm)) {
                    ok = false;
                    break;
                }
                fresh.merge(pm);
            }
            if (!ok) continue;
            fresh.merge(own);
            partial.push_back(e);
            collect(partial, e + 1, used, fresh, out);
            partial.pop_back();
        }
    }

    void clear_lists() {
        for (int d = 0; d < n_; ++d)
            if (built_[d]) {
                built_[d] = 0;
                lists_[d].clear();
            }
    }

    void extend(std::vector<Element>& partial, Element start, const DiffMask& used) {
        if (stopped_) return;
        if (static_cast<int>(partial.size()) == k_) {
            if (capture_ && depth_ == 0) {
                capture_->push_back({partial, false});
                return;
            }
            blocks_[depth_++] = partial;
            --full_left_;
            if (depth_ == 1) base_used_ = used;
            descend(used);
            ++full_left_;
            --depth_;
            if (depth_ == 0) clear_lists();
            return;
        }
        for (Element e = start; e < n_; ++e) {
            if (used.test(e)) continue;  // e - 0 is a difference of the block
            DiffMask fresh;
            bool ok = true;
            for (Element x : partial) {
                const DiffMask& pm = pair(x, e);
                if (used.intersects(pm) || fresh.intersects(pm)) {
                    ok = false;
                    break;
                }
                fresh.merge(pm);
            }
            if (!ok) continue;
            fresh.merge(used);
            partial.push_back(e);
            extend(partial, e + 1, fresh);
            partial.pop_back();
            if (stopped_) return;
        }
    }

    const DiffTables& t_;
    int k_;
    int n_;
    const std::vector<std::vector<Element>>& subgroups_;
    bool short_available_;
    int full_left_;
    int depth_ = 0;
    std::vector<std::vector<Element>> blocks_;    // fixed slots, reused
    std::vector<std::vector<Element>> partials_;  // per-depth scratch
    std::vector<Element> scratch_;                // list-building scratch
    std::vector<std::vector<Cand>> lists_;        // per-hole candidates, lazy
    std::vector<char> built_;
    DiffMask base_used_;                          // cover after the first block
    const Sink* sink_ = nullptr;
    std::vector<Branch>* capture_ = nullptr;
    std::optional<Clock::time_point> deadline_;
    unsigned tick_ = 0;
    bool stopped_ = false;
    bool budget_exceeded_ = false;
};

} // namespace detail

/// Exhaustive enumeration of difference families over cfg.group with block
/// size cfg.k, up to translation; optionally reduced to one representative
/// per Aut(G)-orbit. Each result carries its multiplier and (for k >= 3) the
/// fingerprint of its development. Output order is deterministic.
inline SearchOutcome enumerate_families(const SearchConfig& cfg) {
    SearchOutcome out;
    const GroupSpec& g = cfg.group;
    auto feas = feasibility(g.order(), cfg.k);
    if (!feas.feasible) return out;  // no balanced full/short split -> no families

    std::vector<std::vector<Element>> subgroups;
    if (feas.short_blocks > 0) {
        subgroups = g.subgroups_of_order(cfg.k);
        if (subgroups.empty()) return out;  // a short block is forced but none exists
        std::sort(subgroups.begin(), subgroups.end());
    }

    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (cfg.time_budget_seconds)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(*cfg.time_budget_seconds));

    const detail::DiffTables tables(g, subgroups, cfg.k, feas.full_blocks);
    std::vector<std::vector<std::vector<Element>>> raw;
    bool truncated = false;
    bool budget = false;

    if (cfg.jobs <= 1) {
        detail::FamilyEnumerator e(tables, cfg.k, feas.full_blocks, feas.short_blocks > 0,
                                   subgroups, deadline);
        bool finished = e.run([&](const std::vector<std::vector<Element>>& blocks) {
            raw.push_back(blocks);
            return !(cfg.max_solutions &&
                     static_cast<long long>(raw.size()) >= *cfg.max_solutions);
        });
        budget = e.budget_exceeded();
        truncated = !finished && !budget;
    } else {
        // Fork on the completed-first-block frontier; branches are
        // independent and results merge in branch order, so the output does
        // not depend on scheduling.
        detail::FamilyEnumerator probe(tables, cfg.k, feas.full_blocks,
                                       feas.short_blocks > 0, subgroups, deadline);
        auto branches = probe.first_blocks();
        std::vector<std::vector<std::vector<std::vector<Element>>>> branch_raw(branches.size());
        std::atomic<std::size_t> next{0};
        std::atomic<bool> any_budget{false};
        std::atomic<bool> any_stop{false};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < branches.size();
                 i = next.fetch_add(1)) {
                detail::FamilyEnumerator e(tables, cfg.k, feas.full_blocks,
                                           feas.short_blocks > 0, subgroups, deadline);
                bool finished =
                    e.run_branch(branches[i], [&](const std::vector<std::vector<Element>>& b) {
                        branch_raw[i].push_back(b);
                        return !(cfg.max_solutions &&
                                 static_cast<long long>(branch_raw[i].size()) >=
                                     *cfg.max_solutions);
                    });
                if (e.budget_exceeded()) any_budget = true;
                else if (!finished) any_stop = true;
            }
        };
        std::vector<std::thread> threads;
        for (int j = 0; j < cfg.jobs; ++j) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        budget = any_budget;
        truncated = any_stop;
        for (auto& br : branch_raw)
            for (auto& blocks : br) {
                if (cfg.max_solutions &&
                    static_cast<long long>(raw.size()) >= *cfg.max_solutions) {
                    truncated = true;
                    break;
                }
                raw.push_back(std::move(blocks));
            }
    }

    out.raw_count = static_cast<long long>(raw.size());
    out.budget_exceeded = budget;
    out.complete = !budget && !truncated;

    // Materialize families (normalized, sorted base blocks) and index them.
    std::vector<DifferenceFamily> fams;
    fams.reserve(raw.size());
    std::map<std::vector<std::vector<Element>>, int> index;
    for (auto& blocks : raw) {
        fams.emplace_back(g, cfg.k, std::move(blocks));
        auto [it, inserted] =
            index.emplace(fams.back().base_blocks(), static_cast<int>(fams.size()) - 1);
        if (!inserted) throw BuildError("enumeration produced a duplicate family");
    }
    const int nfam = static_cast<int>(fams.size());
    if (nfam == 0) return out;

    // One pass over Aut(G) yields both the multipliers (automorphisms fixing
    // a family) and the Aut-orbits (union of a family with its images).
    std::vector<long long> mult(nfam, 0);
    std::vector<int> parent(nfam);
    for (int i = 0; i < nfam; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<Element>> image;
    g.automorphisms([&](const std::vector<Element>& images) {
        for (int i = 0; i < nfam; ++i) {
            image.clear();
            for (const auto& b : fams[i].base_blocks()) {
                std::vector<Element> ib(b.size());
                for (std::size_t j = 0; j < b.size(); ++j) ib[j] = images[b[j]];
                image.push_back(normalize_block(g, ib));
            }
            std::sort(image.begin(), image.end());
            auto it = index.find(image);
            if (it == index.end()) continue;  // image outside a truncated result set
            if (it->second == i) ++mult[i];
            if (cfg.reduce_by_aut) {
                int a = find(i), b = find(it->second);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    });

    std::vector<int> emit;
    if (cfg.reduce_by_aut) {
        // One representative per orbit: the family with the smallest base
        // blocks; representatives emitted in ascending order.
        std::map<int, int> rep;  // orbit root -> representative index
        for (int i = 0; i < nfam; ++i) {
            int r = find(i);
            auto it = rep.find(r);
            if (it == rep.end() ||
                fams[i].base_blocks() < fams[it->second].base_blocks())
                rep[r] = i;
        }
        for (auto& [root, i] : rep) emit.push_back(i);
        std::sort(emit.begin(), emit.end(), [&](int a, int b) {
            return fams[a].base_blocks() < fams[b].base_blocks();
        });
    } else {
        for (int i = 0; i < nfam; ++i) emit.push_back(i);
    }

    for (int i : emit) {
        Fingerprint fp;
        if (cfg.k >= 3) fp = hyperbolic_fingerprint(fams[i].develop(), cfg.jobs);
        out.results.push_back({std::move(fams[i]), mult[i], std::move(fp)});
    }
    return out;
}

/// Splits search results into design-isomorphism classes: bucket by
/// fingerprint, then separate buckets by canonical certificate. Returns the
/// first-seen representative of each class, in input order.
inline std::vector<SearchResult> classify(const std::vector<SearchResult>& results) {
    std::vector<SearchResult> classes;
    std::vector<std::string> class_fp;
    std::vector<std::optional<CanonicalCert>> class_cert;

    auto cert_of = [](const SearchResult& r) { return canonical_cert(r.family.develop()); };

    for (const auto& r : results) {
        std::string fp = r.fingerprint.render();
        std::optional<CanonicalCert> cert;
        bool known = false;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (class_fp[c] != fp) continue;
            if (!cert) cert = cert_of(r);
            if (!class_cert[c]) class_cert[c] = cert_of(classes[c]);
            if (cert->same_bits(*class_cert[c])) { known = true; break; }
        }
        if (!known) {
            classes.push_back(r);
            class_fp.push_back(std::move(fp));
            class_cert.push_back(std::move(cert));
        }
    }
    return classes;
}

} // namespace steiner
