#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "steiner/bitset.hpp"
#include "steiner/errors.hpp"

namespace steiner {

using Element = int;

/// A finite abelian group given as a product of cyclic factors Z_{n_1} x ... x Z_{n_m}.
/// Elements are single integer indices in [0, order) encoding the digit tuple
/// in mixed radix with the last factor varying fastest. Addition and negation
/// tables are precomputed at construction for order <= 256.
class GroupSpec {
public:
    explicit GroupSpec(std::vector<int> moduli) : moduli_(std::move(moduli)) {
        if (moduli_.empty()) throw BuildError("group needs at least one cyclic factor");
        order_ = 1;
        for (int n : moduli_) {
            if (n < 2) throw BuildError("cyclic factor order must be >= 2");
            order_ *= n;
        }
        weights_.resize(moduli_.size());
        int w = 1;
        for (int i = static_cast<int>(moduli_.size()) - 1; i >= 0; --i) {
            weights_[i] = w;
            w *= moduli_[i];
        }
        if (order_ <= kTableLimit) build_tables();
    }

    /// Parses notation like "Z5xZ5xZ7" (case-insensitive, 'Z' optional per factor).
    static GroupSpec parse(const std::string& text) {
        std::vector<int> moduli;
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == 'x' || text[i] == 'X') { ++i; continue; }
            if (text[i] == 'z' || text[i] == 'Z') ++i;
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i) throw ParseError("bad group notation: " + text);
            moduli.push_back(std::stoi(text.substr(i, j - i)));
            i = j;
        }
        if (moduli.empty()) throw ParseError("bad group notation: " + text);
        return GroupSpec(std::move(moduli));
    }

    std::string notation() const {
        std::string s;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            if (i) s += 'x';
            s += 'Z';
            s += std::to_string(moduli_[i]);
        }
        return s;
    }

    int order() const { return order_; }
    const std::vector<int>& moduli() const { return moduli_; }
    std::size_t rank() const { return moduli_.size(); }

    Element encode(const std::vector<int>& tuple) const {
        if (tuple.size() != moduli_.size())
            throw InvalidElementError("tuple arity does not match group factors");
        int x = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] < 0 || tuple[i] >= moduli_[i])
                throw InvalidElementError("tuple component out of range");
            x += tuple[i] * weights_[i];
        }
        return x;
    }

    std::vector<int> decode(Element a) const {
        check(a);
        std::vector<int> t(moduli_.size());
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            t[i] = a / weights_[i];
            a %= weights_[i];
        }
        return t;
    }

    Element add(Element a, Element b) const {
        check(a); check(b);
        if (!add_table_.empty()) return add_table_[a * order_ + b];
        return add_slow(a, b);
    }

    Element neg(Element a) const {
        check(a);
        if (!neg_table_.empty()) return neg_table_[a];
        return neg_slow(a);
    }

    Element sub(Element a, Element b) const { return add(a, neg(b)); }

    /// Order of the cyclic subgroup generated by a.
    int element_order(Element a) const {
        check(a);
        int ord = 1;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            int d = (a / weights_[i]) % moduli_[i];
            int o = moduli_[i] / std::gcd(moduli_[i], d == 0 ? moduli_[i] : d);
            ord = std::lcm(ord, o);
        }
        return ord;
    }

    /// All subgroups of order exactly k, each as a sorted element list containing 0.
    /// Empty when k does not divide the group order or none exist.
    std::vector<std::vector<Element>> subgroups_of_order(int k) const {
        if (k < 1) throw BuildError("subgroup order must be >= 1");
        std::vector<std::vector<Element>> out;
        if (order_ % k != 0) return out;
        if (k == 1) { out.push_back({0}); return out; }
        // Lattice walk from the trivial subgroup, extending by one generator at a
        // time; every intermediate order divides k by Lagrange.
        std::set<std::vector<Element>> seen;
        std::vector<std::vector<Element>> frontier{{0}};
        seen.insert({0});
        while (!frontier.empty()) {
            std::vector<std::vector<Element>> next;
            for (const auto& h : frontier) {
                for (Element x = 1; x < order_; ++x) {
                    if (std::binary_search(h.begin(), h.end(), x)) continue;
                    if (k % element_order(x) != 0) continue;
                    auto c = closure(h, x);
                    if (static_cast<int>(c.size()) > k || k % c.size() != 0) continue;
                    if (!seen.insert(c).second) continue;
                    if (static_cast<int>(c.size()) == k) out.push_back(c);
                    else next.push_back(std::move(c));
                }
            }
            frontier = std::move(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Translation stabilizer {t : b + t = b} of a nonempty element set.
    std::vector<Element> block_stabilizer(const std::vector<Element>& b) const {
        if (b.empty()) throw BuildError("block must be nonempty");
        Bitset in(order_);
        for (Element x : b) { check(x); in.set(x); }
        std::vector<Element> stab;
        for (Element t = 0; t < order_; ++t) {
            bool ok = true;
            for (Element x : b)
                if (!in.test(add(x, t))) { ok = false; break; }
            if (ok) stab.push_back(t);
        }
        return stab;
    }

    /// Visits every automorphism of the group exactly once. The visitor receives
    /// the full image array (element index -> element index); the reference is
    /// only valid during the call. Backtracks over images of the unit generator
    /// of each cyclic factor, pruning on element order and injectivity.
    /// Guarded to order <= 4096.
    void automorphisms(const std::function<void(const std::vector<Element>&)>& visit) const {
        if (order_ > kAutGuard)
            throw CapacityError("automorphism enumeration guarded to |G| <= 4096");
        AutSearch s(*this);
        s.run(visit);
    }

    long long automorphism_count() const {
        long long n = 0;
        automorphisms([&](const std::vector<Element>&) { ++n; });
        return n;
    }

    bool operator==(const GroupSpec& o) const { return moduli_ == o.moduli_; }

private:
    static constexpr int kTableLimit = 256;
    static constexpr int kAutGuard = 4096;

    void check(Element a) const {
        if (a < 0 || a >= order_) throw InvalidElementError("element index out of range");
    }

    Element add_slow(Element a, Element b) const {
        int x = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            int da = (a / weights_[i]) % moduli_[i];
            int db = (b / weights_[i]) % moduli_[i];
            x += ((da + db) % moduli_[i]) * weights_[i];
        }
        return x;
    }

    Element neg_slow(Element a) const {
        int x = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            int d = (a / weights_[i]) % moduli_[i];
            x += ((moduli_[i] - d) % moduli_[i]) * weights_[i];
        }
        return x;
    }

    void build_tables() {
        add_table_.resize(static_cast<std::size_t>(order_) * order_);
        neg_table_.resize(order_);
        for (Element a = 0; a < order_; ++a) {
            neg_table_[a] = neg_slow(a);
            for (Element b = 0; b < order_; ++b)
                add_table_[a * order_ + b] = static_cast<Element>(add_slow(a, b));
        }
    }

    std::vector<Element> closure(const std::vector<Element>& h, Element x) const {
        Bitset in(order_);
        std::vector<Element> elems = h;
        for (Element e : h) in.set(e);
        std::vector<Element> work{x};
        in.set(x);
        elems.push_back(x);
        while (!work.empty()) {
            Element a = work.back();
            work.pop_back();
            for (std::size_t i = 0; i < elems.size(); ++i) {
                Element s = add(a, elems[i]);
                if (!in.test(s)) {
                    in.set(s);
                    elems.push_back(s);
                    work.push_back(s);
                }
            }
        }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

    // Backtracking over generator images. The span of the first j factors is
    // carried as an explicit (element, image) list so the full image array is
    // complete exactly at the leaves.
    struct AutSearch {
        const GroupSpec& g;
        std::vector<Element> gens;                     // unit generator per factor
        std::vector<std::vector<Element>> candidates;  // per factor: elements of that order
        std::vector<Element> images;                   // element -> image (leaf-complete)
        std::vector<char> used;                        // image injectivity stamp
        std::vector<Element> span;                     // elements with images assigned

        explicit AutSearch(const GroupSpec& spec) : g(spec) {
            images.assign(g.order_, -1);
            used.assign(g.order_, 0);
            for (std::size_t i = 0; i < g.moduli_.size(); ++i) {
                std::vector<int> t(g.moduli_.size(), 0);
                t[i] = 1;
                gens.push_back(g.encode(t));
                std::vector<Element> cand;
                for (Element x = 0; x < g.order_; ++x)
                    if (g.element_order(x) == g.moduli_[i]) cand.push_back(x);
                candidates.push_back(std::move(cand));
            }
            images[0] = 0;
            used[0] = 1;
            span.push_back(0);
        }

        void run(const std::function<void(const std::vector<Element>&)>& visit) {
            descend(0, visit);
        }

        void descend(std::size_t i, const std::function<void(const std::vector<Element>&)>& visit) {
            if (i == gens.size()) { visit(images); return; }
            const std::size_t span_before = span.size();
            for (Element c : candidates[i]) {
                std::size_t added = 0;
                bool ok = true;
                Element de = 0, dc = 0;  // d * e_i and d * c
                for (int d = 1; d < g.moduli_[i] && ok; ++d) {
                    de = g.add(de, gens[i]);
                    dc = g.add(dc, c);
                    for (std::size_t s = 0; s < span_before; ++s) {
                        Element e2 = g.add(span[s], de);
                        Element i2 = g.add(images[span[s]], dc);
                        if (used[i2]) { ok = false; break; }
                        used[i2] = 1;
                        images[e2] = i2;
                        span.push_back(e2);
                        ++added;
                    }
                }
                if (ok) descend(i + 1, visit);
                while (added--) {
                    Element e2 = span.back();
                    span.pop_back();
                    used[images[e2]] = 0;
                    images[e2] = -1;
                }
            }
        }
    };

    std::vector<int> moduli_;
    std::vector<int> weights_;
    int order_ = 0;
    std::vector<Element> add_table_;
    std::vector<Element> neg_table_;
};

} // namespace steiner
