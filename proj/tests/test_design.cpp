#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <vector>

#include "steiner/design.hpp"
#include "steiner/errors.hpp"
#include "steiner/family.hpp"
#include "steiner/group.hpp"

using namespace steiner;

namespace {

const std::vector<std::vector<int>> kFano = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                                             {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};

/// Independent pair-coverage oracle: count every pair from scratch.
bool covers_every_pair_once(const Design& d) {
    std::vector<int> count(static_cast<std::size_t>(d.v()) * d.v(), 0);
    for (const auto& b : d.blocks())
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                ++count[static_cast<std::size_t>(b[i]) * d.v() + b[j]];
    for (int x = 0; x < d.v(); ++x)
        for (int y = x + 1; y < d.v(); ++y)
            if (count[static_cast<std::size_t>(x) * d.v() + y] != 1) return false;
    return true;
}

} // namespace

TEST_CASE("Fano plane is a Steiner system") {
    Design d(7, 3, kFano);
    REQUIRE(d.b() == 7);
    REQUIRE(d.is_steiner().ok);
    REQUIRE(covers_every_pair_once(d));
    for (int p = 0; p < 7; ++p) REQUIRE(d.replication(p) == 3);
    for (int x = 0; x < 7; ++x)
        for (int y = 0; y < 7; ++y) {
            if (x == y) continue;
            int bi = d.line_through(x, y);
            const auto& blk = d.blocks()[bi];
            REQUIRE(std::count(blk.begin(), blk.end(), x) == 1);
            REQUIRE(std::count(blk.begin(), blk.end(), y) == 1);
        }
}

TEST_CASE("missing and doubled pairs are reported lexicographically") {
    auto blocks = kFano;
    blocks.pop_back();  // drop {6,0,2}
    Design d(7, 3, blocks);
    auto rep = d.is_steiner();
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.x == 0);
    REQUIRE(rep.y == 2);
    REQUIRE(rep.coverage == 0);

    blocks = kFano;
    blocks.push_back({0, 1, 5});  // pair {0,1} now covered twice
    Design dd(7, 3, blocks);
    rep = dd.is_steiner();
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.x == 0);
    REQUIRE(rep.y == 1);
    REQUIRE(rep.coverage == 2);
}

TEST_CASE("construction rejects malformed blocks") {
    REQUIRE_THROWS_AS(Design(7, 3, {{0, 1}}), BuildError);           // wrong size
    REQUIRE_THROWS_AS(Design(7, 3, {{0, 1, 7}}), BuildError);        // out of range
    REQUIRE_THROWS_AS(Design(7, 3, {{0, 1, 1}}), BuildError);        // repeated point
    REQUIRE_THROWS_AS(Design(7, 3, {{0, 1, 3}, {3, 1, 0}}), BuildError);  // duplicate block
    REQUIRE_THROWS_AS(Design(1, 2, {}), BuildError);
}

TEST_CASE("relabeling preserves the Steiner property") {
    auto g = GroupSpec::parse("Z3xZ3");
    DifferenceFamily ag(g, 3, {{0, 1, 2}, {0, 3, 7}});
    Design d = ag.develop();
    REQUIRE(d.b() == 12);
    REQUIRE(d.is_steiner().ok);
    REQUIRE(covers_every_pair_once(d));

    std::mt19937 rng(7);
    std::vector<int> perm(d.v());
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        Design r = relabel(d, perm);
        REQUIRE(r.is_steiner().ok);
        REQUIRE(covers_every_pair_once(r));
    }
}

TEST_CASE("pair and intersection tables agree with the block list") {
    Design d(7, 3, kFano);
    for (int x = 0; x < 7; ++x)
        for (int y = x + 1; y < 7; ++y) {
            int bi = d.pair_block(x, y);
            const auto& blk = d.blocks()[bi];
            REQUIRE(std::count(blk.begin(), blk.end(), x) == 1);
            REQUIRE(std::count(blk.begin(), blk.end(), y) == 1);
        }
    for (int i = 0; i < d.b(); ++i)
        for (int j = 0; j < d.b(); ++j) {
            bool share = false;
            for (int p : d.blocks()[i])
                for (int q : d.blocks()[j]) share |= (p == q);
            REQUIRE(d.blocks_meet(i, j) == share);
        }
}
