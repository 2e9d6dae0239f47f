#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "steiner/errors.hpp"
#include "steiner/family.hpp"
#include "steiner/group.hpp"
#include "steiner/io.hpp"

#include "helpers.hpp"

using namespace steiner;

TEST_CASE("block normalization is translation invariant") {
    auto g = GroupSpec::parse("Z5xZ5");
    std::mt19937 rng(11);
    std::uniform_int_distribution<Element> pick(0, g.order() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Element> b;
        while (b.size() < 3) {
            Element x = pick(rng);
            if (std::find(b.begin(), b.end(), x) == b.end()) b.push_back(x);
        }
        auto norm = normalize_block(g, b);
        Element t = pick(rng);
        std::vector<Element> shifted;
        for (Element x : b) shifted.push_back(g.add(x, t));
        std::shuffle(shifted.begin(), shifted.end(), rng);
        REQUIRE(normalize_block(g, shifted) == norm);
    }
}

TEST_CASE("a family with a short block develops into AG(2,3)") {
    auto g = GroupSpec::parse("Z3xZ3");
    // {0,1,2} is the subgroup {(0,0),(0,1),(0,2)}: a short block with three
    // translates; {0,3,7} = {(0,0),(1,0),(2,1)} is a full block.
    DifferenceFamily f(g, 3, {{0, 1, 2}, {0, 3, 7}});
    auto rep = f.validate();
    REQUIRE(rep.ok);
    REQUIRE(f.stabilizers()[0].size() == 3);  // the short block is its own stabilizer
    REQUIRE(f.stabilizers()[1].size() == 1);

    Design d = f.develop();
    REQUIRE(d.v() == 9);
    REQUIRE(d.b() == 12);
    REQUIRE(d.is_steiner().ok);
    REQUIRE(f.multiplier() == 6);
}

TEST_CASE("bundled families validate, develop, and keep their multipliers") {
    struct Case {
        const char* file;
        long long multiplier;
        int blocks;
    };
    for (auto [file, multiplier, blocks] : {Case{"z5xz5_k3_1.df", 3, 100},
                                            Case{"z5xz5_k3_3.df", 3, 100},
                                            Case{"z5xz5_k4_1.df", 6, 50},
                                            Case{"z5xz5xz7_k7_1.df", 24, 725}}) {
        INFO(file);
        auto fam = parse_family(slurp(data_path(file)));
        REQUIRE(fam.validate().ok);
        auto d = fam.develop();
        REQUIRE(d.b() == blocks);
        REQUIRE(d.is_steiner().ok);
        REQUIRE(fam.multiplier() == multiplier);
    }
}

TEST_CASE("mutated families are rejected") {
    auto fam = parse_family(slurp(data_path("z5xz5_k3_1.df")));
    const auto& g = fam.group();
    auto base = fam.base_blocks();
    std::mt19937 rng(23);
    std::uniform_int_distribution<std::size_t> pick_block(0, base.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_slot(0, 2);
    std::uniform_int_distribution<Element> pick_elem(0, g.order() - 1);

    int rejected = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto blocks = base;
        auto& blk = blocks[pick_block(rng)];
        std::size_t slot = pick_slot(rng);
        // Replacing x by y+z-x reflects the block and keeps its differences, so
        // that (and a no-op) are the only replacements that must be avoided.
        Element reflected = g.sub(g.add(blk[(slot + 1) % 3], blk[(slot + 2) % 3]), blk[slot]);
        Element after = pick_elem(rng);
        while (after == blk[slot] || after == reflected) after = g.add(after, 1);
        blk[slot] = after;
        // A mutation either breaks difference coverage (validate fails) or
        // degenerates the block (construction throws).
        try {
            DifferenceFamily mutated(g, 3, blocks);
            if (!mutated.validate().ok) ++rejected;
        } catch (const Error&) {
            ++rejected;
        }
    }
    REQUIRE(rejected == 50);
}

TEST_CASE("validation pinpoints the failing difference") {
    auto g = GroupSpec::parse("Z7");
    DifferenceFamily fano(g, 3, {{0, 1, 3}});
    REQUIRE(fano.validate().ok);

    DifferenceFamily bad(g, 3, {{0, 1, 2}});  // difference 3 never occurs, 1 twice
    auto rep = bad.validate();
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.difference == 1);
    REQUIRE(rep.coverage == 2);
}

TEST_CASE("degenerate blocks are rejected at construction") {
    auto g = GroupSpec::parse("Z7");
    REQUIRE_THROWS_AS(DifferenceFamily(g, 3, {{0, 1, 1}}), BuildError);
    REQUIRE_THROWS_AS(DifferenceFamily(g, 3, {{0, 1}}), BuildError);
    REQUIRE_THROWS_AS(DifferenceFamily(g, 3, {{0, 1, 9}}), Error);  // out of range
}
