#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "steiner/errors.hpp"
#include "steiner/io.hpp"

#include "helpers.hpp"

using namespace steiner;

TEST_CASE("family files round-trip through the serializer") {
    for (const char* file : {"z5xz5_k3_1.df", "z5xz5_k4_1.df", "z5xz5xz7_k7_1.df"}) {
        INFO(file);
        auto fam = parse_family(slurp(data_path(file)));
        auto again = parse_family(serialize_family(fam));
        REQUIRE(again.group() == fam.group());
        REQUIRE(again.k() == fam.k());
        REQUIRE(again.base_blocks() == fam.base_blocks());
    }
}

TEST_CASE("family parsing accepts tuples, comments, and bare residues") {
    auto fam = parse_family("# a comment line\n"
                            "group: Z3xZ3\n"
                            "k: 3\n"
                            "blocks: [[(0,0), (0,1), (0,2)], [(0,0), (1,0), (2,1)]]\n");
    REQUIRE(fam.group().notation() == "Z3xZ3");
    REQUIRE(fam.base_blocks() ==
            std::vector<std::vector<Element>>{{0, 1, 2}, {0, 3, 7}});

    // rank-1 groups may use bare integers
    auto fano = parse_family("group: Z7\nk: 3\nblocks: [[0, 1, 3]]\n");
    REQUIRE(fano.base_blocks() == std::vector<std::vector<Element>>{{0, 1, 3}});

    REQUIRE_THROWS_AS(parse_family("k: 3\nblocks: [[0,1,3]]\n"), ParseError);  // no group
    REQUIRE_THROWS_AS(parse_family("group: Z7\nblocks: [[0,1,3]]\n"), ParseError);  // no k
    REQUIRE_THROWS_AS(parse_family("group: Z3xZ3\nk: 3\nblocks: [[0, 1, 2]]\n"),
                      ParseError);  // bare residues need a rank-1 group
}

TEST_CASE("raw designs parse with and without an explicit point count") {
    auto mills = parse_raw_design(slurp(data_path("mills.blk")));
    REQUIRE(mills.v() == 111);
    REQUIRE(mills.k() == 6);
    REQUIRE(mills.b() == 407);
    REQUIRE(mills.is_steiner().ok);

    auto d = parse_raw_design("[[0,1,3],[1,2,4],[2,3,5],[3,4,6],[4,5,0],[5,6,1],[6,0,2]]");
    REQUIRE(d.v() == 7);  // inferred from the largest point
    REQUIRE(d.is_steiner().ok);
    REQUIRE(parse_raw_design(serialize_raw_design(d)).blocks() == d.blocks());

    REQUIRE_THROWS_AS(parse_raw_design("[[0,1,2],[3,4]]"), ParseError);  // ragged
    REQUIRE_THROWS_AS(parse_raw_design("[[0,1,2"), ParseError);
}

TEST_CASE("fingerprint strings parse strictly") {
    REQUIRE(parse_fingerprint("{}").render() == "{}");
    REQUIRE(parse_fingerprint("{1=13200}").render() == "{1=13200}");
    REQUIRE_THROWS_AS(parse_fingerprint("1=13200"), ParseError);
    REQUIRE_THROWS_AS(parse_fingerprint("{1:13200}"), ParseError);
}

TEST_CASE("catalog records survive a write/read cycle") {
    CatalogRecord rec{"fano-1", "user", "Z7", 3, 7, 3, "{0=168}",
                      "433d4c630471e287", "[[0, 1, 3]]"};
    std::ostringstream out;
    write_catalog(out, {rec});
    std::istringstream in(out.str());
    auto recs = read_catalog(in);
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0] == rec);

    auto fam = record_family(recs[0]);
    REQUIRE(fam.develop().is_steiner().ok);
    REQUIRE(record_design(recs[0]).v() == 7);
}

TEST_CASE("catalog tampering is detected") {
    CatalogRecord rec{"fano-1", "user", "Z7", 3, 7, {}, "", "", "[[0, 1, 3]]"};
    std::string line = record_line(rec);

    // flip one payload character: the checksum no longer matches
    std::string bad = line;
    bad[bad.find("[[0") + 2] = '1';
    REQUIRE_THROWS_AS(read_record(bad), ParseError);

    // wrong version header
    std::istringstream in("steinercat 2\n" + line + "\n");
    REQUIRE_THROWS_AS(read_catalog(in), ParseError);

    // reserved characters cannot be written in the first place
    CatalogRecord pipey = rec;
    pipey.id = "a|b";
    REQUIRE_THROWS_AS(record_line(pipey), BuildError);
}

TEST_CASE("the bundled catalog loads") {
    std::ifstream in(data_path("catalog.cat"));
    auto recs = read_catalog(in);
    REQUIRE(recs.size() == 182);
    int raw = 0, families = 0;
    for (const auto& r : recs) {
        REQUIRE_FALSE(r.id.empty());
        REQUIRE(r.source == "paper");
        if (r.group == "perm") {
            ++raw;
            REQUIRE(r.k == 6);
            REQUIRE(r.v == 111);
        } else {
            ++families;
        }
    }
    REQUIRE(raw == 30);
    REQUIRE(families == 152);
}

TEST_CASE("raw records cannot be read back as families") {
    CatalogRecord rec{"r1", "user", "perm", 3, 7, {}, "", "",
                      "[[0,1,3],[1,2,4],[2,3,5],[3,4,6],[4,5,0],[5,6,1],[6,0,2]]"};
    REQUIRE_THROWS_AS(record_family(rec), Error);
    REQUIRE(record_design(rec).is_steiner().ok);
}
