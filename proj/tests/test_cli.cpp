#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "helpers.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

std::string cli_path() {
    const char* p = std::getenv("STEINER_CLI");
    REQUIRE(p != nullptr);
    return p;
}

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = "/tmp/steiner_cli_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("validate and multiplier") {
    auto r = run("validate " + data_path("z5xz5_k3_1.df"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "ok\n");

    r = run("multiplier " + data_path("z5xz5_k3_1.df"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "3\n");

    std::string bad = temp_file("bad.df", "group: Z7\nk: 3\nblocks: [[0, 1, 2]]\n");
    r = run("validate " + bad);
    REQUIRE(r.exit_code == 1);
}

TEST_CASE("develop feeds verify and fingerprint") {
    std::string blk = temp_file("dev.blk", "");
    auto r = run("develop " + data_path("z5xz5_k3_3.df") + " --out " + blk);
    REQUIRE(r.exit_code == 0);

    r = run("verify " + blk);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "S(2,3,25) ok, 100 blocks\n");

    r = run("fingerprint " + blk);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "{1=13200}\n");

    r = run("fingerprint " + blk + " --jobs 3");
    REQUIRE(r.output == "{1=13200}\n");

    // verify also accepts family files directly
    r = run("verify " + data_path("z5xz5_k4_1.df"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "S(2,4,25) ok, 50 blocks\n");
}

TEST_CASE("verify fails on a broken design") {
    std::string broken = temp_file("broken.blk", "[[0,1,3],[1,2,4],[2,3,5]]");
    auto r = run("verify " + broken);
    REQUIRE(r.exit_code == 1);
}

TEST_CASE("iso and autorder") {
    std::string fano = temp_file("fano.df", "group: Z7\nk: 3\nblocks: [[0, 1, 3]]\n");
    auto r = run("autorder " + fano);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "168\n");

    r = run("iso " + fano + " " + fano);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "isomorphic\n");

    r = run("iso " + data_path("z5xz5_k3_1.df") + " " + data_path("z5xz5_k3_3.df"));
    REQUIRE(r.exit_code == 1);
    REQUIRE(r.output == "non-isomorphic\n");
}

TEST_CASE("search lists families and records catalogs") {
    auto r = run("search --group Z5xZ5 --k 3");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("3 families\n") != std::string::npos);
    REQUIRE(r.output.find("{1=13200}") != std::string::npos);

    r = run("search --group Z5xZ5 --k 3 --reduce none --max-solutions 5");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("5 families\n") != std::string::npos);

    std::string cat = "/tmp/steiner_cli_test_search.cat";
    r = run("search --group Z3xZ3 --k 3 --out " + cat);
    REQUIRE(r.exit_code == 0);
    r = run("catalog verify " + cat);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output == "1 records ok\n");
    r = run("catalog list " + cat);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("Z3xZ3-k3-1") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage, failure, and budget") {
    REQUIRE(run("search --group Z5xZ5").exit_code == 2);        // missing --k
    REQUIRE(run("search --k 3").exit_code == 2);                // missing --group
    REQUIRE(run("validate /nonexistent.df").exit_code == 2);    // unreadable input
    REQUIRE(run("frobnicate").exit_code == 2);                  // unknown subcommand
    REQUIRE(run("").exit_code == 2);

    // large groups demand an explicit time budget
    REQUIRE(run("search --group Z11xZ11 --k 3").exit_code == 2);

    // a tiny budget on a big search returns the partial-result code
    auto r = run("search --group Z3xZ3xZ9 --k 5 --time-budget 0.1");
    REQUIRE(r.exit_code == 3);
}

TEST_CASE("catalog list honors the environment variable") {
    std::string cmd = "STEINER_CATALOG=" + data_path("catalog.cat") + " " + cli_path() +
                      " catalog list >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);

    // no flag and no environment variable: usage error
    std::string bare = "env -u STEINER_CATALOG " + cli_path() + " catalog list >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(bare.c_str())) == 2);
}
