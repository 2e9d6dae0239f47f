// Command-line frontend: every pipeline stage as a batch subcommand.
// Results go to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 verification failed, 2 usage error, 3 capacity/budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "steiner/canonical.hpp"
#include "steiner/design.hpp"
#include "steiner/errors.hpp"
#include "steiner/family.hpp"
#include "steiner/fingerprint.hpp"
#include "steiner/group.hpp"
#include "steiner/io.hpp"
#include "steiner/search.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kCapacity = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw steiner::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_family(const std::string& text) {
    return text.find("group:") != std::string::npos;
}

/// Loads either a family file (developed) or a raw design file.
steiner::Design load_design(const std::string& path) {
    std::string text = read_file(path);
    if (looks_like_family(text)) return steiner::parse_family(text).develop();
    return steiner::parse_raw_design(text);
}

steiner::DifferenceFamily load_family(const std::string& path) {
    std::string text = read_file(path);
    if (!looks_like_family(text))
        throw steiner::ParseError(path + " is not a difference-family file");
    return steiner::parse_family(text);
}

std::string catalog_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("STEINER_CATALOG")) return env;
    throw steiner::ParseError("no catalog given (pass a path or set STEINER_CATALOG)");
}

std::string family_payload(const steiner::DifferenceFamily& f) {
    std::string df = steiner::serialize_family(f);
    std::size_t at = df.find("blocks: ") + 8;
    std::string payload = df.substr(at);
    while (!payload.empty() && payload.back() == '\n') payload.pop_back();
    return payload;
}

int cmd_validate(const std::string& path) {
    auto fam = load_family(path);
    auto rep = fam.validate();
    std::cout << rep.describe() << "\n";
    return rep.ok ? kOk : kFailed;
}

int cmd_develop(const std::string& path, const std::string& out) {
    auto fam = load_family(path);
    auto d = fam.develop();
    std::string text = steiner::serialize_raw_design(d);
    if (!out.empty()) {
        std::ofstream o(out);
        o << text;
        std::cout << d.b() << " blocks -> " << out << "\n";
    } else {
        std::cout << text;
    }
    return kOk;
}

int cmd_verify(const std::string& path) {
    auto d = load_design(path);
    auto rep = d.is_steiner();
    std::cout << (rep.ok ? "S(2," + std::to_string(d.k()) + "," + std::to_string(d.v()) +
                               ") ok, " + std::to_string(d.b()) + " blocks"
                         : rep.describe())
              << "\n";
    return rep.ok ? kOk : kFailed;
}

int cmd_fingerprint(const std::string& path, int jobs) {
    auto d = load_design(path);
    std::cout << steiner::hyperbolic_fingerprint(d, jobs).render() << "\n";
    return kOk;
}

int cmd_multiplier(const std::string& path) {
    std::cout << load_family(path).multiplier() << "\n";
    return kOk;
}

int cmd_iso(const std::string& a, const std::string& b) {
    bool same = steiner::isomorphic(load_design(a), load_design(b));
    std::cout << (same ? "isomorphic" : "non-isomorphic") << "\n";
    return same ? kOk : kFailed;
}

int cmd_autorder(const std::string& path) {
    std::cout << steiner::canonical_cert(load_design(path)).aut_order << "\n";
    return kOk;
}

int cmd_search(const std::string& group, int k, const std::string& reduce,
               std::optional<long long> max_solutions, std::optional<double> budget,
               int jobs, const std::string& out) {
    steiner::SearchConfig cfg{steiner::GroupSpec::parse(group), k, reduce == "aut",
                              max_solutions, budget, jobs};
    if (!budget && cfg.group.order() > 81)
        throw CLI::ValidationError("--time-budget is required for groups of order > 81");
    auto outcome = steiner::enumerate_families(cfg);

    std::ofstream record_out;
    if (!out.empty()) {
        record_out.open(out);
        record_out << steiner::kCatalogHeader << "\n";
    }
    int n = 0;
    for (const auto& r : outcome.results) {
        ++n;
        std::cout << r.multiplier << " " << r.fingerprint.render() << " "
                  << family_payload(r.family) << "\n";
        if (record_out.is_open()) {
            steiner::CatalogRecord rec{group + "-k" + std::to_string(k) + "-" +
                                           std::to_string(n),
                                       "search",
                                       r.family.group().notation(),
                                       k,
                                       cfg.group.order(),
                                       r.multiplier,
                                       r.fingerprint.render(),
                                       "",
                                       family_payload(r.family)};
            steiner::write_record(record_out, rec);
        }
    }
    std::cout << outcome.results.size() << " families\n";
    std::cerr << outcome.raw_count << " translation classes before reduction\n";
    if (outcome.budget_exceeded) {
        std::cerr << "time budget exceeded; results are a partial prefix\n";
        return kCapacity;
    }
    return kOk;
}

int cmd_catalog(const std::string& action, const std::string& path_flag) {
    std::ifstream in(catalog_path(path_flag));
    if (!in) throw steiner::ParseError("cannot open catalog");
    auto recs = steiner::read_catalog(in);
    if (action == "list") {
        for (const auto& r : recs)
            std::cout << r.id << " " << (r.group == "perm" ? "perm" : r.group) << " k="
                      << r.k << " v=" << r.v << "\n";
        std::cout << recs.size() << " records\n";
        return kOk;
    }
    // verify: re-check everything each record claims
    for (const auto& r : recs) {
        if (r.group != "perm") {
            auto fam = steiner::record_family(r);
            auto rep = fam.validate();
            if (!rep.ok) {
                std::cerr << r.id << ": " << rep.describe() << "\n";
                return kFailed;
            }
            if (r.multiplier && fam.multiplier() != *r.multiplier) {
                std::cerr << r.id << ": multiplier mismatch\n";
                return kFailed;
            }
        }
        auto d = steiner::record_design(r);
        auto rep = d.is_steiner();
        if (!rep.ok) {
            std::cerr << r.id << ": " << rep.describe() << "\n";
            return kFailed;
        }
        if (!r.fingerprint.empty() &&
            steiner::hyperbolic_fingerprint(d).render() != r.fingerprint) {
            std::cerr << r.id << ": fingerprint mismatch\n";
            return kFailed;
        }
        if (!r.cert_hash.empty() &&
            steiner::canonical_cert(d).hash_hex() != r.cert_hash) {
            std::cerr << r.id << ": certificate mismatch\n";
            return kFailed;
        }
    }
    std::cout << recs.size() << " records ok\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steiner systems from difference families over abelian groups"};
    app.require_subcommand(1);

    std::string path, path_b, out, group, reduce = "aut", cat_action, cat_path;
    int k = 0, jobs = 1;
    std::optional<long long> max_solutions;
    std::optional<double> budget;

    auto* validate = app.add_subcommand("validate", "check difference coverage of a family");
    validate->add_option("file", path)->required();

    auto* develop = app.add_subcommand("develop", "expand a family into its design");
    develop->add_option("file", path)->required();
    develop->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "check exact pair coverage of a design");
    verify->add_option("file", path)->required();

    auto* fingerprint = app.add_subcommand("fingerprint", "hyperbolic frequency invariant");
    fingerprint->add_option("file", path)->required();
    fingerprint->add_option("--jobs", jobs);

    auto* multiplier = app.add_subcommand("multiplier", "automorphisms fixing a family");
    multiplier->add_option("file", path)->required();

    auto* iso = app.add_subcommand("iso", "decide design isomorphism");
    iso->add_option("a", path)->required();
    iso->add_option("b", path_b)->required();

    auto* autorder = app.add_subcommand("autorder", "automorphism group order of a design");
    autorder->add_option("file", path)->required();

    auto* search = app.add_subcommand("search", "enumerate difference families");
    search->add_option("--group", group)->required();
    search->add_option("--k", k)->required();
    search->add_option("--reduce", reduce)->check(CLI::IsMember({"aut", "none"}));
    search->add_option("--max-solutions", max_solutions);
    search->add_option("--time-budget", budget);
    search->add_option("--jobs", jobs);
    search->add_option("--out", out);

    auto* catalog = app.add_subcommand("catalog", "list or verify a record catalog");
    catalog->add_option("action", cat_action)->required()->check(CLI::IsMember({"list", "verify"}));
    catalog->add_option("path", cat_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return cmd_validate(path);
        if (*develop) return cmd_develop(path, out);
        if (*verify) return cmd_verify(path);
        if (*fingerprint) return cmd_fingerprint(path, jobs);
        if (*multiplier) return cmd_multiplier(path);
        if (*iso) return cmd_iso(path, path_b);
        if (*autorder) return cmd_autorder(path);
        if (*search)
            return cmd_search(group, k, reduce, max_solutions, budget, jobs, out);
        if (*catalog) return cmd_catalog(cat_action, cat_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const steiner::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapacity;
    } catch (const steiner::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const steiner::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
