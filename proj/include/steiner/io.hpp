#pragma once

#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "steiner/canonical.hpp"
#include "steiner/design.hpp"
#include "steiner/errors.hpp"
#include "steiner/family.hpp"
#include "steiner/fingerprint.hpp"
#include "steiner/group.hpp"

namespace steiner {
namespace detail {

class Scanner {
public:
    explicit Scanner(const std::string& text) : s_(text) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(i_));
    }

    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }

    int integer() {
        skip_ws();
        std::size_t j = i_;
        if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
        std::size_t d = j;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j == d) throw ParseError("expected integer at offset " + std::to_string(i_));
        int value = std::stoi(s_.substr(i_, j - i_));
        i_ = j;
        return value;
    }

    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

inline std::vector<int> parse_tuple(Scanner& sc) {
    std::vector<int> t;
    sc.expect('(');
    while (true) {
        t.push_back(sc.integer());
        if (sc.eat(')')) break;
        sc.expect(',');
    }
    return t;
}

} // namespace detail

/// Parses a nested integer list "[[0, 1, 3], [1, 2, 4], ...]".
inline std::vector<std::vector<int>> parse_raw_blocks(const std::string& text) {
    detail::Scanner sc(text);
    std::vector<std::vector<int>> blocks;
    sc.expect('[');
    if (!sc.eat(']')) {
        while (true) {
            std::vector<int> blk;
            sc.expect('[');
            while (true) {
                blk.push_back(sc.integer());
                if (sc.eat(']')) break;
                sc.expect(',');
            }
            blocks.push_back(std::move(blk));
            if (sc.eat(']')) break;
            sc.expect(',');
        }
    }
    if (!sc.done()) throw ParseError("trailing text after block list");
    return blocks;
}

/// Parses a block list in the tuple syntax "[[(0, 0), (0, 1), (1, 0)], ...]".
/// Bare integers are accepted as elements of single-factor groups.
inline std::vector<std::vector<Element>> parse_family_blocks(const GroupSpec& g,
                                                             const std::string& text) {
    detail::Scanner sc(text);
    std::vector<std::vector<Element>> blocks;
    sc.expect('[');
    if (!sc.eat(']')) {
        while (true) {
            std::vector<Element> blk;
            sc.expect('[');
            while (true) {
                if (sc.peek() == '(') {
                    blk.push_back(g.encode(detail::parse_tuple(sc)));
                } else {
                    if (g.rank() != 1)
                        throw ParseError("bare integer element in a multi-factor group");
                    blk.push_back(g.encode({sc.integer()}));
                }
                if (sc.eat(']')) break;
                sc.expect(',');
            }
            blocks.push_back(std::move(blk));
            if (sc.eat(']')) break;
            sc.expect(',');
        }
    }
    if (!sc.done()) throw ParseError("trailing text after block list");
    return blocks;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct KeyedDocument {
    std::optional<std::string> group;
    std::optional<int> k;
    std::optional<int> v;
    std::string body;  // text following "blocks:" or the first bare '['
};

inline KeyedDocument parse_keyed_document(const std::string& text) {
    KeyedDocument doc;
    std::istringstream in(text);
    std::string line;
    bool in_body = false;
    while (std::getline(in, line)) {
        if (in_body) { doc.body += line + "\n"; continue; }
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("group:", 0) == 0) doc.group = trim(t.substr(6));
        else if (t.rfind("k:", 0) == 0) doc.k = std::stoi(trim(t.substr(2)));
        else if (t.rfind("v:", 0) == 0) doc.v = std::stoi(trim(t.substr(2)));
        else if (t.rfind("blocks:", 0) == 0) { doc.body = t.substr(7) + "\n"; in_body = true; }
        else if (t[0] == '[') { doc.body = line + "\n"; in_body = true; }
        else throw ParseError("unrecognized line: " + t);
    }
    return doc;
}

} // namespace detail

/// Parses a difference-family document: `group:` and `k:` headers followed by
/// base blocks in the tuple syntax. Blocks are normalized on load.
inline DifferenceFamily parse_family(const std::string& text) {
    auto doc = detail::parse_keyed_document(text);
    if (!doc.group) throw ParseError("family document is missing a group: header");
    if (!doc.k) throw ParseError("family document is missing a k: header");
    GroupSpec g = GroupSpec::parse(*doc.group);
    auto blocks = parse_family_blocks(g, doc.body);
    return DifferenceFamily(std::move(g), *doc.k, std::move(blocks));
}

inline std::string serialize_family(const DifferenceFamily& f) {
    std::string s = "group: " + f.group().notation() + "\n";
    s += "k: " + std::to_string(f.k()) + "\n";
    s += "blocks: [";
    for (std::size_t bi = 0; bi < f.base_blocks().size(); ++bi) {
        if (bi) s += ", ";
        s += "[";
        for (std::size_t i = 0; i < f.base_blocks()[bi].size(); ++i) {
            if (i) s += ", ";
            auto t = f.group().decode(f.base_blocks()[bi][i]);
            s += "(";
            for (std::size_t j = 0; j < t.size(); ++j) {
                if (j) s += ", ";
                s += std::to_string(t[j]);
            }
            s += ")";
        }
        s += "]";
    }
    s += "]\n";
    return s;
}

/// Parses a raw design document: an optional `v:` header and a nested integer
/// block list. v is inferred as max point + 1 unless the header overrides it.
inline Design parse_raw_design(const std::string& text) {
    auto doc = detail::parse_keyed_document(text);
    auto blocks = parse_raw_blocks(doc.body);
    if (blocks.empty()) throw ParseError("design has no blocks");
    std::size_t k = blocks.front().size();
    int maxp = 0;
    for (const auto& b : blocks) {
        if (b.size() != k) throw ParseError("ragged block sizes in design");
        for (int p : b) maxp = std::max(maxp, p);
    }
    int v = doc.v ? *doc.v : maxp + 1;
    return Design(v, static_cast<int>(k), std::move(blocks));
}

inline std::string serialize_raw_design(const Design& d) {
    std::string s = "v: " + std::to_string(d.v()) + "\n";
    s += "blocks: [";
    for (std::size_t bi = 0; bi < d.blocks().size(); ++bi) {
        if (bi) s += ", ";
        s += "[";
        for (std::size_t i = 0; i < d.blocks()[bi].size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(d.blocks()[bi][i]);
        }
        s += "]";
    }
    s += "]\n";
    return s;
}

/// Parses the rendered fingerprint form "{1=31968, 2=534132}".
inline Fingerprint parse_fingerprint(const std::string& text) {
    detail::Scanner sc(text);
    Fingerprint fp;
    sc.expect('{');
    if (!sc.eat('}')) {
        while (true) {
            int key = sc.integer();
            sc.expect('=');
            long long count = sc.integer();
            fp.freq[key] = count;
            if (sc.eat('}')) break;
            sc.expect(',');
        }
    }
    if (!sc.done()) throw ParseError("trailing text after fingerprint");
    return fp;
}

// ---------------------------------------------------------------------------
// Catalog records: newline-delimited, pipe-separated, with a version header
// line and a per-record checksum.
// ---------------------------------------------------------------------------

struct CatalogRecord {
    std::string id;
    std::string source;  // paper | search | user
    std::string group;   // group notation, or "perm" for raw point designs
    int k = 0;
    int v = 0;
    std::optional<long long> multiplier;
    std::string fingerprint;  // rendered form, may be empty
    std::string cert_hash;    // 16 hex digits, may be empty
    std::string payload;      // base blocks (tuple syntax) or raw block list

    bool operator==(const CatalogRecord&) const = default;
};

inline constexpr const char* kCatalogHeader = "steinercat 1";

inline std::string record_line(const CatalogRecord& r) {
    for (const std::string* f : {&r.id, &r.source, &r.group, &r.fingerprint, &r.cert_hash, &r.payload})
        if (f->find_first_of("|\t\n") != std::string::npos)
            throw BuildError("catalog field contains a reserved character");
    std::string body = r.id + "|" + r.source + "|" + r.group + "|" + std::to_string(r.k) + "|" +
                       std::to_string(r.v) + "|" +
                       (r.multiplier ? std::to_string(*r.multiplier) : std::string()) + "|" +
                       r.fingerprint + "|" + r.cert_hash + "|" + r.payload;
    return body + "|" + hex16(fnv1a64(body.data(), body.size()));
}

inline void write_record(std::ostream& out, const CatalogRecord& r) {
    out << record_line(r) << "\n";
    out.flush();
}

inline CatalogRecord read_record(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = line.find('|', start);
        if (bar == std::string::npos) { fields.push_back(line.substr(start)); break; }
        fields.push_back(line.substr(start, bar - start));
        start = bar + 1;
    }
    if (fields.size() != 10) throw ParseError("catalog record has wrong field count");
    std::size_t body_len = line.rfind('|');
    if (hex16(fnv1a64(line.data(), body_len)) != fields[9])
        throw ParseError("catalog record checksum mismatch: " + fields[0]);
    CatalogRecord r;
    r.id = fields[0];
    r.source = fields[1];
    r.group = fields[2];
    try {
        r.k = std::stoi(fields[3]);
        r.v = std::stoi(fields[4]);
        if (!fields[5].empty()) r.multiplier = std::stoll(fields[5]);
    } catch (const std::exception&) {
        throw ParseError("catalog record has a malformed numeric field: " + fields[0]);
    }
    r.fingerprint = fields[6];
    if (!r.fingerprint.empty()) parse_fingerprint(r.fingerprint);  // field must re-parse
    r.cert_hash = fields[7];
    r.payload = fields[8];
    return r;
}

inline void write_catalog(std::ostream& out, const std::vector<CatalogRecord>& records) {
    out << kCatalogHeader << "\n";
    for (const auto& r : records) write_record(out, r);
}

inline std::vector<CatalogRecord> read_catalog(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCatalogHeader)
        throw ParseError("catalog version mismatch (expected '" + std::string(kCatalogHeader) + "')");
    std::vector<CatalogRecord> out;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        out.push_back(read_record(line));
    }
    return out;
}

/// Materializes the difference family of a catalog record (group != "perm").
inline DifferenceFamily record_family(const CatalogRecord& r) {
    if (r.group == "perm") throw BuildError("record " + r.id + " is a raw design");
    GroupSpec g = GroupSpec::parse(r.group);
    auto blocks = parse_family_blocks(g, r.payload);
    return DifferenceFamily(std::move(g), r.k, std::move(blocks));
}

/// Materializes the design of a catalog record: raw block list for "perm"
/// records, development of the difference family otherwise.
inline Design record_design(const CatalogRecord& r) {
    if (r.group == "perm") {
        auto blocks = parse_raw_blocks(r.payload);
        return Design(r.v, r.k, std::move(blocks));
    }
    return record_family(r).develop();
}

} // namespace steiner
