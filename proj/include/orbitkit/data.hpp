#pragma once
// Access to the bundled data directory (root orderings, string tables,
// errata overlay, special-case registry). Files are compiled in when the
// build generates orbitkit/embedded_data.inc; ORBITKIT_DATA points at a
// directory that overrides them at run time.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace orbitkit::data {

#if __has_include(<orbitkit/embedded_data.inc>)
inline const std::map<std::string, std::string_view>& embedded_files() {
    static const std::map<std::string, std::string_view> files = {
#include <orbitkit/embedded_data.inc>
    };
    return files;
}
#else
inline const std::map<std::string, std::string_view>& embedded_files() {
    static const std::map<std::string, std::string_view> files;
    return files;
}
#endif

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Looks a data file up by its path relative to the data root.
inline std::optional<std::string> load(const std::string& rel) {
    if (const char* dir = std::getenv("ORBITKIT_DATA"); dir && *dir)
        return read_file(std::string(dir) + "/" + rel);
    const auto& files = embedded_files();
    if (auto it = files.find(rel); it != files.end()) return std::string(it->second);
#ifdef ORBITKIT_DATA_DIR
    return read_file(std::string(ORBITKIT_DATA_DIR) + "/" + rel);
#else
    return std::nullopt;
#endif
}

inline std::string load_required(const std::string& rel) {
    auto s = load(rel);
    if (!s) throw DataError("missing data file: " + rel);
    return *s;
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

inline bool is_comment_or_blank(const std::string& line) {
    auto pos = line.find_first_not_of(" \t");
    return pos == std::string::npos || line[pos] == '#';
}

inline std::uint64_t fnv1a64(const std::vector<std::string>& lines) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& l : lines) {
        for (unsigned char c : l + "\n") {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Root orderings

struct OrderTable {
    RootSystemSpec spec;
    std::vector<std::vector<int>> coords;  // simple-root coordinates, by index
    std::vector<std::string> notes;        // erratum comments, verbatim
};

inline std::string order_table_path(RootSystemSpec s) { return "chevie/" + s.name() + ".txt"; }

inline OrderTable parse_order_table(const std::string& text) {
    OrderTable t;
    bool have_header = false;
    std::optional<std::uint64_t> checksum;
    std::vector<std::string> body;
    for (const auto& line : lines_of(text)) {
        if (is_comment_or_blank(line)) {
            if (line.find("erratum") != std::string::npos) t.notes.push_back(line);
            continue;
        }
        auto tok = tokens(line);
        if (!have_header) {
            if (tok.size() != 2) throw DataError("order table: bad header '" + line + "'");
            t.spec = {family_from_char(tok[0].at(0)), std::stoi(tok[1])};
            have_header = true;
        } else if (tok[0] == "checksum") {
            checksum = std::stoull(tok.at(1), nullptr, 16);
        } else {
            if (static_cast<int>(tok.size()) != t.spec.rank + 1)
                throw DataError("order table: bad row '" + line + "'");
            if (std::stoi(tok[0]) != static_cast<int>(t.coords.size()) + 1)
                throw DataError("order table: indices not consecutive at '" + line + "'");
            std::vector<int> c;
            for (std::size_t k = 1; k < tok.size(); ++k) c.push_back(std::stoi(tok[k]));
            t.coords.push_back(std::move(c));
            std::string norm = tok[0];
            for (std::size_t k = 1; k < tok.size(); ++k) norm += " " + tok[k];
            body.push_back(norm);
        }
    }
    if (!checksum) throw DataError("order table " + t.spec.name() + ": no checksum");
    if (fnv1a64(body) != *checksum) throw DataError("order table " + t.spec.name() + ": checksum mismatch");
    return t;
}

inline std::optional<OrderTable> order_table(RootSystemSpec s) {
    auto text = load(order_table_path(s));
    if (!text) return std::nullopt;
    return parse_order_table(*text);
}

// ---------------------------------------------------------------------------
// Printed string tables

struct StringTable {
    RootSystemSpec spec;
    int dim = 0;
    char arm_letter = 'A';  // letter the table uses for the arm of an AL-move
    std::vector<std::string> strings;  // as printed, unpadded
};

// Pads with trailing I and rewrites letters to the arm = 'A' convention.
inline std::string normalize_string(std::string s, std::size_t length, char arm_letter) {
    if (s.size() < length) s.append(length - s.size(), 'I');
    if (arm_letter == 'L')
        for (char& c : s) c = c == 'A' ? 'L' : (c == 'L' ? 'A' : c);
    return s;
}

inline std::string string_table_path(RootSystemSpec s, int dim) {
    return "tables/dim" + std::to_string(dim) + "_" + s.name() + ".txt";
}

inline StringTable parse_string_table(const std::string& text) {
    StringTable t;
    int stage = 0;
    for (const auto& line : lines_of(text)) {
        if (is_comment_or_blank(line)) continue;
        auto tok = tokens(line);
        if (stage == 0) {
            if (tok.size() != 3) throw DataError("string table: bad header '" + line + "'");
            t.spec = {family_from_char(tok[0].at(0)), std::stoi(tok[1])};
            t.dim = std::stoi(tok[2]);
            stage = 1;
        } else if (stage == 1) {
            if (tok.size() != 2 || tok[0] != "letters" || (tok[1] != "arm=A" && tok[1] != "arm=L"))
                throw DataError("string table: bad letters line '" + line + "'");
            t.arm_letter = tok[1].back();
            stage = 2;
        } else {
            if (tok.size() != 1 || tok[0].find_first_not_of("SAIL") != std::string::npos)
                throw DataError("string table: bad string '" + line + "'");
            t.strings.push_back(tok[0]);
        }
    }
    if (stage < 2) throw DataError("string table: truncated");
    return t;
}

inline std::optional<StringTable> string_table(RootSystemSpec s, int dim) {
    auto text = load(string_table_path(s, dim));
    if (!text) return std::nullopt;
    return parse_string_table(*text);
}

struct Erratum {
    RootSystemSpec spec;
    int dim = 0;
    bool add = true;
    std::string string;  // printed convention of the table it amends
};

inline std::vector<Erratum> errata() {
    std::vector<Erratum> out;
    auto text = load("tables/errata.txt");
    if (!text) return out;
    for (const auto& line : lines_of(*text)) {
        if (is_comment_or_blank(line)) continue;
        auto tok = tokens(line);
        if (tok.size() != 5 || (tok[3] != "add" && tok[3] != "remove"))
            throw DataError("errata: bad line '" + line + "'");
        out.push_back({{family_from_char(tok[1].at(0)), std::stoi(tok[2])}, std::stoi(tok[0]),
                       tok[3] == "add", tok[4]});
    }
    return out;
}

}  // namespace orbitkit::data
