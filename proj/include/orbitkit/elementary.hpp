#pragma once
// Elementary orbits N.e*_a: rank of B_f for a dual basis vector, and a checker
// for the bundled tables listing the roots whose elementary orbit has
// dimension 2, 4 or 6 together with their printed singular sets.

#include <algorithm>
#include <optional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "data.hpp"
#include "forms.hpp"
#include "rootsys.hpp"

namespace orbitkit {

struct ElementaryRow {
    int dim = 0;
    Family family = Family::A;
    std::string root;
    std::vector<std::string> sing;  // as printed, "+-" unexpanded
};

inline std::vector<ElementaryRow> parse_elementary(const std::string& text) {
    std::vector<ElementaryRow> rows;
    for (const auto& line : data::lines_of(text)) {
        if (data::is_comment_or_blank(line)) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw DataError("elementary row without ':': " + line);
        std::istringstream head(line.substr(0, colon));
        ElementaryRow r;
        char fam = 0;
        if (!(head >> r.dim >> fam >> r.root)) throw DataError("bad elementary row: " + line);
        r.family = family_from_char(fam);
        std::istringstream rest(line.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
            if (!item.empty()) r.sing.push_back(item);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

inline const std::vector<ElementaryRow>& elementary_rows() {
    static const std::vector<ElementaryRow> rows = parse_elementary(data::load_required("elementary.txt"));
    return rows;
}

namespace detail {

// Index expression: digits, "n", "i", "n-k", "i+k".
inline std::optional<int> eval_index(const std::string& s, int n, int i) {
    if (s.empty()) return std::nullopt;
    int base = 0;
    std::size_t pos = 0;
    if (s[0] == 'n' || s[0] == 'i') {
        base = s[0] == 'n' ? n : i;
        pos = 1;
    }
    if (pos == s.size()) return base;
    int sign = 1;
    if (pos > 0) {
        if (s[pos] != '+' && s[pos] != '-') return std::nullopt;
        sign = s[pos] == '+' ? 1 : -1;
        ++pos;
    }
    for (std::size_t k = pos; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
    return base + sign * std::stoi(s.substr(pos));
}

// One or two terms [2]e(idx) joined by '+', '-' or "+-". Each returned
// vector is one expanded root; an out-of-range index yields nothing.
inline std::optional<std::vector<Root>> eval_root_text(const std::string& text, int n, int dim, int i) {
    struct Term {
        int coeff;
        int index;
    };
    std::vector<Term> terms;
    std::size_t pos = 0;
    int pending_sign = 1;
    bool both = false;
    while (pos < text.size()) {
        int coeff = 1;
        if (text[pos] == '2') {
            coeff = 2;
            ++pos;
        }
        if (text.compare(pos, 2, "e(") != 0) throw DataError("bad root expression: " + text);
        const auto close = text.find(')', pos);
        if (close == std::string::npos) throw DataError("bad root expression: " + text);
        auto idx = eval_index(text.substr(pos + 2, close - pos - 2), n, i);
        if (!idx) throw DataError("bad index in: " + text);
        if (*idx < 1 || *idx > dim) return std::nullopt;
        terms.push_back({pending_sign * coeff, *idx});
        pos = close + 1;
        if (pos >= text.size()) break;
        if (text.compare(pos, 2, "+-") == 0) {
            both = true;
            pending_sign = 1;
            pos += 2;
        } else if (text[pos] == '+' || text[pos] == '-') {
            pending_sign = text[pos] == '+' ? 1 : -1;
            ++pos;
        } else {
            throw DataError("bad root expression: " + text);
        }
    }
    std::vector<Root> out;
    for (int flip : both ? std::vector<int>{1, -1} : std::vector<int>{1}) {
        Root r(dim, 0);
        for (std::size_t k = 0; k < terms.size(); ++k) r[terms[k].index - 1] += (k == 0 ? 1 : flip) * terms[k].coeff;
        out.push_back(r);
    }
    return out;
}

}  // namespace detail

struct ElementaryInstance {
    RootSystemSpec spec;
    const ElementaryRow* row = nullptr;
    int i = 0;                        // value of the running index, 0 if unused
    int root = -1;                    // index of the row's root
    int sing_size = 0;                // |Sing(root)| from the root system
    int rank = 0;                     // rank of B_f for f = e*_root
    bool printed_valid = true;        // every printed singular root is a positive root
    bool printed_matches = false;     // printed singular set equals the computed one
    std::vector<std::string> missing, extra;

    bool root_ok() const { return root >= 0 && sing_size == row->dim && rank == row->dim; }
};

struct ElementaryReport {
    std::vector<ElementaryInstance> instances;
    // (spec, dim) pairs whose roots with |Sing| = dim are not all covered by rows
    std::vector<std::string> uncovered;
    std::vector<std::string> rank_mismatches;  // bform_rank(e*_a) != |Sing(a)|
    std::size_t roots_checked = 0;

    bool roots_reproduced() const {
        return std::all_of(instances.begin(), instances.end(), [](const auto& x) { return x.root_ok(); });
    }
    std::vector<const ElementaryInstance*> flagged() const {
        std::vector<const ElementaryInstance*> out;
        for (const auto& x : instances)
            if (!x.printed_matches) out.push_back(&x);
        return out;
    }
};

// Families and ranks covered by the bundled order tables.
inline std::vector<RootSystemSpec> table_coverage() {
    std::vector<RootSystemSpec> out;
    for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
        const int lo = f == Family::D ? 4 : 2, hi = f == Family::D ? 8 : 7;
        for (int r = lo; r <= hi; ++r) out.push_back({f, r});
    }
    return out;
}

inline ElementaryReport check_elementary(const std::vector<RootSystemSpec>& specs = table_coverage()) {
    ElementaryReport rep;
    for (auto spec : specs) {
        RootSystem rs(spec);
        const int n = spec.rank, dim = ambient_dim(spec);
        std::vector<int> ranks(rs.size());
        for (int a = 0; a < rs.size(); ++a) {
            ranks[a] = bform_rank(rs, dual_basis(a));
            ++rep.roots_checked;
            if (ranks[a] != rs.sing_size(a)) rep.rank_mismatches.push_back(spec.name() + " " + rs.root_name(a));
        }
        std::map<int, IndexSet> covered;
        for (const auto& row : elementary_rows()) {
            if (row.family != spec.family) continue;
            const bool running = row.root.find("(i") != std::string::npos;
            for (int i = running ? 1 : 0; i <= (running ? dim : 0); ++i) {
                auto root = detail::eval_root_text(row.root, n, dim, i);
                if (!root) continue;
                ElementaryInstance inst;
                std::vector<Root> printed;
                for (const auto& s : row.sing) {
                    if (auto r = detail::eval_root_text(s, n, dim, i)) {
                        printed.insert(printed.end(), r->begin(), r->end());
                    } else {
                        inst.printed_valid = false;
                        inst.extra.push_back(s + " (index out of range)");
                    }
                }
                inst.spec = spec;
                inst.row = &row;
                inst.i = i;
                auto idx = rs.index_of(root->front());
                if (!idx) continue;  // expression is not a root of this rank
                inst.root = *idx;
                inst.sing_size = rs.sing_size(*idx);
                inst.rank = ranks[*idx];
                covered[row.dim] |= bit(*idx);

                std::vector<int> printed_idx;
                for (const auto& r : printed) {
                    auto k = rs.index_of(r);
                    if (!k) {
                        inst.printed_valid = false;
                        inst.extra.push_back("non-root");
                        continue;
                    }
                    printed_idx.push_back(*k);
                }
                std::sort(printed_idx.begin(), printed_idx.end());
                const IndexSet want = rs.sing(*idx);
                IndexSet got = 0;
                for (int k : printed_idx) got |= bit(k);
                const bool duplicates = std::adjacent_find(printed_idx.begin(), printed_idx.end()) != printed_idx.end();
                for_each_bit(want & ~got, [&](int k) { inst.missing.push_back(rs.root_name(k)); });
                for_each_bit(got & ~want, [&](int k) { inst.extra.push_back(rs.root_name(k)); });
                if (duplicates) inst.extra.push_back("duplicate entry");
                inst.printed_matches = inst.printed_valid && !duplicates && got == want;
                rep.instances.push_back(std::move(inst));
            }
        }
        for (int d : {2, 4, 6}) {
            IndexSet need = 0;
            for (int a = 0; a < rs.size(); ++a)
                if (rs.sing_size(a) == d) need |= bit(a);
            if (need & ~covered[d]) {
                std::string miss;
                for_each_bit(need & ~covered[d], [&](int k) { miss += " " + rs.root_name(k); });
                rep.uncovered.push_back(spec.name() + " dim " + std::to_string(d) + ":" + miss);
            }
        }
    }
    return rep;
}

}  // namespace orbitkit
