#pragma once
// Full classification of extensive orbits of a given dimension and its
// comparison with the bundled string tables.

#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "classify.hpp"
#include "data.hpp"
#include "forms.hpp"
#include "registry.hpp"
#include "rootsys.hpp"

namespace orbitkit {

struct UnresolvedCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CaseRecord {
    std::string start;       // state after Step 2
    std::string resolution;  // "3.1", "3.2", "estimate", "registry", "matching"
    int bound = -1;          // certified lower bound when excluded
    std::string registry;    // entry name when used
    int emitted = 0;
};

struct Classification {
    RootSystemSpec spec;
    int dim = 0;
    std::vector<ClassString> strings;  // sorted by letters
    std::vector<CaseRecord> cases;
};

inline Classification classify_extensive(const RootSystem& rs, int dim) {
    if (dim <= 0 || dim % 2) throw std::invalid_argument("dimension must be positive and even");
    Classifier cl(rs);
    Classification out{rs.spec(), dim, {}, {}};
    const int arms = dim / 2;
    for (const auto& start : cl.step2(arms)) {
        CaseRecord rec{start.letters, "3.1", -1, "", 0};
        auto keep = [&](const std::vector<ClassString>& leaves) {
            for (const auto& s : leaves)
                if (s.count('A') == arms) {
                    out.strings.push_back(s);
                    ++rec.emitted;
                }
        };
        auto r31 = cl.step31(start);
        if (r31.abelian) {
            keep(r31.finished);
        } else if (auto r32 = cl.step32(start)) {
            rec.resolution = "3.2";
            keep(*r32);
        } else if (int b = cl.step33(start); b > dim) {
            rec.resolution = "estimate";
            rec.bound = b;
        } else if (const auto* e = find_registry_entry(rs.spec(), start.letters)) {
            rec.resolution = "registry";
            rec.registry = e->name;
            auto v = verify_registry_entry(*e);
            if (!v.ok()) throw UnresolvedCase(e->name + ": registry argument does not verify");
            rec.bound = v.bound;
            if (e->kind == "family" && v.bound == dim) {
                for (const auto& s : e->section) {
                    ClassString cs{s, {}};
                    out.strings.push_back(cs);
                    ++rec.emitted;
                }
            } else if (v.bound <= dim) {
                throw UnresolvedCase(e->name + ": registry bound does not exceed the target");
            }
        } else if (int m = cl.matching_bound(start); m > dim) {
            rec.resolution = "matching";
            rec.bound = m;
        } else {
            throw UnresolvedCase(rs.spec().name() + " dim " + std::to_string(dim) + ": " + start.letters);
        }
        out.cases.push_back(rec);
    }
    std::sort(out.strings.begin(), out.strings.end());
    return out;
}

// Cached by (family, rank, dim); the engine is deterministic.
inline const Classification& classification(RootSystemSpec spec, int dim) {
    static std::mutex mu;
    static std::map<std::pair<RootSystemSpec, int>, Classification> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(spec, dim);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    RootSystem rs(spec);
    return cache.emplace(key, classify_extensive(rs, dim)).first->second;
}

// ---------------------------------------------------------------------------
// Weight polynomials and table comparison

// coefficient of v^k = number of strings with k letters S
inline std::map<int, int> s_weight(const std::vector<std::string>& strings) {
    std::map<int, int> w;
    for (const auto& s : strings) ++w[static_cast<int>(std::count(s.begin(), s.end(), 'S'))];
    return w;
}

inline std::string weight_text(const std::map<int, int>& w) {
    if (w.empty()) return "0";
    std::string out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (!out.empty()) out += " + ";
        if (it->second != 1 || it->first == 0) out += std::to_string(it->second);
        if (it->first > 0) out += it->first == 1 ? "v" : "v^" + std::to_string(it->first);
    }
    return out;
}

struct VerificationReport {
    RootSystemSpec spec;
    int dim = 0;
    bool table_present = false;
    std::size_t ours = 0, printed = 0;
    bool exact_raw = false;          // letters compared as printed
    bool exact = false;              // after padding and letter normalization
    bool exact_with_errata = false;
    std::map<int, int> weight_ours, weight_printed, weight_amended;
    bool weight_equal = false;
    bool weight_equal_with_errata = false;
    std::vector<std::string> rank_failures;  // printed strings whose rank check failed
    std::size_t rank_checked = 0;
    std::vector<std::string> errata_applied;

    bool passed() const { return table_present && weight_equal_with_errata && rank_failures.empty(); }
};

inline VerificationReport verify_against_tables(const RootSystem& rs, int dim, std::uint64_t seed = 1) {
    VerificationReport rep;
    rep.spec = rs.spec();
    rep.dim = dim;
    auto table = data::string_table(rs.spec(), dim);
    const auto& cls = classification(rs.spec(), dim);
    std::vector<std::string> ours;
    for (const auto& s : cls.strings) ours.push_back(s.letters);
    rep.ours = ours.size();
    rep.weight_ours = s_weight(ours);
    if (!table) return rep;
    rep.table_present = true;
    rep.printed = table->strings.size();

    const std::size_t n = rs.size();
    std::set<std::string> mine(ours.begin(), ours.end()), raw, norm;
    for (const auto& s : table->strings) {
        raw.insert(data::normalize_string(s, n, 'A'));
        norm.insert(data::normalize_string(s, n, table->arm_letter));
    }
    std::set<std::string> amended = norm;
    for (const auto& e : data::errata()) {
        if (e.spec != rs.spec() || e.dim != dim) continue;
        auto s = data::normalize_string(e.string, n, table->arm_letter);
        if (e.add)
            amended.insert(s);
        else
            amended.erase(s);
        rep.errata_applied.push_back((e.add ? "add " : "remove ") + e.string);
    }
    rep.exact_raw = raw == mine;
    rep.exact = norm == mine;
    rep.exact_with_errata = amended == mine;
    rep.weight_printed = s_weight({norm.begin(), norm.end()});
    rep.weight_amended = s_weight({amended.begin(), amended.end()});
    rep.weight_equal = rep.weight_printed == rep.weight_ours;
    rep.weight_equal_with_errata = rep.weight_amended == rep.weight_ours;

    std::mt19937_64 rng(seed);
    for (const auto& s : amended) {
        ClassString cs{s, {}};
        auto f = random_form_on(cs.saturated(), rng);
        ++rep.rank_checked;
        if (bform_rank(rs, f) != dim) rep.rank_failures.push_back(s);
    }
    return rep;
}

}  // namespace orbitkit
