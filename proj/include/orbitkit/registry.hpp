#pragma once
// Special non-abelian cases resolved by projection onto a sub-quattern whose
// saturated orbits are already known to be large.
//
// kind "family":     base case; every saturated form of the mask has the
//                    stored dimension (checked over F_p by the oracle) and the
//                    stored strings are its set-section.
// kind "projection": apply `moves`, then the `red` roots with their letters
//                    form a quattern isomorphic to the reference case, so the
//                    bound is x_ref + 2 * (number of moves).
// kind "estimate":   the lower estimate run on the red sub-quattern itself
//                    certifies x_ref.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "core.hpp"
#include "data.hpp"
#include "rootsys.hpp"

namespace orbitkit {

struct CaseRegistryEntry {
    std::string name;
    RootSystemSpec ambient;
    std::string mask;
    std::string kind;
    std::vector<int> red;                      // 0-based
    std::vector<std::pair<int, int>> moves;    // (arm, leg), 0-based
    int d = 0;
    std::string reference;
    int x_ref = 0;
    std::vector<std::string> section;

    int claimed_bound() const { return x_ref + 2 * d; }
};

struct IsomorphismFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidMoves : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<CaseRegistryEntry> parse_registry(const std::string& text) {
    std::vector<CaseRegistryEntry> out;
    for (const auto& j : nlohmann::json::parse(text)) {
        CaseRegistryEntry e;
        e.name = j.at("name");
        e.ambient = {family_from_char(j.at("family").get<std::string>().at(0)), j.at("rank").get<int>()};
        e.mask = j.at("mask");
        e.kind = j.at("kind");
        for (int r : j.at("red")) e.red.push_back(r - 1);
        for (const auto& m : j.at("moves")) e.moves.emplace_back(m.at(0).get<int>() - 1, m.at(1).get<int>() - 1);
        e.d = j.at("d");
        e.reference = j.value("reference", "");
        e.x_ref = j.at("x_ref");
        if (j.contains("section"))
            for (const auto& s : j.at("section")) e.section.push_back(s);
        out.push_back(std::move(e));
    }
    return out;
}

inline const std::vector<CaseRegistryEntry>& registry() {
    static const std::vector<CaseRegistryEntry> entries = parse_registry(data::load_required("registry.json"));
    return entries;
}

inline const CaseRegistryEntry* find_registry_entry(RootSystemSpec spec, const std::string& mask) {
    for (const auto& e : registry())
        if (e.ambient == spec && e.mask == mask) return &e;
    return nullptr;
}

inline const CaseRegistryEntry* find_registry_entry(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return &e;
    return nullptr;
}

// Bijection a -> b between two sub-quatterns preserving saturation and
// internal root sums in both directions.
inline std::optional<std::map<int, int>> quattern_isomorphism(const RootSystem& ra, IndexSet a, IndexSet za,
                                                              const RootSystem& rb, IndexSet b, IndexSet zb) {
    if (popcount(a) != popcount(b) || popcount(za & a) != popcount(zb & b)) return std::nullopt;
    auto sum_in = [](const RootSystem& rs, IndexSet s, int x, int y) {
        const int k = rs.sum(x, y);
        return (k >= 0 && has(s, k)) ? k : -1;
    };
    const auto av = to_indices(a);
    std::map<int, int> phi;
    IndexSet used = 0;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == av.size()) return true;
        const int x = av[k];
        bool found = false;
        for_each_bit(b & ~used, [&](int y) {
            if (found || has(za, x) != has(zb, y)) return;
            phi[x] = y;
            bool ok = true;
            for (const auto& [p, py] : phi) {
                for (const auto& [q, qy] : phi) {
                    const int s1 = sum_in(ra, a, p, q), s2 = sum_in(rb, b, py, qy);
                    if ((s1 < 0) != (s2 < 0)) ok = false;
                    if (s1 >= 0 && phi.count(s1) && phi[s1] != s2) ok = false;
                    if (s2 >= 0 && s1 >= 0 && !phi.count(s1)) {
                        // the image of s1 must not already be taken by another root
                        for (const auto& [r, ry] : phi)
                            if (ry == s2) ok = false;
                    }
                    if (!ok) break;
                }
                if (!ok) break;
            }
            if (ok) {
                used |= bit(y);
                if (rec(k + 1)) {
                    found = true;
                    return;
                }
                used &= ~bit(y);
            }
            phi.erase(x);
        });
        return found;
    };
    if (!rec(0)) return std::nullopt;
    return phi;
}

struct RegistryVerdict {
    bool moves_valid = false;
    bool red_inside = false;      // red roots survive the moves
    bool red_closed = false;      // red is sum-closed within the moved quattern
    bool isomorphic = false;
    int bound = 0;
    bool ok() const { return moves_valid && red_inside && red_closed && isomorphic; }
};

// Mechanical re-check of one registry argument. Throws InvalidMoves or
// IsomorphismFailed; "family" entries are checked by the oracle instead and
// only have their mask validated here.
inline RegistryVerdict verify_registry_entry(const CaseRegistryEntry& e) {
    RegistryVerdict v;
    RootSystem rs(e.ambient);
    Classifier cl(rs);
    if (static_cast<int>(e.mask.size()) != rs.size()) throw InvalidMoves(e.name + ": mask length mismatch");
    ClassString state{e.mask, {}};
    if (e.kind == "family") {
        v.moves_valid = v.red_inside = v.red_closed = v.isomorphic = true;
        v.bound = e.x_ref;
        return v;
    }
    for (auto [arm, leg] : e.moves) {
        try {
            state = cl.al_move(state, arm, leg);
        } catch (const NotApplicable&) {
            throw InvalidMoves(e.name + ": move (" + std::to_string(arm + 1) + ", " + std::to_string(leg + 1) +
                               ") is not an AL-move");
        }
    }
    if (static_cast<int>(e.moves.size()) != e.d) throw InvalidMoves(e.name + ": move count differs from d");
    v.moves_valid = true;
    const IndexSet x = state.quattern(), z = state.saturated();
    const IndexSet red = from_indices(e.red);
    v.red_inside = (red & ~x) == 0;
    v.red_closed = true;
    for_each_bit(red, [&](int a) {
        for_each_bit(red & rs.partners(a), [&](int b) {
            const int s = rs.sum(a, b);
            if (has(x, s) && !has(red, s)) v.red_closed = false;
        });
    });
    if (e.kind == "estimate") {
        v.isomorphic = true;
        v.bound = cl.step33(red, z & red) + 2 * e.d;
        if (v.bound < e.claimed_bound()) throw IsomorphismFailed(e.name + ": estimate below the claimed bound");
        return v;
    }
    const auto* ref = find_registry_entry(e.reference);
    if (!ref) throw IsomorphismFailed(e.name + ": unknown reference " + e.reference);
    RootSystem rr(ref->ambient);
    ClassString rstate{ref->mask, {}};
    auto phi = quattern_isomorphism(rs, red, z & red, rr, rstate.quattern(), rstate.saturated());
    if (!phi) throw IsomorphismFailed(e.name + ": red cells are not isomorphic to " + e.reference);
    if (ref->claimed_bound() != e.x_ref)
        throw IsomorphismFailed(e.name + ": x_ref differs from the reference bound");
    v.isomorphic = true;
    v.bound = e.claimed_bound();
    return v;
}

// True when the entry excludes orbits of dimension `target`.
inline bool verify_projection_bound(const CaseRegistryEntry& e, int target) {
    auto v = verify_registry_entry(e);
    return v.ok() && v.bound > target;
}

}  // namespace orbitkit
