#pragma once
// Sum-closed root subsets (patterns), their differences (quatterns) and the
// combinatorial center used by the classification moves.

#include <optional>
#include <stdexcept>
#include <utility>

#include "core.hpp"
#include "rootsys.hpp"

namespace orbitkit {

struct NotAPattern : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IdealConditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Quattern {
    IndexSet X = 0;
    std::optional<std::pair<IndexSet, IndexSet>> witness;  // (plus, minus)
};

inline bool is_c_pattern(const RootSystem& rs, IndexSet x) {
    bool ok = true;
    for_each_bit(x, [&](int a) {
        for_each_bit(x & rs.partners(a), [&](int b) { ok = ok && has(x, rs.sum(a, b)); });
    });
    return ok;
}

inline Quattern make_quattern(const RootSystem& rs, IndexSet plus, IndexSet minus) {
    if (!is_c_pattern(rs, plus)) throw NotAPattern("X_plus is not sum-closed");
    if (!is_c_pattern(rs, minus)) throw NotAPattern("X_minus is not sum-closed");
    if (minus & ~plus) throw NotAPattern("X_minus is not contained in X_plus");
    for_each_bit(minus, [&](int a) {
        for_each_bit(plus & rs.partners(a), [&](int b) {
            const int s = rs.sum(a, b);
            if (has(plus, s) && !has(minus, s)) throw IdealConditionViolated("X_minus is not an ideal of X_plus");
        });
    });
    return {plus & ~minus, std::make_pair(plus, minus)};
}

// Sums of two members of x that land in x.
inline IndexSet internal_sums(const RootSystem& rs, IndexSet x) {
    IndexSet out = 0;
    for_each_bit(x, [&](int a) {
        for_each_bit(x & rs.partners(a), [&](int b) { out |= bit(rs.sum(a, b)); });
    });
    return out & x;
}

// Z(X): members whose sum with any member leaves X.
inline IndexSet center(const RootSystem& rs, IndexSet x) {
    IndexSet out = 0;
    for_each_bit(x, [&](int a) {
        bool central = true;
        for_each_bit(x & rs.partners(a), [&](int b) { central = central && !has(x, rs.sum(a, b)); });
        if (central) out |= bit(a);
    });
    return out;
}

inline IndexSet center(const RootSystem& rs, const Quattern& q) { return center(rs, q.X); }

// Large: the complement is closed under adding any positive root.
inline bool is_large(const RootSystem& rs, IndexSet x) {
    const IndexSet rest = rs.all() & ~x;
    bool ok = true;
    for_each_bit(rest, [&](int a) {
        for_each_bit(rs.partners(a), [&](int b) { ok = ok && !has(x, rs.sum(a, b)); });
    });
    return ok;
}

inline bool is_large(const RootSystem& rs, const Quattern& q) { return is_large(rs, q.X); }

inline IndexSet zero_dim_locus(const RootSystem& rs, IndexSet x) { return x & ~internal_sums(rs, x); }

}  // namespace orbitkit
