#pragma once
// Move-based classification engine.
//
// A search state is a string over {S, A, I, L, Q}, one letter per root:
//   Q  root of the current quattern X, not yet decided
//   S  root of X whose coordinate is required nonzero (saturated, set Z)
//   I  coordinate forced to zero
//   A/L  arm/leg of an AL-move (removed from X)
// X = {S, Q} positions, Z = {S} positions. Finished strings have no Q; the
// orbit dimension of their family is twice the number of A letters.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core.hpp"
#include "quattern.hpp"
#include "rootsys.hpp"

namespace orbitkit {

struct ClassString {
    std::string letters;
    std::vector<std::pair<int, int>> al_pairs;  // (arm, leg), 0-based, in move order

    IndexSet quattern() const { return mask_of("SQ"); }
    IndexSet saturated() const { return mask_of("S"); }
    int count(char c) const { return static_cast<int>(std::count(letters.begin(), letters.end(), c)); }
    int dimension() const { return 2 * count('A'); }
    bool finished() const { return count('Q') == 0; }

    IndexSet mask_of(const char* set) const {
        IndexSet m = 0;
        for (std::size_t k = 0; k < letters.size(); ++k)
            if (std::char_traits<char>::find(set, std::char_traits<char>::length(set), letters[k])) m |= bit(k);
        return m;
    }

    friend bool operator==(const ClassString& a, const ClassString& b) { return a.letters == b.letters; }
    friend bool operator<(const ClassString& a, const ClassString& b) { return a.letters < b.letters; }
};

struct AlMove {
    int gamma = 0;  // saturated center root, gamma = beta + delta
    int beta = 0;   // arm
    int delta = 0;  // leg
    friend auto operator<=>(const AlMove&, const AlMove&) = default;
};

struct NotApplicable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Step31Result {
    bool abelian = true;
    std::vector<ClassString> finished;
    std::vector<ClassString> leftovers;
};

class Classifier {
public:
    explicit Classifier(const RootSystem& rs) : rs_(rs) {
        for (int a = 0; a < rs.spec().rank; ++a)
            for (int b = a + 1; b < rs.spec().rank; ++b)
                if (rs.sum(a, b) >= 0) simple_sums_ |= bit(rs.sum(a, b));
    }

    const RootSystem& roots() const { return rs_; }

    ClassString make_state(IndexSet x, IndexSet z) const {
        ClassString s;
        s.letters.assign(rs_.size(), 'I');
        for_each_bit(x, [&](int k) { s.letters[k] = has(z, k) ? 'S' : 'Q'; });
        return s;
    }

    // Step 1: the support bound for orbits of dimension 2d.
    ClassString mask(int d) const {
        if (d < 1) throw std::invalid_argument("mask needs d >= 1");
        return make_state(supp_d(rs_, d), 0);
    }

    // I/S-move at a center root of X outside Z: (saturated, zeroed).
    std::pair<ClassString, ClassString> is_move(const ClassString& s, int i) const {
        const IndexSet x = s.quattern(), z = s.saturated();
        if (i < 0 || i >= rs_.size() || s.letters[i] != 'Q' || !has(center(rs_, x) & ~z, i))
            throw NotApplicable("I/S-move needs an undecided center root");
        ClassString sat = s, zero = s;
        sat.letters[i] = 'S';
        zero.letters[i] = 'I';
        return {sat, zero};
    }

    // AL-move candidates, sorted lexicographically by (gamma, beta, delta).
    std::vector<AlMove> al_candidates(IndexSet x, IndexSet z) const {
        std::vector<AlMove> out;
        for_each_bit(z & x, [&](int g) {
            for (auto [d, b] : rs_.decompositions(g)) {
                if (!has(x, d) || !has(x, b)) continue;
                if (decomposes_inside(x, b)) continue;
                bool leg_ok = true;
                for_each_bit(x & rs_.partners(d), [&](int y) {
                    const int k = rs_.sum(d, y);
                    if (has(x, k) && k != g) leg_ok = false;
                });
                if (leg_ok) out.push_back({g, b, d});
            }
        });
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<AlMove> al_candidates(const ClassString& s) const {
        return al_candidates(s.quattern(), s.saturated());
    }

    ClassString al_move(const ClassString& s, int beta, int delta) const {
        auto cands = al_candidates(s);
        auto it = std::find_if(cands.begin(), cands.end(),
                               [&](const AlMove& m) { return m.beta == beta && m.delta == delta; });
        if (it == cands.end()) throw NotApplicable("not an AL-move of this state");
        ClassString out = s;
        out.letters[beta] = 'A';
        out.letters[delta] = 'L';
        out.al_pairs.emplace_back(beta, delta);
        return out;
    }

    // Step 2: saturate the center by I/S-moves; keep extensive results.
    std::vector<ClassString> step2(int d) const {
        std::vector<ClassString> out;
        std::map<std::pair<IndexSet, IndexSet>, bool> seen;
        std::function<void(IndexSet, IndexSet)> rec = [&](IndexSet x, IndexSet z) {
            if (!seen.emplace(std::make_pair(x, z), true).second) return;
            const IndexSet open = center(rs_, x) & ~z;
            if (!open) {
                if ((simple_sums_ & x) == simple_sums_ && simple_sums_ != 0) out.push_back(make_state(x, z));
                return;
            }
            const int a = lowest(open);
            rec(x, z | bit(a));
            rec(x & ~bit(a), z);
        };
        rec(mask(d).quattern(), 0);
        return out;
    }

    // Step 3.1: I/S first at the lowest open center root, then the
    // lexicographically smallest AL-move.
    Step31Result step31(const ClassString& start) const {
        Step31Result res;
        std::function<void(ClassString)> rec = [&](ClassString s) {
            const IndexSet x = s.quattern(), z = s.saturated();
            const IndexSet open = center(rs_, x) & ~z;
            if (open) {
                auto [sat, zero] = is_move(s, lowest(open));
                rec(std::move(sat));
                rec(std::move(zero));
                return;
            }
            if (x == z) {
                res.finished.push_back(std::move(s));
                return;
            }
            auto cands = al_candidates(x, z);
            if (cands.empty()) {
                res.abelian = false;
                res.leftovers.push_back(std::move(s));
                return;
            }
            rec(al_move(s, cands.front().beta, cands.front().delta));
        };
        rec(start);
        return res;
    }

    // Step 3.2: exhaustive search over AL choices; the first path (in
    // candidate order) that removes every Q wins.
    std::optional<std::vector<ClassString>> step32(const ClassString& start) const {
        using Key = std::pair<IndexSet, IndexSet>;
        struct Partial {
            std::vector<std::pair<int, char>> letters;
            std::vector<std::pair<int, int>> al;
        };
        using Result = std::optional<std::vector<Partial>>;
        std::map<Key, Result> memo;
        std::function<Result(IndexSet, IndexSet)> solve = [&](IndexSet x, IndexSet z) -> Result {
            if (auto it = memo.find({x, z}); it != memo.end()) return it->second;
            Result res;
            const IndexSet open = center(rs_, x) & ~z;
            if (open) {
                const int a = lowest(open);
                auto r1 = solve(x, z | bit(a));
                if (r1) {
                    auto r2 = solve(x & ~bit(a), z);
                    if (r2) {
                        std::vector<Partial> all;
                        for (auto p : *r1) {
                            p.letters.emplace_back(a, 'S');
                            all.push_back(std::move(p));
                        }
                        for (auto p : *r2) {
                            p.letters.emplace_back(a, 'I');
                            all.push_back(std::move(p));
                        }
                        res = std::move(all);
                    }
                }
            } else if (x == z) {
                res = std::vector<Partial>{Partial{}};
            } else {
                for (const auto& m : al_candidates(x, z)) {
                    auto r = solve(x & ~bit(m.beta) & ~bit(m.delta), z);
                    if (!r) continue;
                    std::vector<Partial> all;
                    for (auto p : *r) {
                        p.letters.emplace_back(m.beta, 'A');
                        p.letters.emplace_back(m.delta, 'L');
                        p.al.insert(p.al.begin(), {m.beta, m.delta});
                        all.push_back(std::move(p));
                    }
                    res = std::move(all);
                    break;
                }
            }
            memo.emplace(Key{x, z}, res);
            return res;
        };
        auto r = solve(start.quattern(), start.saturated());
        if (!r) return std::nullopt;
        std::vector<ClassString> out;
        for (const auto& p : *r) {
            ClassString s = start;
            for (auto [k, c] : p.letters) s.letters[k] = c;
            s.al_pairs.insert(s.al_pairs.end(), p.al.begin(), p.al.end());
            out.push_back(std::move(s));
        }
        return out;
    }

    // Step 3.3: lower estimate for the dimension of every Z-saturated orbit.
    int step33(const ClassString& s) const { return estimate(s.quattern(), s.saturated(), false); }
    int step33(IndexSet x, IndexSet z) const { return estimate(x, z, false); }

    // Step 3.3 with the matching certificate added at every node: k disjoint
    // pairs with sums in Z whose sum graph has a unique perfect matching give
    // a nonsingular 2k-minor of B_f (its Pfaffian is a single monomial).
    int matching_bound(const ClassString& s) const { return estimate(s.quattern(), s.saturated(), true); }

    // Largest certified 2k for a single state (k <= kmax).
    int matching_certificate(IndexSet x, IndexSet z, int kmax = 4) const {
        std::vector<std::pair<int, int>> pairs;
        for_each_bit(z & x, [&](int g) {
            for (auto [a, b] : rs_.decompositions(g))
                if (a < b && has(x, a) && has(x, b)) pairs.emplace_back(a, b);
        });
        int best = 0;
        std::vector<int> chosen;
        std::function<void(std::size_t, IndexSet)> rec = [&](std::size_t start, IndexSet used) {
            best = std::max(best, static_cast<int>(chosen.size()));
            if (static_cast<int>(chosen.size()) == kmax) return;
            for (std::size_t t = start; t < pairs.size(); ++t) {
                auto [a, b] = pairs[t];
                if (has(used, a) || has(used, b)) continue;
                const IndexSet next = used | bit(a) | bit(b);
                if (perfect_matchings(x, next) != 1) continue;
                chosen.push_back(static_cast<int>(t));
                rec(t + 1, next);
                chosen.pop_back();
            }
        };
        rec(0, 0);
        return 2 * best;
    }

private:
    bool decomposes_inside(IndexSet x, int b) const {
        for (auto [u, v] : rs_.decompositions(b))
            if (has(x, u) && has(x, v)) return true;
        return false;
    }

    // Perfect matchings of the graph on `verts` with edges {u, v}, u+v in X.
    long long perfect_matchings(IndexSet x, IndexSet verts) const {
        std::unordered_map<IndexSet, long long> memo;
        std::function<long long(IndexSet)> count = [&](IndexSet m) -> long long {
            if (!m) return 1;
            if (auto it = memo.find(m); it != memo.end()) return it->second;
            const int u = lowest(m);
            const IndexSet rest = m & ~bit(u);
            long long total = 0;
            for_each_bit(rest & rs_.partners(u), [&](int v) {
                if (has(x, rs_.sum(u, v))) total += count(rest & ~bit(v));
            });
            memo.emplace(m, total);
            return total;
        };
        return count(verts);
    }

    int estimate(IndexSet x0, IndexSet z0, bool with_matching) const {
        struct PairHash {
            std::size_t operator()(const std::pair<IndexSet, IndexSet>& k) const {
                return std::hash<IndexSet>()(k.first * 0x9e3779b97f4a7c15ULL ^ k.second);
            }
        };
        std::unordered_map<std::pair<IndexSet, IndexSet>, int, PairHash> memo;
        std::function<int(IndexSet, IndexSet)> rec = [&](IndexSet x, IndexSet z) -> int {
            if (auto it = memo.find({x, z}); it != memo.end()) return it->second;
            int res = 0;
            const IndexSet open = center(rs_, x) & ~z;
            if (open) {
                const int a = lowest(open);
                res = std::min(rec(x, z | bit(a)), rec(x & ~bit(a), z));
            } else {
                auto cands = al_candidates(x, z);
                if (cands.empty()) res = (z & internal_sums(rs_, x)) ? 2 : 0;
                for (const auto& m : cands) res = std::max(res, 2 + rec(x & ~bit(m.beta) & ~bit(m.delta), z));
                if (with_matching) res = std::max(res, matching_certificate(x, z));
            }
            memo.emplace(std::make_pair(x, z), res);
            return res;
        };
        return rec(x0, z0);
    }

    const RootSystem& rs_;
    IndexSet simple_sums_ = 0;
};

}  // namespace orbitkit
