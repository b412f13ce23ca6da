#pragma once
// Brute-force ground truth over F_p: orbits of the unipotent group on the
// dual of the nilradical, found by union-find over every form, and rank
// censuses of B_f for systems too large to store.
//
// A form is a mixed-radix integer: coefficient k is digit k in base p.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "classify.hpp"
#include "forms.hpp"
#include "linalg.hpp"
#include "rootsys.hpp"

namespace orbitkit {

struct CharacteristicTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OrbitSizeAnomaly : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t default_budget = 20'000'000;

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Smallest prime above the height of the highest root; with `safe`, above
// dim g instead.
inline std::uint32_t minimal_prime(const RootSystem& rs, bool safe = false) {
    const int bound = safe ? 2 * rs.size() + rs.spec().rank : rs.height(rs.highest());
    std::uint32_t p = static_cast<std::uint32_t>(bound) + 1;
    while (!is_prime(p)) ++p;
    return p;
}

inline void require_admissible(const RootSystem& rs, std::uint32_t p, bool safe = false) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p < minimal_prime(rs, safe))
        throw CharacteristicTooSmall("p = " + std::to_string(p) + " is too small for " + rs.spec().name());
}

inline std::uint64_t checked_power(std::uint64_t p, int e, std::uint64_t budget) {
    std::uint64_t r = 1;
    for (int k = 0; k < e; ++k) {
        if (r > budget / p) throw BudgetExceeded(std::to_string(p) + "^" + std::to_string(e) + " exceeds the budget");
        r *= p;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Generators

// Row b of the result gives (g.f)(e_b) = sum_c M[b][c] f(e_c) for
// g = exp(t e_a), acting by f -> f o Ad(exp(-t e_a)).
inline Matrix<std::uint32_t> generator_action(const RootSystem& rs, std::uint32_t p, int alpha, std::uint32_t t) {
    require_admissible(rs, p);
    PrimeField F(p);
    const int N = rs.size();
    Matrix<std::uint32_t> m(N, std::vector<std::uint32_t>(N, 0));
    const std::uint64_t minus_t = F.sub(0, t % p);
    for (int b = 0; b < N; ++b) {
        m[b][b] = 1;
        std::uint64_t chain = 1;  // product of structure constants along b, b+a, ...
        std::uint64_t power = 1, fact = 1;
        int cur = b;
        for (int k = 1;; ++k) {
            const int next = rs.sum(alpha, cur);
            if (next < 0) break;
            chain = F.mul(chain, F.reduce(rs.n(alpha, cur)));
            power = F.mul(power, minus_t);
            fact = F.mul(fact, k);
            m[b][next] = static_cast<std::uint32_t>(F.add(m[b][next], F.mul(F.mul(chain, power), F.inv(fact))));
            cur = next;
        }
    }
    return m;
}

// The same map computed by conjugating matrices of the defining
// representation. Used to cross-check generator_action.
inline Matrix<std::uint32_t> conjugation_action(const RootSystem& rs, std::uint32_t p, int alpha, std::uint32_t t) {
    require_admissible(rs, p);
    PrimeField F(p);
    const auto spec = rs.spec();
    const int M = matrix_size(spec), N = rs.size();
    using Dense = Matrix<std::uint64_t>;
    auto dense = [&](const SparseMatrix& s) {
        Dense d(M, std::vector<std::uint64_t>(M, 0));
        for (const auto& [pos, v] : s.entries) d[pos.first][pos.second] = F.reduce(v);
        return d;
    };
    auto mul = [&](const Dense& a, const Dense& b) {
        Dense c(M, std::vector<std::uint64_t>(M, 0));
        for (int i = 0; i < M; ++i)
            for (int k = 0; k < M; ++k)
                if (a[i][k])
                    for (int j = 0; j < M; ++j) c[i][j] = F.add(c[i][j], F.mul(a[i][k], b[k][j]));
        return c;
    };
    auto exp_of = [&](const Dense& x, std::uint64_t s) {
        Dense out(M, std::vector<std::uint64_t>(M, 0)), term(M, std::vector<std::uint64_t>(M, 0));
        for (int i = 0; i < M; ++i) out[i][i] = term[i][i] = 1;
        for (int k = 1; k <= M; ++k) {
            term = mul(term, x);
            const std::uint64_t scale = F.mul(s, F.inv(k));
            bool nonzero = false;
            for (auto& row : term)
                for (auto& v : row) {
                    v = F.mul(v, scale);
                    nonzero = nonzero || v;
                }
            if (!nonzero) break;
            for (int i = 0; i < M; ++i)
                for (int j = 0; j < M; ++j) out[i][j] = F.add(out[i][j], term[i][j]);
        }
        return out;
    };
    const Dense ea = dense(root_vector(spec, rs.root(alpha)));
    const Dense left = exp_of(ea, F.sub(0, t % p)), right = exp_of(ea, t % p);
    std::vector<Dense> basis;
    for (int k = 0; k < N; ++k) basis.push_back(dense(root_vector(spec, rs.root(k))));

    Matrix<std::uint32_t> m(N, std::vector<std::uint32_t>(N, 0));
    for (int b = 0; b < N; ++b) {
        const Dense x = mul(mul(left, basis[b]), right);
        Dense rebuilt(M, std::vector<std::uint64_t>(M, 0));
        for (int c = 0; c < N; ++c) {
            // root vectors have pairwise disjoint supports; read one entry
            const auto& [pos, v] = *root_vector(spec, rs.root(c)).entries.begin();
            const std::uint64_t a = F.mul(x[pos.first][pos.second], F.inv(F.reduce(v)));
            m[b][c] = static_cast<std::uint32_t>(a);
            for (int i = 0; i < M; ++i)
                for (int j = 0; j < M; ++j) rebuilt[i][j] = F.add(rebuilt[i][j], F.mul(a, basis[c][i][j]));
        }
        if (rebuilt != x) throw std::logic_error("conjugate of a root vector left the nilradical");
    }
    return m;
}

// ---------------------------------------------------------------------------
// Orbit enumeration

enum class Generators { AllRoots, SimpleRoots };

struct OrbitCensus {
    std::uint32_t p = 0;
    std::map<int, std::uint64_t> by_dimension;  // 2e -> number of orbits
    std::uint64_t total_forms = 0;
    std::uint64_t total_orbits = 0;

    // sum count(2e) p^{2e} == p^{|positive roots|}
    bool partition_identity() const {
        std::uint64_t sum = 0;
        for (auto [d, c] : by_dimension) {
            std::uint64_t size = 1;
            for (int k = 0; k < d; ++k) size *= p;
            sum += c * size;
        }
        return sum == total_forms;
    }
    std::uint64_t count(int dim) const {
        auto it = by_dimension.find(dim);
        return it == by_dimension.end() ? 0 : it->second;
    }
};

class FormCodec {
public:
    FormCodec(int length, std::uint32_t p) : n_(length), p_(p) {}
    void decode(std::uint64_t code, std::vector<std::uint32_t>& f) const {
        f.resize(n_);
        for (int k = 0; k < n_; ++k) {
            f[k] = static_cast<std::uint32_t>(code % p_);
            code /= p_;
        }
    }
    std::uint64_t encode(const std::vector<std::uint32_t>& f) const {
        std::uint64_t code = 0;
        for (int k = n_ - 1; k >= 0; --k) code = code * p_ + f[k];
        return code;
    }

private:
    int n_;
    std::uint32_t p_;
};

// Orbit partition of all p^N forms.
class OrbitPartition {
public:
    OrbitPartition(const RootSystem& rs, std::uint32_t p, Generators gens = Generators::AllRoots,
                   std::uint64_t budget = default_budget)
        : rs_(rs), p_(p), codec_(rs.size(), p) {
        require_admissible(rs, p);
        const int N = rs.size();
        total_ = checked_power(p, N, budget);
        if (total_ > UINT32_MAX) throw BudgetExceeded("state space does not fit 32-bit indices");
        parent_.resize(total_);
        for (std::uint64_t s = 0; s < total_; ++s) parent_[s] = static_cast<std::uint32_t>(s);

        std::vector<Matrix<std::uint32_t>> actions;
        const int count = gens == Generators::AllRoots ? N : rs.spec().rank;
        for (int a = 0; a < count; ++a) actions.push_back(generator_action(rs, p, a, 1));

        std::vector<std::uint32_t> f, g(N);
        for (std::uint64_t s = 0; s < total_; ++s) {
            codec_.decode(s, f);
            for (const auto& m : actions) {
                for (int b = 0; b < N; ++b) {
                    std::uint64_t acc = 0;
                    for (int c = 0; c < N; ++c) acc += static_cast<std::uint64_t>(m[b][c]) * f[c];
                    g[b] = static_cast<std::uint32_t>(acc % p);
                }
                unite(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(codec_.encode(g)));
            }
        }

        std::map<std::uint32_t, std::uint64_t> sizes;
        for (std::uint64_t s = 0; s < total_; ++s) ++sizes[find(static_cast<std::uint32_t>(s))];
        census_.p = p;
        census_.total_forms = total_;
        census_.total_orbits = sizes.size();
        for (auto [root, size] : sizes) {
            int e = 0;
            std::uint64_t x = size;
            while (x % p == 0) {
                x /= p;
                ++e;
            }
            if (x != 1 || e % 2) throw OrbitSizeAnomaly("orbit of size " + std::to_string(size) + " over F_" + std::to_string(p));
            dim_of_root_[root] = e;
            ++census_.by_dimension[e];
        }
    }

    const OrbitCensus& census() const { return census_; }
    std::uint64_t size() const { return total_; }
    const FormCodec& codec() const { return codec_; }
    std::uint32_t orbit_of(std::uint64_t code) const { return find(static_cast<std::uint32_t>(code)); }
    int dimension_of(std::uint64_t code) const { return dim_of_root_.at(orbit_of(code)); }

private:
    std::uint32_t find(std::uint32_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent_[a] = b;
    }

    const RootSystem& rs_;
    std::uint32_t p_;
    FormCodec codec_;
    std::uint64_t total_ = 0;
    mutable std::vector<std::uint32_t> parent_;
    std::map<std::uint32_t, int> dim_of_root_;
    OrbitCensus census_;
};

inline OrbitCensus enumerate_orbits(const RootSystem& rs, std::uint32_t p, Generators gens = Generators::AllRoots,
                                    std::uint64_t budget = default_budget) {
    return OrbitPartition(rs, p, gens, budget).census();
}

// ---------------------------------------------------------------------------
// Rank census

namespace detail {

// Rank of B_f over F_p for f given on every root.
class RankEvaluator {
public:
    RankEvaluator(const RootSystem& rs, std::uint32_t p) : p_(p), N_(rs.size()) {
        for (int i = 0; i < N_; ++i)
            for_each_bit(rs.partners(i), [&](int j) {
                entries_.push_back({i, j, rs.sum(i, j), static_cast<std::uint32_t>(PrimeField(p).reduce(rs.n(i, j)))});
            });
        inv_.resize(p);
        PrimeField F(p);
        for (std::uint32_t a = 1; a < p; ++a) inv_[a] = static_cast<std::uint32_t>(F.inv(a));
        m_.assign(N_ * N_, 0);
    }

    int operator()(const std::vector<std::uint32_t>& f) {
        std::fill(m_.begin(), m_.end(), 0);
        for (const auto& e : entries_) m_[e.i * N_ + e.j] = (e.n * f[e.sum]) % p_;
        int rank = 0;
        for (int c = 0; c < N_ && rank < N_; ++c) {
            int piv = -1;
            for (int r = rank; r < N_; ++r)
                if (m_[r * N_ + c]) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            if (piv != rank)
                for (int k = c; k < N_; ++k) std::swap(m_[piv * N_ + k], m_[rank * N_ + k]);
            const std::uint32_t inv = inv_[m_[rank * N_ + c]];
            for (int r = rank + 1; r < N_; ++r) {
                const std::uint32_t x = m_[r * N_ + c];
                if (!x) continue;
                const std::uint32_t factor = (x * inv) % p_;
                for (int k = c; k < N_; ++k)
                    m_[r * N_ + k] = (m_[r * N_ + k] + (p_ - factor) * m_[rank * N_ + k]) % p_;
            }
            ++rank;
        }
        return rank;
    }

private:
    struct Entry {
        int i, j, sum;
        std::uint32_t n;
    };
    std::uint32_t p_;
    int N_;
    std::vector<Entry> entries_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::uint32_t> m_;
};

}  // namespace detail

struct RankCensus {
    std::uint32_t p = 0;
    std::map<int, std::uint64_t> forms_by_rank;
    std::map<int, IndexSet> support_union;  // union of supports of forms of each rank
    std::uint64_t total_forms = 0;

    // count(2e) = #{f : rk B_f = 2e} / p^{2e}; throws if not integral or odd.
    OrbitCensus orbits() const {
        OrbitCensus c;
        c.p = p;
        c.total_forms = total_forms;
        for (auto [r, n] : forms_by_rank) {
            if (r % 2) throw OrbitSizeAnomaly("odd rank " + std::to_string(r));
            std::uint64_t size = 1;
            for (int k = 0; k < r; ++k) size *= p;
            if (n % size) throw OrbitSizeAnomaly("rank-" + std::to_string(r) + " forms do not split into orbits");
            c.by_dimension[r] = n / size;
            c.total_orbits += n / size;
        }
        return c;
    }
};

// B_f ignores the values on simple roots (they are never sums), so only the
// other coordinates are enumerated and each result counts p^rank forms.
inline RankCensus rank_census(const RootSystem& rs, std::uint32_t p, unsigned jobs = 1,
                              std::uint64_t budget = 4'000'000'000ULL) {
    require_admissible(rs, p);
    const int N = rs.size(), r = rs.spec().rank;
    std::vector<int> free_roots;
    for (int k = 0; k < N; ++k)
        if (!rs.decompositions(k).empty()) free_roots.push_back(k);
    const std::uint64_t states = checked_power(p, static_cast<int>(free_roots.size()), budget);
    const std::uint64_t multiplicity = checked_power(p, r, UINT64_MAX);
    IndexSet simple_mask = 0;
    for (int k = 0; k < N; ++k)
        if (rs.decompositions(k).empty()) simple_mask |= bit(k);

    jobs = std::max(1U, jobs);
    std::vector<std::map<int, std::uint64_t>> counts(jobs);
    std::vector<std::map<int, IndexSet>> unions(jobs);
    auto worker = [&](unsigned id) {
        detail::RankEvaluator eval(rs, p);
        std::vector<std::uint32_t> f(N, 0);
        for (std::uint64_t s = id; s < states; s += jobs) {
            std::uint64_t code = s;
            IndexSet supp = 0;
            for (int k : free_roots) {
                f[k] = static_cast<std::uint32_t>(code % p);
                if (f[k]) supp |= bit(k);
                code /= p;
            }
            const int rk = eval(f);
            counts[id][rk] += multiplicity;
            unions[id][rk] |= supp | simple_mask;
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
        for (auto& t : pool) t.join();
    }
    RankCensus out;
    out.p = p;
    out.total_forms = states * multiplicity;
    for (unsigned id = 0; id < jobs; ++id) {
        for (auto [rk, n] : counts[id]) out.forms_by_rank[rk] += n;
        for (auto [rk, s] : unions[id]) out.support_union[rk] |= s;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Set-sections and families

namespace detail {

// Calls visit(code) for every form that is nonzero exactly on `nonzero`, and
// arbitrary on `free` when given.
template <class F>
void for_each_form(int N, std::uint32_t p, IndexSet nonzero, IndexSet free, std::uint64_t budget, F&& visit) {
    const auto nz = to_indices(nonzero), fr = to_indices(free & ~nonzero);
    std::uint64_t total = checked_power(p - 1, static_cast<int>(nz.size()), budget);
    total = checked_power(p, static_cast<int>(fr.size()), budget / total) * total;
    std::vector<std::uint32_t> f(N, 0);
    for (std::uint64_t s = 0; s < total; ++s) {
        std::uint64_t code = s;
        for (int k : nz) {
            f[k] = static_cast<std::uint32_t>(code % (p - 1)) + 1;
            code /= p - 1;
        }
        for (int k : fr) {
            f[k] = static_cast<std::uint32_t>(code % p);
            code /= p;
        }
        visit(f);
    }
}

}  // namespace detail

// Extensive test by support alone: every Dynkin edge a-b needs a support
// root at or above a + b.
inline std::vector<IndexSet> extensive_edge_masks(const RootSystem& rs) {
    std::vector<IndexSet> masks;
    for (auto [a, b] : rs.diagram().edges()) masks.push_back(rs.at_or_above(rs.sum(a, b)));
    return masks;
}

inline bool extensive_support(const std::vector<IndexSet>& masks, IndexSet supp) {
    return std::all_of(masks.begin(), masks.end(), [&](IndexSet m) { return (m & supp) != 0; });
}

struct SectionReport {
    std::uint64_t section_points = 0;
    std::uint64_t orbits_of_dim = 0;      // extensive orbits of the target dimension
    std::uint64_t orbits_hit = 0;
    std::uint64_t orbits_hit_twice = 0;
    std::uint64_t points_in_wrong_dim = 0;
    std::uint64_t points_not_extensive = 0;
    bool passed() const {
        return orbits_hit == orbits_of_dim && orbits_hit_twice == 0 && points_in_wrong_dim == 0 &&
               points_not_extensive == 0;
    }
};

// Each extensive orbit of dimension `dim` meets the union of V(S) (support
// exactly the saturated set S of each string) in exactly one point.
// Extensiveness is a property of the orbit since NSupp is invariant.
inline SectionReport section_check(const OrbitPartition& part, const RootSystem& rs,
                                   const std::vector<ClassString>& strings, int dim) {
    SectionReport rep;
    const auto masks = extensive_edge_masks(rs);
    std::set<std::uint32_t> targets;
    std::vector<std::uint32_t> f;
    for (std::uint64_t s = 0; s < part.size(); ++s) {
        part.codec().decode(s, f);
        IndexSet supp = 0;
        for (int k = 0; k < rs.size(); ++k)
            if (f[k]) supp |= bit(k);
        if (extensive_support(masks, supp) && part.dimension_of(s) == dim) targets.insert(part.orbit_of(s));
    }
    rep.orbits_of_dim = targets.size();
    std::map<std::uint32_t, int> hits;
    for (const auto& str : strings) {
        const IndexSet supp = str.saturated();
        detail::for_each_form(rs.size(), part.census().p, supp, 0, part.size(),
                              [&](const std::vector<std::uint32_t>& g) {
                                  const auto code = part.codec().encode(g);
                                  ++rep.section_points;
                                  if (part.dimension_of(code) != dim) ++rep.points_in_wrong_dim;
                                  if (!extensive_support(masks, supp)) ++rep.points_not_extensive;
                                  if (++hits[part.orbit_of(code)] == 2) ++rep.orbits_hit_twice;
                              });
    }
    for (auto [root, n] : hits)
        if (targets.count(root)) ++rep.orbits_hit;
    return rep;
}

inline SectionReport section_check(const RootSystem& rs, std::uint32_t p, const std::vector<ClassString>& strings,
                                   int dim, std::uint64_t budget = default_budget) {
    OrbitPartition part(rs, p, Generators::AllRoots, budget);
    return section_check(part, rs, strings, dim);
}

struct FamilyReport {
    std::uint64_t forms = 0;
    std::map<int, std::uint64_t> by_rank;
    int expected = 0;
    bool passed() const { return forms > 0 && by_rank.size() == 1 && by_rank.begin()->first == expected; }
};

// Every form nonzero exactly on `nonzero` and arbitrary on `free` has rank
// `expected`. Values on simple roots do not affect B_f, so free simple roots
// are skipped.
inline FamilyReport family_dim_check(const RootSystem& rs, IndexSet nonzero, std::uint32_t p, int expected,
                                     IndexSet free = 0, std::uint64_t budget = default_budget * 10) {
    require_admissible(rs, p);
    IndexSet simple = 0;
    for (int k = 0; k < rs.size(); ++k)
        if (rs.decompositions(k).empty()) simple |= bit(k);
    FamilyReport rep;
    rep.expected = expected;
    detail::RankEvaluator eval(rs, p);
    detail::for_each_form(rs.size(), p, nonzero, free & ~simple, budget, [&](const std::vector<std::uint32_t>& f) {
        ++rep.forms;
        ++rep.by_rank[eval(f)];
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Spot checks

// Union of supports of 2d-dimensional orbits against supp_d, for every d with
// 2d at most |Sing(highest root)|. Returns the offending d values.
inline std::vector<int> support_theorem_failures(const RootSystem& rs, const RankCensus& census) {
    std::vector<int> bad;
    const int top = rs.sing_size(rs.highest());
    for (int d = 0; 2 * d <= top; ++d) {
        auto it = census.support_union.find(2 * d);
        const IndexSet seen = it == census.support_union.end() ? 0 : it->second;
        if (seen != supp_d(rs, d)) bad.push_back(d);
    }
    return bad;
}

// Orbit dimension against the wd bound for every form of the partition.
inline std::uint64_t wd_bound_violations(const OrbitPartition& part, const RootSystem& rs) {
    std::uint64_t bad = 0;
    std::vector<std::uint32_t> f;
    for (std::uint64_t s = 0; s < part.size(); ++s) {
        part.codec().decode(s, f);
        LinearForm lf = LinearForm::prime(part.census().p);
        for (int k = 0; k < rs.size(); ++k) lf.set(k, f[k]);
        if (part.dimension_of(s) < wd(dyn_subdiagram(rs, lf))) ++bad;
    }
    return bad;
}

}  // namespace orbitkit
