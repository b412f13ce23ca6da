#pragma once
// Number of coadjoint orbits of dimension 2e (e <= 3) as a polynomial in
// v = q - 1: a sum over placements of connected subdiagrams, each weighted by
// the S-count polynomial of its extensive classification, times v + 1 for
// every unused simple root.

#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dynkin.hpp"
#include "extensive.hpp"

namespace orbitkit {

// Integer polynomial, coeffs[k] is the coefficient of x^k.
class VPoly {
public:
    VPoly() = default;
    VPoly(std::vector<long long> c) : c_(std::move(c)) { trim(); }
    static VPoly constant(long long a) { return VPoly({a}); }
    static VPoly monomial(long long a, int k) {
        std::vector<long long> c(k + 1, 0);
        c[k] = a;
        return VPoly(std::move(c));
    }
    static VPoly x() { return monomial(1, 1); }

    const std::vector<long long>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    long long operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0; }

    friend VPoly operator+(const VPoly& a, const VPoly& b) {
        std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[static_cast<int>(k)] + b[static_cast<int>(k)];
        return VPoly(std::move(c));
    }
    friend VPoly operator-(const VPoly& a, const VPoly& b) { return a + b * VPoly::constant(-1); }
    friend VPoly operator*(const VPoly& a, const VPoly& b) {
        if (a.zero() || b.zero()) return {};
        std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return VPoly(std::move(c));
    }
    VPoly& operator+=(const VPoly& b) { return *this = *this + b; }
    VPoly& operator*=(const VPoly& b) { return *this = *this * b; }
    friend bool operator==(const VPoly&, const VPoly&) = default;

    VPoly pow(int e) const {
        VPoly r = constant(1);
        for (int k = 0; k < e; ++k) r *= *this;
        return r;
    }

    // Exact division by a monic polynomial; throws if a remainder is left.
    VPoly divide_exact(const VPoly& d) const {
        if (d.zero() || d.c_.back() != 1) throw std::invalid_argument("divisor must be monic");
        std::vector<long long> r = c_;
        const int dd = d.degree();
        if (degree() < dd) {
            if (!zero()) throw std::domain_error("polynomial division leaves a remainder");
            return {};
        }
        std::vector<long long> q(degree() - dd + 1, 0);
        for (int k = degree() - dd; k >= 0; --k) {
            q[k] = r[k + dd];
            for (int j = 0; j <= dd; ++j) r[k + j] -= q[k] * d.c_[j];
        }
        for (long long x : r)
            if (x != 0) throw std::domain_error("polynomial division leaves a remainder");
        return VPoly(std::move(q));
    }

    // p(x + shift)
    VPoly shifted(long long shift) const {
        VPoly out;
        const VPoly base = VPoly({shift, 1});
        for (int k = degree(); k >= 0; --k) out = out * base + constant(c_[k]);
        return out;
    }
    VPoly to_q() const { return shifted(-1); }   // v-polynomial -> q-polynomial
    VPoly from_q() const { return shifted(1); }  // q-polynomial -> v-polynomial

    long long eval(long long x) const {
        long long r = 0;
        for (int k = degree(); k >= 0; --k) r = r * x + c_[k];
        return r;
    }

    std::string str(char var = 'v') const {
        if (zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const long long a = c_[k];
            if (a == 0) continue;
            if (!out.empty()) out += a < 0 ? " - " : " + ";
            else if (a < 0) out += "-";
            const long long m = a < 0 ? -a : a;
            if (m != 1 || k == 0) out += std::to_string(m);
            if (k > 0) out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<long long> c_;
};

inline VPoly v_plus_one() { return VPoly({1, 1}); }

struct UnresolvedCoverage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class WeightSource { Engine, Tables };

// Sum of v^{#S} over the extensive classification of dimension 2e of a
// connected diagram. Zero when wd exceeds 2e.
inline VPoly weight(Family family, int rank, int e, WeightSource source = WeightSource::Engine) {
    if (e < 1 || e > 3) throw std::invalid_argument("weight needs 1 <= e <= 3");
    if (rank < 2 || wd(ComponentType{family, rank}) > 2 * e) return {};
    if (family == Family::D && rank < 4) family = Family::A;

    static std::mutex mu;
    static std::map<std::tuple<Family, int, int, WeightSource>, VPoly> cache;
    const auto key = std::make_tuple(family, rank, e, source);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    std::map<int, int> w;
    if (source == WeightSource::Engine) {
        std::vector<std::string> strings;
        for (const auto& s : classification({family, rank}, 2 * e).strings) strings.push_back(s.letters);
        w = s_weight(strings);
    } else {
        // C_2 and B_2 are the same diagram; only B_2 is tabulated.
        const RootSystemSpec spec{family == Family::C && rank == 2 ? Family::B : family, rank};
        auto table = data::string_table(spec, 2 * e);
        if (!table) throw UnresolvedCoverage("no table for " + spec.name() + " dimension " + std::to_string(2 * e));
        RootSystem rs(spec);
        std::set<std::string> strings;
        for (const auto& s : table->strings) strings.insert(data::normalize_string(s, rs.size(), table->arm_letter));
        for (const auto& er : data::errata())
            if (er.spec == spec && er.dim == 2 * e) {
                auto s = data::normalize_string(er.string, rs.size(), table->arm_letter);
                if (er.add)
                    strings.insert(s);
                else
                    strings.erase(s);
            }
        w = s_weight({strings.begin(), strings.end()});
    }
    std::vector<long long> c;
    for (auto [k, n] : w) {
        if (static_cast<int>(c.size()) <= k) c.resize(k + 1, 0);
        c[k] = n;
    }
    VPoly out(c);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, out);
    return out;
}

struct PlacedComponent {
    VertexSet vertices = 0;
    ComponentType type;
    int e = 0;
};

struct Placement {
    std::vector<PlacedComponent> components;
    int leftover = 0;
};

// Unordered collections of vertex-disjoint connected subdiagrams with
// positive shares e_i summing to e, keeping only components of nonzero
// weight. Neighbouring components are allowed.
inline std::vector<Placement> placements(RootSystemSpec ambient, int e,
                                         WeightSource source = WeightSource::Engine) {
    if (e < 0 || e > 3) throw std::invalid_argument("placements needs 0 <= e <= 3");
    DynkinDiagram dg(ambient);
    struct Option {
        VertexSet vertices;
        ComponentType type;
        int e;
    };
    std::vector<Option> options;  // sorted by vertex set
    for (VertexSet s : dg.connected_subsets(8)) {
        if (std::popcount(s) < 2) continue;
        const auto t = dg.type_of(s);
        for (int k = 1; k <= e; ++k)
            if (!weight(t.family, t.rank, k, source).zero()) options.push_back({s, t, k});
    }
    std::vector<Placement> out;
    std::vector<PlacedComponent> chosen;
    auto rec = [&](auto&& self, std::size_t from, VertexSet used, int left) -> void {
        if (left == 0) {
            out.push_back({chosen, ambient.rank - std::popcount(used)});
            return;
        }
        for (std::size_t k = from; k < options.size(); ++k) {
            const auto& o = options[k];
            if ((o.vertices & used) || o.e > left) continue;
            chosen.push_back({o.vertices, o.type, o.e});
            self(self, k + 1, used | o.vertices, left - o.e);
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0, e);
    return out;
}

inline VPoly count_characters(RootSystemSpec ambient, int e, WeightSource source = WeightSource::Engine) {
    VPoly total;
    for (const auto& pl : placements(ambient, e, source)) {
        VPoly term = v_plus_one().pow(pl.leftover);
        for (const auto& c : pl.components) term *= weight(c.type.family, c.type.rank, c.e, source);
        total += term;
    }
    return total;
}

inline bool isaacs_check(const VPoly& p) {
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](long long c) { return c >= 0; });
}

// ---------------------------------------------------------------------------
// Closed forms

// Type A_{n-1}, e = 1, valid for n >= 3.
inline VPoly closed_form_a1(int n) {
    if (n < 3) throw std::invalid_argument("closed form holds for n >= 3");
    const VPoly inner = VPoly({0, n, 2 * n, n}) - VPoly({0, 2, 5, 3});
    if (n >= 4) return v_plus_one().pow(n - 4) * inner;
    return inner.divide_exact(v_plus_one());
}

namespace detail {
inline long long exact_div(long long a, long long b) {
    if (a % b != 0) throw std::domain_error("closed-form coefficient is not integral");
    return a / b;
}
}  // namespace detail

// Type B_n, e = 3, n >= 7, in the variable v.
inline VPoly closed_form_b3_v(int n) {
    using detail::exact_div;
    const long long N = n;
    const VPoly inner({0, N - 1, N * N + N - 5, exact_div(N * N * N + 9 * N * N - 4 * N - 42, 6),
                       exact_div(N * N * N + 6 * N * N + 5 * N - 60, 6), N * N - 6, 2 * N - 4, 1});
    return v_plus_one().pow(n - 4) * inner;
}

// The same count expanded in q, coefficients as printed. This expansion is
// not the expansion of the v-form above: the two differ by 25 q^n for every
// n, so the q^n coefficient should read (n^3 - 24n^2 + 185n - 450)/6.
inline VPoly closed_form_b3_q(int n) {
    using detail::exact_div;
    const long long N = n;
    VPoly out;
    out += VPoly::monomial(1, n + 3);
    out += VPoly::monomial(2 * N - 11, n + 2);
    out += VPoly::monomial(N * N - 12 * N + 39, n + 1);
    out += VPoly::monomial(exact_div(N * N * N - 24 * N * N + 185 * N - 300, 6), n);
    out += VPoly::monomial(-exact_div(N * N * N - 15 * N * N + 88 * N - 176, 2), n - 1);
    out += VPoly::monomial(exact_div(N * N * N - 15 * N * N + 76 * N - 130, 2), n - 2);
    out += VPoly::monomial(-exact_div(N * N * N - 21 * N * N + 110 * N - 174, 6), n - 3);
    out += VPoly::monomial(-exact_div(N * N - 7 * N + 12, 2), n - 4);
    return out;
}

struct ClosedFormCase {
    int n = 0;
    VPoly counted, expected;   // expected: the factored v-form
    bool has_q_form = false;
    VPoly q_residual;          // counted (in q) minus the printed q-expansion
    bool equal() const { return counted == expected; }
    bool q_form_matches() const { return !has_q_form || q_residual.zero(); }
};

struct ClosedFormReport {
    Family family = Family::A;
    int e = 0;
    std::vector<ClosedFormCase> cases;
    bool passed() const {
        return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.equal(); });
    }
    bool q_forms_match() const {
        return std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.q_form_matches(); });
    }
};

// A: e = 1 over 3 <= n <= 12 (ambient A_{n-1}). B: e = 3 over 7 <= n <= 12.
inline ClosedFormReport closed_form_check(Family family, int e) {
    ClosedFormReport rep{family, e, {}};
    if (family == Family::A && e == 1) {
        for (int n = 3; n <= 12; ++n)
            rep.cases.push_back({n, count_characters({Family::A, n - 1}, 1), closed_form_a1(n), false, {}});
    } else if (family == Family::B && e == 3) {
        for (int n = 7; n <= 12; ++n) {
            ClosedFormCase c{n, count_characters({Family::B, n}, 3), closed_form_b3_v(n), true, {}};
            c.q_residual = c.counted.to_q() - closed_form_b3_q(n);
            rep.cases.push_back(std::move(c));
        }
    } else {
        throw std::invalid_argument("closed forms are known for (A, 1) and (B, 3) only");
    }
    return rep;
}

}  // namespace orbitkit
