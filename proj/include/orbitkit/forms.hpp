#pragma once
// Linear forms on the nilradical: supports, the order ideal they generate,
// the induced Dynkin subdiagram and the skew form B_f(x, y) = f([x, y]).

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "core.hpp"
#include "dynkin.hpp"
#include "linalg.hpp"
#include "rootsys.hpp"

namespace orbitkit {

// Rational forms carry integer values: scaling by a common denominator
// changes neither the support nor the rank of B_f.
struct LinearForm {
    enum class Field { Rational, Prime };
    Field field = Field::Rational;
    std::uint32_t p = 0;
    std::map<int, long long> coeffs;  // 0-based index -> nonzero value

    static LinearForm rational() { return {}; }
    static LinearForm prime(std::uint32_t p) { return {Field::Prime, p, {}}; }

    void set(int k, long long v) {
        if (field == Field::Prime) {
            v %= static_cast<long long>(p);
            if (v < 0) v += p;
        }
        if (v == 0)
            coeffs.erase(k);
        else
            coeffs[k] = v;
    }
    long long at(int k) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? 0 : it->second;
    }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// e*_alpha
inline LinearForm dual_basis(int k) {
    LinearForm f;
    f.set(k, 1);
    return f;
}

inline IndexSet support(const LinearForm& f) {
    IndexSet s = 0;
    for (const auto& [k, v] : f.coeffs)
        if (v != 0) s |= bit(k);
    return s;
}

// Order ideal generated by a set of roots.
inline IndexSet order_ideal(const RootSystem& rs, IndexSet s) {
    IndexSet out = 0;
    for_each_bit(s, [&](int k) { out |= rs.at_or_below(k); });
    return out;
}

inline IndexSet nsupp(const RootSystem& rs, const LinearForm& f) { return order_ideal(rs, support(f)); }

// Dyn(f): simple-root edges whose sum lies in NSupp(f).
struct DynSub {
    std::vector<std::pair<int, int>> edges;  // simple-root positions (0-based)
    struct Component {
        VertexSet vertices = 0;
        ComponentType type;
    };
    std::vector<Component> components;  // all components, singletons included
    bool extensive = false;
};

inline DynSub dyn_subdiagram_of(const RootSystem& rs, IndexSet ns) {
    DynSub d;
    const auto& dg = rs.diagram();
    auto all_edges = dg.edges();
    for (auto [a, b] : all_edges)
        if (has(ns, rs.sum(a, b))) d.edges.emplace_back(a, b);
    d.extensive = d.edges.size() == all_edges.size();
    const VertexSet everything = rs.spec().rank == 32 ? ~VertexSet{0} : (VertexSet{1} << rs.spec().rank) - 1;
    for (VertexSet c : dg.components(everything, d.edges)) d.components.push_back({c, dg.type_of(c)});
    return d;
}

inline DynSub dyn_subdiagram(const RootSystem& rs, const LinearForm& f) {
    return dyn_subdiagram_of(rs, nsupp(rs, f));
}

inline int wd(const DynSub& d) {
    int total = 0;
    for (const auto& c : d.components) total += wd(c.type);
    return total;
}

// Matrix of B_f in the root basis.
inline Matrix<long long> bform_matrix(const RootSystem& rs, const LinearForm& f) {
    const int N = rs.size();
    Matrix<long long> m(N, std::vector<long long>(N, 0));
    for (int i = 0; i < N; ++i)
        for_each_bit(rs.partners(i), [&](int j) { m[i][j] = rs.n(i, j) * f.at(rs.sum(i, j)); });
    return m;
}

inline int bform_rank(const RootSystem& rs, const LinearForm& f) {
    auto m = bform_matrix(rs, f);
    if (f.field == LinearForm::Field::Rational) return rank_integer(m);
    Matrix<std::uint32_t> r(m.size(), std::vector<std::uint32_t>(m.size()));
    const long long p = f.p;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = static_cast<std::uint32_t>(((m[i][j] % p) + p) % p);
    return rank_mod_p(std::move(r), f.p);
}

// A form with the given support and random nonzero integer values in [-bound, bound].
template <class Rng>
LinearForm random_form_on(IndexSet s, Rng& rng, int bound = 9) {
    std::uniform_int_distribution<int> dist(1, bound);
    std::bernoulli_distribution sign(0.5);
    LinearForm f;
    for_each_bit(s, [&](int k) { f.set(k, sign(rng) ? dist(rng) : -dist(rng)); });
    return f;
}

// Each root independently nonzero with probability `density`.
template <class Rng>
LinearForm random_form(const RootSystem& rs, Rng& rng, double density = 0.5, int bound = 9) {
    std::bernoulli_distribution keep(density);
    IndexSet s = 0;
    for (int k = 0; k < rs.size(); ++k)
        if (keep(rng)) s |= bit(k);
    return random_form_on(s, rng, bound);
}

// ---------------------------------------------------------------------------
// Canonical decomposition along the components of Dyn(f).

struct Decomposition {
    struct Part {
        DynSub::Component component;
        IndexSet roots = 0;  // roots whose simple-root support lies in the component
        LinearForm restriction;
    };
    std::vector<Part> parts;      // components with at least two vertices
    LinearForm character;         // values on the remaining simple roots
};

struct DecompositionMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

inline IndexSet roots_over(const RootSystem& rs, VertexSet vertices) {
    IndexSet out = 0;
    for (int k = 0; k < rs.size(); ++k) {
        bool inside = true;
        for (int v = 0; v < rs.spec().rank; ++v)
            if (rs.coords(k)[v] != 0 && !((vertices >> v) & 1U)) inside = false;
        if (inside) out |= bit(k);
    }
    return out;
}

inline Decomposition decompose(const RootSystem& rs, const LinearForm& f) {
    Decomposition out;
    out.character.field = f.field;
    out.character.p = f.p;
    IndexSet covered = 0;
    for (const auto& c : dyn_subdiagram(rs, f).components) {
        if (std::popcount(c.vertices) == 1) {
            const int v = std::countr_zero(c.vertices);
            covered |= bit(v);
            if (f.at(v)) out.character.set(v, f.at(v));
            continue;
        }
        Decomposition::Part part{c, roots_over(rs, c.vertices), {}};
        part.restriction.field = f.field;
        part.restriction.p = f.p;
        for_each_bit(part.roots, [&](int k) {
            if (f.at(k)) part.restriction.set(k, f.at(k));
        });
        covered |= part.roots;
        out.parts.push_back(std::move(part));
    }
    if (support(f) & ~covered) throw DecompositionMismatch("support escapes the components of Dyn(f)");
    return out;
}

}  // namespace orbitkit
