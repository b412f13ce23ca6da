#pragma once
// Positive roots of classical type, their ordering, addition table and
// integer structure constants from an explicit matrix realization.
//
// Roots are integer vectors in the e-basis of R^n (n = rank+1 for A).
// Internally every index is 0-based; index k is CHEVIE index k+1.

#include <array>
#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "data.hpp"
#include "dynkin.hpp"

namespace orbitkit {

using Root = std::vector<int>;

// Smallest rank accepted for each family.
inline int min_rank(Family f) {
    switch (f) {
    case Family::A: return 1;
    case Family::B:
    case Family::C: return 2;
    case Family::D: return 4;
    }
    return 1;
}

inline void validate(RootSystemSpec s) {
    if (s.rank < 1) throw InvalidRank("rank must be positive");
    if (s.rank < min_rank(s.family))
        throw InvalidRank(s.name() + " is below the smallest rank of its family (D_3 is A_3, B_1 and C_1 are A_1)");
    int n_roots = 0;
    switch (s.family) {
    case Family::A: n_roots = s.rank * (s.rank + 1) / 2; break;
    case Family::B:
    case Family::C: n_roots = s.rank * s.rank; break;
    case Family::D: n_roots = s.rank * (s.rank - 1); break;
    }
    if (n_roots > 64) throw InvalidRank(s.name() + " has more than 64 positive roots");
}

inline int ambient_dim(RootSystemSpec s) { return s.family == Family::A ? s.rank + 1 : s.rank; }

namespace detail {

inline Root unit(int n, std::initializer_list<std::pair<int, int>> terms) {
    Root v(n, 0);
    for (auto [i, c] : terms) v[i - 1] += c;
    return v;
}

}  // namespace detail

// Simple roots a_1..a_r, labelled from the tail of the diagram.
inline std::vector<Root> simple_roots(RootSystemSpec s) {
    validate(s);
    const int n = ambient_dim(s), r = s.rank;
    using detail::unit;
    std::vector<Root> out;
    if (s.family == Family::A) {
        for (int k = 1; k <= r; ++k) out.push_back(unit(n, {{n - k, 1}, {n - k + 1, -1}}));
        return out;
    }
    switch (s.family) {
    case Family::B: out.push_back(unit(n, {{n, 1}})); break;
    case Family::C: out.push_back(unit(n, {{n, 2}})); break;
    case Family::D:
        out.push_back(unit(n, {{n - 1, 1}, {n, 1}}));
        out.push_back(unit(n, {{n - 1, 1}, {n, -1}}));
        break;
    default: break;
    }
    for (int k = static_cast<int>(out.size()) + 1; k <= r; ++k)
        out.push_back(unit(n, {{n - k + 1, 1}, {n - k + 2, -1}}));
    return out;
}

// Positive roots in the order e_i - e_j, e_i + e_j, (e_i | 2e_i) by i, j.
inline std::vector<Root> positive_roots_unordered(RootSystemSpec s) {
    validate(s);
    const int n = ambient_dim(s);
    using detail::unit;
    std::vector<Root> out;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            out.push_back(unit(n, {{i, 1}, {j, -1}}));
            if (s.family != Family::A) out.push_back(unit(n, {{i, 1}, {j, 1}}));
        }
        if (s.family == Family::B) out.push_back(unit(n, {{i, 1}}));
        if (s.family == Family::C) out.push_back(unit(n, {{i, 2}}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix realization. Rows/columns are labelled 1..n, (0), -n..-1 and stored
// at positions 0..size-1 in that order.

struct SparseMatrix {
    std::map<std::pair<int, int>, long long> entries;

    void add(int r, int c, long long v) {
        if (v == 0) return;
        auto& e = entries[{r, c}];
        e += v;
        if (e == 0) entries.erase({r, c});
    }
    bool zero() const { return entries.empty(); }
    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

inline SparseMatrix multiply(const SparseMatrix& x, const SparseMatrix& y) {
    SparseMatrix out;
    for (const auto& [pa, va] : x.entries)
        for (const auto& [pb, vb] : y.entries)
            if (pa.second == pb.first) out.add(pa.first, pb.second, va * vb);
    return out;
}

inline SparseMatrix commutator(const SparseMatrix& x, const SparseMatrix& y) {
    SparseMatrix out = multiply(x, y);
    for (const auto& [p, v] : multiply(y, x).entries) out.add(p.first, p.second, -v);
    return out;
}

inline int matrix_size(RootSystemSpec s) {
    switch (s.family) {
    case Family::A: return s.rank + 1;
    case Family::B: return 2 * s.rank + 1;
    default: return 2 * s.rank;
    }
}

// Position of row label i (i in 1..n, 0, -n..-1).
inline int matrix_position(RootSystemSpec s, int label) {
    const int n = s.rank;
    if (label > 0) return label - 1;
    if (s.family == Family::B) return label == 0 ? n : 2 * n + 1 + label;
    return 2 * n + label;
}

// Root vector e_alpha. The B short-root vector is e_{i,0} - e_{0,-i}
// without the sqrt(2) normalization; all structure constants stay integral.
inline SparseMatrix root_vector(RootSystemSpec s, const Root& a) {
    SparseMatrix m;
    auto at = [&](int r, int c, long long v) { m.add(matrix_position(s, r), matrix_position(s, c), v); };
    std::vector<std::pair<int, int>> nz;  // (1-based coordinate, value)
    for (int k = 0; k < static_cast<int>(a.size()); ++k)
        if (a[k]) nz.emplace_back(k + 1, a[k]);
    if (s.family == Family::A) {
        at(nz.at(0).first, nz.at(1).first, 1);
        return m;
    }
    if (nz.size() == 1) {
        const int i = nz[0].first;
        if (nz[0].second == 2) {
            at(i, -i, 1);
        } else {
            at(i, 0, 1);
            at(0, -i, -1);
        }
        return m;
    }
    const int i = nz[0].first, j = nz[1].first;
    if (nz[1].second < 0) {
        at(i, j, 1);
        at(-j, -i, -1);
    } else if (s.family == Family::C) {
        at(i, -j, 1);
        at(j, -i, 1);
    } else {
        at(i, -j, 1);
        at(j, -i, -1);
    }
    return m;
}

// ---------------------------------------------------------------------------

class RootSystem {
public:
    enum class Order { Table, Generated };

    explicit RootSystem(RootSystemSpec spec, bool prefer_table = true) : spec_(spec), diagram_(spec) {
        validate(spec);
        const int r = spec.rank, n = ambient_dim(spec);
        simple_ = simple_roots(spec);
        auto all = positive_roots_unordered(spec);
        std::map<Root, int> present;
        for (const auto& a : all) present[a] = 1;

        auto from_coords = [&](const std::vector<int>& c) {
            Root v(n, 0);
            for (int k = 0; k < r; ++k)
                for (int t = 0; t < n; ++t) v[t] += c[k] * simple_[k][t];
            return v;
        };

        std::optional<data::OrderTable> table;
        if (prefer_table) table = data::order_table(spec);
        if (table) {
            if (table->spec != spec || table->coords.size() != all.size())
                throw DataError("order table for " + spec.name() + " has the wrong shape");
            for (const auto& c : table->coords) {
                Root v = from_coords(c);
                if (!present.count(v)) throw DataError("order table " + spec.name() + " lists a non-root");
                coords_.push_back(c);
                roots_.push_back(v);
            }
            order_ = Order::Table;
            notes_ = table->notes;
        } else {
            // simple-root coordinates by climbing from the simple roots
            std::map<Root, std::vector<int>> coord_of;
            std::vector<Root> frontier;
            for (int k = 0; k < r; ++k) {
                std::vector<int> c(r, 0);
                c[k] = 1;
                coord_of[simple_[k]] = c;
                frontier.push_back(simple_[k]);
            }
            while (!frontier.empty()) {
                std::vector<Root> next;
                for (const auto& a : frontier)
                    for (int k = 0; k < r; ++k) {
                        Root b = a;
                        for (int t = 0; t < n; ++t) b[t] += simple_[k][t];
                        if (present.count(b) && !coord_of.count(b)) {
                            auto c = coord_of[a];
                            c[k] += 1;
                            coord_of[b] = c;
                            next.push_back(b);
                        }
                    }
                frontier = std::move(next);
            }
            std::vector<std::pair<std::vector<int>, Root>> items;
            for (auto& [a, c] : coord_of) items.emplace_back(c, a);
            std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
                int hx = 0, hy = 0;
                for (int v : x.first) hx += v;
                for (int v : y.first) hy += v;
                if (hx != hy) return hx < hy;
                return x.first > y.first;
            });
            for (auto& [c, a] : items) {
                coords_.push_back(c);
                roots_.push_back(a);
            }
            order_ = Order::Generated;
        }
        if (roots_.size() != all.size()) throw DataError("root enumeration incomplete for " + spec.name());
        build_tables();
    }

    RootSystemSpec spec() const { return spec_; }
    Order order() const { return order_; }
    const std::vector<std::string>& order_notes() const { return notes_; }
    int size() const { return static_cast<int>(roots_.size()); }
    IndexSet all() const { return size() == 64 ? ~IndexSet{0} : bit(size()) - 1; }
    const Root& root(int k) const { return roots_.at(k); }
    const std::vector<Root>& roots() const { return roots_; }
    const std::vector<int>& coords(int k) const { return coords_.at(k); }
    int height(int k) const { return heights_.at(k); }
    int highest() const { return size() - 1; }
    const DynkinDiagram& diagram() const { return diagram_; }
    const std::vector<Root>& simple() const { return simple_; }

    std::optional<int> index_of(const Root& a) const {
        auto it = index_.find(a);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    int require_index(const Root& a) const {
        auto k = index_of(a);
        if (!k) throw NotAPositiveRoot("not a positive root of " + spec_.name());
        return *k;
    }

    // Index of root(i)+root(j), or -1.
    int sum(int i, int j) const { return sum_[i * size() + j]; }
    // Structure constant: [e_i, e_j] = n(i,j) e_{i+j}; 0 when the sum is no root.
    int n(int i, int j) const { return n_[i * size() + j]; }
    const std::vector<std::pair<int, int>>& decompositions(int k) const { return sums_to_[k]; }
    IndexSet partners(int i) const { return partners_[i]; }
    IndexSet at_or_above(int i) const { return up_[i]; }
    IndexSet at_or_below(int i) const { return down_[i]; }

    // Sing(beta) as an index set.
    IndexSet sing(int beta) const {
        IndexSet s = 0;
        for (auto [a, b] : sums_to_[beta]) s |= bit(a) | bit(b);
        return s;
    }
    int sing_size(int beta) const { return static_cast<int>(sums_to_[beta].size()); }

    bool leq(int a, int b) const { return has(up_[a], b); }

    // Adjacency of simple roots k, l (0-based) in the diagram.
    bool simple_adjacent(int k, int l) const { return sum(k, l) >= 0; }

    std::string root_name(int k) const {
        std::string out;
        const auto& a = roots_[k];
        for (int t = 0; t < static_cast<int>(a.size()); ++t) {
            if (!a[t]) continue;
            if (!out.empty() || a[t] < 0) out += a[t] > 0 ? "+" : "-";
            if (std::abs(a[t]) == 2) out += "2";
            out += "e" + std::to_string(t + 1);
        }
        return out;
    }

private:
    void build_tables() {
        const int N = size();
        for (int k = 0; k < N; ++k) {
            index_[roots_[k]] = k;
            int h = 0;
            for (int v : coords_[k]) h += v;
            heights_.push_back(h);
        }
        sum_.assign(N * N, -1);
        n_.assign(N * N, 0);
        sums_to_.assign(N, {});
        partners_.assign(N, 0);
        std::vector<SparseMatrix> vec;
        for (const auto& a : roots_) vec.push_back(root_vector(spec_, a));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                Root c = roots_[i];
                for (std::size_t t = 0; t < c.size(); ++t) c[t] += roots_[j][t];
                auto it = index_.find(c);
                SparseMatrix br = commutator(vec[i], vec[j]);
                if (it == index_.end()) {
                    if (!br.zero()) throw std::logic_error("bracket of root vectors leaves the root lattice");
                    continue;
                }
                const int k = it->second;
                const auto& [pos, val] = *vec[k].entries.begin();
                auto f = br.entries.find(pos);
                if (f == br.entries.end() || f->second % val != 0)
                    throw std::logic_error("bracket is not a multiple of the sum root vector");
                const long long c0 = f->second / val;
                SparseMatrix expect;
                for (const auto& [p, v] : vec[k].entries) expect.add(p.first, p.second, c0 * v);
                if (!(expect == br) || c0 == 0) throw std::logic_error("bracket mismatch in realization");
                sum_[i * N + j] = k;
                n_[i * N + j] = static_cast<int>(c0);
                sums_to_[k].emplace_back(i, j);
                partners_[i] |= bit(j);
            }
        // order ideals: a <= b iff b - a has nonnegative simple-root coordinates
        up_.assign(N, 0);
        down_.assign(N, 0);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                bool ge = true;
                for (int k = 0; k < spec_.rank; ++k) ge = ge && coords_[b][k] >= coords_[a][k];
                if (ge) {
                    up_[a] |= bit(b);
                    down_[b] |= bit(a);
                }
            }
    }

    RootSystemSpec spec_;
    DynkinDiagram diagram_;
    Order order_ = Order::Generated;
    std::vector<std::string> notes_;
    std::vector<Root> simple_;
    std::vector<Root> roots_;
    std::vector<std::vector<int>> coords_;
    std::vector<int> heights_;
    std::map<Root, int> index_;
    std::vector<int> sum_, n_;
    std::vector<std::vector<std::pair<int, int>>> sums_to_;
    std::vector<IndexSet> partners_, up_, down_;
};

// Roots lying below some root whose elementary orbit has dimension 2d. When
// 2d exceeds that of the highest root every root qualifies.
inline IndexSet supp_d(const RootSystem& rs, int d) {
    if (2 * d > rs.sing_size(rs.highest())) return rs.all();
    IndexSet m = 0;
    for (int b = 0; b < rs.size(); ++b)
        if (rs.sing_size(b) == 2 * d) m |= rs.at_or_below(b);
    return m;
}

// Triples (a, b, c) for which the structure constants break the Jacobi
// identity [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0.
inline std::vector<std::array<int, 3>> jacobi_violations(const RootSystem& rs) {
    std::vector<std::array<int, 3>> bad;
    auto nested = [&](int x, int y, int z, std::map<int, long long>& acc) {
        const int yz = rs.sum(y, z);
        if (yz < 0) return;
        const int top = rs.sum(x, yz);
        if (top < 0) return;
        acc[top] += static_cast<long long>(rs.n(y, z)) * rs.n(x, yz);
    };
    for (int a = 0; a < rs.size(); ++a)
        for (int b = a + 1; b < rs.size(); ++b)
            for (int c = b + 1; c < rs.size(); ++c) {
                std::map<int, long long> acc;
                nested(a, b, c, acc);
                nested(b, c, a, acc);
                nested(c, a, b, acc);
                for (auto [k, v] : acc)
                    if (v != 0) {
                        bad.push_back({a, b, c});
                        break;
                    }
            }
    return bad;
}

}  // namespace orbitkit
