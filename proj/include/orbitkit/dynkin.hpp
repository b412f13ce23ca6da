#pragma once
// Dynkin diagrams of classical type in the vertex labelling used by the
// root orderings: vertex 0 is the end carrying the multiple bond (B, C) or
// one of the two fork ends (D, with vertex 1 the other end and vertex 2 the
// fork). Type A is a plain path.

#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"

namespace orbitkit {

using VertexSet = std::uint32_t;  // ranks up to 32

struct ComponentType {
    Family family = Family::A;
    int rank = 0;
    friend bool operator==(const ComponentType&, const ComponentType&) = default;
    friend auto operator<=>(const ComponentType&, const ComponentType&) = default;
    std::string name() const { return std::string(1, to_char(family)) + std::to_string(rank); }
};

class DynkinDiagram {
public:
    explicit DynkinDiagram(RootSystemSpec spec) : spec_(spec), adj_(spec.rank, 0) {
        const int r = spec.rank;
        if (r < 1 || r > 32) throw InvalidRank("diagram rank out of range");
        if (spec.family == Family::D) {
            if (r < 4) throw InvalidRank("D needs rank >= 4");
            link(0, 2);
            link(1, 2);
            for (int k = 2; k + 1 < r; ++k) link(k, k + 1);
        } else {
            for (int k = 0; k + 1 < r; ++k) link(k, k + 1);
        }
    }

    RootSystemSpec spec() const { return spec_; }
    int rank() const { return spec_.rank; }
    VertexSet neighbours(int v) const { return adj_[v]; }
    bool adjacent(int a, int b) const { return (adj_[a] >> b) & 1U; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < rank(); ++a)
            for (int b = a + 1; b < rank(); ++b)
                if (adjacent(a, b)) out.emplace_back(a, b);
        return out;
    }

    bool connected(VertexSet s) const {
        if (s == 0) return false;
        VertexSet seen = s & (~s + 1), frontier = seen;
        while (frontier) {
            VertexSet next = 0;
            for (int v = 0; v < rank(); ++v)
                if ((frontier >> v) & 1U) next |= adj_[v] & s;
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == s;
    }

    // Type of the induced subdiagram on a connected vertex set.
    ComponentType type_of(VertexSet s) const {
        const int m = std::popcount(s);
        switch (spec_.family) {
        case Family::A: return {Family::A, m};
        case Family::B:
        case Family::C:
            if (m >= 2 && (s & 3U) == 3U) return {spec_.family, m};
            return {Family::A, m};
        case Family::D:
            // the fork with both ends is D_m for m >= 4; three vertices form A_3
            if ((s & 7U) == 7U && m >= 4) return {Family::D, m};
            return {Family::A, m};
        }
        return {Family::A, m};
    }

    // Connected components of the graph on `vertices` using only `edge_set`
    // (pairs drawn from edges()).
    std::vector<VertexSet> components(VertexSet vertices,
                                      const std::vector<std::pair<int, int>>& edge_set) const {
        std::vector<int> parent(rank());
        for (int v = 0; v < rank(); ++v) parent[v] = v;
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (auto [a, b] : edge_set) parent[find(a)] = find(b);
        std::vector<VertexSet> out;
        std::vector<int> slot(rank(), -1);
        for (int v = 0; v < rank(); ++v) {
            if (!((vertices >> v) & 1U)) continue;
            int root = find(v);
            if (slot[root] < 0) {
                slot[root] = static_cast<int>(out.size());
                out.push_back(0);
            }
            out[slot[root]] |= VertexSet{1} << v;
        }
        return out;
    }

    // Every connected vertex subset with at most max_size vertices.
    std::vector<VertexSet> connected_subsets(int max_size) const {
        std::vector<VertexSet> out;
        if (rank() > 24) throw InvalidRank("connected subset enumeration limited to rank 24");
        for (VertexSet s = 1; s < (VertexSet{1} << rank()); ++s)
            if (std::popcount(s) <= max_size && connected(s)) out.push_back(s);
        return out;
    }

private:
    void link(int a, int b) {
        adj_[a] |= VertexSet{1} << b;
        adj_[b] |= VertexSet{1} << a;
    }

    RootSystemSpec spec_;
    std::vector<VertexSet> adj_;
};

// Per-component lower bound for orbit dimensions.
inline int wd(ComponentType t) {
    switch (t.family) {
    case Family::A:
    case Family::B:
    case Family::C: return 2 * (t.rank / 2);
    case Family::D: return 2 * ((t.rank - 1) / 2);
    }
    return 0;
}

}  // namespace orbitkit
