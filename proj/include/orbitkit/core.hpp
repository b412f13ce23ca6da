#pragma once
// Shared vocabulary: families, index sets, error types.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitkit {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D' };

inline char to_char(Family f) { return static_cast<char>(f); }

inline Family family_from_char(char c) {
    switch (c) {
    case 'A': case 'a': return Family::A;
    case 'B': case 'b': return Family::B;
    case 'C': case 'c': return Family::C;
    case 'D': case 'd': return Family::D;
    }
    throw std::invalid_argument(std::string("unknown family '") + c + "'");
}

struct RootSystemSpec {
    Family family = Family::A;
    int rank = 1;

    std::string name() const { return std::string(1, to_char(family)) + std::to_string(rank); }
    friend bool operator==(const RootSystemSpec&, const RootSystemSpec&) = default;
    friend auto operator<=>(const RootSystemSpec&, const RootSystemSpec&) = default;
};

// Subsets of positive roots. Bit k stands for the root with 0-based index k
// (CHEVIE index k+1). Every system handled here has at most 64 positive roots.
using IndexSet = std::uint64_t;

inline constexpr IndexSet bit(int k) { return IndexSet{1} << k; }
inline constexpr bool has(IndexSet s, int k) { return (s >> k) & 1U; }
inline int popcount(IndexSet s) { return std::popcount(s); }
inline int lowest(IndexSet s) { return std::countr_zero(s); }

template <class F>
inline void for_each_bit(IndexSet s, F&& f) {
    while (s) {
        int k = std::countr_zero(s);
        f(k);
        s &= s - 1;
    }
}

inline std::vector<int> to_indices(IndexSet s) {
    std::vector<int> out;
    for_each_bit(s, [&](int k) { out.push_back(k); });
    return out;
}

inline IndexSet from_indices(const std::vector<int>& v) {
    IndexSet s = 0;
    for (int k : v) s |= bit(k);
    return s;
}

struct InvalidRank : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAPositiveRoot : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace orbitkit
