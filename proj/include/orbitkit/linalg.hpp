#pragma once
// Exact rank: prime fields by plain elimination, integers by fraction-free
// (Bareiss) elimination in int64 with a multiprecision restart on overflow.

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbitkit {

template <class T>
using Matrix = std::vector<std::vector<T>>;

struct PrimeField {
    std::uint64_t p;

    explicit PrimeField(std::uint64_t prime) : p(prime) {
        if (prime < 2) throw std::invalid_argument("modulus must be prime");
        for (std::uint64_t d = 2; d * d <= prime; ++d)
            if (prime % d == 0) throw std::invalid_argument("modulus must be prime");
    }

    std::uint64_t reduce(long long v) const {
        long long r = v % static_cast<long long>(p);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p;
        for (a %= p; e; e >>= 1, a = mul(a, a))
            if (e & 1) r = mul(r, a);
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a % p == 0) throw std::domain_error("inverse of zero");
        return pow(a, p - 2);
    }
};

// Rank over F_p; entries already reduced. Small fields fit in 32 bits,
// which keeps the inner loop cheap for the brute-force census.
inline int rank_mod_p(Matrix<std::uint32_t> m, std::uint32_t p) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        // inverse by Fermat; p is small
        std::uint64_t inv = 1, base = m[rank][c], e = p - 2;
        for (; e; e >>= 1, base = base * base % p)
            if (e & 1) inv = inv * base % p;
        for (int r = rank + 1; r < rows; ++r) {
            if (!m[r][c]) continue;
            const std::uint64_t f = m[r][c] * inv % p;
            for (int k = c; k < cols; ++k)
                m[r][k] = static_cast<std::uint32_t>((m[r][k] + p - f * m[rank][k] % p) % p);
        }
        ++rank;
    }
    return rank;
}

namespace detail {

template <class T>
int bareiss_rank(Matrix<T>& m, bool& overflow) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    T prev = 1;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int k = c + 1; k < cols; ++k) {
                if constexpr (std::is_same_v<T, long long>) {
                    __int128 v = static_cast<__int128>(m[r][k]) * m[rank][c] -
                                 static_cast<__int128>(m[r][c]) * m[rank][k];
                    v /= prev;
                    if (v > INT64_MAX || v < INT64_MIN) {
                        overflow = true;
                        return -1;
                    }
                    m[r][k] = static_cast<long long>(v);
                } else {
                    m[r][k] = (m[r][k] * m[rank][c] - m[r][c] * m[rank][k]) / prev;
                }
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

}  // namespace detail

inline int rank_integer(const Matrix<long long>& input) {
    Matrix<long long> m = input;
    bool overflow = false;
    int r = detail::bareiss_rank(m, overflow);
    if (!overflow) return r;
    using boost::multiprecision::cpp_int;
    Matrix<cpp_int> big(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) big[i].assign(input[i].begin(), input[i].end());
    overflow = false;
    return detail::bareiss_rank(big, overflow);
}

}  // namespace orbitkit
