#pragma once

#include <cstdint>
#include <vector>

namespace ripple {

/// t(i, j) = 1 allows element j to follow element i. A sequence of length n
/// has n elements, so it uses n - 1 transitions.
struct TransitionMatrix {
    int k = 0;
    std::vector<std::uint8_t> t;

    explicit TransitionMatrix(int alphabet);
    std::uint8_t& at(int i, int j) { return t[static_cast<std::size_t>(i * k + j)]; }
    std::uint8_t at(int i, int j) const { return t[static_cast<std::size_t>(i * k + j)]; }
};

/// All three counters return the number of valid length-n sequences mod m.
/// Preconditions shared by all of them: 1 <= n <= 2^63 - 1 and
/// 1 <= m <= 2^31 - 1, so every product fits in 64 bits before reduction.

/// Row-by-row dynamic program, O(n k^2). The reference the other two
/// methods are measured against.
std::uint64_t count_dp(const TransitionMatrix& t, std::uint64_t n, std::uint64_t m);

/// Sum of all entries of T^(n-1), built by repeated squaring. When
/// multiplications is given, it receives the number of modular matrix
/// products used; the walk never needs more than 2*floor(log2 n) + 1.
std::uint64_t count_matpow(const TransitionMatrix& t, std::uint64_t n, std::uint64_t m,
                           long long* multiplications = nullptr);

/// Doubling tables S(,l,): counts for length 2^l keyed by first and last
/// element, combined per set bit of n through accumulation tables, O(k^4 log n).
std::uint64_t count_binary_decomp(const TransitionMatrix& t, std::uint64_t n, std::uint64_t m);

}  // namespace ripple
