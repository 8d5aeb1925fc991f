#include "ripple/seq_count.hpp"

#include <bit>
#include <stdexcept>

#include "ripple/field.hpp"

namespace ripple {
namespace {

void check_args(const TransitionMatrix& t, std::uint64_t n, std::uint64_t m) {
    if (t.k < 1) throw std::invalid_argument("alphabet size must be at least 1");
    if (t.t.size() != static_cast<std::size_t>(t.k) * static_cast<std::size_t>(t.k))
        throw std::invalid_argument("transition matrix has the wrong size");
    for (std::uint8_t b : t.t)
        if (b > 1) throw std::invalid_argument("transition entries must be 0 or 1");
    if (n < 1 || n > static_cast<std::uint64_t>(INT64_MAX))
        throw std::invalid_argument("sequence length must be in [1, 2^63 - 1]");
    if (m < 1 || m > static_cast<std::uint64_t>(kMaxModulus))
        throw std::invalid_argument("modulus must be in [1, 2^31 - 1]");
}

using ModMatrix = std::vector<std::uint64_t>;  // k*k entries, each < m

/// c = a * b. Entries stay below m < 2^31, so a product fits in 64 bits and
/// every term is reduced before it joins the accumulator.
ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b, int k, std::uint64_t m) {
    ModMatrix c(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        for (int p = 0; p < k; ++p) {
            const std::uint64_t aip = a[static_cast<std::size_t>(i * k + p)];
            if (aip == 0) continue;
            for (int j = 0; j < k; ++j)
                c[static_cast<std::size_t>(i * k + j)] =
                    (c[static_cast<std::size_t>(i * k + j)] +
                     aip * b[static_cast<std::size_t>(p * k + j)] % m) %
                    m;
        }
    return c;
}

/// c(i, j) = sum over p, q of a(i, p) * t(p, q) * b(q, j), the doubling
/// step written as the literal triple sum.
ModMatrix triple_product(const ModMatrix& a, const TransitionMatrix& t, const ModMatrix& b,
                         std::uint64_t m) {
    const int k = t.k;
    ModMatrix c(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::uint64_t acc = 0;
            for (int p = 0; p < k; ++p) {
                const std::uint64_t aip = a[static_cast<std::size_t>(i * k + p)];
                if (aip == 0) continue;
                for (int q = 0; q < k; ++q) {
                    if (!t.at(p, q)) continue;
                    acc = (acc + aip * b[static_cast<std::size_t>(q * k + j)] % m) % m;
                }
            }
            c[static_cast<std::size_t>(i * k + j)] = acc;
        }
    return c;
}

ModMatrix identity(int k, std::uint64_t m) {
    ModMatrix c(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i * k + i)] = 1 % m;
    return c;
}

std::uint64_t sum_entries(const ModMatrix& a, std::uint64_t m) {
    std::uint64_t s = 0;
    for (std::uint64_t v : a) s = (s + v) % m;
    return s;
}

}  // namespace

TransitionMatrix::TransitionMatrix(int alphabet) : k(alphabet) {
    if (alphabet < 1) throw std::invalid_argument("alphabet size must be at least 1");
    t.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);
}

std::uint64_t count_dp(const TransitionMatrix& t, std::uint64_t n, std::uint64_t m) {
    check_args(t, n, m);
    const int k = t.k;
    // s[j] = number of valid sequences of the current length ending in j.
    std::vector<std::uint64_t> s(static_cast<std::size_t>(k), 1 % m);
    std::vector<std::uint64_t> next(static_cast<std::size_t>(k));
    for (std::uint64_t l = 2; l <= n; ++l) {
        for (int j = 0; j < k; ++j) {
            std::uint64_t acc = 0;
            for (int i = 0; i < k; ++i)
                if (t.at(i, j)) acc = (acc + s[static_cast<std::size_t>(i)]) % m;
            next[static_cast<std::size_t>(j)] = acc;
        }
        s.swap(next);
    }
    std::uint64_t total = 0;
    for (std::uint64_t v : s) total = (total + v) % m;
    return total;
}

std::uint64_t count_matpow(const TransitionMatrix& t, std::uint64_t n, std::uint64_t m,
                           long long* multiplications) {
    check_args(t, n, m);
    const int k = t.k;
    long long muls = 0;

    ModMatrix base(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < base.size(); ++idx) base[idx] = t.t[idx] % m;

    // T^(n-1), right to left over the exponent bits; the final squaring is
    // skipped and multiplying into a still-identity accumulator is a copy.
    ModMatrix result = identity(k, m);
    bool result_is_identity = true;
    std::uint64_t e = n - 1;
    while (e > 0) {
        if (e & 1) {
            if (result_is_identity) {
                result = base;
                result_is_identity = false;
            } else {
                result = mat_mul(result, base, k, m);
                ++muls;
            }
        }
        e >>= 1;
        if (e > 0) {
            base = mat_mul(base, base, k, m);
            ++muls;
        }
    }

    if (multiplications != nullptr) *multiplications = muls;
    return sum_entries(result, m);
}

std::uint64_t count_binary_decomp(const TransitionMatrix& t, std::uint64_t n, std::uint64_t m) {
    check_args(t, n, m);
    const int k = t.k;

    // s_tables[l](i, j) counts sequences of length 2^l that start with i and
    // end with j; level 0 is the identity (single-element sequences).
    const int top = std::bit_width(n) - 1;
    std::vector<ModMatrix> s_tables;
    s_tables.reserve(static_cast<std::size_t>(top) + 1);
    s_tables.push_back(identity(k, m));
    for (int l = 1; l <= top; ++l)
        s_tables.push_back(triple_product(s_tables.back(), t, s_tables.back(), m));

    // Fold the set bits of n from the lowest up: u counts sequences whose
    // length is the sum of the powers consumed so far.
    ModMatrix u;
    bool have_u = false;
    for (int l = 0; l <= top; ++l) {
        if (((n >> l) & 1) == 0) continue;
        if (!have_u) {
            u = s_tables[static_cast<std::size_t>(l)];
            have_u = true;
        } else {
            u = triple_product(u, t, s_tables[static_cast<std::size_t>(l)], m);
        }
    }
    return sum_entries(u, m);
}

}  // namespace ripple
