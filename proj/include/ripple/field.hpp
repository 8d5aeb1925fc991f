#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ripple {

struct NotInvertible : std::domain_error {
    explicit NotInvertible(std::uint64_t x, std::uint64_t m)
        : std::domain_error("no multiplicative inverse of " + std::to_string(x) +
                            " modulo " + std::to_string(m)) {}
};

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by (field) zero") {}
};

struct BadField : std::invalid_argument {
    explicit BadField(const std::string& what) : std::invalid_argument(what) {}
};

enum class FieldKind { Real, PrimeMod, GF2 };

/// Largest modulus we accept; keeps residue products inside 64 bits.
inline constexpr std::uint64_t kMaxModulus = 0x7fffffffull;  // 2^31 - 1

bool is_prime(std::uint64_t m);

/// Multiplicative inverse of x modulo m, by the extended Euclidean algorithm.
/// Throws NotInvertible when gcd(x, m) != 1 (in particular for x = 0).
std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t m);

/// Runtime description of the arithmetic carrier. Construct through the
/// factories (or parse()), which validate epsilon / primality up front.
struct FieldSpec {
    FieldKind kind = FieldKind::Real;
    double epsilon = 1e-9;      // Real only
    std::uint64_t modulus = 0;  // PrimeMod only (GF2 behaves as modulus 2)

    static FieldSpec real(double eps = 1e-9);
    static FieldSpec prime(std::uint64_t m);
    static FieldSpec gf2();

    /// Accepts "real", "real:eps=<float>", "gfp:<M>", "gf2".
    static FieldSpec parse(const std::string& text);
    std::string to_string() const;
};

// Field policies. Each carries the runtime parameters of one FieldSpec kind
// and provides the scalar operations; matrices over a field use F::Scalar as
// their Eigen scalar type. All operations are pure.

class RealField {
public:
    using Scalar = double;
    static constexpr bool exact = false;

    explicit RealField(double eps = 1e-9) : eps_(eps) {
        if (eps < 0) throw BadField("epsilon must be nonnegative");
    }

    Scalar add(Scalar a, Scalar b) const { return a + b; }
    Scalar sub(Scalar a, Scalar b) const { return a - b; }
    Scalar mul(Scalar a, Scalar b) const { return a * b; }
    Scalar div(Scalar a, Scalar b) const {
        if (is_zero(b)) throw DivisionByZero();
        return a / b;
    }
    // The epsilon test is used at pivot decisions and triangularity checks
    // only, never inside arithmetic.
    bool is_zero(Scalar a) const { return std::abs(a) <= eps_; }
    Scalar zero() const { return 0.0; }
    Scalar one() const { return 1.0; }
    Scalar from_int(long long v) const { return static_cast<Scalar>(v); }
    static double to_double(Scalar a) { return a; }
    double epsilon() const { return eps_; }

private:
    double eps_;
};

class PrimeField {
public:
    using Scalar = std::uint64_t;
    static constexpr bool exact = true;

    explicit PrimeField(std::uint64_t m) : m_(m) {
        if (m < 2 || m > kMaxModulus) throw BadField("modulus out of range");
        if (!is_prime(m)) throw BadField(std::to_string(m) + " is not prime");
    }

    Scalar add(Scalar a, Scalar b) const { return (a + b) % m_; }
    Scalar sub(Scalar a, Scalar b) const { return (a + m_ - b) % m_; }
    Scalar mul(Scalar a, Scalar b) const { return (a * b) % m_; }
    Scalar div(Scalar a, Scalar b) const {
        if (b == 0) throw DivisionByZero();
        return mul(a, mod_inverse(b, m_));
    }
    bool is_zero(Scalar a) const { return a == 0; }
    Scalar zero() const { return 0; }
    Scalar one() const { return 1 % m_; }
    Scalar from_int(long long v) const {
        long long m = static_cast<long long>(m_);
        long long r = v % m;
        if (r < 0) r += m;
        return static_cast<Scalar>(r);
    }
    static double to_double(Scalar a) { return static_cast<double>(a); }
    std::uint64_t modulus() const { return m_; }

private:
    std::uint64_t m_;
};

/// GF(2): add/sub are xor, mul is and, division is only ever by 1.
/// Coincides with PrimeField(2) on every operation.
class GF2Field {
public:
    using Scalar = std::uint64_t;
    static constexpr bool exact = true;

    Scalar add(Scalar a, Scalar b) const { return a ^ b; }
    Scalar sub(Scalar a, Scalar b) const { return a ^ b; }
    Scalar mul(Scalar a, Scalar b) const { return a & b; }
    Scalar div(Scalar a, Scalar b) const {
        if (b == 0) throw DivisionByZero();
        return a;
    }
    bool is_zero(Scalar a) const { return a == 0; }
    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    Scalar from_int(long long v) const { return static_cast<Scalar>(((v % 2) + 2) % 2); }
    static double to_double(Scalar a) { return static_cast<double>(a); }
    std::uint64_t modulus() const { return 2; }
};

template <typename F>
concept Field = requires(const F f, typename F::Scalar a) {
    { f.add(a, a) } -> std::same_as<typename F::Scalar>;
    { f.sub(a, a) } -> std::same_as<typename F::Scalar>;
    { f.mul(a, a) } -> std::same_as<typename F::Scalar>;
    { f.div(a, a) } -> std::same_as<typename F::Scalar>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.zero() } -> std::same_as<typename F::Scalar>;
    { f.one() } -> std::same_as<typename F::Scalar>;
    { f.from_int(0LL) } -> std::same_as<typename F::Scalar>;
};

/// Instantiates the field policy matching `spec` and calls fn with it.
template <typename Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    switch (spec.kind) {
        case FieldKind::Real:
            return fn(RealField(spec.epsilon));
        case FieldKind::PrimeMod:
            return fn(PrimeField(spec.modulus));
        case FieldKind::GF2:
            return fn(GF2Field());
    }
    throw BadField("unknown field kind");
}

}  // namespace ripple
