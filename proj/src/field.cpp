#include "ripple/field.hpp"

#include <charconv>

namespace ripple {

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) return false;
    }
    return true;
}

std::uint64_t mod_inverse(std::uint64_t x, std::uint64_t m) {
    if (m < 2 || x >= m) throw NotInvertible(x, m);
    // Extended Euclid on (x, m); old_s tracks the Bezout coefficient of x.
    long long r0 = static_cast<long long>(x), r1 = static_cast<long long>(m);
    long long s0 = 1, s1 = 0;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw NotInvertible(x, m);
    long long mm = static_cast<long long>(m);
    long long inv = ((s0 % mm) + mm) % mm;
    return static_cast<std::uint64_t>(inv);
}

FieldSpec FieldSpec::real(double eps) {
    if (eps < 0) throw BadField("epsilon must be nonnegative");
    FieldSpec s;
    s.kind = FieldKind::Real;
    s.epsilon = eps;
    return s;
}

FieldSpec FieldSpec::prime(std::uint64_t m) {
    if (m < 2 || m > kMaxModulus) throw BadField("modulus out of range [2, 2^31-1]");
    if (!is_prime(m)) throw BadField(std::to_string(m) + " is not prime");
    FieldSpec s;
    s.kind = FieldKind::PrimeMod;
    s.modulus = m;
    return s;
}

FieldSpec FieldSpec::gf2() {
    FieldSpec s;
    s.kind = FieldKind::GF2;
    s.modulus = 2;
    return s;
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "real") return real();
    if (text == "gf2") return gf2();
    if (text.rfind("real:eps=", 0) == 0) {
        const std::string num = text.substr(9);
        try {
            std::size_t used = 0;
            double eps = std::stod(num, &used);
            if (used != num.size()) throw BadField("bad epsilon: " + num);
            return real(eps);
        } catch (const std::exception&) {
            throw BadField("bad epsilon in field string: " + text);
        }
    }
    if (text.rfind("gfp:", 0) == 0) {
        const std::string num = text.substr(4);
        std::uint64_t m = 0;
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), m);
        if (ec != std::errc{} || p != num.data() + num.size())
            throw BadField("bad modulus in field string: " + text);
        return prime(m);
    }
    throw BadField("unrecognized field string: " + text +
                   " (expected real, real:eps=<float>, gfp:<M>, gf2)");
}

std::string FieldSpec::to_string() const {
    switch (kind) {
        case FieldKind::Real: {
            if (epsilon == 1e-9) return "real";
            char buf[64];
            std::snprintf(buf, sizeof buf, "real:eps=%.17g", epsilon);
            return buf;
        }
        case FieldKind::PrimeMod:
            return "gfp:" + std::to_string(modulus);
        case FieldKind::GF2:
            return "gf2";
    }
    return "?";
}

}  // namespace ripple
