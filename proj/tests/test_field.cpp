#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ripple/field.hpp"

using namespace ripple;

TEST_CASE("primality by trial division") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(7));
    CHECK(is_prime(10007));
    CHECK(is_prime(2147483647ull));  // 2^31 - 1
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(9));
    CHECK_FALSE(is_prime(10005));
    CHECK_FALSE(is_prime(10007ull * 10009ull));
}

TEST_CASE("modular inverses") {
    CHECK(mod_inverse(1, 2) == 1);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(10, 10007) == 7005);
    for (std::uint64_t x = 1; x < 97; ++x)
        CHECK((x * mod_inverse(x, 97)) % 97 == 1);
    CHECK_THROWS_AS(mod_inverse(0, 5), NotInvertible);
    CHECK_THROWS_AS(mod_inverse(4, 8), NotInvertible);
    CHECK_THROWS_AS(mod_inverse(5, 5), NotInvertible);  // operands must be reduced
    CHECK_THROWS_AS(mod_inverse(1, 1), NotInvertible);
}

TEST_CASE("prime field arithmetic stays canonical") {
    PrimeField f7(7);
    CHECK(f7.add(3, 5) == 1);
    CHECK(f7.sub(2, 5) == 4);
    CHECK(f7.mul(3, 5) == 1);
    CHECK(f7.div(1, 3) == 5);
    CHECK(f7.from_int(-3) == 4);
    CHECK(f7.from_int(10) == 3);
    CHECK(f7.one() == 1);
    CHECK_THROWS_AS(f7.div(3, 0), DivisionByZero);

    PrimeField f5(5);
    CHECK(f5.add(3, 4) == 2);

    // Largest admitted modulus: products of canonical residues must not wrap.
    PrimeField big(2147483647ull);
    std::uint64_t a = 2147483646ull;
    CHECK(big.mul(a, a) == 1);  // (-1)^2
    CHECK_THROWS_AS(PrimeField(4), BadField);
    CHECK_THROWS_AS(PrimeField(1), BadField);
    CHECK_THROWS_AS(PrimeField(0x80000000ull), BadField);
}

TEST_CASE("gf2 matches the mod-2 prime field") {
    GF2Field g;
    PrimeField p2(2);
    for (std::uint64_t a : {0ull, 1ull})
        for (std::uint64_t b : {0ull, 1ull}) {
            CHECK(g.add(a, b) == p2.add(a, b));
            CHECK(g.sub(a, b) == p2.sub(a, b));
            CHECK(g.mul(a, b) == p2.mul(a, b));
            if (b != 0) CHECK(g.div(a, b) == p2.div(a, b));
        }
    CHECK(g.from_int(-1) == 1);
    CHECK(g.from_int(2) == 0);
    CHECK_THROWS_AS(g.div(1, 0), DivisionByZero);
}

TEST_CASE("real field epsilon applies to zero tests only") {
    RealField f;
    CHECK(f.is_zero(0.0));
    CHECK(f.is_zero(1e-10));
    CHECK(f.is_zero(-1e-10));
    CHECK_FALSE(f.is_zero(1e-8));
    CHECK(f.add(1e-10, 0.0) == 1e-10);  // arithmetic itself is untouched
    CHECK_THROWS_AS(f.div(1.0, 1e-12), DivisionByZero);
    CHECK(f.div(1.0, 2.0) == 0.5);

    RealField tight(0.0);
    CHECK_FALSE(tight.is_zero(1e-300));
    CHECK_THROWS_AS(RealField(-1e-9), BadField);
}

TEST_CASE("field spec parsing round-trips") {
    FieldSpec r = FieldSpec::parse("real");
    CHECK(r.kind == FieldKind::Real);
    CHECK(r.epsilon == 1e-9);
    CHECK(r.to_string() == "real");

    FieldSpec re = FieldSpec::parse("real:eps=1e-6");
    CHECK(re.epsilon == 1e-6);
    CHECK(FieldSpec::parse(re.to_string()).epsilon == 1e-6);

    FieldSpec p = FieldSpec::parse("gfp:10007");
    CHECK(p.kind == FieldKind::PrimeMod);
    CHECK(p.modulus == 10007);
    CHECK(p.to_string() == "gfp:10007");

    FieldSpec g = FieldSpec::parse("gf2");
    CHECK(g.kind == FieldKind::GF2);
    CHECK(g.to_string() == "gf2");

    CHECK_THROWS_AS(FieldSpec::parse("gfp:10"), BadField);
    CHECK_THROWS_AS(FieldSpec::parse("gfp:"), BadField);
    CHECK_THROWS_AS(FieldSpec::parse("gfp:banana"), BadField);
    CHECK_THROWS_AS(FieldSpec::parse("real:eps=banana"), BadField);
    CHECK_THROWS_AS(FieldSpec::parse("banana"), BadField);
    CHECK_THROWS_AS(FieldSpec::parse(""), BadField);
}

TEST_CASE("with_field dispatches on the FieldSpec kind") {
    auto kind_of = [](const FieldSpec& spec) {
        return with_field(spec, [](const auto& field) {
            using F = std::decay_t<decltype(field)>;
            if constexpr (std::is_same_v<F, RealField>) return FieldKind::Real;
            else if constexpr (std::is_same_v<F, PrimeField>) return FieldKind::PrimeMod;
            else return FieldKind::GF2;
        });
    };
    CHECK(kind_of(FieldSpec::real()) == FieldKind::Real);
    CHECK(kind_of(FieldSpec::prime(97)) == FieldKind::PrimeMod);
    CHECK(kind_of(FieldSpec::gf2()) == FieldKind::GF2);
}
