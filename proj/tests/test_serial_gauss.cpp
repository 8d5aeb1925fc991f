#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ripple/rng.hpp"
#include "ripple/serial_gauss.hpp"

using namespace ripple;

namespace {

Dense<double> random_int_matrix(SplitMix64& rng, int rows, int cols, int lo = -9, int hi = 9) {
    Dense<double> a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = static_cast<double>(rng.next_int(lo, hi));
    return a;
}

double signed_det(const DetValue& d) {
    return d.zero ? 0.0 : d.sign * std::exp(d.log_abs);
}

}  // namespace

TEST_CASE("hand-checked 2x2 eliminations") {
    RealField f;

    Dense<double> a(2, 2);
    a << 1, 2, 3, 4;
    auto full = serial_gauss(a, f, {PivotSearch::MaxAbs, 0});
    CHECK(full.rank == 2);
    CHECK(full.row_perm == std::vector<int>{1, 0});
    CHECK(full.col_perm == std::vector<int>{1, 0});
    CHECK(full.swap_sign == 1);
    CHECK(full.matrix(0, 0) == 4.0);
    CHECK(full.matrix(1, 0) == 0.0);
    CHECK(signed_det(determinant(full, 2, f)) == doctest::Approx(-2.0));

    auto keep = serial_gauss(a, f, {PivotSearch::SwapOnlyIfZero, 0});
    CHECK(keep.rank == 2);
    CHECK(keep.row_perm == std::vector<int>{0, 1});
    CHECK(keep.swap_sign == 1);
    CHECK(keep.matrix(1, 1) == doctest::Approx(-2.0));
    CHECK(signed_det(determinant(keep, 2, f)) == doctest::Approx(-2.0));

    Dense<double> anti(2, 2);
    anti << 0, 1, 1, 0;
    auto fa = serial_gauss(anti, f, {PivotSearch::MaxAbs, 0});
    CHECK(fa.rank == 2);
    CHECK(fa.swap_sign == -1);  // single column swap finds the (0,1) entry first
    CHECK(signed_det(determinant(fa, 2, f)) == doctest::Approx(-1.0));

    auto sa = serial_gauss(anti, f, {PivotSearch::SwapOnlyIfZero, 0});
    CHECK(sa.rank == 2);
    CHECK(sa.row_perm == std::vector<int>{1, 0});
    CHECK(sa.col_perm == std::vector<int>{0, 1});
    CHECK(signed_det(determinant(sa, 2, f)) == doctest::Approx(-1.0));
}

TEST_CASE("rank deficiency leaves a zero determinant") {
    RealField f;
    Dense<double> a(2, 2);
    a << 1, 2, 2, 4;
    for (auto search : {PivotSearch::MaxAbs, PivotSearch::SwapOnlyIfZero}) {
        auto res = serial_gauss(a, f, {search, 0});
        CHECK(res.rank == 1);
        DetValue d = determinant(res, 2, f);
        CHECK(d.zero);
        CHECK(d.sign == 0);
        CHECK(std::isinf(d.log_abs));
    }

    // Pivot reachable only through a column swap.
    Dense<double> c(2, 2);
    c << 0, 2, 0, 3;
    auto res = serial_gauss(c, f, {PivotSearch::SwapOnlyIfZero, 0});
    CHECK(res.rank == 1);
    CHECK(res.col_perm == std::vector<int>{1, 0});
}

TEST_CASE("subdiagonal of the reduced matrix is exactly zero") {
    SplitMix64 rng(7);
    RealField f;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(8));
        Dense<double> a = random_int_matrix(rng, n, n + 1);
        for (auto search : {PivotSearch::MaxAbs, PivotSearch::SwapOnlyIfZero}) {
            auto res = serial_gauss(a, f, {search, 1});
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j) CHECK(res.matrix(i, j) == 0.0);
        }
    }
}

TEST_CASE("determinants match dense LU from Eigen") {
    SplitMix64 rng(11);
    RealField f;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(7));
        Dense<double> a = random_int_matrix(rng, n, n);
        const double reference = Eigen::FullPivLU<Dense<double>>(a).determinant();
        for (auto search : {PivotSearch::MaxAbs, PivotSearch::SwapOnlyIfZero}) {
            auto res = serial_gauss(a, f, {search, 0});
            const double mine = signed_det(determinant(res, n, f));
            CHECK(mine == doctest::Approx(reference).epsilon(1e-9).scale(
                              std::max(1.0, std::abs(reference))));
        }
    }
}

TEST_CASE("rank agrees with Eigen on engineered low-rank matrices") {
    SplitMix64 rng(13);
    RealField f;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(6));
        const int r = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        Dense<double> b = random_int_matrix(rng, n, r, -3, 3);
        Dense<double> c = random_int_matrix(rng, r, n, -3, 3);
        Dense<double> a = b * c;

        Eigen::FullPivLU<Dense<double>> lu(a);
        lu.setThreshold(1e-8);
        auto res = serial_gauss(a, f, {PivotSearch::MaxAbs, 0});
        CHECK(res.rank == static_cast<int>(lu.rank()));
        CHECK(res.rank <= r);
    }
}

TEST_CASE("solving augmented systems reproduces Eigen solutions") {
    SplitMix64 rng(17);
    RealField f;
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(8));
        Dense<double> a = random_int_matrix(rng, n, n + 1);
        Dense<double> lead = a.leftCols(n);
        Eigen::FullPivLU<Dense<double>> lu(lead);
        lu.setThreshold(1e-8);
        if (static_cast<int>(lu.rank()) < n) continue;
        ++solved;

        DenseVector<double> reference = lu.solve(a.col(n));
        for (auto search : {PivotSearch::MaxAbs, PivotSearch::SwapOnlyIfZero}) {
            auto res = serial_gauss(a, f, {search, 1});
            REQUIRE(res.rank == n);
            auto x = solve_upper(res, f);
            for (int j = 0; j < n; ++j)
                CHECK(x[j] == doctest::Approx(reference(j)).epsilon(1e-7).scale(
                                  std::max(1.0, std::abs(reference(j)))));
            // And the residual of the original system is tiny.
            DenseVector<double> xv(n);
            for (int j = 0; j < n; ++j) xv(j) = x[j];
            CHECK((lead * xv - a.col(n)).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
    CHECK(solved > 150);
}

TEST_CASE("prime field elimination is exact") {
    PrimeField f(7);
    Dense<std::uint64_t> a(2, 2);
    a << 3, 1, 5, 2;
    auto res = serial_gauss(a, f, {PivotSearch::MaxAbs, 0});
    CHECK(res.rank == 2);
    CHECK(res.matrix(0, 0) == 3);
    CHECK(res.matrix(1, 0) == 0);
    CHECK(res.matrix(1, 1) == 5);  // 2 - (5/3)*1 = 2 - 4 = -2 = 5 (mod 7)
    DetValue d = determinant(res, 2, f);
    CHECK_FALSE(d.zero);
    CHECK(d.residue == 1);  // det = 3*2 - 1*5 = 1

    SplitMix64 rng(19);
    PrimeField big(10007);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(6));
        Dense<std::uint64_t> sys(n, n + 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= n; ++j) sys(i, j) = big.from_int(rng.next_int(0, 10006));
        auto r = serial_gauss(sys, big, {PivotSearch::MaxAbs, 1});
        if (r.rank < n) continue;
        auto x = solve_upper(r, big);
        for (int i = 0; i < n; ++i) {
            std::uint64_t acc = 0;
            for (int j = 0; j < n; ++j) acc = big.add(acc, big.mul(sys(i, j), x[j]));
            CHECK(acc == sys(i, n));
        }
    }
}

TEST_CASE("gf2 elimination solves boolean systems") {
    GF2Field f;
    Dense<std::uint64_t> a(3, 4);
    a << 1, 1, 0, 1,
         0, 1, 1, 0,
         1, 0, 1, 0;
    auto res = serial_gauss(a, f, {PivotSearch::SwapOnlyIfZero, 1});
    // x0+x1 = 1, x1+x2 = 0, x0+x2 = 0 has no unique solution: rank 2.
    CHECK(res.rank == 2);

    Dense<std::uint64_t> b(3, 4);
    b << 1, 1, 0, 1,
         0, 1, 1, 0,
         0, 0, 1, 1;
    auto rb = serial_gauss(b, f, {PivotSearch::SwapOnlyIfZero, 1});
    REQUIRE(rb.rank == 3);
    auto x = solve_upper(rb, f);
    CHECK(x == std::vector<std::uint64_t>{0, 1, 1});
}

TEST_CASE("protected tail columns are never swapped") {
    SplitMix64 rng(23);
    RealField f;
    for (int trial = 0; trial < 50; ++trial) {
        Dense<double> a = random_int_matrix(rng, 4, 6);
        auto res = serial_gauss(a, f, {PivotSearch::MaxAbs, 2});
        CHECK(res.col_perm[4] == 4);
        CHECK(res.col_perm[5] == 5);
    }
}

TEST_CASE("input validation") {
    RealField f;
    Dense<double> wide(3, 2);
    wide.setZero();
    CHECK_THROWS_AS(serial_gauss(wide, f), DimensionMismatch);

    Dense<double> ok(2, 3);
    ok.setZero();
    CHECK_THROWS_AS(serial_gauss(ok, f, {PivotSearch::MaxAbs, 3}), DimensionMismatch);
    CHECK_THROWS_AS(serial_gauss(ok, f, {PivotSearch::MaxAbs, -1}), DimensionMismatch);

    Dense<double> singular(2, 3);
    singular << 1, 2, 3, 2, 4, 6;
    auto res = serial_gauss(singular, f, {PivotSearch::MaxAbs, 1});
    CHECK(res.rank == 1);
    CHECK_THROWS_AS(solve_upper(res, f), SingularSystem);

    Dense<double> square(2, 2);
    square << 1, 0, 0, 1;
    auto rs = serial_gauss(square, f);
    CHECK_THROWS_AS(solve_upper(rs, f), DimensionMismatch);
}

TEST_CASE("raw back substitution") {
    RealField f;
    Dense<double> u(2, 3);
    u << 2, 0, 4,
         0, 5, 10;
    auto y = back_substitute_upper(u, f);
    CHECK(y == std::vector<double>{2.0, 2.0});

    Dense<double> bad(2, 3);
    bad << 2, 1, 4,
           0, 0, 10;
    CHECK_THROWS_AS(back_substitute_upper(bad, f), SingularSystem);
}
