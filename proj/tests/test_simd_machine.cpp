#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "ripple/rng.hpp"
#include "ripple/serial_gauss.hpp"
#include "ripple/simd_machine.hpp"

using namespace ripple;

namespace {

Dense<double> random_int_matrix(SplitMix64& rng, int rows, int cols, int lo = -9, int hi = 9) {
    Dense<double> a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = static_cast<double>(rng.next_int(lo, hi));
    return a;
}

MachineConfig cfg(int n, int m, bool trace = false) {
    MachineConfig c;
    c.rows = n;
    c.cols = m;
    c.trace = trace;
    c.check_sliding_zeros = true;
    return c;
}

}  // namespace

TEST_CASE("single processor locks its only row") {
    RealField f;
    Dense<double> a(1, 1);
    a << 5;
    Machine<RealField> machine(a, f, cfg(1, 1));
    auto out = machine.run();
    CHECK(out.iterations == 1);
    CHECK(out.locked == std::vector<bool>{true});
    REQUIRE(out.lock_iteration[0].has_value());
    CHECK(*out.lock_iteration[0] == 1);
    CHECK(out.f_matrix(0, 0) == 5.0);
    CHECK_FALSE(out.singular);
}

TEST_CASE("antidiagonal 2x2 locks out of order") {
    RealField f;
    Dense<double> a(2, 2);
    a << 0, 1, 1, 0;
    Machine<RealField> machine(a, f, cfg(2, 2));
    auto out = machine.run();
    CHECK(out.iterations == 3);
    CHECK(out.locked == std::vector<bool>{true, true});
    CHECK(*out.lock_iteration[0] == 1);  // row 2 of the input arrives first
    CHECK(*out.lock_iteration[1] == 3);
    CHECK(out.f_matrix(0, 0) == 1.0);
    CHECK(out.f_matrix(0, 1) == 0.0);
    CHECK(out.f_matrix(1, 0) == 0.0);
    CHECK(out.f_matrix(1, 1) == 1.0);
    CHECK(machine.sliding_zero_violations() == 0);
}

TEST_CASE("identity 2x2 locks both rows on the second pass") {
    RealField f;
    Dense<double> a(2, 2);
    a << 1, 0, 0, 1;
    Machine<RealField> machine(a, f, cfg(2, 2));
    auto out = machine.run();
    CHECK(out.locked == std::vector<bool>{true, true});
    CHECK(*out.lock_iteration[0] == 2);
    CHECK(*out.lock_iteration[1] == 2);
    CHECK(out.f_matrix == a);
}

TEST_CASE("all-zero input never locks and reports singular") {
    RealField f;
    for (int n : {1, 2, 4}) {
        Dense<double> a = Dense<double>::Zero(n, n);
        Machine<RealField> machine(a, f, cfg(n, n));
        auto out = machine.run();
        CHECK(out.iterations == 2 * n - 1);
        CHECK(out.singular);
        for (int i = 0; i < n; ++i) {
            CHECK_FALSE(out.locked[i]);
            CHECK_FALSE(out.lock_iteration[i].has_value());
        }
        CHECK(out.f_matrix.isZero(0.0));
    }
}

TEST_CASE("nonsingular real systems: triangular f, matching determinant and solution") {
    SplitMix64 rng(31);
    RealField f;
    int done = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(10));
        Dense<double> a = random_int_matrix(rng, n, n + 1);
        Dense<double> lead = a.leftCols(n);
        Eigen::FullPivLU<Dense<double>> lu(lead);
        lu.setThreshold(1e-8);
        if (static_cast<int>(lu.rank()) < n) continue;
        ++done;

        Machine<RealField> machine(a, f, cfg(n, n + 1));
        auto out = machine.run();
        CHECK_FALSE(out.singular);
        CHECK(machine.sliding_zero_violations() == 0);

        // f is exactly upper triangular with nonzero diagonal.
        double logdet = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(out.f_matrix(i, i)) > 1e-9);
            logdet += std::log(std::abs(out.f_matrix(i, i)));
            for (int j = 0; j < i; ++j) CHECK(out.f_matrix(i, j) == 0.0);
        }
        const double reference = std::log(std::abs(lu.determinant()));
        CHECK(logdet == doctest::Approx(reference).epsilon(1e-9).scale(
                            std::max(1.0, std::abs(reference))));

        // No column swaps happen on the grid, so the solution comes out in
        // input variable order.
        Dense<double> upper = out.f_matrix.topRows(n);
        auto x = back_substitute_upper(upper, f);
        DenseVector<double> expect = lu.solve(a.col(n));
        for (int j = 0; j < n; ++j)
            CHECK(x[j] == doctest::Approx(expect(j)).epsilon(1e-7).scale(
                              std::max(1.0, std::abs(expect(j)))));
    }
    CHECK(done > 90);
}

TEST_CASE("prime field runs agree with serial elimination up to row order") {
    PrimeField f(7);
    SplitMix64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5;
        Dense<std::uint64_t> a(n, n + 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= n; ++j) a(i, j) = rng.next_below(7);

        Machine<PrimeField> machine(a, f, cfg(n, n + 1));
        auto out = machine.run();
        CHECK(machine.sliding_zero_violations() == 0);
        int locked = 0;
        for (bool b : out.locked) locked += b ? 1 : 0;

        auto ser = serial_gauss(a, f, {PivotSearch::SwapOnlyIfZero, 1});
        CHECK(locked == ser.rank);

        if (ser.rank == n) {
            std::uint64_t dp = 1;
            for (int i = 0; i < n; ++i) dp = f.mul(dp, out.f_matrix(i, i));
            const std::uint64_t ds = determinant(ser, n, f).residue;
            const bool match = dp == ds || dp == (7 - ds) % 7;
            CHECK(match);
        }
    }
}

TEST_CASE("gf2 runs lock exactly the rank") {
    GF2Field f;
    SplitMix64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4;
        Dense<std::uint64_t> a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.next_below(2);
        Machine<GF2Field> machine(a, f, cfg(n, n));
        auto out = machine.run();
        CHECK(machine.sliding_zero_violations() == 0);
        int locked = 0;
        for (bool b : out.locked) locked += b ? 1 : 0;
        auto ser = serial_gauss(a, f, {PivotSearch::SwapOnlyIfZero, 0});
        CHECK(locked == ser.rank);
        CHECK(out.singular == (ser.rank < n));
    }
}

TEST_CASE("trace records origins and monotone states") {
    RealField f;
    SplitMix64 rng(43);
    const int n = 6;
    Dense<double> a = random_int_matrix(rng, n, n + 1);
    MachineConfig c = cfg(n, n + 1, true);
    Machine<RealField> machine(a, f, c);
    auto out = machine.run();
    const auto& trace = machine.trace();
    REQUIRE(static_cast<int>(trace.size()) == 2 * n - 1);

    std::vector<int> prev(n, 0);
    for (int t = 1; t <= 2 * n - 1; ++t) {
        const auto& rec = trace[t - 1];
        CHECK(rec.iteration == t);
        CHECK(rec.origin_row_at_processor_row_1 == (n - t % n) % n + 1);
        REQUIRE(rec.tmp_snapshot.has_value());
        REQUIRE(rec.f_snapshot.has_value());
        CHECK(rec.tmp_snapshot->rows() == n);
        CHECK(rec.tmp_snapshot->cols() == n + 1);
        REQUIRE(static_cast<int>(rec.row_states.size()) == n);
        for (int i = 0; i < n; ++i) {
            CHECK(rec.row_states[i] >= prev[i]);  // locking is permanent
            prev[i] = rec.row_states[i];
        }
    }
    // The last snapshot agrees with the final f matrix wherever rows locked.
    for (int i = 0; i < n; ++i)
        if (out.locked[i])
            for (int j = 0; j < n + 1; ++j)
                CHECK((*trace.back().f_snapshot)(i, j) == out.f_matrix(i, j));
}

TEST_CASE("manual stepping stops after 2n-1 iterations") {
    RealField f;
    Dense<double> a(2, 2);
    a << 1, 2, 3, 4;
    Machine<RealField> machine(a, f, cfg(2, 2));
    for (int t = 0; t < 3; ++t) machine.step();
    CHECK_THROWS_AS(machine.step(), std::logic_error);
    CHECK_THROWS_AS(machine.run(), std::logic_error);  // not freshly loaded
}

TEST_CASE("configuration validation") {
    RealField f;
    Dense<double> a(2, 2);
    a.setZero();
    MachineConfig bad;
    bad.rows = 3;
    bad.cols = 2;  // m < n
    CHECK_THROWS_AS(Machine<RealField>(a, f, bad), BadConfig);
    MachineConfig zero;
    zero.rows = 0;
    zero.cols = 0;
    CHECK_THROWS_AS(Machine<RealField>(a, f, zero), BadConfig);
    MachineConfig mismatch;
    mismatch.rows = 3;
    mismatch.cols = 3;
    CHECK_THROWS_AS(Machine<RealField>(a, f, mismatch), DimensionMismatch);
}

TEST_CASE("sliding zeros hold on wide grids and singular inputs") {
    SplitMix64 rng(47);
    RealField fr;
    GF2Field f2;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(6));
        const int m = n + static_cast<int>(rng.next_below(4));
        Dense<double> a = random_int_matrix(rng, n, m, -3, 3);
        Machine<RealField> machine(a, fr, cfg(n, m));
        machine.run();
        CHECK(machine.sliding_zero_violations() == 0);

        Dense<std::uint64_t> b(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) b(i, j) = rng.next_below(2);
        Machine<GF2Field> mb(b, f2, cfg(n, m));
        mb.run();
        CHECK(mb.sliding_zero_violations() == 0);
    }
}
