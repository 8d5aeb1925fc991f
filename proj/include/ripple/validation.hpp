#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripple/dense.hpp"
#include "ripple/field.hpp"
#include "ripple/rng.hpp"
#include "ripple/serial_gauss.hpp"
#include "ripple/simd_machine.hpp"

namespace ripple {

struct GenerationExhausted : std::runtime_error {
    explicit GenerationExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct RankMismatch : std::runtime_error {
    explicit RankMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct CampaignConfig {
    std::uint64_t seed = 1;
    int n_min = 1;
    int n_max = 30;
    int instances_per_n = 20;
    FieldSpec field = FieldSpec::real();
    int entry_lo = -9;
    int entry_hi = 9;
    int max_regenerations = 1000;   // redraws allowed per instance before giving up
    double solution_rtol = 1e-6;    // |a-b| <= rtol * max(1, |a|, |b|)
    double det_log_atol = 1e-6;     // |log|d_par| - log|d_ser|| bound
    bool check_sliding_zeros = true;
};

/// Outcome of matching one parallel run against the serial elimination of
/// the same matrix.
struct RunComparison {
    bool machine_singular = false;
    bool serial_singular = false;
    int rank = 0;
    bool det_compared = false;  // false when excluded or both sides singular
    bool det_match = false;
    bool solution_compared = false;
    bool solution_match = false;
    double max_solution_err = 0.0;  // Real fields only
};

struct InstanceVerdict {
    int n = 0;
    int index = 0;  // 1-based within its size
    bool pass = false;
    int regenerations = 0;
    std::string note;
};

struct SizeSummary {
    int n = 0;
    int pass = 0;
    int fail = 0;
    long long regenerations = 0;
};

struct CampaignSummary {
    std::vector<SizeSummary> per_size;
    long long pass = 0;
    long long fail = 0;
    long long det_excluded = 0;  // det comparisons skipped because of column swaps
    long long sliding_zero_violations = 0;
    std::vector<InstanceVerdict> failures;
};

template <Field F>
Dense<typename F::Scalar> random_matrix(SplitMix64& rng, int rows, int cols, int lo, int hi,
                                        const F& field) {
    Dense<typename F::Scalar> a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            a(i, j) = field.from_int(rng.next_int(lo, hi));
    return a;
}

/// Draws n x (n+1) systems until the leading n x n block is nonsingular.
/// Throws GenerationExhausted after max_regenerations extra draws.
template <Field F>
Dense<typename F::Scalar> generate_system(SplitMix64& rng, int n, const F& field,
                                          const CampaignConfig& cfg, int& regenerations) {
    regenerations = 0;
    for (;;) {
        Dense<typename F::Scalar> a = random_matrix(rng, n, n + 1, cfg.entry_lo, cfg.entry_hi, field);
        Dense<typename F::Scalar> block = a.leftCols(n);
        if (serial_gauss(block, field, {PivotSearch::SwapOnlyIfZero, 0}).rank == n) return a;
        if (++regenerations > cfg.max_regenerations)
            throw GenerationExhausted("no nonsingular " + std::to_string(n) + "x" +
                                      std::to_string(n) + " block after " +
                                      std::to_string(cfg.max_regenerations) + " redraws");
    }
}

namespace detail {

inline bool close_rel(double a, double b, double rtol) {
    return std::abs(a - b) <= rtol * std::max({1.0, std::abs(a), std::abs(b)});
}

template <Field F>
bool sorted_solutions_match(std::vector<typename F::Scalar> a, std::vector<typename F::Scalar> b,
                            const F& field, double rtol, double& max_err) {
    max_err = 0.0;
    if (a.size() != b.size()) return false;
    if constexpr (F::exact) {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    } else {
        (void)field;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        bool ok = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double err =
                std::abs(a[i] - b[i]) / std::max({1.0, std::abs(a[i]), std::abs(b[i])});
            max_err = std::max(max_err, err);
            if (!close_rel(a[i], b[i], rtol)) ok = false;
        }
        return ok;
    }
}

}  // namespace detail

/// Matches one machine run against the serial elimination of the same
/// matrix. The machine loses the row order, so determinants are compared up
/// to sign: same log-magnitude for Real, residue in {d, M - d} for exact
/// fields. Solutions (augmented systems only) are compared as sorted
/// multisets. Throws RankMismatch when the two sides disagree on rank.
template <Field F>
RunComparison compare_runs(const RunResult<typename F::Scalar>& par,
                           const EliminationResult<typename F::Scalar>& ser, int n, const F& field,
                           double solution_rtol = 1e-6, double det_log_atol = 1e-6) {
    RunComparison out;
    int machine_rank = 0;
    for (bool locked : par.locked) machine_rank += locked ? 1 : 0;
    if (machine_rank != ser.rank)
        throw RankMismatch("machine locked " + std::to_string(machine_rank) +
                           " rows but serial elimination found rank " + std::to_string(ser.rank));
    out.rank = ser.rank;
    out.machine_singular = par.singular;
    out.serial_singular = ser.rank < n;

    if (out.machine_singular || out.serial_singular) return out;

    bool columns_swapped = false;
    for (std::size_t j = 0; j < ser.col_perm.size(); ++j)
        if (ser.col_perm[j] != static_cast<int>(j)) columns_swapped = true;
    if (!columns_swapped) {
        out.det_compared = true;
        const DetValue ds = determinant(ser, n, field);
        if constexpr (F::exact) {
            const std::uint64_t m = field.modulus();
            std::uint64_t dp = field.one();
            for (int i = 0; i < n; ++i) dp = field.mul(dp, par.f_matrix(i, i));
            out.det_match = (dp == ds.residue) || (dp == (m - ds.residue) % m);
        } else {
            double lp = 0.0;
            for (int i = 0; i < n; ++i) lp += std::log(std::abs(par.f_matrix(i, i)));
            out.det_match = std::abs(lp - ds.log_abs) <= det_log_atol;
        }
    }

    if (par.f_matrix.cols() == n + 1) {
        out.solution_compared = true;
        Dense<typename F::Scalar> upper = par.f_matrix.topRows(n);
        const auto xp = back_substitute_upper(upper, field);
        const auto xs = solve_upper(ser, field);
        out.solution_match =
            detail::sorted_solutions_match(xp, xs, field, solution_rtol, out.max_solution_err);
    }
    return out;
}

/// Seeded sweep over sizes n_min..n_max: generate, run both eliminations,
/// compare. Every instance gets its own seed derived from (seed, n, index),
/// so single instances can be replayed.
template <Field F>
CampaignSummary run_campaign_with(const CampaignConfig& cfg, const F& field) {
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
        throw std::invalid_argument("campaign needs 1 <= n_min <= n_max");
    if (cfg.instances_per_n < 1)
        throw std::invalid_argument("campaign needs at least one instance per size");

    CampaignSummary summary;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        SizeSummary size{n, 0, 0, 0};
        for (int k = 1; k <= cfg.instances_per_n; ++k) {
            SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(k)));
            int regens = 0;
            Dense<typename F::Scalar> a = generate_system(rng, n, field, cfg, regens);
            size.regenerations += regens;

            MachineConfig mc;
            mc.rows = n;
            mc.cols = n + 1;
            mc.check_sliding_zeros = cfg.check_sliding_zeros;
            Machine<F> machine(a, field, mc);
            RunResult<typename F::Scalar> par = machine.run();
            summary.sliding_zero_violations += machine.sliding_zero_violations();

            EliminationResult<typename F::Scalar> ser =
                serial_gauss(a, field, {PivotSearch::SwapOnlyIfZero, 1});

            InstanceVerdict verdict;
            verdict.n = n;
            verdict.index = k;
            verdict.regenerations = regens;
            try {
                RunComparison cmp =
                    compare_runs(par, ser, n, field, cfg.solution_rtol, cfg.det_log_atol);
                if (!cmp.det_compared) ++summary.det_excluded;
                const bool det_ok = !cmp.det_compared || cmp.det_match;
                const bool sol_ok = !cmp.solution_compared || cmp.solution_match;
                verdict.pass = det_ok && sol_ok && cmp.solution_compared;
                if (!det_ok) verdict.note = "determinant mismatch";
                if (!sol_ok) verdict.note = "solution mismatch";
                if (!cmp.solution_compared) verdict.note = "solution not compared";
            } catch (const RankMismatch& e) {
                verdict.pass = false;
                verdict.note = e.what();
            }

            if (verdict.pass) {
                ++size.pass;
                ++summary.pass;
            } else {
                ++size.fail;
                ++summary.fail;
                summary.failures.push_back(verdict);
            }
        }
        summary.per_size.push_back(size);
    }
    return summary;
}

inline CampaignSummary run_campaign(const CampaignConfig& cfg) {
    return with_field(cfg.field,
                      [&](const auto& field) { return run_campaign_with(cfg, field); });
}

}  // namespace ripple
