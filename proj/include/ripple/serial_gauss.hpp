#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ripple/dense.hpp"
#include "ripple/field.hpp"

namespace ripple {

struct SingularSystem : std::domain_error {
    SingularSystem() : std::domain_error("system is singular (rank < n)") {}
};

enum class PivotSearch {
    MaxAbs,          // largest |entry| in the remaining block (first nonzero for exact fields)
    SwapOnlyIfZero,  // keep A(i,i) unless it is zero, then search column i, then the rest
};

struct PivotPolicy {
    PivotSearch search = PivotSearch::MaxAbs;
    int protected_tail_columns = 0;  // rightmost columns excluded from column swaps
};

/// Output of serial elimination. Permutations are stored as
/// perm[position] = original index; swap_sign = (-1)^(#row swaps + #col swaps).
template <typename Scalar>
struct EliminationResult {
    Dense<Scalar> matrix;
    std::vector<int> row_perm;
    std::vector<int> col_perm;
    int swap_sign = 1;
    int rank = 0;
};

/// Row-reduces an n x m (m >= n) matrix to upper triangular form, recording
/// swaps. If some position has no usable pivot the remaining rows are left
/// as they stand and rank reports the pivots found.
template <Field F>
EliminationResult<typename F::Scalar> serial_gauss(Dense<typename F::Scalar> a, const F& field,
                                                   PivotPolicy policy = {}) {
    const int n = static_cast<int>(a.rows());
    const int m = static_cast<int>(a.cols());
    if (n < 1 || m < n) throw DimensionMismatch("serial_gauss requires m >= n >= 1");
    if (policy.protected_tail_columns < 0 || policy.protected_tail_columns >= m)
        throw DimensionMismatch("protected_tail_columns must lie in [0, m)");

    EliminationResult<typename F::Scalar> res;
    res.row_perm.resize(n);
    res.col_perm.resize(m);
    std::iota(res.row_perm.begin(), res.row_perm.end(), 0);
    std::iota(res.col_perm.begin(), res.col_perm.end(), 0);

    const int searchable_cols = m - policy.protected_tail_columns;

    for (int i = 0; i < n; ++i) {
        // Search-and-swap stage.
        int pr = -1, pc = -1;
        if (policy.search == PivotSearch::SwapOnlyIfZero) {
            if (i < searchable_cols && !field.is_zero(a(i, i))) {
                pr = i, pc = i;
            } else {
                for (int r = i + 1; r < n && pr < 0 && i < searchable_cols; ++r)
                    if (!field.is_zero(a(r, i))) pr = r, pc = i;
                for (int c = i + 1; c < searchable_cols && pr < 0; ++c)
                    for (int r = i; r < n; ++r)
                        if (!field.is_zero(a(r, c))) { pr = r, pc = c; break; }
            }
        } else if constexpr (F::exact) {
            // Magnitude is meaningless in a finite field; take the first
            // nonzero entry in a column-major scan of the remaining block.
            for (int c = i; c < searchable_cols && pr < 0; ++c)
                for (int r = i; r < n; ++r)
                    if (!field.is_zero(a(r, c))) { pr = r, pc = c; break; }
        } else {
            double best = 0.0;
            for (int r = i; r < n; ++r)
                for (int c = i; c < searchable_cols; ++c) {
                    const double mag = std::abs(static_cast<double>(a(r, c)));
                    if (mag > best) best = mag, pr = r, pc = c;
                }
            if (pr >= 0 && field.is_zero(a(pr, pc))) pr = -1, pc = -1;
        }
        if (pr < 0) break;  // remaining block has no nonzero entry

        if (pr != i) {
            a.row(i).swap(a.row(pr));
            std::swap(res.row_perm[i], res.row_perm[pr]);
            res.swap_sign = -res.swap_sign;
        }
        if (pc != i) {
            a.col(i).swap(a.col(pc));
            std::swap(res.col_perm[i], res.col_perm[pc]);
            res.swap_sign = -res.swap_sign;
        }
        res.rank += 1;

        // Reduction stage. The subdiagonal entry of each reduced row is the
        // algebraic zero; storing it directly keeps the triangular test exact
        // for real matrices as well.
        for (int j = i + 1; j < n; ++j) {
            const auto v_aux = field.div(a(j, i), a(i, i));
            a(j, i) = field.zero();
            for (int k = i + 1; k < m; ++k) a(j, k) = field.sub(a(j, k), field.mul(v_aux, a(i, k)));
        }
    }

    res.matrix = std::move(a);
    return res;
}

/// Determinant of the leading n columns of a triangularized matrix.
/// Real fields report (sign, log|det|, zero flag); exact fields report the
/// canonical residue with the swap sign folded in.
struct DetValue {
    bool zero = false;
    int sign = 1;
    double log_abs = 0.0;        // Real only
    std::uint64_t residue = 0;   // PrimeMod / GF2 only
};

template <Field F>
DetValue determinant(const EliminationResult<typename F::Scalar>& res, int n, const F& field) {
    if (n < 1 || res.matrix.rows() < n || res.matrix.cols() < n)
        throw DimensionMismatch("determinant needs an n x (>= n) elimination result");
    DetValue d;
    d.sign = res.swap_sign;
    if constexpr (F::exact) {
        typename F::Scalar prod = field.one();
        for (int i = 0; i < n; ++i) {
            if (field.is_zero(res.matrix(i, i))) d.zero = true;
            prod = field.mul(prod, res.matrix(i, i));
        }
        if (res.swap_sign < 0) prod = field.sub(field.zero(), prod);
        d.residue = prod;
    } else {
        for (int i = 0; i < n; ++i) {
            const double diag = static_cast<double>(res.matrix(i, i));
            if (field.is_zero(diag)) {
                d.zero = true;
                continue;
            }
            d.log_abs += std::log(std::abs(diag));
            if (diag < 0) d.sign = -d.sign;
        }
        if (d.zero) {
            d.log_abs = -std::numeric_limits<double>::infinity();
            d.sign = 0;
        }
    }
    return d;
}

/// Back-substitution on a raw n x (n+1) upper-triangular augmented matrix.
/// Throws SingularSystem when a diagonal entry tests zero.
template <Field F>
std::vector<typename F::Scalar> back_substitute_upper(const Dense<typename F::Scalar>& a,
                                                      const F& field) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n + 1)
        throw DimensionMismatch("back substitution expects an n x (n+1) augmented system");
    std::vector<typename F::Scalar> y(n, field.zero());
    for (int i = n - 1; i >= 0; --i) {
        if (field.is_zero(a(i, i))) throw SingularSystem();
        auto acc = a(i, n);
        for (int k = i + 1; k < n; ++k) acc = field.sub(acc, field.mul(a(i, k), y[k]));
        y[i] = field.div(acc, a(i, i));
    }
    return y;
}

/// Back-substitution for an eliminated n x (n+1) augmented system whose last
/// column was protected from swaps. The solution comes out in original
/// variable order (col_perm inverted). Throws SingularSystem when rank < n.
template <Field F>
std::vector<typename F::Scalar> solve_upper(const EliminationResult<typename F::Scalar>& res,
                                            const F& field) {
    const int n = static_cast<int>(res.matrix.rows());
    if (res.matrix.cols() != n + 1)
        throw DimensionMismatch("solve_upper expects an n x (n+1) augmented system");
    if (res.rank < n) throw SingularSystem();

    std::vector<typename F::Scalar> y = back_substitute_upper(res.matrix, field);
    std::vector<typename F::Scalar> x(n, field.zero());
    for (int j = 0; j < n; ++j) x[res.col_perm[j]] = y[j];
    return x;
}

}  // namespace ripple
