#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ripple/dense.hpp"
#include "ripple/field.hpp"

namespace ripple {

struct BadConfig : std::invalid_argument {
    explicit BadConfig(const std::string& what) : std::invalid_argument(what) {}
};

struct MachineConfig {
    int rows = 1;  // n
    int cols = 1;  // m, must satisfy m >= n
    bool trace = false;
    bool check_sliding_zeros = false;  // verify the below-diagonal invariant after each shift
};

/// Per-iteration observation of the processor grid, captured after the
/// iteration completes. origin_row_at_processor_row_1 names the original
/// matrix row (1-based) whose descendant sits on processor row 1 after the
/// shift of this iteration.
template <typename Scalar>
struct TraceRecord {
    int iteration = 0;
    std::vector<int> row_states;
    int origin_row_at_processor_row_1 = 0;
    std::optional<Dense<Scalar>> tmp_snapshot;
    std::optional<Dense<Scalar>> f_snapshot;
};

template <typename Scalar>
struct RunResult {
    Dense<Scalar> f_matrix;
    std::vector<bool> locked;                       // per processor row
    std::vector<std::optional<int>> lock_iteration; // 1-based iteration of the 0->1 flip
    int iterations = 0;                             // always 2n-1
    bool singular = false;                          // some row never locked
};

/// Simulation of the n x m processor grid. Rows of the working matrix cycle
/// vertically one step per iteration; each processor row, once its diagonal
/// sees a nonzero pivot, freezes that row into f and from then on reduces
/// every row sliding past it. Only row broadcasts are used: processor (i,i)
/// is the sole sender on row i.
///
/// A Machine is mutated by one caller at a time; distinct instances are
/// independent. Every phase reads only pre-phase values, so the sequential
/// loops below are the reference semantics.
template <Field F>
class Machine {
public:
    using Scalar = typename F::Scalar;
    using Matrix = Dense<Scalar>;

    /// Loads the initial matrix: tmp <- matrix, everything else zeroed.
    Machine(const Matrix& initial, F field, MachineConfig config)
        : field_(std::move(field)), cfg_(config), n_(config.rows), m_(config.cols) {
        if (n_ < 1) throw BadConfig("need at least one processor row");
        if (m_ < n_) throw BadConfig("grid needs m >= n (got " + std::to_string(n_) + "x" +
                                     std::to_string(m_) + ")");
        if (initial.rows() != n_ || initial.cols() != m_)
            throw DimensionMismatch("matrix shape does not match the processor grid");
        tmp_ = initial;
        tmp2_ = Matrix::Constant(n_, m_, field_.zero());
        f_ = Matrix::Constant(n_, m_, field_.zero());
        cnt_ = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, m_);
        state_ = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, m_);
        state_changed_ = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, m_);
        lock_iteration_.assign(n_, std::nullopt);
    }

    int iteration() const { return iteration_; }
    int total_iterations() const { return 2 * n_ - 1; }
    const Matrix& tmp() const { return tmp_; }
    const Matrix& tmp2() const { return tmp2_; }
    const Matrix& f() const { return f_; }
    long long cnt(int i, int j) const { return cnt_(i, j); }
    int state(int i, int j) const { return state_(i, j); }
    bool state_changed(int i, int j) const { return state_changed_(i, j) != 0; }
    const MachineConfig& config() const { return cfg_; }
    const F& field() const { return field_; }
    long long sliding_zero_violations() const { return violations_; }
    const std::vector<TraceRecord<Scalar>>& trace() const { return trace_; }

    /// Cyclic vertical transfer: row i hands its tmp values to row i+1,
    /// row n wraps to row 1. All other registers stay put.
    void shift_down() {
        Matrix next(n_, m_);
        next.row(0) = tmp_.row(n_ - 1);
        if (n_ > 1) next.bottomRows(n_ - 1) = tmp_.topRows(n_ - 1);
        tmp_ = std::move(next);
        ++shifts_;
    }

    /// One iteration of the algorithm: shift, then the Compute phase
    /// schedule. Every phase completes across the grid before the next
    /// starts. Requires iteration() < 2n-1.
    TraceRecord<Scalar> step() {
        if (iteration_ >= total_iterations())
            throw std::logic_error("machine already ran its 2n-1 iterations");
        const int t = iteration_ + 1;  // 1-based iteration number

        // P0: data transfer.
        shift_down();
        if (cfg_.check_sliding_zeros) check_sliding_zeros(t);

        // P1: every processor increments its counter.
        cnt_.array() += 1;

        // P2-P4: locked rows reduce the row sliding past them.
        for (int r = 0; r < n_; ++r) {
            const int i = r + 1;
            if (!(state_(r, r) == 1 && cnt_(r, r) >= i)) continue;
            // P2: the diagonal processor computes the multiplier and
            // broadcasts it on its row.
            const Scalar bcast = field_.div(tmp_(r, r), f_(r, r));
            tmp2_(r, r) = bcast;
            // P3: the other selected processors on the row receive it.
            for (int j = 0; j < m_; ++j) {
                if (j == r) continue;
                if (state_(r, j) == 1 && cnt_(r, j) >= i) tmp2_(r, j) = bcast;
            }
            // P4: tmp(i,j) -= tmp2(i,j) * f(i,j). At the diagonal the update
            // is tmp - (tmp/f)*f, identically zero; storing the field zero
            // keeps the below-diagonal entries exact in floating point too.
            for (int j = 0; j < m_; ++j) {
                if (!(state_(r, j) == 1 && cnt_(r, j) >= i)) continue;
                if (j == r)
                    tmp_(r, j) = field_.zero();
                else
                    tmp_(r, j) = field_.sub(tmp_(r, j), field_.mul(tmp2_(r, j), f_(r, j)));
            }
        }

        // P5-P7: unlocked rows test their pivot candidate and spread the
        // changed-state announcement.
        for (int r = 0; r < n_; ++r) {
            const int i = r + 1;
            if (!(state_(r, r) == 0 && cnt_(r, r) >= i)) continue;
            const bool announce = !field_.is_zero(tmp_(r, r));
            if (announce) state_changed_(r, r) = 1;  // P5 (P6 broadcasts false)
            for (int j = 0; j < m_; ++j) {           // P7
                if (j == r) continue;
                if (state_(r, j) == 0 && cnt_(r, j) >= i) state_changed_(r, j) = announce ? 1 : 0;
            }
        }

        // P8: processors whose state changed lock the current row into f.
        for (int r = 0; r < n_; ++r) {
            const int i = r + 1;
            bool row_locked_now = false;
            for (int j = 0; j < m_; ++j) {
                if (!(state_changed_(r, j) == 1 && cnt_(r, j) >= i)) continue;
                state_(r, j) = 1;
                f_(r, j) = tmp_(r, j);
                tmp_(r, j) = field_.zero();
                state_changed_(r, j) = 0;
                row_locked_now = true;
            }
            if (row_locked_now && !lock_iteration_[r]) lock_iteration_[r] = t;
        }

        ++iteration_;

        TraceRecord<Scalar> rec;
        rec.iteration = t;
        rec.origin_row_at_processor_row_1 = origin_row_at_processor_row_1();
        rec.row_states.resize(n_);
        for (int r = 0; r < n_; ++r) rec.row_states[r] = state_(r, r);
        if (cfg_.trace) {
            rec.tmp_snapshot = tmp_;
            rec.f_snapshot = f_;
        }
        return rec;
    }

    /// Runs the full 2n-1 iterations from a freshly loaded machine, then
    /// zero-fills f on every still-unlocked processor and reports whether
    /// the input was singular.
    RunResult<Scalar> run() {
        if (iteration_ != 0) throw std::logic_error("run() needs a freshly loaded machine");
        trace_.clear();
        const int total = total_iterations();
        for (int t = 0; t < total; ++t) {
            TraceRecord<Scalar> rec = step();
            if (cfg_.trace) trace_.push_back(std::move(rec));
        }

        RunResult<Scalar> out;
        out.iterations = total;
        out.locked.resize(n_);
        out.lock_iteration = lock_iteration_;
        for (int r = 0; r < n_; ++r) {
            const bool locked = state_(r, r) == 1;
            out.locked[r] = locked;
            if (!locked) out.singular = true;
        }
        for (int r = 0; r < n_; ++r)
            for (int j = 0; j < m_; ++j)
                if (state_(r, j) == 0) f_(r, j) = field_.zero();
        out.f_matrix = f_;
        return out;
    }

    /// Original matrix row (1-based) whose slot occupies processor row 1
    /// after the most recent shift.
    int origin_row_at_processor_row_1() const {
        return (n_ - (shifts_ % n_)) % n_ + 1;
    }

private:
    void check_sliding_zeros(int t) {
        // Received tmp values on row i must be zero left of the diagonal
        // once the row is active (t >= i).
        for (int r = 0; r < n_ && r + 1 <= t; ++r)
            for (int j = 0; j < r; ++j)
                if (!field_.is_zero(tmp_(r, j))) ++violations_;
    }

    F field_;
    MachineConfig cfg_;
    int n_, m_;
    Matrix tmp_, tmp2_, f_;
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> cnt_;
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> state_, state_changed_;
    std::vector<std::optional<int>> lock_iteration_;
    std::vector<TraceRecord<Scalar>> trace_;
    int iteration_ = 0;
    long long shifts_ = 0;
    long long violations_ = 0;
};

}  // namespace ripple
