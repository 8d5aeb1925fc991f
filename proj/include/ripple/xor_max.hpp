#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ripple {

struct BadWindow : std::invalid_argument {
    explicit BadWindow(const std::string& what) : std::invalid_argument(what) {}
};

/// Result of subset maximization. Indices are 1-based positions into the
/// input list, ascending; xoring the selected values gives xm.
struct XorMaxResult {
    std::uint64_t xm = 0;
    std::vector<int> subset;
};

/// Result of subarray maximization: value = A(i) xor ... xor A(j) with
/// 1-based inclusive endpoints i <= j.
struct XorSubarrayResult {
    std::uint64_t value = 0;
    int i = 0;
    int j = 0;
};

/// Width in bits used for an input list: the caller's choice, or the highest
/// set bit across the values, at least 1.
int xor_bit_width(const std::vector<std::uint64_t>& values, int bits);

/// Row-echelon GF(2) system over N selection variables, grown one equation
/// (one bit level) at a time. Rows are packed machine words; the target
/// column is kept apart and never swapped. Column swaps are tracked in
/// col_origin so solutions can be mapped back to input positions.
class XorEchelon {
public:
    explicit XorEchelon(int n_vars);

    /// Appends the equation "selected values must xor to 1 at this bit
    /// level" and reports whether the system stays solvable. Infeasible
    /// levels settle to 0, so their target bit is corrected in place before
    /// anything else reads it. Levels must arrive strictly decreasing.
    bool add_bit(const std::vector<std::uint64_t>& values, int level);

    /// One solution of the current system with every free variable set to
    /// 0, as 1-based input positions of the selected values.
    std::vector<int> solve_subset() const;

    int vars() const { return n_; }
    int rows() const { return static_cast<int>(rhs_.size()); }
    int pivot_count() const { return pivot_count_; }
    const std::vector<int>& col_origin() const { return col_origin_; }
    bool coeff(int row, int col) const;
    bool rhs(int row) const { return rhs_[static_cast<std::size_t>(row)] != 0; }
    int row_of_level(int level) const { return row_of_level_[static_cast<std::size_t>(level)]; }
    /// Word xors spent in row reduction so far.
    long long work_ops() const { return work_; }

private:
    void xor_row_into(int src, int dst);
    void swap_columns(int a, int b);

    int n_;
    int words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::uint8_t> rhs_;
    std::vector<int> col_origin_;
    std::vector<int> row_of_level_;
    int pivot_count_ = 0;
    int last_level_ = -1;
    long long work_ = 0;
};

/// Maximum xor over all subsets, decided bit by bit from the top: each bit
/// rebuilds and eliminates the full system of settled bits plus an equation
/// asking for a 1 at the current bit. bits = 0 derives the width from the
/// input.
XorMaxResult max_xor_subset_basic(const std::vector<std::uint64_t>& values, int bits = 0);

/// Same result as the basic version, but one XorEchelon persists across all
/// bit levels, so only one elimination happens overall.
XorMaxResult max_xor_subset_incremental(const std::vector<std::uint64_t>& values, int bits = 0,
                                        long long* work_ops = nullptr);

/// Binary trie over fixed-width bit strings (most significant bit first)
/// with per-node path counts, so strings can also be removed. Nodes whose
/// count drops to 0 are unlinked and recycled through a free list.
class CountedTrie {
public:
    explicit CountedTrie(int bits);

    void insert(std::uint64_t value);
    /// Removes one copy of a previously inserted value.
    void remove(std::uint64_t value);
    bool contains(std::uint64_t value) const;
    /// Number of strings currently stored (with multiplicity).
    int size() const;
    int bits() const { return bits_; }

    /// The stored string maximizing (query xor stored); the trie must be
    /// nonempty. Walks down preferring the complement of each query bit.
    std::uint64_t max_xor_against(std::uint64_t query) const;

    /// Shape-and-count equality, ignoring node pool layout.
    bool same_structure(const CountedTrie& other) const;

private:
    struct Node {
        int child[2] = {-1, -1};
        int count = 0;
    };

    int new_node();
    void free_node(int idx);
    bool bit_of(std::uint64_t value, int depth) const;
    bool nodes_equal(int a, const CountedTrie& other, int b) const;

    int bits_;
    std::vector<Node> pool_;
    std::vector<int> free_list_;
    int root_;
};

/// Maximum xor over contiguous runs, via prefix xors and a trie query per
/// position. Returns the first (smallest j, then smallest i) maximizing run.
XorSubarrayResult max_xor_subarray(const std::vector<std::uint64_t>& values, int bits = 0);

/// Same, restricted to run lengths in [min_len, max_len]. Prefix xors slide
/// through the trie so that position i is matched exactly against
/// X(i-max_len)..X(i-min_len). Throws BadWindow unless
/// 1 <= min_len <= max_len <= N.
XorSubarrayResult max_xor_subarray_bounded(const std::vector<std::uint64_t>& values, int min_len,
                                           int max_len, int bits = 0);

}  // namespace ripple
