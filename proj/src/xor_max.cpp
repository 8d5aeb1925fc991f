#include "ripple/xor_max.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace ripple {

namespace {

int max_bit_length(const std::vector<std::uint64_t>& values) {
    int width = 1;
    for (std::uint64_t v : values) width = std::max(width, static_cast<int>(std::bit_width(v)));
    return width;
}

bool fits_width(std::uint64_t v, int bits) { return bits >= 64 || (v >> bits) == 0; }

}  // namespace

int xor_bit_width(const std::vector<std::uint64_t>& values, int bits) {
    if (bits == 0) return max_bit_length(values);
    if (bits < 1 || bits > 64) throw std::invalid_argument("bit width must lie in [1, 64]");
    for (std::uint64_t v : values)
        if (!fits_width(v, bits))
            throw std::invalid_argument("value " + std::to_string(v) + " does not fit in " +
                                        std::to_string(bits) + " bits");
    return bits;
}

// --- incremental echelon ---------------------------------------------------

namespace {
int checked_var_count(int n_vars) {
    if (n_vars < 0) throw std::invalid_argument("variable count must be nonnegative");
    return n_vars;
}
}  // namespace

XorEchelon::XorEchelon(int n_vars)
    : n_(checked_var_count(n_vars)), words_((n_ + 63) / 64), col_origin_(static_cast<std::size_t>(n_)),
      row_of_level_(64, -1) {
    for (int j = 0; j < n_; ++j) col_origin_[static_cast<std::size_t>(j)] = j;
}

bool XorEchelon::coeff(int row, int col) const {
    return ((rows_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col >> 6)] >>
             (col & 63)) &
            1) != 0;
}

void XorEchelon::xor_row_into(int src, int dst) {
    auto& d = rows_[static_cast<std::size_t>(dst)];
    const auto& s = rows_[static_cast<std::size_t>(src)];
    for (int w = 0; w < words_; ++w) d[static_cast<std::size_t>(w)] ^= s[static_cast<std::size_t>(w)];
    rhs_[static_cast<std::size_t>(dst)] ^= rhs_[static_cast<std::size_t>(src)];
    work_ += words_;
}

void XorEchelon::swap_columns(int a, int b) {
    if (a == b) return;
    for (auto& row : rows_) {
        const std::uint64_t abit = (row[static_cast<std::size_t>(a >> 6)] >> (a & 63)) & 1;
        const std::uint64_t bbit = (row[static_cast<std::size_t>(b >> 6)] >> (b & 63)) & 1;
        if (abit != bbit) {
            row[static_cast<std::size_t>(a >> 6)] ^= std::uint64_t{1} << (a & 63);
            row[static_cast<std::size_t>(b >> 6)] ^= std::uint64_t{1} << (b & 63);
        }
    }
    std::swap(col_origin_[static_cast<std::size_t>(a)], col_origin_[static_cast<std::size_t>(b)]);
}

bool XorEchelon::add_bit(const std::vector<std::uint64_t>& values, int level) {
    if (static_cast<int>(values.size()) != n_)
        throw std::invalid_argument("value count does not match the echelon width");
    if (level < 0 || level > 63) throw std::invalid_argument("bit level must lie in [0, 63]");
    if (last_level_ >= 0 && level >= last_level_)
        throw std::invalid_argument("bit levels must be appended in decreasing order");
    last_level_ = level;

    // The j-th coefficient follows the current column order.
    std::vector<std::uint64_t> row(static_cast<std::size_t>(words_), 0);
    for (int j = 0; j < n_; ++j)
        if ((values[static_cast<std::size_t>(col_origin_[static_cast<std::size_t>(j)])] >> level) &
            1)
            row[static_cast<std::size_t>(j >> 6)] |= std::uint64_t{1} << (j & 63);

    const int idx = rows();
    rows_.push_back(std::move(row));
    rhs_.push_back(1);
    row_of_level_[static_cast<std::size_t>(level)] = idx;

    for (int p = 0; p < pivot_count_; ++p)
        if (coeff(idx, p)) xor_row_into(p, idx);

    bool nonzero = false;
    for (int w = 0; w < words_ && !nonzero; ++w)
        nonzero = rows_[static_cast<std::size_t>(idx)][static_cast<std::size_t>(w)] != 0;

    if (nonzero) {
        int c = -1;
        for (int j = pivot_count_; j < n_ && c < 0; ++j)
            if (coeff(idx, j)) c = j;
        if (idx != pivot_count_) {
            std::swap(rows_[static_cast<std::size_t>(idx)],
                      rows_[static_cast<std::size_t>(pivot_count_)]);
            std::swap(rhs_[static_cast<std::size_t>(idx)],
                      rhs_[static_cast<std::size_t>(pivot_count_)]);
            for (int& r : row_of_level_) {
                if (r == pivot_count_) r = idx;
                else if (r == idx) r = pivot_count_;
            }
        }
        swap_columns(pivot_count_, c);
        ++pivot_count_;
    }

    bool feasible = true;
    for (int r = pivot_count_; r < rows(); ++r)
        if (rhs_[static_cast<std::size_t>(r)]) feasible = false;
    // An infeasible level settles to 0, so the appended equation's target is
    // corrected before anything else reads the system.
    if (!feasible && !nonzero) rhs_[static_cast<std::size_t>(idx)] = 0;
    return feasible;
}

std::vector<int> XorEchelon::solve_subset() const {
    std::vector<std::uint64_t> x(static_cast<std::size_t>(words_), 0);
    for (int p = pivot_count_ - 1; p >= 0; --p) {
        std::uint64_t acc = rhs_[static_cast<std::size_t>(p)];
        for (int w = 0; w < words_; ++w)
            acc ^= std::popcount(rows_[static_cast<std::size_t>(p)][static_cast<std::size_t>(w)] &
                                 x[static_cast<std::size_t>(w)]) &
                   1u;
        if (acc & 1) x[static_cast<std::size_t>(p >> 6)] |= std::uint64_t{1} << (p & 63);
    }
    std::vector<int> subset;
    for (int j = 0; j < n_; ++j)
        if ((x[static_cast<std::size_t>(j >> 6)] >> (j & 63)) & 1)
            subset.push_back(col_origin_[static_cast<std::size_t>(j)] + 1);
    std::sort(subset.begin(), subset.end());
    return subset;
}

// --- basic bit-by-bit solver ----------------------------------------------

namespace {

/// Plain byte-per-entry GF(2) system; serves as the naive reference the
/// packed echelon is checked against.
struct NaiveSystem {
    std::vector<std::vector<std::uint8_t>> c;  // each row: N coefficients + target
    std::vector<int> col_origin;
    int n_vars = 0;
    int pivots = 0;

    NaiveSystem(int n, const std::vector<std::vector<std::uint8_t>>& rows)
        : c(rows), col_origin(static_cast<std::size_t>(n)), n_vars(n) {
        for (int j = 0; j < n; ++j) col_origin[static_cast<std::size_t>(j)] = j;
    }

    void eliminate() {
        const int r_count = static_cast<int>(c.size());
        while (pivots < r_count) {
            int pr = -1, pc = -1;
            for (int col = pivots; col < n_vars && pr < 0; ++col)
                for (int row = pivots; row < r_count; ++row)
                    if (c[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) {
                        pr = row;
                        pc = col;
                        break;
                    }
            if (pr < 0) break;
            std::swap(c[static_cast<std::size_t>(pivots)], c[static_cast<std::size_t>(pr)]);
            if (pc != pivots) {
                for (auto& row : c)
                    std::swap(row[static_cast<std::size_t>(pivots)],
                              row[static_cast<std::size_t>(pc)]);
                std::swap(col_origin[static_cast<std::size_t>(pivots)],
                          col_origin[static_cast<std::size_t>(pc)]);
            }
            for (int row = pivots + 1; row < r_count; ++row)
                if (c[static_cast<std::size_t>(row)][static_cast<std::size_t>(pivots)])
                    for (int k = pivots; k <= n_vars; ++k)
                        c[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] ^=
                            c[static_cast<std::size_t>(pivots)][static_cast<std::size_t>(k)];
            ++pivots;
        }
    }

    bool consistent() const {
        for (int row = pivots; row < static_cast<int>(c.size()); ++row)
            if (c[static_cast<std::size_t>(row)][static_cast<std::size_t>(n_vars)]) return false;
        return true;
    }

    std::vector<int> solve() const {  // free variables 0, 1-based input positions
        std::vector<std::uint8_t> x(static_cast<std::size_t>(n_vars), 0);
        for (int p = pivots - 1; p >= 0; --p) {
            std::uint8_t acc = c[static_cast<std::size_t>(p)][static_cast<std::size_t>(n_vars)];
            for (int j = p + 1; j < n_vars; ++j)
                acc ^= c[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] &
                       x[static_cast<std::size_t>(j)];
            x[static_cast<std::size_t>(p)] = acc;
        }
        std::vector<int> subset;
        for (int j = 0; j < n_vars; ++j)
            if (x[static_cast<std::size_t>(j)])
                subset.push_back(col_origin[static_cast<std::size_t>(j)] + 1);
        std::sort(subset.begin(), subset.end());
        return subset;
    }
};

std::vector<std::uint8_t> equation_for_level(const std::vector<std::uint64_t>& values, int level,
                                             std::uint8_t target) {
    std::vector<std::uint8_t> row(values.size() + 1, 0);
    for (std::size_t j = 0; j < values.size(); ++j)
        row[j] = static_cast<std::uint8_t>((values[j] >> level) & 1);
    row.back() = target;
    return row;
}

}  // namespace

XorMaxResult max_xor_subset_basic(const std::vector<std::uint64_t>& values, int bits) {
    XorMaxResult out;
    if (values.empty()) return out;
    const int b = xor_bit_width(values, bits);
    const int n = static_cast<int>(values.size());

    std::vector<std::uint8_t> bv(static_cast<std::size_t>(b), 0);
    for (int i = b - 1; i >= 0; --i) {
        std::vector<std::vector<std::uint8_t>> rows;
        for (int p = b - 1; p > i; --p)
            rows.push_back(equation_for_level(values, p, bv[static_cast<std::size_t>(p)]));
        rows.push_back(equation_for_level(values, i, 1));
        NaiveSystem sys(n, rows);
        sys.eliminate();
        bv[static_cast<std::size_t>(i)] = sys.consistent() ? 1 : 0;
        if (bv[static_cast<std::size_t>(i)]) out.xm |= std::uint64_t{1} << i;
    }

    std::vector<std::vector<std::uint8_t>> rows;
    for (int p = b - 1; p >= 0; --p)
        rows.push_back(equation_for_level(values, p, bv[static_cast<std::size_t>(p)]));
    NaiveSystem final_sys(n, rows);
    final_sys.eliminate();
    out.subset = final_sys.solve();
    return out;
}

XorMaxResult max_xor_subset_incremental(const std::vector<std::uint64_t>& values, int bits,
                                        long long* work_ops) {
    XorMaxResult out;
    if (values.empty()) {
        if (work_ops) *work_ops = 0;
        return out;
    }
    const int b = xor_bit_width(values, bits);
    XorEchelon ech(static_cast<int>(values.size()));
    for (int level = b - 1; level >= 0; --level)
        if (ech.add_bit(values, level)) out.xm |= std::uint64_t{1} << level;
    out.subset = ech.solve_subset();
    if (work_ops) *work_ops = ech.work_ops();
    return out;
}

// --- counted trie and subarray queries ------------------------------------

CountedTrie::CountedTrie(int bits) : bits_(bits) {
    if (bits < 1 || bits > 64) throw std::invalid_argument("trie depth must lie in [1, 64]");
    root_ = new_node();
}

int CountedTrie::new_node() {
    if (!free_list_.empty()) {
        const int idx = free_list_.back();
        free_list_.pop_back();
        pool_[static_cast<std::size_t>(idx)] = Node{};
        return idx;
    }
    pool_.push_back(Node{});
    return static_cast<int>(pool_.size()) - 1;
}

void CountedTrie::free_node(int idx) { free_list_.push_back(idx); }

bool CountedTrie::bit_of(std::uint64_t value, int depth) const {
    return ((value >> (bits_ - 1 - depth)) & 1) != 0;
}

void CountedTrie::insert(std::uint64_t value) {
    if (!fits_width(value, bits_))
        throw std::invalid_argument("value does not fit in the trie's bit width");
    int cur = root_;
    pool_[static_cast<std::size_t>(cur)].count += 1;
    for (int depth = 0; depth < bits_; ++depth) {
        const int label = bit_of(value, depth) ? 1 : 0;
        int next = pool_[static_cast<std::size_t>(cur)].child[label];
        if (next < 0) {
            next = new_node();  // may grow the pool, so re-index afterwards
            pool_[static_cast<std::size_t>(cur)].child[label] = next;
        }
        cur = next;
        pool_[static_cast<std::size_t>(cur)].count += 1;
    }
}

bool CountedTrie::contains(std::uint64_t value) const {
    if (!fits_width(value, bits_)) return false;
    int cur = root_;
    for (int depth = 0; depth < bits_; ++depth) {
        cur = pool_[static_cast<std::size_t>(cur)].child[bit_of(value, depth) ? 1 : 0];
        if (cur < 0) return false;
    }
    return true;
}

int CountedTrie::size() const { return pool_[static_cast<std::size_t>(root_)].count; }

void CountedTrie::remove(std::uint64_t value) {
    if (!contains(value)) throw std::invalid_argument("removing a value the trie does not hold");
    std::vector<int> path;  // nodes from the root down
    path.push_back(root_);
    int cur = root_;
    for (int depth = 0; depth < bits_; ++depth) {
        cur = pool_[static_cast<std::size_t>(cur)].child[bit_of(value, depth) ? 1 : 0];
        path.push_back(cur);
    }
    for (int node : path) pool_[static_cast<std::size_t>(node)].count -= 1;
    // The shallowest node left without strings takes its whole tail with it.
    for (std::size_t d = 1; d < path.size(); ++d) {
        if (pool_[static_cast<std::size_t>(path[d])].count > 0) continue;
        const int parent = path[d - 1];
        const int label = bit_of(value, static_cast<int>(d) - 1) ? 1 : 0;
        pool_[static_cast<std::size_t>(parent)].child[label] = -1;
        for (std::size_t k = d; k < path.size(); ++k) free_node(path[k]);
        break;
    }
}

std::uint64_t CountedTrie::max_xor_against(std::uint64_t query) const {
    if (size() == 0) throw std::logic_error("query against an empty trie");
    int cur = root_;
    std::uint64_t stored = 0;
    for (int depth = 0; depth < bits_; ++depth) {
        const int qbit = bit_of(query, depth) ? 1 : 0;
        const int want = 1 - qbit;
        const Node& node = pool_[static_cast<std::size_t>(cur)];
        const int label = node.child[want] >= 0 ? want : qbit;
        stored = (stored << 1) | static_cast<std::uint64_t>(label);
        cur = node.child[label];
    }
    return stored;
}

bool CountedTrie::nodes_equal(int a, const CountedTrie& other, int b) const {
    if ((a < 0) != (b < 0)) return false;
    if (a < 0) return true;
    const Node& na = pool_[static_cast<std::size_t>(a)];
    const Node& nb = other.pool_[static_cast<std::size_t>(b)];
    if (na.count != nb.count) return false;
    return nodes_equal(na.child[0], other, nb.child[0]) &&
           nodes_equal(na.child[1], other, nb.child[1]);
}

bool CountedTrie::same_structure(const CountedTrie& other) const {
    return bits_ == other.bits_ && nodes_equal(root_, other, other.root_);
}

namespace {

std::vector<std::uint64_t> prefix_xors(const std::vector<std::uint64_t>& values) {
    std::vector<std::uint64_t> x(values.size() + 1, 0);
    for (std::size_t i = 0; i < values.size(); ++i) x[i + 1] = x[i] ^ values[i];
    return x;
}

/// Prefix positions currently inside the trie, so a best stored value can
/// be traced back to the earliest subarray start achieving it.
class PrefixIndex {
public:
    void add(std::uint64_t prefix, int pos) { where_[prefix].insert(pos); }
    void drop(std::uint64_t prefix, int pos) {
        auto it = where_.find(prefix);
        it->second.erase(pos);
        if (it->second.empty()) where_.erase(it);
    }
    int first(std::uint64_t prefix) const { return *where_.at(prefix).begin(); }

private:
    std::map<std::uint64_t, std::set<int>> where_;
};

}  // namespace

XorSubarrayResult max_xor_subarray(const std::vector<std::uint64_t>& values, int bits) {
    if (values.empty()) throw std::invalid_argument("subarray maximization needs values");
    const int n = static_cast<int>(values.size());
    return max_xor_subarray_bounded(values, 1, n, bits);
}

XorSubarrayResult max_xor_subarray_bounded(const std::vector<std::uint64_t>& values, int min_len,
                                           int max_len, int bits) {
    if (values.empty()) throw std::invalid_argument("subarray maximization needs values");
    const int n = static_cast<int>(values.size());
    if (min_len < 1 || min_len > max_len || max_len > n)
        throw BadWindow("window must satisfy 1 <= min <= max <= " + std::to_string(n));
    const int b = xor_bit_width(values, bits);
    const std::vector<std::uint64_t> x = prefix_xors(values);

    CountedTrie trie(b);
    PrefixIndex index;
    trie.insert(x[0]);
    index.add(x[0], 0);

    XorSubarrayResult best;
    bool have = false;
    for (int i = 1; i <= n; ++i) {
        if (i > max_len) {
            const std::uint64_t gone = x[static_cast<std::size_t>(i - max_len - 1)];
            trie.remove(gone);
            index.drop(gone, i - max_len - 1);
        }
        if (i >= min_len) {
            const std::uint64_t q = x[static_cast<std::size_t>(i)];
            const std::uint64_t stored = trie.max_xor_against(q);
            const std::uint64_t value = stored ^ q;
            if (!have || value > best.value) {
                have = true;
                best.value = value;
                best.i = index.first(stored) + 1;
                best.j = i;
            }
            const std::uint64_t incoming = x[static_cast<std::size_t>(i - min_len + 1)];
            trie.insert(incoming);
            index.add(incoming, i - min_len + 1);
        }
    }
    return best;
}

}  // namespace ripple
