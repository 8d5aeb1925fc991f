#include "ripple/bulbs.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>

#include "ripple/dense.hpp"
#include "ripple/field.hpp"
#include "ripple/serial_gauss.hpp"

namespace ripple {
namespace {

void require_bits(const std::vector<std::uint8_t>& v, std::size_t n, const char* what) {
    if (v.size() != n) throw std::invalid_argument(std::string(what) + " has the wrong length");
    for (std::uint8_t b : v)
        if (b > 1) throw std::invalid_argument(std::string(what) + " must contain only 0 or 1");
}

void require_costs(const std::vector<double>& v, std::size_t n, const char* what) {
    if (v.size() != n) throw std::invalid_argument(std::string(what) + " has the wrong length");
}

void check_graph(const BulbGraph& g) {
    const auto n = static_cast<std::size_t>(g.n);
    require_bits(g.si, n, "si");
    require_bits(g.sf, n, "sf");
    require_costs(g.cost, n, "cost");
}

void check_grid(const GridSpec& g) {
    const auto n = static_cast<std::size_t>(g.p) * static_cast<std::size_t>(g.q);
    require_bits(g.si, n, "si");
    require_bits(g.sf, n, "sf");
    require_costs(g.cost, n, "cost");
}

void check_rowcol(const RowColInstance& inst) {
    const auto n = static_cast<std::size_t>(inst.m) * static_cast<std::size_t>(inst.n);
    require_bits(inst.si, n, "si");
    require_bits(inst.sf, n, "sf");
    require_costs(inst.row_cost, static_cast<std::size_t>(inst.m), "row_cost");
    require_costs(inst.col_cost, static_cast<std::size_t>(inst.n), "col_cost");
}

/// Grid solvers enumerate 2^bits seed assignments; past 62 bits the walk
/// could not finish anyway, so fail up front like the graph solver does.
void require_enumerable(std::size_t bits) {
    if (bits > 62) throw FreeVarBudgetExceeded(static_cast<int>(bits), 62);
}

const std::vector<std::pair<int, int>>& neighbor_deltas(GridNeighborhood nb) {
    static const std::vector<std::pair<int, int>> orth = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    static const std::vector<std::pair<int, int>> diag = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
    static const std::vector<std::pair<int, int>> all8 = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                                         {0, 1},   {1, -1}, {1, 0},  {1, 1}};
    switch (nb) {
        case GridNeighborhood::orthogonal4: return orth;
        case GridNeighborhood::diagonal4: return diag;
        default: return all8;
    }
}

/// Accepts a candidate when it is cheaper, or equally cheap and
/// lexicographically smaller.
void consider(BulbSolution& best, double cost, const std::vector<std::uint8_t>& x) {
    if (!best.feasible || cost < best.cost || (cost == best.cost && x < best.x)) {
        best.feasible = true;
        best.cost = cost;
        best.x = x;
    }
}

double assignment_cost(const std::vector<double>& cost, const std::vector<std::uint8_t>& x) {
    double c = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k]) c += cost[k];
    return c;
}

}  // namespace

BulbGraph::BulbGraph(int vertex_count) : n(vertex_count) {
    if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
    adj.resize(static_cast<std::size_t>(n));
    si.assign(static_cast<std::size_t>(n), 0);
    sf.assign(static_cast<std::size_t>(n), 0);
    cost.assign(static_cast<std::size_t>(n), 0.0);
}

void BulbGraph::add_edge(int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self loops are not allowed");
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
}

GridSpec::GridSpec(int rows, int cols, GridNeighborhood nb) : p(rows), q(cols), neighborhood(nb) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs at least one row and column");
    const auto n = static_cast<std::size_t>(p) * static_cast<std::size_t>(q);
    si.assign(n, 0);
    sf.assign(n, 0);
    cost.assign(n, 0.0);
}

RowColInstance::RowColInstance(int rows, int cols) : m(rows), n(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("matrix needs at least one row and column");
    const auto cells = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    si.assign(cells, 0);
    sf.assign(cells, 0);
    row_cost.assign(static_cast<std::size_t>(m), 0.0);
    col_cost.assign(static_cast<std::size_t>(n), 0.0);
}

BulbGraph grid_to_graph(const GridSpec& g) {
    check_grid(g);
    BulbGraph b(g.p * g.q);
    b.si = g.si;
    b.sf = g.sf;
    b.cost = g.cost;
    const auto& deltas = neighbor_deltas(g.neighborhood);
    for (int i = 0; i < g.p; ++i)
        for (int j = 0; j < g.q; ++j)
            for (auto [di, dj] : deltas) {
                const int ni = i + di, nj = j + dj;
                if (ni >= 0 && ni < g.p && nj >= 0 && nj < g.q) b.add_edge(g.at(i, j), g.at(ni, nj));
            }
    return b;
}

BulbSolution solve_graph(const BulbGraph& g, int free_var_cap) {
    if (free_var_cap < 0 || free_var_cap > 62)
        throw std::invalid_argument("free_var_cap must be in [0, 62]");
    check_graph(g);
    const int n = g.n;

    // Touch variables x: bulb i ends up at si(i) xor x(i) xor sum of x over
    // the neighbors, so each bulb contributes one GF(2) equation.
    GF2Field f2;
    Dense<std::uint64_t> a = Dense<std::uint64_t>::Zero(n, n + 1);
    for (int i = 0; i < n; ++i) {
        a(i, i) = 1;
        for (int j : g.adj[static_cast<std::size_t>(i)]) a(i, j) = 1;
        a(i, n) = static_cast<std::uint64_t>(g.si[static_cast<std::size_t>(i)] ^
                                             g.sf[static_cast<std::size_t>(i)]);
    }
    const EliminationResult<std::uint64_t> res =
        serial_gauss(a, f2, PivotPolicy{PivotSearch::SwapOnlyIfZero, 1});
    const int pr = res.rank;

    BulbSolution out;
    out.pivot_rank = pr;
    out.free_vars = n - pr;
    for (int r = pr; r < n; ++r)
        if (res.matrix(r, n) != 0) return out;  // a zero row demands an odd toggle
    if (out.free_vars > free_var_cap) throw FreeVarBudgetExceeded(out.free_vars, free_var_cap);

    // Pivot coordinates: columns 0..pr-1 are bound, the rest free. The
    // diagonal of the reduced block is all ones, so back-substitution needs
    // no divisions.
    auto back_solve = [&](std::vector<std::uint8_t>& x, bool use_rhs) {
        for (int p = pr - 1; p >= 0; --p) {
            std::uint8_t s = use_rhs ? static_cast<std::uint8_t>(res.matrix(p, n)) : 0;
            for (int j = p + 1; j < n; ++j)
                if (res.matrix(p, j) != 0) s ^= x[static_cast<std::size_t>(j)];
            x[static_cast<std::size_t>(p)] = s;
        }
    };

    std::vector<std::uint8_t> x(static_cast<std::size_t>(n), 0);
    back_solve(x, true);

    // flips[t]: every position that toggles when free variable t flips.
    const int fv = out.free_vars;
    std::vector<std::vector<int>> flips(static_cast<std::size_t>(fv));
    for (int t = 0; t < fv; ++t) {
        std::vector<std::uint8_t> h(static_cast<std::size_t>(n), 0);
        h[static_cast<std::size_t>(pr + t)] = 1;
        back_solve(h, false);
        for (int j = 0; j < n; ++j)
            if (h[static_cast<std::size_t>(j)]) flips[static_cast<std::size_t>(t)].push_back(j);
    }

    std::vector<double> col_cost(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        col_cost[static_cast<std::size_t>(j)] = g.cost[res.col_perm[static_cast<std::size_t>(j)]];
    auto to_original = [&](const std::vector<std::uint8_t>& cur) {
        std::vector<std::uint8_t> orig(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) orig[res.col_perm[static_cast<std::size_t>(j)]] = cur[static_cast<std::size_t>(j)];
        return orig;
    };

    double cost = 0.0;
    for (int j = 0; j < n; ++j)
        if (x[static_cast<std::size_t>(j)]) cost += col_cost[static_cast<std::size_t>(j)];
    double best_cost = cost;
    std::vector<std::uint8_t> best = to_original(x);

    // Gray-code walk over the free assignments: one free bit flips per step
    // and the cost follows incrementally.
    const std::uint64_t total = std::uint64_t{1} << fv;
    for (std::uint64_t s = 1; s < total; ++s) {
        const int t = std::countr_zero(s);
        for (int j : flips[static_cast<std::size_t>(t)]) {
            x[static_cast<std::size_t>(j)] ^= 1;
            cost += x[static_cast<std::size_t>(j)] ? col_cost[static_cast<std::size_t>(j)]
                                                   : -col_cost[static_cast<std::size_t>(j)];
        }
        if (cost > best_cost) continue;
        std::vector<std::uint8_t> cand = to_original(x);
        if (cost < best_cost || cand < best) {
            best_cost = cost;
            best = std::move(cand);
        }
    }

    out.feasible = true;
    out.cost = best_cost;
    out.x = std::move(best);
    return out;
}

namespace {

/// Final state of cell (i, j) under the full assignment x.
std::uint8_t grid_state(const GridSpec& g, const std::vector<std::uint8_t>& x, int i, int j) {
    std::uint8_t s = static_cast<std::uint8_t>(g.si[static_cast<std::size_t>(g.at(i, j))] ^
                                               x[static_cast<std::size_t>(g.at(i, j))]);
    for (auto [di, dj] : neighbor_deltas(g.neighborhood)) {
        const int ni = i + di, nj = j + dj;
        if (ni >= 0 && ni < g.p && nj >= 0 && nj < g.q) s ^= x[static_cast<std::size_t>(g.at(ni, nj))];
    }
    return s;
}

/// Forces x(ti, tj) so that cell (fi, fj), whose only undecided neighbor is
/// (ti, tj), lands on its target.
void force_cell(const GridSpec& g, std::vector<std::uint8_t>& x, int fi, int fj, int ti, int tj) {
    std::uint8_t s = static_cast<std::uint8_t>(g.si[static_cast<std::size_t>(g.at(fi, fj))] ^
                                               x[static_cast<std::size_t>(g.at(fi, fj))]);
    for (auto [di, dj] : neighbor_deltas(g.neighborhood)) {
        const int ni = fi + di, nj = fj + dj;
        if (ni == ti && nj == tj) continue;
        if (ni >= 0 && ni < g.p && nj >= 0 && nj < g.q) s ^= x[static_cast<std::size_t>(g.at(ni, nj))];
    }
    x[static_cast<std::size_t>(g.at(ti, tj))] =
        static_cast<std::uint8_t>(s ^ g.sf[static_cast<std::size_t>(g.at(fi, fj))]);
}

}  // namespace

BulbSolution solve_grid_orthogonal(const GridSpec& g) {
    if (g.neighborhood != GridNeighborhood::orthogonal4)
        throw std::invalid_argument("grid does not use the orthogonal neighborhood");
    check_grid(g);
    const int p = g.p, q = g.q;
    const auto cells = static_cast<std::size_t>(p) * static_cast<std::size_t>(q);
    // Seed whichever border line is shorter; propagation then sweeps away
    // from it, each new cell forced by the neighbor it leaves behind.
    const bool by_rows = q <= p;
    require_enumerable(static_cast<std::size_t>(std::min(p, q)));

    BulbSolution best;
    std::vector<std::uint8_t> x(cells, 0);
    const int seed_len = by_rows ? q : p;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << seed_len); ++mask) {
        if (by_rows) {
            for (int j = 0; j < q; ++j) x[static_cast<std::size_t>(g.at(0, j))] = (mask >> j) & 1;
            for (int i = 1; i < p; ++i)
                for (int j = 0; j < q; ++j) force_cell(g, x, i - 1, j, i, j);
        } else {
            for (int i = 0; i < p; ++i) x[static_cast<std::size_t>(g.at(i, 0))] = (mask >> i) & 1;
            for (int j = 1; j < q; ++j)
                for (int i = 0; i < p; ++i) force_cell(g, x, i, j - 1, i, j);
        }
        // Only the far border line is not pinned down by propagation.
        bool ok = true;
        if (by_rows) {
            for (int j = 0; j < q && ok; ++j)
                ok = grid_state(g, x, p - 1, j) == g.sf[static_cast<std::size_t>(g.at(p - 1, j))];
        } else {
            for (int i = 0; i < p && ok; ++i)
                ok = grid_state(g, x, i, q - 1) == g.sf[static_cast<std::size_t>(g.at(i, q - 1))];
        }
        if (!ok) continue;
        consider(best, assignment_cost(g.cost, x), x);
    }
    return best;
}

BulbSolution solve_grid_diagonal(const GridSpec& g) {
    if (g.neighborhood != GridNeighborhood::diagonal4)
        throw std::invalid_argument("grid does not use the diagonal neighborhood");
    check_grid(g);
    const int p = g.p, q = g.q;
    const auto cells = static_cast<std::size_t>(p) * static_cast<std::size_t>(q);

    if (p == 1 || q == 1) {
        // No cell has a diagonal neighbor, so each touch toggles only its own
        // bulb and every decision is forced.
        BulbSolution out;
        out.feasible = true;
        out.x.resize(cells);
        for (std::size_t k = 0; k < cells; ++k) out.x[k] = static_cast<std::uint8_t>(g.si[k] ^ g.sf[k]);
        out.cost = assignment_cost(g.cost, out.x);
        return out;
    }

    // Diagonal moves keep i+j parity, so the two parity classes are
    // independent subproblems solved one after the other.
    BulbSolution combined;
    combined.feasible = true;
    combined.x.assign(cells, 0);
    for (int parity = 0; parity < 2; ++parity) {
        // Seeds: class cells on the first row or first column.
        std::vector<std::pair<int, int>> seeds;
        for (int j = 0; j < q; ++j)
            if (j % 2 == parity) seeds.emplace_back(0, j);
        for (int i = 1; i < p; ++i)
            if (i % 2 == parity) seeds.emplace_back(i, 0);
        require_enumerable(seeds.size());

        BulbSolution best;
        std::vector<std::uint8_t> x(cells, 0);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << seeds.size()); ++mask) {
            for (std::size_t b = 0; b < seeds.size(); ++b)
                x[static_cast<std::size_t>(g.at(seeds[b].first, seeds[b].second))] = (mask >> b) & 1;
            // Visit min(i, j) bands outward; inside a band first the column
            // top-down, then the row left-right. Cell (i, j) is forced by
            // (i-1, j-1), its only neighbor with a smaller band index.
            for (int gg = 1; gg < std::min(p, q); ++gg) {
                for (int i = gg; i < p; ++i)
                    if ((i + gg) % 2 == parity) force_cell(g, x, i - 1, gg - 1, i, gg);
                for (int j = gg + 1; j < q; ++j)
                    if ((gg + j) % 2 == parity) force_cell(g, x, gg - 1, j - 1, gg, j);
            }
            bool ok = true;
            for (int i = 0; i < p && ok; ++i)
                for (int j = 0; j < q && ok; ++j)
                    if ((i + j) % 2 == parity)
                        ok = grid_state(g, x, i, j) == g.sf[static_cast<std::size_t>(g.at(i, j))];
            if (!ok) continue;
            double cost = 0.0;
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < q; ++j)
                    if ((i + j) % 2 == parity && x[static_cast<std::size_t>(g.at(i, j))])
                        cost += g.cost[static_cast<std::size_t>(g.at(i, j))];
            consider(best, cost, x);
        }
        if (!best.feasible) return BulbSolution{};
        combined.cost += best.cost;
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j)
                if ((i + j) % 2 == parity)
                    combined.x[static_cast<std::size_t>(g.at(i, j))] =
                        best.x[static_cast<std::size_t>(g.at(i, j))];
    }
    return combined;
}

BulbSolution solve_grid_all8(const GridSpec& g) {
    if (g.neighborhood != GridNeighborhood::all8)
        throw std::invalid_argument("grid does not use the eight-way neighborhood");
    check_grid(g);
    const int p = g.p, q = g.q;
    const auto cells = static_cast<std::size_t>(p) * static_cast<std::size_t>(q);

    // Seeds: the whole first row plus the rest of the first column.
    std::vector<std::pair<int, int>> seeds;
    for (int j = 0; j < q; ++j) seeds.emplace_back(0, j);
    for (int i = 1; i < p; ++i) seeds.emplace_back(i, 0);
    require_enumerable(seeds.size());

    BulbSolution best;
    std::vector<std::uint8_t> x(cells, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << seeds.size()); ++mask) {
        for (std::size_t b = 0; b < seeds.size(); ++b)
            x[static_cast<std::size_t>(g.at(seeds[b].first, seeds[b].second))] = (mask >> b) & 1;
        for (int gg = 1; gg < std::min(p, q); ++gg) {
            for (int i = gg; i < p; ++i) force_cell(g, x, i - 1, gg - 1, i, gg);
            for (int j = gg + 1; j < q; ++j) force_cell(g, x, gg - 1, j - 1, gg, j);
        }
        bool ok = true;
        for (int i = 0; i < p && ok; ++i)
            for (int j = 0; j < q && ok; ++j)
                ok = grid_state(g, x, i, j) == g.sf[static_cast<std::size_t>(g.at(i, j))];
        if (!ok) continue;
        consider(best, assignment_cost(g.cost, x), x);
    }
    return best;
}

BulbSolution solve_grid(const GridSpec& g) {
    switch (g.neighborhood) {
        case GridNeighborhood::orthogonal4: return solve_grid_orthogonal(g);
        case GridNeighborhood::diagonal4: return solve_grid_diagonal(g);
        default: return solve_grid_all8(g);
    }
}

RowColSolution solve_rowcol(const RowColInstance& inst) {
    check_rowcol(inst);
    const int m = inst.m, n = inst.n;
    RowColSolution best;
    // Once row 1 is decided the whole assignment follows, so there are just
    // two candidates; trying 0 first keeps the lexicographically smaller one
    // on cost ties.
    for (int first = 0; first < 2; ++first) {
        std::vector<std::uint8_t> xl(static_cast<std::size_t>(m), 0);
        std::vector<std::uint8_t> xc(static_cast<std::size_t>(n), 0);
        xl[0] = static_cast<std::uint8_t>(first);
        for (int j = 0; j < n; ++j)
            xc[static_cast<std::size_t>(j)] =
                (inst.si[static_cast<std::size_t>(inst.at(0, j))] ^ first) !=
                inst.sf[static_cast<std::size_t>(inst.at(0, j))];
        for (int i = 1; i < m; ++i)
            xl[static_cast<std::size_t>(i)] =
                (inst.si[static_cast<std::size_t>(inst.at(i, 0))] ^ xc[0]) !=
                inst.sf[static_cast<std::size_t>(inst.at(i, 0))];
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                ok = (inst.si[static_cast<std::size_t>(inst.at(i, j))] ^ xl[static_cast<std::size_t>(i)] ^
                      xc[static_cast<std::size_t>(j)]) == inst.sf[static_cast<std::size_t>(inst.at(i, j))];
        if (!ok) continue;
        double cost = 0.0;
        for (int i = 0; i < m; ++i)
            if (xl[static_cast<std::size_t>(i)]) cost += inst.row_cost[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j)
            if (xc[static_cast<std::size_t>(j)]) cost += inst.col_cost[static_cast<std::size_t>(j)];
        if (!best.feasible || cost < best.cost) {
            best.feasible = true;
            best.cost = cost;
            best.row_toggle = std::move(xl);
            best.col_toggle = std::move(xc);
        }
    }
    return best;
}

PointToggleResult solve_point_toggle(const RowColInstance& inst) {
    check_rowcol(inst);
    const int m = inst.m, n = inst.n;
    PointToggleResult best;
    for (int first = 0; first < 2; ++first) {
        std::vector<std::uint8_t> xl(static_cast<std::size_t>(m), 0);
        std::vector<std::uint8_t> xc(static_cast<std::size_t>(n), 0);
        xl[0] = static_cast<std::uint8_t>(first);
        for (int j = 0; j < n; ++j)
            xc[static_cast<std::size_t>(j)] =
                (inst.si[static_cast<std::size_t>(inst.at(0, j))] ^ first) !=
                inst.sf[static_cast<std::size_t>(inst.at(0, j))];
        for (int i = 1; i < m; ++i)
            xl[static_cast<std::size_t>(i)] =
                (inst.si[static_cast<std::size_t>(inst.at(i, 0))] ^ xc[0]) !=
                inst.sf[static_cast<std::size_t>(inst.at(i, 0))];
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                ok = (inst.si[static_cast<std::size_t>(inst.at(i, j))] ^ xl[static_cast<std::size_t>(i)] ^
                      xc[static_cast<std::size_t>(j)]) == inst.sf[static_cast<std::size_t>(inst.at(i, j))];
        if (!ok) continue;

        std::vector<int> rows, cols;
        for (int i = 0; i < m; ++i)
            if (xl[static_cast<std::size_t>(i)]) rows.push_back(i + 1);
        for (int j = 0; j < n; ++j)
            if (xc[static_cast<std::size_t>(j)]) cols.push_back(j + 1);
        const int nl = static_cast<int>(rows.size());
        const int nc = static_cast<int>(cols.size());
        // One operation toggles exactly one row and one column. Leftover
        // rows go in pairs through column 1 (toggling it twice cancels), so
        // the counts must agree mod 2 for the pattern to be realizable.
        if ((nl - nc) % 2 != 0) continue;
        const int count = std::max(nl, nc);
        if (best.feasible && count >= best.count) continue;

        best.feasible = true;
        best.count = count;
        best.rows_toggled = nl;
        best.cols_toggled = nc;
        best.operations.clear();
        const int paired = std::min(nl, nc);
        for (int k = 0; k < paired; ++k)
            best.operations.emplace_back(rows[static_cast<std::size_t>(k)], cols[static_cast<std::size_t>(k)]);
        for (int k = paired; k < nl; ++k) best.operations.emplace_back(rows[static_cast<std::size_t>(k)], 1);
        for (int k = paired; k < nc; ++k) best.operations.emplace_back(1, cols[static_cast<std::size_t>(k)]);
    }
    return best;
}

}  // namespace ripple
