#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ripple {

struct FreeVarBudgetExceeded : std::runtime_error {
    explicit FreeVarBudgetExceeded(int free_vars, int cap)
        : std::runtime_error("system has " + std::to_string(free_vars) +
                             " free variables, enumeration cap is " + std::to_string(cap)) {}
};

/// Touching a vertex toggles its own bulb and every neighboring bulb.
/// States and decisions are bits; costs are nonnegative.
struct BulbGraph {
    int n = 0;
    std::vector<std::set<int>> adj;
    std::vector<std::uint8_t> si, sf;
    std::vector<double> cost;

    explicit BulbGraph(int vertex_count);
    void add_edge(int u, int v);
};

/// x(i) = 1 means vertex i gets touched. pivot_rank / free_vars are filled
/// by the elimination-based solver only.
struct BulbSolution {
    bool feasible = false;
    double cost = 0.0;
    std::vector<std::uint8_t> x;
    int pivot_rank = 0;
    int free_vars = 0;
};

/// Minimum-cost touch set via GF(2) elimination. All 2^free_vars
/// assignments of the free variables are enumerated (Gray-code order with
/// incremental cost updates); ties go to the lexicographically smallest x.
/// Throws FreeVarBudgetExceeded when the enumeration would exceed the cap.
BulbSolution solve_graph(const BulbGraph& g, int free_var_cap = 20);

enum class GridNeighborhood { orthogonal4, diagonal4, all8 };

/// P x Q grid of bulbs, row-major cell order, 0-based (i, j).
struct GridSpec {
    int p = 0, q = 0;
    GridNeighborhood neighborhood = GridNeighborhood::orthogonal4;
    std::vector<std::uint8_t> si, sf;
    std::vector<double> cost;

    GridSpec(int rows, int cols, GridNeighborhood nb);
    int at(int i, int j) const { return i * q + j; }
};

/// The same instance as an explicit graph, for the elimination-based
/// solver.
BulbGraph grid_to_graph(const GridSpec& g);

/// Elimination-free grid solvers. Each enumerates a small seed set of
/// decisions, propagates the rest (every further variable is forced by one
/// earlier neighbor that must land on its target), and keeps the cheapest
/// assignment that checks out. Ties go to the lexicographically smallest x.
BulbSolution solve_grid_orthogonal(const GridSpec& g);  // seeds the shorter first row
BulbSolution solve_grid_diagonal(const GridSpec& g);    // independent (i+j) parity classes
BulbSolution solve_grid_all8(const GridSpec& g);        // seeds first row plus first column
BulbSolution solve_grid(const GridSpec& g);             // dispatch on the neighborhood

/// M x N bulb matrix where one move toggles a whole row (cost CL(i)) or a
/// whole column (cost CC(j)).
struct RowColInstance {
    int m = 0, n = 0;
    std::vector<std::uint8_t> si, sf;
    std::vector<double> row_cost, col_cost;

    RowColInstance(int rows, int cols);
    int at(int i, int j) const { return i * n + j; }
};

struct RowColSolution {
    bool feasible = false;
    double cost = 0.0;
    std::vector<std::uint8_t> row_toggle, col_toggle;
};

/// Tries the only two candidate assignments (row 1 untoggled / toggled),
/// propagates, verifies every cell, returns the cheaper feasible one.
RowColSolution solve_rowcol(const RowColInstance& inst);

/// One operation picks a cell (i, j) and toggles every other bulb on row i
/// and column j. Cells are reported 1-based.
struct PointToggleResult {
    bool feasible = false;
    int count = 0;
    std::vector<std::pair<int, int>> operations;
    int rows_toggled = 0;  // of the realized row/column solution
    int cols_toggled = 0;
};

/// Minimum number of point-toggle operations. Costs in the instance are
/// ignored: every operation counts 1. A row/column candidate is realizable
/// only when its row and column toggle counts have equal parity; rows and
/// columns are paired up, extras paired with row 1 or column 1.
PointToggleResult solve_point_toggle(const RowColInstance& inst);

}  // namespace ripple
