#pragma once

#include "sft/basic_set.hpp"
#include "sft/count_matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sft {

struct SpectralEstimate {
    double rho = 0.0;
    std::int64_t iterations = 0;
    double residual = 0.0;
    double lower = 0.0;  // certified lower bound on the true Perron root
    double upper = 0.0;  // certified upper bound
    bool certified = true;  // false when the iteration cap was hit first
};

// Spectral radius of a nonnegative square matrix. Zero rows and columns are
// deleted iteratively, the remainder is split into strongly connected
// components, and power iteration runs on A+I restricted to each component
// (the +I shift makes each irreducible block primitive, so the iteration
// converges even for cyclic components). Collatz-Wielandt quotients give
// certified bounds; rho(A) is the max over components.
SpectralEstimate spectral_radius(const SparseCountMatrix& a, double tol = 1e-10,
                                 std::int64_t max_iterations = 1000000);

struct ComponentDecomposition {
    // Strongly connected components of the support graph after iterated
    // deletion of zero rows/columns; each sorted ascending, listed in
    // condensation (topological) order.
    std::vector<std::vector<std::int64_t>> components;
    // Indices removed by the iterated deletion.
    std::vector<std::int64_t> zero_rows;
    std::vector<std::int64_t> zero_cols;
};

ComponentDecomposition scc(const SparseCountMatrix& a);

// The strongly connected component whose induced submatrix has the largest
// spectral radius; ties broken by smallest lexicographic index set. Returns
// the induced submatrix together with the original 1-based indices of its
// rows/columns. An all-zero matrix yields an empty index list with a
// 1-dimensional zero matrix as placeholder submatrix.
struct IrreducibleComponent {
    SparseCountMatrix submatrix;
    std::vector<std::int64_t> indices;
};
IrreducibleComponent max_irreducible_component(const SparseCountMatrix& a);

// Directed diameter max_{i,j} d(i,j) with d(i,j) = min{k >= 1 : (A^k)_{ij} >= 1}.
// d(i,i) needs a genuine return cycle, so the identity matrix has diameter 1
// only for N = 1 and infinite diameter otherwise. nullopt encodes infinity.
std::optional<std::int64_t> diameter(const SparseCountMatrix& a);

struct ConnectivityRow {
    int m = 0;
    std::int64_t dim = 0;
    std::int64_t support_size = 0;  // rows surviving zero-row/col deletion
    bool zero = false;              // whole matrix is zero
    bool irreducible = false;       // support graph strongly connected
    std::optional<std::int64_t> diam;       // diameter of the support graph
    std::optional<std::int64_t> self_loop;  // least i with T[i][i] = 1
    std::optional<std::int64_t> gluing_k;   // filled by block_gluing_check
};

struct ConnectivityReport {
    std::vector<ConnectivityRow> rows;
    std::optional<std::int64_t> k_bound;  // max finite diameter over rows
    bool all_finite = false;              // every row had a finite diameter
};

// Builds T_m for each m <= m_max and reports diameter, irreducibility and
// self-loop evidence per m, plus the aggregate diameter bound.
ConnectivityReport uniform_connectedness(const BasicSet& bs, int m_max);

// Amends the report with, per m, the least K <= search cap such that
// (T_m^k) is strictly positive on its support for all K <= k <= K + k_window.
// Absence of such K within the cap is reported, not thrown.
ConnectivityReport block_gluing_check(const BasicSet& bs, int m_max,
                                      int k_window = 8, int k_cap = 64);

struct DominationCell {
    int m = 0;
    std::int64_t k = 0;
    BigInt abs_count;      // |T_m^k|, exact
    double c = 0.0;        // |T_m^k| / rho(T_m)^k
    double log_c_over_mk = 0.0;  // (1/(mk)) log c; -inf when the count is 0
};

struct DominationTable {
    std::vector<DominationCell> cells;      // row-major over (m, k)
    std::vector<SpectralEstimate> rho_per_m;
    std::optional<std::int64_t> k_bound;    // from uniform_connectedness
    // (r^{K+1})^m per m when k_bound is finite; the c(m,k) upper bound.
    std::vector<double> bound_per_m;
    bool any_uncertified = false;
};

DominationTable domination_table(const BasicSet& bs, int m_max, int k_max);

// Checks max_i v_i / min_i v_i <= rho^K (tolerance 1e-6) for the Perron
// vector of an irreducible matrix. Throws std::invalid_argument if the
// support is not strongly connected.
bool ratio_bound_check(const SparseCountMatrix& a, std::int64_t k_exponent);

}  // namespace sft
