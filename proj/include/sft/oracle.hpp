#pragma once

#include "sft/basic_set.hpp"
#include "sft/count_matrix.hpp"

#include <cstdint>
#include <vector>

namespace sft {

// Torus of width n and height k with horizontal shear l: configurations
// satisfy U(i+n, j) = U(i, j) and U(i+l, j+k) = U(i, j).
struct TorusSpec {
    std::int64_t n = 1;
    std::int64_t k = 1;
    std::int64_t l = 0;
};

// Exact count of symbol assignments on the n_rows x k_cols strip with every
// interior 2x2 window admissible, by direct enumeration (column by column,
// pruned at the first bad window). Degenerate strips (one row or one
// column) have no window, so all r^(rows*cols) assignments count and are
// not enumerated. work_cap bounds the number of attempted cell
// assignments; exceeding it throws CapExceeded.
BigInt count_strip(const BasicSet& bs, int n_rows, int k_cols,
                   std::int64_t work_cap = std::int64_t(1) << 24);
// Unpruned variant enumerating all r^(rows*cols) assignments, for
// self-checking the pruned enumerator on small inputs.
BigInt count_strip_naive(const BasicSet& bs, int n_rows, int k_cols,
                         std::int64_t config_cap = std::int64_t(1) << 16);

// Exact count of admissible configurations on the sheared torus: every 2x2
// window of the plane, with coordinates reduced to the n x k fundamental
// domain by the two periodicity relations, must be admissible. Enumeration
// over the r^(n*k) fillings of the domain, aborted at the first bad window;
// config_cap bounds r^(n*k).
BigInt count_torus(const BasicSet& bs, const TorusSpec& spec,
                   std::int64_t config_cap = std::int64_t(1) << 24);

// Transfer matrix for configurations invariant under translation by (1, q),
// built from the staircase state: such a configuration is a function f of
// j - i*q alone, the state is the window (f(t-q), ..., f(t)) of q+1
// consecutive values, and the step t -> t+1 appends one symbol while the
// 2x2 window it completes must be admissible. States are encoded little
// endian (first symbol least significant), deliberately different from the
// transfer module's encoding; the two constructions agree up to a
// permutation, so power traces are comparable, entries are not.
SparseCountMatrix staircase_transfer(const BasicSet& bs, int q);

// Certified brackets for all real eigenvalues of an integer matrix of
// dim <= 4: the characteristic polynomial is expanded exactly, its
// square-free part isolates each distinct real root, and dyadic bisection
// with exact sign evaluation narrows each to width <= 1e-12. Multiple
// roots are reported once. Throws std::invalid_argument for dim > 4.
struct EigenBracket {
    double lower = 0.0;
    double upper = 0.0;
};
std::vector<EigenBracket> exact_eigen_check(const SparseCountMatrix& a);

}  // namespace sft
