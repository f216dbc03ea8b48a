#pragma once

#include "sft/basic_set.hpp"
#include "sft/count_matrix.hpp"
#include "sft/spectral.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sft {

// Exact number of configurations periodic under the lattice spanned by
// (n, 0) and (l, k): trace(T_n^k * R_n^l).
BigInt gamma_count(const BasicSet& bs, int n, int l, std::int64_t k);

// One growth-rate estimate: value = (1/denominator) * log(rho) with the
// certified rho bounds carried through the same scaling. A zero matrix is
// flagged and reported as -infinity.
struct EntropyPoint {
    int index = 0;          // the n, m or q the point belongs to
    double value = 0.0;     // -inf when zero
    double lower = 0.0;
    double upper = 0.0;
    bool certified = true;
    bool zero = false;
};

// Richardson-style trend extrapolation n*a_n - (n-1)*a_{n-1}, eliminating a
// 1/n correction term. Diagnostic only; meaningless entries (first index,
// -inf neighbors) are absent.
std::vector<std::optional<double>> trend_line(const std::vector<EntropyPoint>& seq);

// (1/n) log rho(H_n) and (1/n) log rho(V_n) for n = 2..n_max.
struct HEstimates {
    std::vector<EntropyPoint> horizontal;
    std::vector<EntropyPoint> vertical;
};
HEstimates h_estimates(const BasicSet& bs, int n_max);

// (1/m) log rho(T_m) for m = 1..m_max.
std::vector<EntropyPoint> h_star_estimates(const BasicSet& bs, int m_max);

// log rho(T_{gamma_q,1}) for q = 1..q_max.
std::vector<EntropyPoint> h1_gamma_estimates(const BasicSet& bs, int q_max);

// (1/(nk)) log Gamma over the (n, k) grid.
struct PeriodicGridCell {
    int n = 0;
    std::int64_t k = 0;
    int argmax_l = 0;      // shear attaining the sup (0 when all vanish)
    BigInt count;          // Gamma at the reported shear
    double value = 0.0;    // (1/(nk)) log count; -inf when count = 0
    bool zero = false;
};

// sup over shears 0 <= l < n per cell.
std::vector<PeriodicGridCell> h_p_grid(const BasicSet& bs, int n_max, std::int64_t k_max);

// Fixed-shear grid: Gamma([[n, l mod n], [0, k]]) per cell.
std::vector<PeriodicGridCell> h_ell_sequence(const BasicSet& bs, std::int64_t l,
                                             int n_max, std::int64_t k_max);

}  // namespace sft
