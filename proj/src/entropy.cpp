#include "sft/entropy.hpp"

#include "sft/transfer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sft {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

EntropyPoint make_point(int index, const SpectralEstimate& est, double denominator) {
    EntropyPoint p;
    p.index = index;
    p.certified = est.certified;
    p.zero = est.upper == 0.0;
    p.value = std::log(est.rho) / denominator;
    p.lower = std::log(est.lower) / denominator;
    p.upper = std::log(est.upper) / denominator;
    if (p.zero) p.value = p.lower = p.upper = -kInf;
    return p;
}

}  // namespace

BigInt gamma_count(const BasicSet& bs, int n, int l, std::int64_t k) {
    if (n < 1) throw std::invalid_argument("gamma_count needs n >= 1");
    if (k < 1) throw std::invalid_argument("gamma_count needs k >= 1");
    if (l < 0 || l >= n) throw std::invalid_argument("gamma_count needs 0 <= l < n");
    const SparseCountMatrix t = build_Tm(bs, n);
    if (l == 0) return power_trace(t, k);
    const PermutationMatrix rot = perm_power(build_Rm(n, bs.r()), l);
    return trace_mul(matpow(t, k), rot);
}

std::vector<std::optional<double>> trend_line(const std::vector<EntropyPoint>& seq) {
    std::vector<std::optional<double>> out(seq.size());
    for (std::size_t t = 1; t < seq.size(); ++t) {
        const EntropyPoint& cur = seq[t];
        const EntropyPoint& prev = seq[t - 1];
        if (cur.index != prev.index + 1) continue;
        if (!std::isfinite(cur.value) || !std::isfinite(prev.value)) continue;
        const double n = static_cast<double>(cur.index);
        out[t] = n * cur.value - (n - 1.0) * prev.value;
    }
    return out;
}

HEstimates h_estimates(const BasicSet& bs, int n_max) {
    if (n_max < 2) throw std::invalid_argument("h_estimates needs n_max >= 2");
    HEstimates out;
    for (int n = 2; n <= n_max; ++n) {
        out.horizontal.push_back(
            make_point(n, spectral_radius(build_Hn(bs, n)), static_cast<double>(n)));
        out.vertical.push_back(
            make_point(n, spectral_radius(build_Vm(bs, n)), static_cast<double>(n)));
    }
    return out;
}

std::vector<EntropyPoint> h_star_estimates(const BasicSet& bs, int m_max) {
    if (m_max < 1) throw std::invalid_argument("h_star_estimates needs m_max >= 1");
    std::vector<EntropyPoint> out;
    for (int m = 1; m <= m_max; ++m) {
        out.push_back(make_point(m, spectral_radius(build_Tm(bs, m)), static_cast<double>(m)));
    }
    return out;
}

std::vector<EntropyPoint> h1_gamma_estimates(const BasicSet& bs, int q_max) {
    if (q_max < 1) throw std::invalid_argument("h1_gamma_estimates needs q_max >= 1");
    std::vector<EntropyPoint> out;
    for (int q = 1; q <= q_max; ++q) {
        out.push_back(make_point(q, spectral_radius(build_T_gamma_q_1(bs, q).matrix), 1.0));
    }
    return out;
}

std::vector<PeriodicGridCell> h_p_grid(const BasicSet& bs, int n_max, std::int64_t k_max) {
    if (n_max < 1 || k_max < 1) {
        throw std::invalid_argument("h_p_grid needs positive n_max and k_max");
    }
    std::vector<PeriodicGridCell> out;
    for (int n = 1; n <= n_max; ++n) {
        const SparseCountMatrix t = build_Tm(bs, n);
        const PermutationMatrix rot = build_Rm(n, bs.r());
        // Incremental powers: one multiply per k, then all shears per power.
        SparseCountMatrix power = SparseCountMatrix::identity(t.dim());
        for (std::int64_t k = 1; k <= k_max; ++k) {
            power = matmul(power, t);
            PeriodicGridCell cell;
            cell.n = n;
            cell.k = k;
            PermutationMatrix shear = perm_power(rot, 0);
            for (int l = 0; l < n; ++l) {
                const BigInt count = l == 0 ? trace(power) : trace_mul(power, shear);
                if (count > cell.count) {
                    cell.count = count;
                    cell.argmax_l = l;
                }
                if (l + 1 < n) shear = perm_power(rot, l + 1);
            }
            cell.zero = cell.count == 0;
            cell.value = cell.zero
                             ? -kInf
                             : big_log(cell.count) /
                                   (static_cast<double>(n) * static_cast<double>(k));
            out.push_back(std::move(cell));
        }
    }
    return out;
}

std::vector<PeriodicGridCell> h_ell_sequence(const BasicSet& bs, std::int64_t l,
                                             int n_max, std::int64_t k_max) {
    if (n_max < 1 || k_max < 1) {
        throw std::invalid_argument("h_ell_sequence needs positive n_max and k_max");
    }
    std::vector<PeriodicGridCell> out;
    for (int n = 1; n <= n_max; ++n) {
        std::int64_t l_eff = l % n;
        if (l_eff < 0) l_eff += n;
        for (std::int64_t k = 1; k <= k_max; ++k) {
            PeriodicGridCell cell;
            cell.n = n;
            cell.k = k;
            cell.argmax_l = static_cast<int>(l_eff);
            cell.count = gamma_count(bs, n, static_cast<int>(l_eff), k);
            cell.zero = cell.count == 0;
            cell.value = cell.zero
                             ? -kInf
                             : big_log(cell.count) /
                                   (static_cast<double>(n) * static_cast<double>(k));
            out.push_back(std::move(cell));
        }
    }
    return out;
}

}  // namespace sft
