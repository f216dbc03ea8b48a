#include "sft/spectral.hpp"

#include "sft/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace sft {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SupportGraph {
    std::vector<std::int64_t> alive;  // original 1-based indices, ascending
    std::vector<std::int64_t> zero_rows;
    std::vector<std::int64_t> zero_cols;
    // Adjacency over positions into `alive`, with double entry values.
    std::vector<std::vector<std::pair<int, double>>> adj;
};

// Iteratively removes indices whose row or column is empty within the
// surviving set, then snapshots the induced weighted graph.
SupportGraph build_support(const SparseCountMatrix& a) {
    const std::int64_t n = a.dim();
    std::vector<FloatEntry> entries = float_view(a);
    std::vector<char> dead(static_cast<std::size_t>(n) + 1, 0);
    std::vector<char> dead_by_row(static_cast<std::size_t>(n) + 1, 0);
    std::vector<char> dead_by_col(static_cast<std::size_t>(n) + 1, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::int64_t> row_count(static_cast<std::size_t>(n) + 1, 0);
        std::vector<std::int64_t> col_count(static_cast<std::size_t>(n) + 1, 0);
        for (const FloatEntry& e : entries) {
            if (dead[static_cast<std::size_t>(e.row)] || dead[static_cast<std::size_t>(e.col)]) {
                continue;
            }
            ++row_count[static_cast<std::size_t>(e.row)];
            ++col_count[static_cast<std::size_t>(e.col)];
        }
        for (std::int64_t i = 1; i <= n; ++i) {
            if (dead[static_cast<std::size_t>(i)]) continue;
            const bool empty_row = row_count[static_cast<std::size_t>(i)] == 0;
            const bool empty_col = col_count[static_cast<std::size_t>(i)] == 0;
            if (empty_row || empty_col) {
                dead[static_cast<std::size_t>(i)] = 1;
                dead_by_row[static_cast<std::size_t>(i)] = empty_row;
                dead_by_col[static_cast<std::size_t>(i)] = empty_col;
                changed = true;
            }
        }
    }
    SupportGraph g;
    std::vector<int> position(static_cast<std::size_t>(n) + 1, -1);
    for (std::int64_t i = 1; i <= n; ++i) {
        if (dead[static_cast<std::size_t>(i)]) {
            if (dead_by_row[static_cast<std::size_t>(i)]) g.zero_rows.push_back(i);
            if (dead_by_col[static_cast<std::size_t>(i)]) g.zero_cols.push_back(i);
        } else {
            position[static_cast<std::size_t>(i)] = static_cast<int>(g.alive.size());
            g.alive.push_back(i);
        }
    }
    g.adj.resize(g.alive.size());
    for (const FloatEntry& e : entries) {
        const int pi = position[static_cast<std::size_t>(e.row)];
        const int pj = position[static_cast<std::size_t>(e.col)];
        if (pi >= 0 && pj >= 0) g.adj[static_cast<std::size_t>(pi)].emplace_back(pj, e.value);
    }
    return g;
}

// Iterative Tarjan over the support graph; emits components in topological
// order of the condensation (sources first).
std::vector<std::vector<int>> tarjan_scc(const std::vector<std::vector<std::pair<int, double>>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    int next_index = 0;

    struct Frame {
        int v;
        std::size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[static_cast<std::size_t>(f.v)].size()) {
                const int w = adj[static_cast<std::size_t>(f.v)][f.edge++].first;
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
                        next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)],
                                 index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    std::vector<int> comp;
                    while (true) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
                const int v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    low[static_cast<std::size_t>(frames.back().v)] =
                        std::min(low[static_cast<std::size_t>(frames.back().v)],
                                 low[static_cast<std::size_t>(v)]);
                }
            }
        }
    }
    // Tarjan finishes sinks first; reverse for condensation order.
    std::reverse(components.begin(), components.end());
    return components;
}

struct ComponentRho {
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t iterations = 0;
    bool converged = true;
    std::vector<double> vec;  // positive Perron vector approximation
};

// Certified bounds for the Perron root of one strongly connected component,
// via power iteration on A+I with Collatz-Wielandt quotients. The +1 shift
// is removed from the returned bounds.
ComponentRho component_rho(const std::vector<std::vector<std::pair<int, double>>>& adj,
                           const std::vector<int>& comp, double tol,
                           std::int64_t max_iterations) {
    ComponentRho out;
    const std::size_t size = comp.size();
    if (size == 1) {
        const int v = comp[0];
        double self = 0.0;
        for (const auto& [w, value] : adj[static_cast<std::size_t>(v)]) {
            if (w == v) self = value;
        }
        out.lo = out.hi = self;
        out.vec = {1.0};
        return out;
    }
    std::vector<int> position_of(adj.size(), -1);
    for (std::size_t p = 0; p < size; ++p) position_of[static_cast<std::size_t>(comp[p])] =
        static_cast<int>(p);
    // Local adjacency restricted to the component.
    std::vector<std::vector<std::pair<int, double>>> local(size);
    for (std::size_t p = 0; p < size; ++p) {
        for (const auto& [w, value] : adj[static_cast<std::size_t>(comp[p])]) {
            const int q = position_of[static_cast<std::size_t>(w)];
            if (q >= 0) local[p].emplace_back(q, value);
        }
    }
    std::vector<double> x(size, 1.0), y(size, 0.0);
    double best_lo = -kInf, best_hi = kInf;
    for (std::int64_t iter = 1; iter <= max_iterations; ++iter) {
        out.iterations = iter;
        for (std::size_t p = 0; p < size; ++p) {
            double acc = x[p];  // the +I shift
            for (const auto& [q, value] : local[p]) acc += value * x[static_cast<std::size_t>(q)];
            y[p] = acc;
        }
        double lo = kInf, hi = -kInf, norm = 0.0;
        for (std::size_t p = 0; p < size; ++p) {
            const double ratio = y[p] / x[p];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            norm = std::max(norm, y[p]);
        }
        best_lo = std::max(best_lo, lo);
        best_hi = std::min(best_hi, hi);
        for (std::size_t p = 0; p < size; ++p) x[p] = y[p] / norm;
        if (best_hi - best_lo <= tol) break;
    }
    out.converged = best_hi - best_lo <= tol;
    out.lo = best_lo - 1.0;
    out.hi = best_hi - 1.0;
    if (out.lo < 0.0) out.lo = 0.0;
    out.vec = x;
    return out;
}

}  // namespace

SpectralEstimate spectral_radius(const SparseCountMatrix& a, double tol,
                                 std::int64_t max_iterations) {
    if (tol <= 0) throw std::invalid_argument("spectral tolerance must be positive");
    const SupportGraph g = build_support(a);
    SpectralEstimate est;
    if (g.alive.empty()) {
        est.rho = est.lower = est.upper = 0.0;
        est.residual = 0.0;
        return est;
    }
    const auto components = tarjan_scc(g.adj);
    double lower = 0.0, upper = 0.0;
    bool all_converged = true;
    for (const auto& comp : components) {
        const ComponentRho cr = component_rho(g.adj, comp, tol, max_iterations);
        est.iterations += cr.iterations;
        all_converged = all_converged && cr.converged;
        lower = std::max(lower, cr.lo);
        upper = std::max(upper, cr.hi);
    }
    est.lower = lower;
    est.upper = upper;
    est.rho = 0.5 * (lower + upper);
    est.residual = upper - lower;
    est.certified = all_converged;
    return est;
}

ComponentDecomposition scc(const SparseCountMatrix& a) {
    const SupportGraph g = build_support(a);
    ComponentDecomposition out;
    out.zero_rows = g.zero_rows;
    out.zero_cols = g.zero_cols;
    for (const auto& comp : tarjan_scc(g.adj)) {
        std::vector<std::int64_t> original;
        original.reserve(comp.size());
        for (int p : comp) original.push_back(g.alive[static_cast<std::size_t>(p)]);
        out.components.push_back(std::move(original));
    }
    return out;
}

IrreducibleComponent max_irreducible_component(const SparseCountMatrix& a) {
    const SupportGraph g = build_support(a);
    IrreducibleComponent best{SparseCountMatrix(1), {}};
    if (g.alive.empty()) return best;
    const auto components = tarjan_scc(g.adj);
    double best_rho = -1.0;
    std::vector<int> best_comp;
    for (const auto& comp : components) {
        const ComponentRho cr = component_rho(g.adj, comp, 1e-12, 1000000);
        const double rho = 0.5 * (cr.lo + cr.hi);
        std::vector<std::int64_t> original;
        original.reserve(comp.size());
        for (int p : comp) original.push_back(g.alive[static_cast<std::size_t>(p)]);
        const bool tie = std::abs(rho - best_rho) <= 1e-9;
        const bool better = rho > best_rho + 1e-9 ||
                            (tie && original < best.indices);
        if (best_comp.empty() || better) {
            best_rho = std::max(rho, best_rho);
            best_comp = comp;
            best.indices = std::move(original);
        }
    }
    // Extract the induced submatrix with rows/cols renumbered 1..size.
    SparseCountMatrix sub(static_cast<std::int64_t>(best.indices.size()));
    std::vector<std::int64_t> position(static_cast<std::size_t>(a.dim()) + 1, 0);
    for (std::size_t p = 0; p < best.indices.size(); ++p) {
        position[static_cast<std::size_t>(best.indices[p])] = static_cast<std::int64_t>(p + 1);
    }
    a.for_each([&](std::int64_t i, std::int64_t j, const BigInt& v) {
        const std::int64_t pi = position[static_cast<std::size_t>(i)];
        const std::int64_t pj = position[static_cast<std::size_t>(j)];
        if (pi > 0 && pj > 0) sub.set(pi, pj, v);
    });
    best.submatrix = std::move(sub);
    return best;
}

std::optional<std::int64_t> diameter(const SparseCountMatrix& a) {
    const std::int64_t n = a.dim();
    // Plain adjacency, no support deletion: d(i, j) = min{k >= 1 : (A^k)_ij >= 1}.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    a.for_each([&](std::int64_t i, std::int64_t j, const BigInt&) {
        adj[static_cast<std::size_t>(i - 1)].push_back(static_cast<int>(j - 1));
    });
    std::int64_t worst = 0;
    std::vector<std::int64_t> dist(static_cast<std::size_t>(n));
    for (std::int64_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> queue;
        // Seed with out-neighbors at distance 1 so that d(s, s) demands a
        // genuine cycle rather than the empty path.
        for (int w : adj[static_cast<std::size_t>(s)]) {
            if (dist[static_cast<std::size_t>(w)] == -1) {
                dist[static_cast<std::size_t>(w)] = 1;
                queue.push(w);
            }
        }
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (dist[static_cast<std::size_t>(w)] == -1) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    queue.push(w);
                }
            }
        }
        for (std::int64_t t = 0; t < n; ++t) {
            if (dist[static_cast<std::size_t>(t)] == -1) return std::nullopt;
            worst = std::max(worst, dist[static_cast<std::size_t>(t)]);
        }
    }
    return worst;
}

namespace {

// Induced submatrix on the (sorted, original-index) support of `a`.
SparseCountMatrix support_submatrix(const SparseCountMatrix& a,
                                    const std::vector<std::int64_t>& alive) {
    if (alive.empty()) return SparseCountMatrix(1);
    SparseCountMatrix sub(static_cast<std::int64_t>(alive.size()));
    std::vector<std::int64_t> position(static_cast<std::size_t>(a.dim()) + 1, 0);
    for (std::size_t p = 0; p < alive.size(); ++p) {
        position[static_cast<std::size_t>(alive[p])] = static_cast<std::int64_t>(p + 1);
    }
    a.for_each([&](std::int64_t i, std::int64_t j, const BigInt& v) {
        const std::int64_t pi = position[static_cast<std::size_t>(i)];
        const std::int64_t pj = position[static_cast<std::size_t>(j)];
        if (pi > 0 && pj > 0) sub.set(pi, pj, v);
    });
    return sub;
}

ConnectivityRow analyze_connectivity(const SparseCountMatrix& t, int m) {
    ConnectivityRow row;
    row.m = m;
    row.dim = t.dim();
    row.zero = t.nonzero_count() == 0;
    const SupportGraph g = build_support(t);
    row.support_size = static_cast<std::int64_t>(g.alive.size());
    for (std::int64_t i = 1; i <= t.dim(); ++i) {
        if (t.nonzero(i, i)) {
            row.self_loop = i;
            break;
        }
    }
    if (!g.alive.empty()) {
        const auto components = tarjan_scc(g.adj);
        row.irreducible = components.size() == 1;
        row.diam = diameter(support_submatrix(t, g.alive));
    }
    return row;
}

}  // namespace

ConnectivityReport uniform_connectedness(const BasicSet& bs, int m_max) {
    if (m_max < 1) throw std::invalid_argument("uniform_connectedness needs m_max >= 1");
    ConnectivityReport report;
    bool all_finite = true;
    for (int m = 1; m <= m_max; ++m) {
        ConnectivityRow row = analyze_connectivity(build_Tm(bs, m), m);
        if (row.diam.has_value()) {
            if (!report.k_bound || *row.diam > *report.k_bound) report.k_bound = *row.diam;
        } else {
            all_finite = false;
        }
        report.rows.push_back(std::move(row));
    }
    report.all_finite = all_finite;
    return report;
}

ConnectivityReport block_gluing_check(const BasicSet& bs, int m_max, int k_window,
                                      int k_cap) {
    if (k_window < 1 || k_cap < 1) {
        throw std::invalid_argument("block_gluing_check needs positive window and cap");
    }
    ConnectivityReport report = uniform_connectedness(bs, m_max);
    for (ConnectivityRow& row : report.rows) {
        if (row.zero || row.support_size == 0) continue;
        const SparseCountMatrix t = build_Tm(bs, row.m);
        const SupportGraph g = build_support(t);
        const std::size_t n = g.alive.size();
        const std::size_t words = (n + 63) / 64;
        // Boolean rows of the support adjacency and its powers.
        std::vector<std::vector<std::uint64_t>> base(n, std::vector<std::uint64_t>(words, 0));
        for (std::size_t p = 0; p < n; ++p) {
            for (const auto& [q, value] : g.adj[p]) {
                (void)value;
                base[p][static_cast<std::size_t>(q) / 64] |= std::uint64_t(1)
                                                             << (static_cast<std::size_t>(q) % 64);
            }
        }
        auto full = [&](const std::vector<std::vector<std::uint64_t>>& rows_bits) {
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t expect = ~std::uint64_t(0);
                    if (w == words - 1 && n % 64 != 0) {
                        expect = (std::uint64_t(1) << (n % 64)) - 1;
                    }
                    if ((rows_bits[p][w] & expect) != expect) return false;
                }
            }
            return true;
        };
        std::vector<char> all_positive;
        all_positive.push_back(0);  // power 0 unused
        std::vector<std::vector<std::uint64_t>> power = base;
        all_positive.push_back(full(power) ? 1 : 0);
        for (int k = 2; k <= k_cap + k_window; ++k) {
            std::vector<std::vector<std::uint64_t>> next(n, std::vector<std::uint64_t>(words, 0));
            for (std::size_t p = 0; p < n; ++p) {
                for (const auto& [q, value] : g.adj[p]) {
                    (void)value;
                    const auto& src = power[static_cast<std::size_t>(q)];
                    for (std::size_t w = 0; w < words; ++w) next[p][w] |= src[w];
                }
            }
            power = std::move(next);
            all_positive.push_back(full(power) ? 1 : 0);
        }
        for (int k0 = 1; k0 <= k_cap; ++k0) {
            bool ok = true;
            for (int k = k0; k <= k0 + k_window; ++k) {
                if (!all_positive[static_cast<std::size_t>(k)]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                row.gluing_k = k0;
                break;
            }
        }
    }
    return report;
}

DominationTable domination_table(const BasicSet& bs, int m_max, int k_max) {
    if (m_max < 1 || k_max < 1) {
        throw std::invalid_argument("domination_table needs positive m_max and k_max");
    }
    DominationTable table;
    const ConnectivityReport conn = uniform_connectedness(bs, m_max);
    table.k_bound = conn.all_finite ? conn.k_bound : std::nullopt;
    for (int m = 1; m <= m_max; ++m) {
        const SparseCountMatrix t = build_Tm(bs, m);
        const SpectralEstimate est = spectral_radius(t);
        table.rho_per_m.push_back(est);
        table.any_uncertified = table.any_uncertified || !est.certified;
        if (table.k_bound) {
            table.bound_per_m.push_back(
                std::pow(std::pow(static_cast<double>(bs.r()), static_cast<double>(*table.k_bound + 1)),
                         static_cast<double>(m)));
        }
        for (std::int64_t k = 1; k <= k_max; ++k) {
            DominationCell cell;
            cell.m = m;
            cell.k = k;
            cell.abs_count = power_entry_sum(t, k);
            if (cell.abs_count == 0 || est.rho <= 0.0) {
                cell.c = 0.0;
                cell.log_c_over_mk = -kInf;
            } else {
                const double log_c =
                    big_log(cell.abs_count) - static_cast<double>(k) * std::log(est.rho);
                const double denom = std::pow(est.rho, static_cast<double>(k));
                // Small counts divide exactly (e.g. powers of two); fall back
                // to the log route only when the direct ratio would overflow.
                if (cell.abs_count < (BigInt(1) << 53) && std::isfinite(denom) &&
                    denom >= 1e-300) {
                    cell.c = cell.abs_count.convert_to<double>() / denom;
                } else {
                    cell.c = std::exp(log_c);
                }
                cell.log_c_over_mk = log_c / (static_cast<double>(m) * static_cast<double>(k));
            }
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

bool ratio_bound_check(const SparseCountMatrix& a, std::int64_t k_exponent) {
    if (k_exponent < 0) throw std::invalid_argument("ratio_bound_check needs k >= 0");
    const SupportGraph g = build_support(a);
    if (g.alive.empty()) {
        throw std::invalid_argument("ratio_bound_check needs a nonzero matrix");
    }
    const auto components = tarjan_scc(g.adj);
    if (components.size() != 1) {
        throw std::invalid_argument("ratio_bound_check needs an irreducible support");
    }
    const ComponentRho cr = component_rho(g.adj, components[0], 1e-12, 1000000);
    const double rho = 0.5 * (cr.lo + cr.hi);
    double lo = kInf, hi = 0.0;
    for (double v : cr.vec) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double ratio = hi / lo;
    const double bound = std::pow(rho, static_cast<double>(k_exponent));
    return ratio <= bound * (1.0 + 1e-6) + 1e-12;
}

}  // namespace sft
