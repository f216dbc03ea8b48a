#include "sft/oracle.hpp"

#include "sft/transfer.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sft {

namespace {

// floor division remainder, always in [0, m)
std::int64_t floor_mod(std::int64_t value, std::int64_t m) {
    assert(m > 0);
    std::int64_t r = value % m;
    if (r < 0) r += m;
    return r;
}

BigInt big_pow(std::int64_t base, std::int64_t exponent) {
    assert(base >= 0 && exponent >= 0);
    BigInt acc = 1;
    for (std::int64_t i = 0; i < exponent; ++i) acc *= base;
    return acc;
}

}  // namespace

BigInt count_strip(const BasicSet& bs, int n_rows, int k_cols, std::int64_t work_cap) {
    if (n_rows < 1 || k_cols < 1) {
        throw std::invalid_argument("count_strip needs at least one row and one column");
    }
    if (work_cap < 1) throw std::invalid_argument("count_strip needs a positive work cap");
    const int r = bs.r();
    if (n_rows == 1 || k_cols == 1) {
        // No 2x2 window fits, so every assignment is admissible.
        return big_pow(r, static_cast<std::int64_t>(n_rows) * k_cols);
    }
    // Cells are filled column by column, bottom to top within a column, so
    // when cell (c, t) with c >= 1 and t >= 1 is placed the window with its
    // top-right corner there is fully determined.
    const int cells = n_rows * k_cols;
    std::vector<int> value(static_cast<std::size_t>(cells), 0);
    std::int64_t work = 0;
    BigInt total = 0;

    // Iterative DFS over cell = c * n_rows + t with explicit symbol counters.
    std::vector<int> symbol(static_cast<std::size_t>(cells), -1);
    int depth = 0;
    while (depth >= 0) {
        if (depth == cells) {
            ++total;
            --depth;
            continue;
        }
        int& s = symbol[static_cast<std::size_t>(depth)];
        ++s;
        if (s >= r) {
            s = -1;
            --depth;
            continue;
        }
        if (++work > work_cap) {
            throw CapExceeded("count_strip work cap exceeded");
        }
        const int c = depth / n_rows;
        const int t = depth % n_rows;
        value[static_cast<std::size_t>(depth)] = s;
        if (c >= 1 && t >= 1) {
            const int bl = value[static_cast<std::size_t>((c - 1) * n_rows + (t - 1))];
            const int br = value[static_cast<std::size_t>(c * n_rows + (t - 1))];
            const int tl = value[static_cast<std::size_t>((c - 1) * n_rows + t)];
            if (!bs.admissible(bl, br, tl, s)) continue;
        }
        ++depth;
    }
    return total;
}

BigInt count_strip_naive(const BasicSet& bs, int n_rows, int k_cols,
                         std::int64_t config_cap) {
    if (n_rows < 1 || k_cols < 1) {
        throw std::invalid_argument("count_strip_naive needs at least one row and one column");
    }
    const int r = bs.r();
    const int cells = n_rows * k_cols;
    const BigInt configs = big_pow(r, cells);
    if (configs > config_cap) {
        throw CapExceeded("count_strip_naive configuration cap exceeded");
    }
    std::vector<int> value(static_cast<std::size_t>(cells), 0);
    BigInt total = 0;
    while (true) {
        bool ok = true;
        for (int c = 1; c < k_cols && ok; ++c) {
            for (int t = 1; t < n_rows && ok; ++t) {
                const int bl = value[static_cast<std::size_t>((c - 1) * n_rows + (t - 1))];
                const int br = value[static_cast<std::size_t>(c * n_rows + (t - 1))];
                const int tl = value[static_cast<std::size_t>((c - 1) * n_rows + t)];
                const int tr = value[static_cast<std::size_t>(c * n_rows + t)];
                ok = bs.admissible(bl, br, tl, tr);
            }
        }
        if (ok) ++total;
        int pos = 0;
        while (pos < cells && ++value[static_cast<std::size_t>(pos)] == r) {
            value[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == cells) break;
    }
    return total;
}

BigInt count_torus(const BasicSet& bs, const TorusSpec& spec, std::int64_t config_cap) {
    const std::int64_t n = spec.n, k = spec.k, l = spec.l;
    if (n < 1 || k < 1) throw std::invalid_argument("count_torus needs n >= 1 and k >= 1");
    if (l < 0 || l >= n) throw std::invalid_argument("count_torus needs 0 <= l < n");
    const int r = bs.r();
    if (big_pow(r, n * k) > config_cap) {
        throw CapExceeded("count_torus configuration cap exceeded");
    }
    // Reduce an arbitrary plane coordinate into the fundamental domain
    // [0, n) x [0, k) using U(i, j) = U(i - l, j - k) and U(i + n, j) = U(i, j).
    const auto reduce = [&](std::int64_t i, std::int64_t j) -> std::int64_t {
        assert(j >= 0);
        const std::int64_t jq = j / k;
        const std::int64_t jr = j % k;
        const std::int64_t ir = floor_mod(i - jq * l, n);
        return jr * n + ir;  // flat cell index
    };
    const std::int64_t cells = n * k;
    // Every plane window is a translate of one whose bottom-left corner lies
    // in the fundamental domain, so those n*k windows are exhaustive.
    struct Window {
        std::int64_t bl, br, tl, tr;
    };
    std::vector<std::vector<Window>> triggered(static_cast<std::size_t>(cells));
    for (std::int64_t j = 0; j < k; ++j) {
        for (std::int64_t i = 0; i < n; ++i) {
            Window w{reduce(i, j), reduce(i + 1, j), reduce(i, j + 1), reduce(i + 1, j + 1)};
            const std::int64_t trigger = std::max({w.bl, w.br, w.tl, w.tr});
            triggered[static_cast<std::size_t>(trigger)].push_back(w);
        }
    }
    std::vector<int> value(static_cast<std::size_t>(cells), 0);
    std::vector<int> symbol(static_cast<std::size_t>(cells), -1);
    BigInt total = 0;
    std::int64_t depth = 0;
    while (depth >= 0) {
        if (depth == cells) {
            ++total;
            --depth;
            continue;
        }
        int& s = symbol[static_cast<std::size_t>(depth)];
        ++s;
        if (s >= r) {
            s = -1;
            --depth;
            continue;
        }
        value[static_cast<std::size_t>(depth)] = s;
        bool ok = true;
        for (const Window& w : triggered[static_cast<std::size_t>(depth)]) {
            if (!bs.admissible(value[static_cast<std::size_t>(w.bl)],
                               value[static_cast<std::size_t>(w.br)],
                               value[static_cast<std::size_t>(w.tl)],
                               value[static_cast<std::size_t>(w.tr)])) {
                ok = false;
                break;
            }
        }
        if (ok) ++depth;
    }
    return total;
}

SparseCountMatrix staircase_transfer(const BasicSet& bs, int q) {
    if (q < 1) throw std::invalid_argument("staircase_transfer needs q >= 1");
    const int r = bs.r();
    const std::int64_t dim = checked_dim(r, q + 1);
    const std::int64_t block = dim / r;  // r^q, weight of the appended digit
    SparseCountMatrix m(dim);
    // State (s_0, ..., s_q) = (f(t-q), ..., f(t)) encoded little endian:
    // index = 1 + sum_d s_d r^d. Appending g = f(t+1) completes the window
    // whose corners are bl = f(t), br = f(t-q), tl = f(t+1), tr = f(t-q+1).
    for (std::int64_t state = 0; state < dim; ++state) {
        const int s0 = static_cast<int>(state % r);
        const int s1 = static_cast<int>((state / r) % r);
        const int sq = static_cast<int>(state / block);
        const std::int64_t shifted = state / r;
        for (int g = 0; g < r; ++g) {
            if (bs.admissible(sq, s0, g, s1)) {
                m.set(state + 1, shifted + g * block + 1, 1);
            }
        }
    }
    return m;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;
using QPoly = std::vector<Rational>;  // coefficient of x^d at index d

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
    trim(d);
    return d;
}

Rational eval(const QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

int sign(const Rational& x) {
    if (x > 0) return 1;
    if (x < 0) return -1;
    return 0;
}

// Remainder of f modulo g over the rationals, exact.
QPoly poly_rem(QPoly f, const QPoly& g) {
    assert(!g.empty());
    while (degree(f) >= degree(g)) {
        const Rational factor = f.back() / g.back();
        const int shift = degree(f) - degree(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            f[static_cast<std::size_t>(shift) + i] -= factor * g[i];
        }
        f.pop_back();
        trim(f);
        if (f.empty()) break;
    }
    return f;
}

// Exact quotient; the division must come out even.
QPoly poly_div_exact(QPoly f, const QPoly& g) {
    assert(!g.empty());
    QPoly quotient(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, Rational(0));
    while (degree(f) >= degree(g)) {
        const Rational factor = f.back() / g.back();
        const int shift = degree(f) - degree(g);
        quotient[static_cast<std::size_t>(shift)] = factor;
        for (std::size_t i = 0; i < g.size(); ++i) {
            f[static_cast<std::size_t>(shift) + i] -= factor * g[i];
        }
        f.pop_back();
        trim(f);
        if (f.empty()) break;
    }
    assert(f.empty());
    trim(quotient);
    return quotient;
}

void make_monic(QPoly& p) {
    if (p.empty()) return;
    const Rational lead = p.back();
    for (Rational& c : p) c /= lead;
}

QPoly poly_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

// Characteristic polynomial det(xI - A) by signed permutation expansion;
// feasible because the dimension is at most 4.
QPoly char_poly(const SparseCountMatrix& a) {
    const int n = static_cast<int>(a.dim());
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    QPoly total{Rational(0)};
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) {
                    ++inversions;
                }
            }
        }
        QPoly term{Rational(inversions % 2 == 0 ? 1 : -1)};
        for (int i = 0; i < n; ++i) {
            const int j = perm[static_cast<std::size_t>(i)];
            const Rational off = -Rational(a.at(i + 1, j + 1));
            // Entry of xI - A: degree one on the diagonal, constant off it.
            QPoly factor = (i == j) ? QPoly{off, Rational(1)} : QPoly{off};
            QPoly product(term.size() + factor.size() - 1, Rational(0));
            for (std::size_t s = 0; s < term.size(); ++s) {
                for (std::size_t t = 0; t < factor.size(); ++t) {
                    product[s + t] += term[s] * factor[t];
                }
            }
            trim(product);
            term = std::move(product);
            if (term.empty()) break;
        }
        if (term.empty()) continue;
        if (total.size() < term.size()) total.resize(term.size(), Rational(0));
        for (std::size_t s = 0; s < term.size(); ++s) total[s] += term[s];
    } while (std::next_permutation(perm.begin(), perm.end()));
    trim(total);
    return total;
}

// Number of sign alternations of the Sturm chain at x, zeros skipped.
int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
    int changes = 0;
    int prev = 0;
    for (const QPoly& p : chain) {
        const int s = sign(eval(p, x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

struct Isolator {
    const QPoly& sf;
    const std::vector<QPoly>& chain;
    Rational width_target;
    std::vector<std::pair<Rational, Rational>> brackets;

    int count(const Rational& a, const Rational& b) const {
        return sign_changes(chain, a) - sign_changes(chain, b);
    }

    // Shrink an isolated bracket (opposite signs at the ends) to the target.
    void refine(Rational lo, Rational hi) {
        int slo = sign(eval(sf, lo));
        assert(slo != 0 && sign(eval(sf, hi)) == -slo);
        while (hi - lo > width_target) {
            const Rational mid = (lo + hi) / 2;
            const int smid = sign(eval(sf, mid));
            if (smid == 0) {
                brackets.emplace_back(mid, mid);
                return;
            }
            if (smid == slo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        brackets.emplace_back(lo, hi);
    }

    // Endpoints must not be roots; the interval holds `roots` distinct roots.
    void isolate(const Rational& lo, const Rational& hi, int roots) {
        if (roots == 0) return;
        if (roots == 1) {
            refine(lo, hi);
            return;
        }
        const Rational mid = (lo + hi) / 2;
        if (sign(eval(sf, mid)) != 0) {
            isolate(lo, mid, count(lo, mid));
            isolate(mid, hi, count(mid, hi));
            return;
        }
        // The midpoint is itself a root; carve out a punctured neighborhood
        // small enough to contain no other root.
        brackets.emplace_back(mid, mid);
        Rational delta = (hi - lo) / 4;
        while (true) {
            const Rational a = mid - delta;
            const Rational b = mid + delta;
            if (sign(eval(sf, a)) != 0 && sign(eval(sf, b)) != 0 && count(a, b) == 1) {
                isolate(lo, a, count(lo, a));
                isolate(b, hi, count(b, hi));
                return;
            }
            delta /= 2;
        }
    }
};

}  // namespace

std::vector<EigenBracket> exact_eigen_check(const SparseCountMatrix& a) {
    if (a.dim() > 4) {
        throw std::invalid_argument("exact_eigen_check supports dimension at most 4");
    }
    QPoly p = char_poly(a);
    assert(degree(p) == a.dim());
    // Square-free part: distinct roots only, all simple.
    const QPoly g = poly_gcd(p, derivative(p));
    QPoly sf = degree(g) > 0 ? poly_div_exact(p, g) : p;
    make_monic(sf);

    std::vector<QPoly> chain{sf, derivative(sf)};
    while (degree(chain.back()) > 0) {
        QPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;  // cannot happen for a square-free input
        for (Rational& c : r) c = -c;
        chain.push_back(std::move(r));
    }

    // Cauchy bound: every root has absolute value below 1 + max |c_i|.
    Rational bound = 0;
    for (std::size_t i = 0; i + 1 < sf.size(); ++i) {
        const Rational mag = sf[i] >= 0 ? sf[i] : -sf[i];
        bound = std::max(bound, mag);
    }
    bound += 2;

    Isolator iso{sf, chain, Rational(BigInt(1), BigInt(1000000000000LL)), {}};
    iso.isolate(-bound, bound, iso.count(-bound, bound));
    std::sort(iso.brackets.begin(), iso.brackets.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<EigenBracket> out;
    out.reserve(iso.brackets.size());
    for (const auto& [lo, hi] : iso.brackets) {
        out.push_back({lo.convert_to<double>(), hi.convert_to<double>()});
    }
    return out;
}

}  // namespace sft
