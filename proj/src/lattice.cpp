#include "sft/lattice.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sft {

namespace {

void check_unimodular(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    const std::int64_t det = a * d - b * c;
    if (det != 1 && det != -1) {
        throw std::invalid_argument("matrix [[" + std::to_string(a) + "," +
                                    std::to_string(b) + "],[" + std::to_string(c) + "," +
                                    std::to_string(d) + "]] is not unimodular");
    }
}

struct Egcd {
    std::int64_t g = 0;  // gcd, nonnegative
    std::int64_t s = 0;  // g = s*x + t*y
    std::int64_t t = 0;
};

// Extended Euclid with g >= 0; for y = 0 returns (|x|, sign(x), 0).
Egcd egcd(std::int64_t x, std::int64_t y) {
    if (x == 0 && y == 0) return {0, 0, 0};
    std::int64_t r0 = x < 0 ? -x : x, r1 = y < 0 ? -y : y;
    std::int64_t s0 = x < 0 ? -1 : (x > 0 ? 1 : 0), s1 = 0;
    std::int64_t t0 = 0, t1 = y < 0 ? -1 : (y > 0 ? 1 : 0);
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        s0 -= q * s1;
        t0 -= q * t1;
        std::swap(r0, r1);
        std::swap(s0, s1);
        std::swap(t0, t1);
    }
    return {r0, s0, t0};
}

std::int64_t floor_mod(std::int64_t x, std::int64_t n) {
    std::int64_t v = x % n;
    if (v < 0) v += n;
    return v;
}

void check_hnf_input(std::int64_t m, std::int64_t l, std::int64_t k) {
    if (m < 1 || k < 1 || l < 0 || l >= m) {
        throw std::invalid_argument("invalid Hermite form (" + std::to_string(m) + ", " +
                                    std::to_string(l) + ", " + std::to_string(k) + ")");
    }
}

}  // namespace

Unimodular Unimodular::inverse() const {
    const std::int64_t dt = det();
    // adj / det with det = +-1.
    return {d * dt, -b * dt, -c * dt, a * dt};
}

Unimodular make_unimodular(std::int64_t a, std::int64_t b, std::int64_t c,
                           std::int64_t d) {
    check_unimodular(a, b, c, d);
    return {a, b, c, d};
}

Unimodular gamma0() { return {1, 0, 0, 1}; }

Unimodular gamma_q(std::int64_t q) { return {1, q, 0, 1}; }

Unimodular gamma0_hat() { return {0, 1, 1, 0}; }

IntMat2 matmul(const IntMat2& x, const IntMat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

IntMat2 to_mat(const Unimodular& u) { return {u.a, u.b, u.c, u.d}; }

std::pair<HermiteForm, Unimodular> hnf_reduce(const IntMat2& a) {
    const std::int64_t det = a.det();
    if (det == 0) {
        throw std::invalid_argument("hnf_reduce requires a nonsingular matrix");
    }
    // Column operations only, accumulated in U. First clear the bottom-left
    // entry with the Bezout column transform for the bottom row.
    const Egcd e = egcd(a.a21, a.a22);
    const std::int64_t k = e.g;  // > 0 since det != 0
    IntMat2 u{a.a22 / k, e.s, -a.a21 / k, e.t};
    IntMat2 h = matmul(to_mat({a.a11, a.a12, a.a21, a.a22}), u);
    // h = [[n, l], [0, k]] up to sign of n and range of l.
    if (h.a11 < 0) {
        h.a11 = -h.a11;
        u.a11 = -u.a11;
        u.a21 = -u.a21;
    }
    const std::int64_t shift = -((h.a12 - floor_mod(h.a12, h.a11)) / h.a11);
    // Add shift * column 1 to column 2.
    h.a12 += shift * h.a11;
    u.a12 += shift * u.a11;
    u.a22 += shift * u.a21;
    HermiteForm out;
    out.n = h.a11;
    out.l = h.a12;
    out.k = h.a22;
    out.system = gamma0();
    check_unimodular(u.a11, u.a12, u.a21, u.a22);
    return {out, Unimodular{u.a11, u.a12, u.a21, u.a22}};
}

HermiteForm to_gamma0(const Unimodular& gamma, std::int64_t m, std::int64_t l,
                      std::int64_t k) {
    check_hnf_input(m, l, k);
    // gamma^T * [[m, l], [0, k]]; the reduction of this product realizes the
    // closed form k' = gcd(b m, b l + d k), n' = m k / k',
    // l' = b1 (a m) + b2 (a l + c k) mod n' directly, so one code path
    // serves both the b = 0 and b != 0 branches.
    const IntMat2 gt{gamma.a, gamma.c, gamma.b, gamma.d};
    HermiteForm out = hnf_reduce(matmul(gt, {m, l, 0, k})).first;
    out.system = gamma0();
    return out;
}

HermiteForm transform(const Unimodular& gamma, const Unimodular& gamma_prime,
                      std::int64_t m, std::int64_t l, std::int64_t k) {
    check_hnf_input(m, l, k);
    // Work with adj(gamma_prime^T) instead of the true inverse; the extra
    // factor det(gamma_prime) = +-1 rescales the basis and leaves the
    // lattice unchanged.
    const IntMat2 gt{gamma.a, gamma.c, gamma.b, gamma.d};
    const Unimodular gpt = gamma_prime.transposed();
    const IntMat2 adj{gpt.d, -gpt.b, -gpt.c, gpt.a};
    const IntMat2 b_mat = matmul(adj, matmul(gt, {m, l, 0, k}));
    HermiteForm generic = hnf_reduce(b_mat).first;
    generic.system = gamma_prime;

    // Closed-form fast path for the transversal case, checked against the
    // generic reduction.
    const std::int64_t dd =
        gamma_prime.a * gamma.b - gamma.a * gamma_prime.b;  // a'b - ab'
    if (dd != 0) {
        const std::int64_t low1 = dd * m;
        const std::int64_t low2 =
            dd * l + (gamma_prime.a * gamma.d - gamma_prime.b * gamma.c) * k;
        const Egcd e = egcd(low1, low2);
        const std::int64_t k_closed = e.g;
        std::int64_t n_closed = m * k / k_closed;
        if (n_closed < 0) n_closed = -n_closed;
        const std::int64_t cross = gamma.a * gamma_prime.d - gamma.b * gamma_prime.c;
        const std::int64_t delta_product = gamma.det() * gamma_prime.det();
        const std::int64_t l_num = k_closed * cross - e.t * k * delta_product;
        if (l_num % dd != 0) {
            throw std::logic_error("transform closed form lost integrality");
        }
        const std::int64_t l_closed = floor_mod(l_num / dd, n_closed);
        if (k_closed != generic.k || n_closed != generic.n || l_closed != generic.l) {
            throw std::logic_error("transform closed form disagrees with reduction");
        }
    }
    return generic;
}

bool equivalent(const IntMat2& a, const IntMat2& b) {
    const HermiteForm ha = hnf_reduce(a).first;
    const HermiteForm hb = hnf_reduce(b).first;
    return ha.n == hb.n && ha.l == hb.l && ha.k == hb.k;
}

std::set<std::pair<std::int64_t, std::int64_t>> lattice_points(const IntMat2& a,
                                                               std::int64_t radius) {
    if (radius < 1) throw std::invalid_argument("lattice_points needs radius >= 1");
    const std::int64_t det = a.det();
    std::set<std::pair<std::int64_t, std::int64_t>> points;
    if (det == 0) {
        throw std::invalid_argument("lattice_points requires a nonsingular matrix");
    }
    // (x, y) lies in A*Z^2 iff adj(A)*(x, y) is divisible by det(A).
    for (std::int64_t x = -radius; x <= radius; ++x) {
        for (std::int64_t y = -radius; y <= radius; ++y) {
            const std::int64_t s = a.a22 * x - a.a12 * y;
            const std::int64_t t = -a.a21 * x + a.a11 * y;
            if (s % det == 0 && t % det == 0) points.emplace(x, y);
        }
    }
    return points;
}

}  // namespace sft
