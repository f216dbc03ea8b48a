#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace sft {

// 2x2 integer matrix with |det| = 1, written row-major [[a, b], [c, d]].
struct Unimodular {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }
    Unimodular transposed() const { return {a, c, b, d}; }
    // Exact inverse; valid because |det| = 1.
    Unimodular inverse() const;

    friend bool operator==(const Unimodular&, const Unimodular&) = default;
};

// Checked constructor; throws std::invalid_argument unless |det| = 1.
Unimodular make_unimodular(std::int64_t a, std::int64_t b, std::int64_t c,
                           std::int64_t d);

// The standard coordinate systems: gamma0 = identity, gamma_q = [[1, q], [0, 1]],
// gamma0_hat = [[0, 1], [1, 0]].
Unimodular gamma0();
Unimodular gamma_q(std::int64_t q);
Unimodular gamma0_hat();

// General 2x2 integer matrix, row-major.
struct IntMat2 {
    std::int64_t a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    std::int64_t det() const { return a11 * a22 - a12 * a21; }
    friend bool operator==(const IntMat2&, const IntMat2&) = default;
};

IntMat2 matmul(const IntMat2& x, const IntMat2& y);
IntMat2 to_mat(const Unimodular& u);

// Upper-triangular lattice basis [[n, l], [0, k]] expressed in the
// coordinate system `system`: the sublattice is system^T * [[n,l],[0,k]] * Z^2.
// Canonical: n, k >= 1 and 0 <= l < n.
struct HermiteForm {
    std::int64_t n = 1;
    std::int64_t l = 0;
    std::int64_t k = 1;
    Unimodular system;

    IntMat2 to_mat() const { return {n, l, 0, k}; }
    friend bool operator==(const HermiteForm&, const HermiteForm&) = default;
};

// Column reduction of a nonsingular integer matrix to canonical upper
// triangular form: returns (H, U) with A*U = [[n, l], [0, k]], U unimodular,
// n, k >= 1, 0 <= l < n, n*k = |det A|. Throws std::invalid_argument on
// det A = 0.
std::pair<HermiteForm, Unimodular> hnf_reduce(const IntMat2& a);

// Re-expresses the sublattice gamma^T * [[M,L],[0,K]] * Z^2 in gamma0
// coordinates. The b != 0 closed form (k = gcd(bM, bL + dK), n = MK/k,
// l = b1*aM + b2*(aL + cK) mod n) is evaluated and checked against the
// generic reduction; b = 0 falls through to the generic path.
HermiteForm to_gamma0(const Unimodular& gamma, std::int64_t m, std::int64_t l,
                      std::int64_t k);

// Re-expresses the same sublattice in gamma_prime coordinates:
// returns H' with gamma_prime^T * H' * Z^2 = gamma^T * [[M,L],[0,K]] * Z^2.
HermiteForm transform(const Unimodular& gamma, const Unimodular& gamma_prime,
                      std::int64_t m, std::int64_t l, std::int64_t k);

// True iff A and B generate the same sublattice of Z^2 (canonical forms equal).
bool equivalent(const IntMat2& a, const IntMat2& b);

// All points of A * Z^2 inside the box [-radius, radius]^2.
std::set<std::pair<std::int64_t, std::int64_t>> lattice_points(const IntMat2& a,
                                                               std::int64_t radius);

}  // namespace sft
