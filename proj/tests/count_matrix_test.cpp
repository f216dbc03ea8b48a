#include "doctest.h"

#include "sft/count_matrix.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace sft;

namespace {

// Deterministic sparse 0/1 matrix for property tests.
SparseCountMatrix random_01(std::int64_t dim, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SparseCountMatrix m(dim);
    const double scale = 18446744073709551616.0;
    for (std::int64_t i = 1; i <= dim; ++i) {
        for (std::int64_t j = 1; j <= dim; ++j) {
            if (static_cast<double>(rng()) / scale < density) m.set(i, j, 1);
        }
    }
    return m;
}

SparseCountMatrix random_counts(std::int64_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SparseCountMatrix m(dim);
    for (std::int64_t i = 1; i <= dim; ++i) {
        for (std::int64_t j = 1; j <= dim; ++j) {
            const std::uint64_t u = rng();
            if (u % 3 == 0) m.set(i, j, BigInt(u % 7));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("set, add, at and bounds checks") {
    SparseCountMatrix m(3);
    CHECK(m.at(1, 1) == 0);
    m.set(1, 2, 5);
    CHECK(m.at(1, 2) == 5);
    m.add(1, 2, 3);
    CHECK(m.at(1, 2) == 8);
    m.set(1, 2, 0);  // clearing removes the entry
    CHECK(!m.nonzero(1, 2));
    CHECK(m.nonzero_count() == 0);
    CHECK_THROWS_AS(m.set(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(m.set(1, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(m.at(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(m.set(1, 1, BigInt(-1)), std::invalid_argument);
    CHECK_THROWS_AS(SparseCountMatrix(0), std::invalid_argument);
}

TEST_CASE("identity and all-ones constructors") {
    const SparseCountMatrix id = SparseCountMatrix::identity(4);
    CHECK(trace(id) == 4);
    CHECK(entry_sum(id) == 4);
    CHECK(id.is_zero_one());
    const SparseCountMatrix ones = SparseCountMatrix::all_ones(3);
    CHECK(entry_sum(ones) == 9);
    const SparseCountMatrix id3 = SparseCountMatrix::identity(3);
    CHECK(matmul(id3, ones) == ones);
    CHECK(matmul(ones, id3) == ones);
}

TEST_CASE("entry_sum of powers of the all-ones matrix is N^(k+1)") {
    for (std::int64_t n = 1; n <= 5; ++n) {
        const SparseCountMatrix e = SparseCountMatrix::all_ones(n);
        BigInt expected = n;
        for (std::int64_t k = 0; k <= 4; ++k) {
            CHECK(entry_sum(matpow(e, k + 1)) == expected * n);
            CHECK(power_entry_sum(e, k + 1) == expected * n);
            expected *= n;
        }
    }
}

TEST_CASE("matpow satisfies the exponent law") {
    const SparseCountMatrix a = random_01(17, 0.2, 11);
    for (std::int64_t j = 0; j <= 4; ++j) {
        for (std::int64_t k = 0; k <= 4; ++k) {
            CHECK(matpow(a, j + k) == matmul(matpow(a, j), matpow(a, k)));
        }
    }
    CHECK_THROWS_AS(matpow(a, -1), std::invalid_argument);
}

TEST_CASE("hadamard and kronecker interact componentwise") {
    const SparseCountMatrix a = random_counts(4, 21);
    const SparseCountMatrix b = random_counts(3, 22);
    const SparseCountMatrix c = random_counts(4, 23);
    const SparseCountMatrix d = random_counts(3, 24);
    CHECK(hadamard(kronecker(a, b), kronecker(c, d)) ==
          kronecker(hadamard(a, c), hadamard(b, d)));
    // Kronecker block layout: entry ((i-1)*dimB + p, (j-1)*dimB + q).
    const SparseCountMatrix kr = kronecker(a, b);
    CHECK(kr.dim() == 12);
    CHECK(kr.at(1 * 3 + 2, 2 * 3 + 1) == a.at(2, 3) * b.at(2, 1));
    CHECK_THROWS_AS(hadamard(a, b), std::invalid_argument);
}

TEST_CASE("transpose is involutive and preserves the trace") {
    const SparseCountMatrix a = random_counts(6, 31);
    CHECK(transpose(transpose(a)) == a);
    CHECK(trace(transpose(a)) == trace(a));
    CHECK(entry_sum(transpose(a)) == entry_sum(a));
}

TEST_CASE("permutation matrices compose and invert") {
    const PermutationMatrix p({3, 1, 2});
    CHECK(p.image(1) == 3);
    CHECK(p.preimage(3) == 1);
    CHECK(!p.is_identity());
    CHECK(perm_power(p, 3).is_identity());
    CHECK(perm_power(p, 0).is_identity());
    const SparseCountMatrix pm = p.to_matrix();
    CHECK(pm.at(1, 3) == 1);
    CHECK(pm.at(2, 1) == 1);
    CHECK(pm.at(3, 2) == 1);
    CHECK(entry_sum(pm) == 3);
    CHECK_THROWS_AS(PermutationMatrix({1, 1, 2}), std::invalid_argument);
}

TEST_CASE("trace_mul equals the trace of the explicit product") {
    const SparseCountMatrix a = random_counts(5, 41);
    const PermutationMatrix p({2, 3, 4, 5, 1});
    for (std::int64_t l = 0; l <= 5; ++l) {
        const PermutationMatrix q = perm_power(p, l);
        CHECK(trace_mul(a, q) == trace(matmul(a, q.to_matrix())));
    }
}

TEST_CASE("power_trace and power_entry_sum match the matpow route") {
    // 0/1 matrix large enough to engage the compact word-size path.
    const SparseCountMatrix a = random_01(40, 0.15, 51);
    for (std::int64_t k = 0; k <= 9; ++k) {
        CHECK(power_trace(a, k) == trace(matpow(a, k)));
        CHECK(power_entry_sum(a, k) == entry_sum(matpow(a, k)));
    }
    // Entries above 1 force the arbitrary-precision path.
    const SparseCountMatrix b = random_counts(12, 52);
    for (std::int64_t k = 0; k <= 6; ++k) {
        CHECK(power_trace(b, k) == trace(matpow(b, k)));
        CHECK(power_entry_sum(b, k) == entry_sum(matpow(b, k)));
    }
}

TEST_CASE("power_trace stays exact when counts pass 2^64") {
    // Entries of E^16 overflow a machine word, but the half-power pairing
    // only ever multiplies entries of E^8, which fit; the result must still
    // be the exact 97-bit count.
    const SparseCountMatrix e = SparseCountMatrix::all_ones(64);
    BigInt expected = 1;
    for (int i = 0; i < 15; ++i) expected *= 64;
    CHECK(power_trace(e, 16) == expected * 64);  // trace(E^k) = N^k
}

TEST_CASE("big_log tracks huge integers") {
    CHECK(big_log(BigInt(0)) == -std::numeric_limits<double>::infinity());
    CHECK(big_log(BigInt(1)) == 0.0);
    const double got = big_log(BigInt(1) << 200);
    CHECK(std::abs(got - 200.0 * std::log(2.0)) <= 1e-9 * got);
    CHECK_THROWS_AS(big_log(BigInt(-3)), std::invalid_argument);
}

TEST_CASE("float_view rejects entries beyond double range") {
    SparseCountMatrix m(2);
    m.set(1, 1, 3);
    m.set(2, 1, 7);
    const auto entries = float_view(m, 0.5);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].row == 1);
    CHECK(entries[0].value == doctest::Approx(1.5));
    CHECK(entries[1].value == doctest::Approx(3.5));
    SparseCountMatrix huge(1);
    huge.set(1, 1, BigInt(1) << 2000);
    CHECK_THROWS_AS(float_view(huge), std::overflow_error);
}

TEST_CASE("dump emits a dim header and row-major entries") {
    SparseCountMatrix m(2);
    m.set(2, 1, 4);
    m.set(1, 2, 3);
    std::ostringstream out;
    dump(out, m);
    CHECK(out.str() == "dim=2\n1 2 3\n2 1 4\n");
}
