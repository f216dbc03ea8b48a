#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sft {

using BigInt = boost::multiprecision::cpp_int;

// Thrown when a requested computation exceeds a configured size or work cap.
// The command-line tool maps this to its own exit code.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Square sparse matrix with nonnegative arbitrary-precision integer entries.
// Row and column indices are 1-based to match the word-index convention;
// zero entries are never stored.
class SparseCountMatrix {
public:
    explicit SparseCountMatrix(std::int64_t dim);

    static SparseCountMatrix identity(std::int64_t dim);
    static SparseCountMatrix all_ones(std::int64_t dim);  // E_N

    std::int64_t dim() const { return dim_; }

    void set(std::int64_t row, std::int64_t col, BigInt value);
    void add(std::int64_t row, std::int64_t col, const BigInt& value);
    // Returns 0 for absent entries.
    BigInt at(std::int64_t row, std::int64_t col) const;
    bool nonzero(std::int64_t row, std::int64_t col) const;

    std::size_t nonzero_count() const;
    bool is_zero_one() const;  // every stored entry equals 1

    // Calls fn(row, col, value) in row-major order with columns ascending.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::int64_t i = 0; i < dim_; ++i) {
            for (const auto& [col, value] : rows_[static_cast<std::size_t>(i)]) {
                fn(i + 1, col, value);
            }
        }
    }

    const std::vector<std::pair<std::int64_t, BigInt>>& row_entries(std::int64_t row) const;

    friend bool operator==(const SparseCountMatrix&, const SparseCountMatrix&) = default;

private:
    void check_index(std::int64_t row, std::int64_t col) const;

    std::int64_t dim_;
    // rows_[i] holds (1-based column, value) sorted by column.
    std::vector<std::vector<std::pair<std::int64_t, BigInt>>> rows_;
};

// Permutation matrix P with P[i][pi(i)] = 1, stored as the image map pi.
class PermutationMatrix {
public:
    explicit PermutationMatrix(std::vector<std::int64_t> image);
    static PermutationMatrix identity(std::int64_t dim);

    std::int64_t dim() const { return static_cast<std::int64_t>(image_.size()); }
    std::int64_t image(std::int64_t i) const;    // pi(i)
    std::int64_t preimage(std::int64_t i) const; // pi^{-1}(i)
    bool is_identity() const;

    SparseCountMatrix to_matrix() const;

    friend bool operator==(const PermutationMatrix&, const PermutationMatrix&) = default;

private:
    std::vector<std::int64_t> image_;     // image_[i-1] = pi(i)
    std::vector<std::int64_t> preimage_;  // preimage_[j-1] = pi^{-1}(j)
};

PermutationMatrix perm_power(const PermutationMatrix& p, std::int64_t k);

SparseCountMatrix matmul(const SparseCountMatrix& a, const SparseCountMatrix& b);
SparseCountMatrix matpow(const SparseCountMatrix& a, std::int64_t k);
SparseCountMatrix hadamard(const SparseCountMatrix& a, const SparseCountMatrix& b);
SparseCountMatrix kronecker(const SparseCountMatrix& a, const SparseCountMatrix& b);
SparseCountMatrix transpose(const SparseCountMatrix& a);

BigInt trace(const SparseCountMatrix& a);
BigInt entry_sum(const SparseCountMatrix& a);

// trace(a * p) without forming the product.
BigInt trace_mul(const SparseCountMatrix& a, const PermutationMatrix& p);

// trace(a^k) and entry_sum(a^k) computed without materializing a^k:
// the trace pairs the half powers a^floor(k/2) and a^ceil(k/2), the entry
// sum iterates matrix-vector products on the all-ones vector. Equal to the
// matpow forms by definition; kept separate because the direct forms are
// far cheaper at large dimension.
BigInt power_trace(const SparseCountMatrix& a, std::int64_t k);
BigInt power_entry_sum(const SparseCountMatrix& a, std::int64_t k);

// Natural log of a nonnegative count, -infinity for zero: the leading 53
// bits plus an exact power-of-two offset, so counts far beyond double range
// still get an accurate logarithm. Throws std::invalid_argument on negatives.
double big_log(const BigInt& x);

// Double-precision snapshot of a * scale, sparse rows in index order.
// Throws std::overflow_error if an entry does not fit a finite double.
struct FloatEntry {
    std::int64_t row;
    std::int64_t col;
    double value;
};
std::vector<FloatEntry> float_view(const SparseCountMatrix& a, double scale = 1.0);

// Plain-text debug dump: a "dim=<N>" header then one "i j v" line per
// stored entry in row-major order.
void dump(std::ostream& out, const SparseCountMatrix& a);

}  // namespace sft
