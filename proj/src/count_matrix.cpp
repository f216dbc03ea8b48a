#include "sft/count_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sft {

namespace {

void check_dim(std::int64_t dim) {
    if (dim < 1) {
        throw std::invalid_argument("matrix dimension must be positive, got " +
                                    std::to_string(dim));
    }
}

}  // namespace

SparseCountMatrix::SparseCountMatrix(std::int64_t dim) : dim_(dim) {
    check_dim(dim);
    rows_.resize(static_cast<std::size_t>(dim));
}

SparseCountMatrix SparseCountMatrix::identity(std::int64_t dim) {
    SparseCountMatrix m(dim);
    for (std::int64_t i = 1; i <= dim; ++i) m.set(i, i, 1);
    return m;
}

SparseCountMatrix SparseCountMatrix::all_ones(std::int64_t dim) {
    SparseCountMatrix m(dim);
    for (std::int64_t i = 1; i <= dim; ++i) {
        auto& row = m.rows_[static_cast<std::size_t>(i - 1)];
        row.reserve(static_cast<std::size_t>(dim));
        for (std::int64_t j = 1; j <= dim; ++j) row.emplace_back(j, 1);
    }
    return m;
}

void SparseCountMatrix::check_index(std::int64_t row, std::int64_t col) const {
    if (row < 1 || row > dim_ || col < 1 || col > dim_) {
        throw std::invalid_argument("matrix index (" + std::to_string(row) + ", " +
                                    std::to_string(col) + ") outside dim " +
                                    std::to_string(dim_));
    }
}

void SparseCountMatrix::set(std::int64_t row, std::int64_t col, BigInt value) {
    check_index(row, col);
    if (value < 0) throw std::invalid_argument("negative entry in count matrix");
    auto& entries = rows_[static_cast<std::size_t>(row - 1)];
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const auto& e, std::int64_t c) { return e.first < c; });
    if (it != entries.end() && it->first == col) {
        if (value == 0) {
            entries.erase(it);
        } else {
            it->second = std::move(value);
        }
    } else if (value != 0) {
        entries.emplace(it, col, std::move(value));
    }
}

void SparseCountMatrix::add(std::int64_t row, std::int64_t col, const BigInt& value) {
    check_index(row, col);
    if (value == 0) return;
    auto& entries = rows_[static_cast<std::size_t>(row - 1)];
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const auto& e, std::int64_t c) { return e.first < c; });
    if (it != entries.end() && it->first == col) {
        it->second += value;
        if (it->second < 0) throw std::invalid_argument("negative entry in count matrix");
        if (it->second == 0) entries.erase(it);
    } else {
        if (value < 0) throw std::invalid_argument("negative entry in count matrix");
        entries.emplace(it, col, value);
    }
}

BigInt SparseCountMatrix::at(std::int64_t row, std::int64_t col) const {
    check_index(row, col);
    const auto& entries = rows_[static_cast<std::size_t>(row - 1)];
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const auto& e, std::int64_t c) { return e.first < c; });
    if (it != entries.end() && it->first == col) return it->second;
    return 0;
}

bool SparseCountMatrix::nonzero(std::int64_t row, std::int64_t col) const {
    check_index(row, col);
    const auto& entries = rows_[static_cast<std::size_t>(row - 1)];
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const auto& e, std::int64_t c) { return e.first < c; });
    return it != entries.end() && it->first == col;
}

std::size_t SparseCountMatrix::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& row : rows_) n += row.size();
    return n;
}

bool SparseCountMatrix::is_zero_one() const {
    for (const auto& row : rows_) {
        for (const auto& [col, value] : row) {
            (void)col;
            if (value != 1) return false;
        }
    }
    return true;
}

const std::vector<std::pair<std::int64_t, BigInt>>& SparseCountMatrix::row_entries(
    std::int64_t row) const {
    check_index(row, 1);
    return rows_[static_cast<std::size_t>(row - 1)];
}

PermutationMatrix::PermutationMatrix(std::vector<std::int64_t> image)
    : image_(std::move(image)) {
    const std::int64_t n = static_cast<std::int64_t>(image_.size());
    check_dim(n);
    preimage_.assign(image_.size(), 0);
    for (std::int64_t i = 1; i <= n; ++i) {
        std::int64_t j = image_[static_cast<std::size_t>(i - 1)];
        if (j < 1 || j > n) throw std::invalid_argument("permutation image out of range");
        if (preimage_[static_cast<std::size_t>(j - 1)] != 0) {
            throw std::invalid_argument("permutation image not injective");
        }
        preimage_[static_cast<std::size_t>(j - 1)] = i;
    }
}

PermutationMatrix PermutationMatrix::identity(std::int64_t dim) {
    check_dim(dim);
    std::vector<std::int64_t> image(static_cast<std::size_t>(dim));
    for (std::int64_t i = 1; i <= dim; ++i) image[static_cast<std::size_t>(i - 1)] = i;
    return PermutationMatrix(std::move(image));
}

std::int64_t PermutationMatrix::image(std::int64_t i) const {
    if (i < 1 || i > dim()) throw std::invalid_argument("permutation index out of range");
    return image_[static_cast<std::size_t>(i - 1)];
}

std::int64_t PermutationMatrix::preimage(std::int64_t j) const {
    if (j < 1 || j > dim()) throw std::invalid_argument("permutation index out of range");
    return preimage_[static_cast<std::size_t>(j - 1)];
}

bool PermutationMatrix::is_identity() const {
    for (std::int64_t i = 1; i <= dim(); ++i) {
        if (image(i) != i) return false;
    }
    return true;
}

SparseCountMatrix PermutationMatrix::to_matrix() const {
    SparseCountMatrix m(dim());
    for (std::int64_t i = 1; i <= dim(); ++i) m.set(i, image(i), 1);
    return m;
}

PermutationMatrix perm_power(const PermutationMatrix& p, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("negative permutation power");
    std::vector<std::int64_t> image(static_cast<std::size_t>(p.dim()));
    for (std::int64_t i = 1; i <= p.dim(); ++i) {
        std::int64_t j = i;
        for (std::int64_t step = 0; step < k; ++step) j = p.image(j);
        image[static_cast<std::size_t>(i - 1)] = j;
    }
    return PermutationMatrix(std::move(image));
}

SparseCountMatrix matmul(const SparseCountMatrix& a, const SparseCountMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matmul dimension mismatch");
    SparseCountMatrix out(a.dim());
    // Gather per output row: accumulate b's rows scaled by a's entries.
    std::vector<BigInt> acc(static_cast<std::size_t>(a.dim()) + 1, BigInt(0));
    std::vector<std::int64_t> touched;
    for (std::int64_t i = 1; i <= a.dim(); ++i) {
        touched.clear();
        for (const auto& [k, av] : a.row_entries(i)) {
            for (const auto& [j, bv] : b.row_entries(k)) {
                BigInt& slot = acc[static_cast<std::size_t>(j)];
                if (slot == 0) touched.push_back(j);
                slot += av * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::int64_t j : touched) {
            out.set(i, j, std::move(acc[static_cast<std::size_t>(j)]));
            acc[static_cast<std::size_t>(j)] = 0;
        }
    }
    return out;
}

SparseCountMatrix matpow(const SparseCountMatrix& a, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("negative matrix power");
    SparseCountMatrix result = SparseCountMatrix::identity(a.dim());
    SparseCountMatrix base = a;
    while (k > 0) {
        if (k & 1) result = matmul(result, base);
        k >>= 1;
        if (k > 0) base = matmul(base, base);
    }
    return result;
}

SparseCountMatrix hadamard(const SparseCountMatrix& a, const SparseCountMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("hadamard dimension mismatch");
    SparseCountMatrix out(a.dim());
    for (std::int64_t i = 1; i <= a.dim(); ++i) {
        const auto& ra = a.row_entries(i);
        const auto& rb = b.row_entries(i);
        std::size_t x = 0, y = 0;
        while (x < ra.size() && y < rb.size()) {
            if (ra[x].first < rb[y].first) {
                ++x;
            } else if (ra[x].first > rb[y].first) {
                ++y;
            } else {
                out.set(i, ra[x].first, ra[x].second * rb[y].second);
                ++x;
                ++y;
            }
        }
    }
    return out;
}

SparseCountMatrix kronecker(const SparseCountMatrix& a, const SparseCountMatrix& b) {
    const std::int64_t n = a.dim(), m = b.dim();
    if (n > std::numeric_limits<std::int64_t>::max() / m) {
        throw CapExceeded("kronecker product dimension overflow");
    }
    SparseCountMatrix out(n * m);
    a.for_each([&](std::int64_t i, std::int64_t j, const BigInt& av) {
        b.for_each([&](std::int64_t p, std::int64_t q, const BigInt& bv) {
            out.set((i - 1) * m + p, (j - 1) * m + q, av * bv);
        });
    });
    return out;
}

SparseCountMatrix transpose(const SparseCountMatrix& a) {
    SparseCountMatrix out(a.dim());
    a.for_each([&](std::int64_t i, std::int64_t j, const BigInt& v) { out.set(j, i, v); });
    return out;
}

BigInt trace(const SparseCountMatrix& a) {
    BigInt t = 0;
    for (std::int64_t i = 1; i <= a.dim(); ++i) {
        const auto& row = a.row_entries(i);
        auto it = std::lower_bound(row.begin(), row.end(), i,
                                   [](const auto& e, std::int64_t c) { return e.first < c; });
        if (it != row.end() && it->first == i) t += it->second;
    }
    return t;
}

BigInt entry_sum(const SparseCountMatrix& a) {
    BigInt t = 0;
    a.for_each([&](std::int64_t, std::int64_t, const BigInt& v) { t += v; });
    return t;
}

BigInt trace_mul(const SparseCountMatrix& a, const PermutationMatrix& p) {
    if (a.dim() != p.dim()) throw std::invalid_argument("trace_mul dimension mismatch");
    // (A P)[i][i] = A[i][pi^{-1}(i)].
    BigInt t = 0;
    for (std::int64_t i = 1; i <= a.dim(); ++i) t += a.at(i, p.preimage(i));
    return t;
}

namespace {

// Word-size mirror of SparseCountMatrix for the trace fast path. Valid only
// while products provably fit in uint64 (callers check bounds first).
struct CompactMatrix {
    std::int64_t dim = 0;
    std::vector<std::vector<std::pair<std::int64_t, std::uint64_t>>> rows;
};

CompactMatrix to_compact(const SparseCountMatrix& a) {
    CompactMatrix c;
    c.dim = a.dim();
    c.rows.resize(static_cast<std::size_t>(a.dim()));
    for (std::int64_t i = 1; i <= a.dim(); ++i) {
        const auto& row = a.row_entries(i);
        auto& dst = c.rows[static_cast<std::size_t>(i - 1)];
        dst.reserve(row.size());
        for (const auto& [j, v] : row) dst.emplace_back(j, v.convert_to<std::uint64_t>());
    }
    return c;
}

CompactMatrix matmul_compact(const CompactMatrix& a, const CompactMatrix& b) {
    CompactMatrix out;
    out.dim = a.dim;
    out.rows.resize(static_cast<std::size_t>(a.dim));
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(a.dim) + 1, 0);
    std::vector<std::int64_t> touched;
    for (std::int64_t i = 0; i < a.dim; ++i) {
        touched.clear();
        for (const auto& [k, av] : a.rows[static_cast<std::size_t>(i)]) {
            for (const auto& [j, bv] : b.rows[static_cast<std::size_t>(k - 1)]) {
                std::uint64_t& slot = acc[static_cast<std::size_t>(j)];
                if (slot == 0) touched.push_back(j);
                slot += av * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& dst = out.rows[static_cast<std::size_t>(i)];
        dst.reserve(touched.size());
        for (std::int64_t j : touched) {
            dst.emplace_back(j, acc[static_cast<std::size_t>(j)]);
            acc[static_cast<std::size_t>(j)] = 0;
        }
    }
    return out;
}

CompactMatrix matpow_compact(const CompactMatrix& a, std::int64_t k) {
    assert(k >= 1);
    CompactMatrix result = a;
    std::int64_t done = 1;
    while (done < k) {
        // Left-to-right repeated squaring keeps at most two live matrices.
        if (2 * done <= k) {
            result = matmul_compact(result, result);
            done *= 2;
        } else {
            result = matmul_compact(result, a);
            ++done;
        }
    }
    return result;
}

std::uint64_t compact_entry(const CompactMatrix& m, std::int64_t row, std::int64_t col) {
    const auto& entries = m.rows[static_cast<std::size_t>(row - 1)];
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const auto& e, std::int64_t c) { return e.first < c; });
    if (it != entries.end() && it->first == col) return it->second;
    return 0;
}

// True when dim^exponent < 2^bits, i.e. entry/trace bounds fit the type.
bool power_fits(std::int64_t dim, std::int64_t exponent, int bits) {
    long double budget = std::numeric_limits<long double>::max();
    long double value = 1.0L;
    for (std::int64_t e = 0; e < exponent; ++e) {
        value *= static_cast<long double>(dim);
        if (value >= budget / 4) return false;
    }
    return value < std::ldexp(1.0L, bits);
}

BigInt power_trace_compact(const SparseCountMatrix& a, std::int64_t k) {
    // Entries of A^s are at most dim^(s-1) for a 0/1 matrix; the trace of
    // A^k is at most dim^k. Callers guarantee both fit (uint64 / unsigned
    // __int128 respectively).
    const std::int64_t s = k / 2;
    CompactMatrix base = to_compact(a);
    CompactMatrix left = matpow_compact(base, s);
    const CompactMatrix* right = &left;
    CompactMatrix right_storage;
    if (k % 2 == 1) {
        right_storage = matmul_compact(left, base);
        right = &right_storage;
    }
    unsigned __int128 total = 0;
    for (std::int64_t i = 1; i <= a.dim(); ++i) {
        for (const auto& [j, v] : left.rows[static_cast<std::size_t>(i - 1)]) {
            std::uint64_t w = compact_entry(*right, j, i);
            if (w != 0) total += static_cast<unsigned __int128>(v) * w;
        }
    }
    // unsigned __int128 -> BigInt via two 64-bit halves.
    BigInt result = static_cast<std::uint64_t>(total >> 64);
    result <<= 64;
    result += static_cast<std::uint64_t>(total);
    return result;
}

}  // namespace

BigInt power_trace(const SparseCountMatrix& a, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("negative matrix power");
    if (k == 0) return a.dim();
    if (k == 1) return trace(a);
    if (a.is_zero_one() && power_fits(a.dim(), (k + 1) / 2 + 1, 63) &&
        power_fits(a.dim(), k, 126)) {
        return power_trace_compact(a, k);
    }
    const std::int64_t s = k / 2;
    SparseCountMatrix left = matpow(a, s);
    SparseCountMatrix right = (k % 2 == 0) ? left : matmul(left, a);
    BigInt total = 0;
    for (std::int64_t i = 1; i <= a.dim(); ++i) {
        for (const auto& [j, v] : left.row_entries(i)) {
            BigInt w = right.at(j, i);
            if (w != 0) total += v * w;
        }
    }
    return total;
}

BigInt power_entry_sum(const SparseCountMatrix& a, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("negative matrix power");
    std::vector<BigInt> v(static_cast<std::size_t>(a.dim()), BigInt(1));
    for (std::int64_t step = 0; step < k; ++step) {
        std::vector<BigInt> next(static_cast<std::size_t>(a.dim()), BigInt(0));
        for (std::int64_t i = 1; i <= a.dim(); ++i) {
            BigInt& slot = next[static_cast<std::size_t>(i - 1)];
            for (const auto& [j, w] : a.row_entries(i)) {
                slot += w * v[static_cast<std::size_t>(j - 1)];
            }
        }
        v = std::move(next);
    }
    BigInt total = 0;
    for (const BigInt& x : v) total += x;
    return total;
}

double big_log(const BigInt& x) {
    if (x < 0) throw std::invalid_argument("big_log needs a nonnegative value");
    if (x == 0) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = boost::multiprecision::msb(x);
    if (bits <= 52) return std::log(x.convert_to<double>());
    const BigInt top = x >> (bits - 52);
    return std::log(top.convert_to<double>()) +
           static_cast<double>(bits - 52) * std::log(2.0);
}

std::vector<FloatEntry> float_view(const SparseCountMatrix& a, double scale) {
    std::vector<FloatEntry> out;
    out.reserve(a.nonzero_count());
    a.for_each([&](std::int64_t i, std::int64_t j, const BigInt& v) {
        double value = v.convert_to<double>() * scale;
        if (!std::isfinite(value)) {
            throw std::overflow_error("matrix entry not representable as double");
        }
        out.push_back({i, j, value});
    });
    return out;
}

void dump(std::ostream& out, const SparseCountMatrix& a) {
    out << "dim=" << a.dim() << '\n';
    a.for_each([&](std::int64_t i, std::int64_t j, const BigInt& v) {
        out << i << ' ' << j << ' ' << v << '\n';
    });
}

}  // namespace sft
