#include "sft/transfer.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace sft {

namespace {

std::int64_t read_dim_cap() {
    if (const char* env = std::getenv("SFT_DIM_CAP")) {
        char* end = nullptr;
        long long value = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || value < 2) {
            throw std::invalid_argument("SFT_DIM_CAP must be an integer >= 2");
        }
        return value;
    }
    return std::int64_t(1) << 16;
}

// Sorted bulk load; the DFS builders do not emit entries in row-major order.
SparseCountMatrix from_unit_entries(std::int64_t dim,
                                    std::vector<std::pair<std::int64_t, std::int64_t>> entries) {
    std::sort(entries.begin(), entries.end());
    SparseCountMatrix out(dim);
    for (const auto& [i, j] : entries) out.set(i, j, 1);
    return out;
}

// Enumerates all admissible pairs of parallel words of the given length,
// one position at a time: a pair extends by (a, b) only if the 2x2 window
// formed with the previous position is admissible. `vertical` words are
// columns read top to bottom (window: previous pair on top), horizontal
// words are rows read left to right (window: previous pair on the left
// with the first word at the bottom).
enum class PairMode { Columns, Rows };

struct PairEnumerator {
    const BasicSet& bs;
    int length;
    PairMode mode;
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;

    bool window_ok(Symbol prev_u, Symbol prev_v, Symbol u, Symbol v) const {
        if (mode == PairMode::Columns) {
            // prev above current in both columns; first word is the left column.
            return bs.admissible(u, v, prev_u, prev_v);
        }
        // prev to the left of current; first word is the bottom row.
        return bs.admissible(prev_u, u, prev_v, v);
    }

    void extend(std::int64_t iu, std::int64_t iv, int depth, Symbol last_u, Symbol last_v) {
        if (depth == length) {
            entries.emplace_back(iu + 1, iv + 1);
            return;
        }
        const int r = bs.r();
        for (Symbol a = 0; a < r; ++a) {
            for (Symbol b = 0; b < r; ++b) {
                if (depth == 0 || window_ok(last_u, last_v, a, b)) {
                    extend(iu * r + a, iv * r + b, depth + 1, a, b);
                }
            }
        }
    }

    std::vector<std::pair<std::int64_t, std::int64_t>> run() {
        extend(0, 0, 0, 0, 0);
        return std::move(entries);
    }
};

}  // namespace

std::int64_t dim_cap() {
    static const std::int64_t cap = read_dim_cap();
    return cap;
}

std::int64_t checked_dim(int r, int n) {
    if (n < 1) throw std::invalid_argument("word length must be >= 1");
    const std::int64_t cap = dim_cap();
    std::int64_t dim = 1;
    for (int i = 0; i < n; ++i) {
        if (dim > cap / r) {
            throw CapExceeded("matrix dimension " + std::to_string(r) + "^" +
                              std::to_string(n) + " exceeds cap " + std::to_string(cap));
        }
        dim *= r;
    }
    if (dim > cap) {
        throw CapExceeded("matrix dimension " + std::to_string(dim) + " exceeds cap " +
                          std::to_string(cap));
    }
    return dim;
}

SparseCountMatrix build_H2(const BasicSet& bs) {
    const int r = bs.r();
    const std::int64_t dim = checked_dim(r, 2);
    SparseCountMatrix out(dim);
    // i = chi(left column) with digits (top, bottom); j likewise for the
    // right column.
    for (Symbol utop = 0; utop < r; ++utop)
        for (Symbol ubot = 0; ubot < r; ++ubot)
            for (Symbol vtop = 0; vtop < r; ++vtop)
                for (Symbol vbot = 0; vbot < r; ++vbot)
                    if (bs.admissible(ubot, vbot, utop, vtop))
                        out.set(utop * r + ubot + 1, vtop * r + vbot + 1, 1);
    return out;
}

SparseCountMatrix build_V2(const BasicSet& bs) {
    const int r = bs.r();
    const std::int64_t dim = checked_dim(r, 2);
    SparseCountMatrix out(dim);
    // i = chi(bottom row) with digits (left, right); j = chi(top row).
    for (Symbol bl = 0; bl < r; ++bl)
        for (Symbol br = 0; br < r; ++br)
            for (Symbol tl = 0; tl < r; ++tl)
                for (Symbol tr = 0; tr < r; ++tr)
                    if (bs.admissible(bl, br, tl, tr))
                        out.set(bl * r + br + 1, tl * r + tr + 1, 1);
    return out;
}

SparseCountMatrix build_Hn(const BasicSet& bs, int n) {
    if (n < 2) throw std::invalid_argument("build_Hn needs n >= 2");
    const std::int64_t dim = checked_dim(bs.r(), n);
    PairEnumerator e{bs, n, PairMode::Columns, {}};
    return from_unit_entries(dim, e.run());
}

SparseCountMatrix build_Vm(const BasicSet& bs, int m) {
    if (m < 2) throw std::invalid_argument("build_Vm needs m >= 2");
    const std::int64_t dim = checked_dim(bs.r(), m);
    PairEnumerator e{bs, m, PairMode::Rows, {}};
    return from_unit_entries(dim, e.run());
}

namespace {

SparseCountMatrix build_pair_direct(const BasicSet& bs, int n, PairMode mode) {
    const int r = bs.r();
    const std::int64_t dim = checked_dim(r, n);
    SparseCountMatrix out(dim);
    for (std::int64_t i = 1; i <= dim; ++i) {
        const Word u = unchi(i, n, r);
        for (std::int64_t j = 1; j <= dim; ++j) {
            const Word v = unchi(j, n, r);
            bool ok = true;
            for (int t = 0; ok && t + 1 < n; ++t) {
                const Symbol ua = u.symbols[static_cast<std::size_t>(t)];
                const Symbol ub = u.symbols[static_cast<std::size_t>(t + 1)];
                const Symbol va = v.symbols[static_cast<std::size_t>(t)];
                const Symbol vb = v.symbols[static_cast<std::size_t>(t + 1)];
                ok = (mode == PairMode::Columns) ? bs.admissible(ub, vb, ua, va)
                                                 : bs.admissible(ua, ub, va, vb);
            }
            if (ok) out.set(i, j, 1);
        }
    }
    return out;
}

}  // namespace

SparseCountMatrix build_Hn_direct(const BasicSet& bs, int n) {
    if (n < 2) throw std::invalid_argument("build_Hn_direct needs n >= 2");
    return build_pair_direct(bs, n, PairMode::Columns);
}

SparseCountMatrix build_Vm_direct(const BasicSet& bs, int m) {
    if (m < 2) throw std::invalid_argument("build_Vm_direct needs m >= 2");
    return build_pair_direct(bs, m, PairMode::Rows);
}

SparseCountMatrix build_Tm(const BasicSet& bs, int m) {
    if (m < 1) throw std::invalid_argument("build_Tm needs m >= 1");
    const int r = bs.r();
    const std::int64_t dim = checked_dim(r, m);
    if (m == 1) {
        // Single wrapped column: both columns of the test window coincide.
        SparseCountMatrix out(dim);
        for (Symbol u = 0; u < r; ++u)
            for (Symbol v = 0; v < r; ++v)
                if (bs.admissible(u, u, v, v)) out.set(u + 1, v + 1, 1);
        return out;
    }
    // Enumerate open-strip row pairs left to right, then apply the wrap
    // window joining column m back to column 1.
    struct CylinderDfs {
        const BasicSet& bs;
        int m;
        std::vector<std::pair<std::int64_t, std::int64_t>> entries;
        Symbol first_u = 0, first_v = 0;

        void extend(std::int64_t iu, std::int64_t iv, int depth, Symbol last_u,
                    Symbol last_v) {
            const int r = bs.r();
            if (depth == m) {
                if (bs.admissible(last_u, first_u, last_v, first_v)) {
                    entries.emplace_back(iu + 1, iv + 1);
                }
                return;
            }
            for (Symbol a = 0; a < r; ++a) {
                for (Symbol b = 0; b < r; ++b) {
                    if (depth == 0) {
                        first_u = a;
                        first_v = b;
                        extend(a, b, 1, a, b);
                    } else if (bs.admissible(last_u, a, last_v, b)) {
                        extend(iu * r + a, iv * r + b, depth + 1, a, b);
                    }
                }
            }
        }
    };
    CylinderDfs dfs{bs, m, {}, 0, 0};
    dfs.extend(0, 0, 0, 0, 0);
    return from_unit_entries(dim, std::move(dfs.entries));
}

SparseCountMatrix build_hatTm(const BasicSet& bs, int m) {
    return build_Tm(reflect(bs), m);
}

SparseCountMatrix build_wrap_factor(const BasicSet& bs, int m) {
    if (m < 2) throw std::invalid_argument("build_wrap_factor needs m >= 2");
    const int r = bs.r();
    const std::int64_t dim = checked_dim(r, m);
    std::int64_t inner = 1;  // r^(m-2) interior digit combinations per word
    for (int i = 0; i < m - 2; ++i) inner *= r;
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;
    for (Symbol u1 = 0; u1 < r; ++u1)
        for (Symbol um = 0; um < r; ++um)
            for (Symbol v1 = 0; v1 < r; ++v1)
                for (Symbol vm = 0; vm < r; ++vm) {
                    if (!bs.admissible(um, u1, vm, v1)) continue;
                    for (std::int64_t mu = 0; mu < inner; ++mu)
                        for (std::int64_t mv = 0; mv < inner; ++mv) {
                            const std::int64_t i = (u1 * inner + mu) * r + um + 1;
                            const std::int64_t j = (v1 * inner + mv) * r + vm + 1;
                            entries.emplace_back(i, j);
                        }
                }
    return from_unit_entries(dim, std::move(entries));
}

SparseCountMatrix build_Tm_recursive(const BasicSet& bs, int m) {
    if (m < 2) throw std::invalid_argument("build_Tm_recursive needs m >= 2");
    return hadamard(build_Vm(bs, m), build_wrap_factor(bs, m));
}

PermutationMatrix build_Rm(int m, int r) {
    const std::int64_t dim = checked_dim(r, m);
    std::vector<std::int64_t> image(static_cast<std::size_t>(dim));
    for (std::int64_t i = 1; i <= dim; ++i) {
        image[static_cast<std::size_t>(i - 1)] = sigma(i, m, r);
    }
    return PermutationMatrix(std::move(image));
}

SkewTransfer build_T_gamma_q_1(const BasicSet& bs, int q) {
    if (q < 1) throw std::invalid_argument("build_T_gamma_q_1 needs q >= 1");
    const int r = bs.r();
    const std::int64_t dim = checked_dim(r, q + 1);
    std::int64_t block = 1;  // r^(q-1), the height of each (s1, s2) block row
    for (int i = 0; i < q - 1; ++i) block *= r;
    SparseCountMatrix out(dim);
    for (Symbol s1 = 0; s1 < r; ++s1) {
        for (Symbol s2 = 0; s2 < r; ++s2) {
            for (std::int64_t p = 0; p < block; ++p) {
                // The state word is (s1, s2, interior digits of p, s_last).
                const Symbol s_last = (q == 1) ? s2 : static_cast<Symbol>(p % r);
                const std::int64_t row = (std::int64_t(s1) * r + s2) * block + p + 1;
                for (Symbol g = 0; g < r; ++g) {
                    if (bs.admissible(s_last, s1, g, s2)) {
                        const std::int64_t col = (std::int64_t(s2) * block + p) * r + g + 1;
                        out.set(row, col, 1);
                    }
                }
            }
        }
    }
    return SkewTransfer{q, std::move(out)};
}

namespace {

BasicSet basic_set_from_pair_matrix(const SparseCountMatrix& m, int r, PairMode mode) {
    if (m.dim() != static_cast<std::int64_t>(r) * r) {
        throw std::invalid_argument("pair matrix must have dim r^2");
    }
    if (!m.is_zero_one()) {
        throw std::invalid_argument("pair matrix must be 0/1");
    }
    BasicSet bs(r);
    m.for_each([&](std::int64_t i, std::int64_t j, const BigInt&) {
        const Word u = unchi(i, 2, r);
        const Word v = unchi(j, 2, r);
        if (mode == PairMode::Columns) {
            bs.insert(Pattern2x2::from_rows(u.symbols[0], v.symbols[0], u.symbols[1],
                                            v.symbols[1]));
        } else {
            bs.insert(Pattern2x2::from_rows(v.symbols[0], v.symbols[1], u.symbols[0],
                                            u.symbols[1]));
        }
    });
    return bs;
}

}  // namespace

BasicSet basic_set_from_H2(const SparseCountMatrix& h2, int r) {
    return basic_set_from_pair_matrix(h2, r, PairMode::Columns);
}

BasicSet basic_set_from_V2(const SparseCountMatrix& v2, int r) {
    return basic_set_from_pair_matrix(v2, r, PairMode::Rows);
}

TransferFamily::TransferFamily(BasicSet bs) : bs_(std::move(bs)) {}

const SparseCountMatrix& TransferFamily::get(TransferKind kind, int size) {
    const auto key = std::make_pair(kind, size);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    SparseCountMatrix built = [&] {
        switch (kind) {
            case TransferKind::HorizontalH:
                return build_Hn(bs_, size);
            case TransferKind::VerticalV:
                return build_Vm(bs_, size);
            case TransferKind::CylinderT:
                return build_Tm(bs_, size);
            case TransferKind::CylinderHatT:
                return build_hatTm(bs_, size);
        }
        throw std::invalid_argument("unknown transfer kind");
    }();
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(key, std::move(built));
    (void)inserted;  // concurrent duplicate builds are acceptable
    return it->second;
}

}  // namespace sft
