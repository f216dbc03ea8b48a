#pragma once

#include "sft/basic_set.hpp"
#include "sft/count_matrix.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>

namespace sft {

// Matrix dimension cap: builders refuse matrices with more than this many
// rows. Reads the SFT_DIM_CAP environment variable once; defaults to 2^16.
std::int64_t dim_cap();
// r^n as int64 with a cap check; throws CapExceeded past the cap.
std::int64_t checked_dim(int r, int n);

// Horizontal transition between adjacent column words of height 2:
// H2[i1][i2] = 1 iff the 2x2 pattern with left column unchi(i1) and right
// column unchi(i2) is admissible. Columns read top to bottom.
SparseCountMatrix build_H2(const BasicSet& bs);

// Vertical transition between stacked row words of width 2:
// V2[j1][j2] = 1 iff the pattern with bottom row unchi(j1) and top row
// unchi(j2) is admissible. The first index is always the bottom row.
SparseCountMatrix build_V2(const BasicSet& bs);

// Transition between adjacent column words of height n (n >= 2):
// Hn[i][j] = 1 iff every one of the n-1 vertically adjacent 2x2 windows of
// the two-column strip (unchi(i) left, unchi(j) right) is admissible.
// Built by extending admissible pairs one row at a time; equal to the
// one-row-at-a-time expansion identity tested against build_Hn_direct.
SparseCountMatrix build_Hn(const BasicSet& bs, int n);
SparseCountMatrix build_Vm(const BasicSet& bs, int m);

// Same matrices built by checking all windows of each candidate pair
// explicitly. Kept as an independent code path for cross-checking.
SparseCountMatrix build_Hn_direct(const BasicSet& bs, int n);
SparseCountMatrix build_Vm_direct(const BasicSet& bs, int m);

// Cylinder transition: Tm[i][j] = 1 iff the height-2 cylinder with bottom
// row unchi(i) and top row unchi(j), columns indexed mod m, has all m
// wrapped 2x2 windows admissible. m = 1 wraps a single column: both columns
// of the test pattern equal (top v over bottom u).
SparseCountMatrix build_Tm(const BasicSet& bs, int m);
// Vertical-cylinder dual, equal to build_Tm(reflect(bs), m).
SparseCountMatrix build_hatTm(const BasicSet& bs, int m);

// Second route for m >= 2: the open-strip matrix Vm masked by the wrap
// factor joining column m back to column 1.
SparseCountMatrix build_Tm_recursive(const BasicSet& bs, int m);
// The wrap factor itself: W[i][j] = 1 iff the single wrapped window
// (bottom (u_m, u_1), top (v_m, v_1)) is admissible. Depends only on the
// first and last digits of i and j.
SparseCountMatrix build_wrap_factor(const BasicSet& bs, int m);

// Rotation matrix: Rm[i][j] = 1 iff j = sigma(i); cyclic shift of the
// digits of the indexed word, so Rm^m = I.
PermutationMatrix build_Rm(int m, int r);

// Transfer matrix along the sheared direction (1, q), acting on the r^{q+1}
// words read along a unit staircase: row chi(s_1..s_{q+1}) has a 1 at column
// chi(s_2..s_{q+1} g) iff the 2x2 window with bottom-left s_{q+1},
// bottom-right s_1, top-left g, top-right s_2 is admissible. Assembled in
// block form: block row (s_1, s_2) carries I_{r^{q-2}} (x) A_{s_1 s_2} in
// block column s_2.
struct SkewTransfer {
    int q;
    SparseCountMatrix matrix;
};
SkewTransfer build_T_gamma_q_1(const BasicSet& bs, int q);

// Reconstructs the basic set from a 0/1 horizontal (resp. vertical)
// transition matrix of dim r^2; inverse of build_H2 / build_V2.
BasicSet basic_set_from_H2(const SparseCountMatrix& h2, int r);
BasicSet basic_set_from_V2(const SparseCountMatrix& v2, int r);

enum class TransferKind { HorizontalH, VerticalV, CylinderT, CylinderHatT };

// Cache of built matrices keyed by (kind, size). Thread-safe; builds are
// idempotent so duplicated work under contention is harmless.
class TransferFamily {
public:
    explicit TransferFamily(BasicSet bs);

    const BasicSet& basic_set() const { return bs_; }
    const SparseCountMatrix& get(TransferKind kind, int size);

private:
    BasicSet bs_;
    std::mutex mutex_;
    std::map<std::pair<TransferKind, int>, SparseCountMatrix> cache_;
};

}  // namespace sft
