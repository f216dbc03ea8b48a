#pragma once

#include "sft/basic_set.hpp"
#include "sft/count_matrix.hpp"
#include "sft/transfer.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

// Builds a basic set from a 4x4 0/1 horizontal transition matrix over r = 2;
// rows and columns are the chi indices of the two columns of the window.
inline sft::BasicSet from_h2(const int (&rows)[4][4]) {
    sft::SparseCountMatrix m(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (rows[i][j]) m.set(i + 1, j + 1, 1);
        }
    }
    return sft::basic_set_from_H2(m, 2);
}

inline sft::BasicSet from_v2(const int (&rows)[4][4]) {
    sft::SparseCountMatrix m(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (rows[i][j]) m.set(i + 1, j + 1, 1);
        }
    }
    return sft::basic_set_from_V2(m, 2);
}

// Golden-mean-like set: no two 1s horizontally or vertically adjacent.
inline sft::BasicSet gm() {
    static const int h[4][4] = {{1, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 0}, {0, 0, 0, 0}};
    return from_h2(h);
}

// Hard-hexagon-like variant of gm with one more window removed.
inline sft::BasicSet hh() {
    static const int h[4][4] = {{1, 1, 1, 0}, {1, 0, 1, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}};
    return from_h2(h);
}

// Strict variant keeping only windows whose right column is 00.
inline sft::BasicSet sgm() {
    static const int h[4][4] = {{1, 1, 1, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}};
    return from_h2(h);
}

// Reducible vertical example: |V_m^k| = (k+2)^(m-1) * 2^(k+1).
inline sft::BasicSet reducible() {
    static const int v[4][4] = {{1, 0, 0, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 0, 0, 1}};
    return from_v2(v);
}

// Three-symbol set whose windows pair a constant-0 column with a column over
// {1, 2}, in either order; periodic counts alternate by shear parity.
inline sft::BasicSet b30() {
    std::vector<sft::Pattern2x2> pats;
    for (int a = 1; a <= 2; ++a) {
        for (int b = 1; b <= 2; ++b) {
            pats.push_back(sft::Pattern2x2::from_rows(0, a, 0, b));
            pats.push_back(sft::Pattern2x2::from_rows(a, 0, b, 0));
        }
    }
    return sft::BasicSet::from_patterns(3, pats);
}

// Deterministic random set: one raw 64-bit draw per window, kept when the
// draw falls under density * 2^64. mt19937_64 output is fixed by the
// standard, so these fixtures are identical on every platform.
inline sft::BasicSet random_set(std::uint64_t seed, int r, double density) {
    std::mt19937_64 rng(seed);
    const double scale = 18446744073709551616.0;  // 2^64
    sft::BasicSet bs = sft::BasicSet::empty(r);
    for (int bl = 0; bl < r; ++bl) {
        for (int br = 0; br < r; ++br) {
            for (int tl = 0; tl < r; ++tl) {
                for (int tr = 0; tr < r; ++tr) {
                    const double u = static_cast<double>(rng()) / scale;
                    if (u < density) {
                        bs.insert(sft::Pattern2x2::from_rows(tl, tr, bl, br));
                    }
                }
            }
        }
    }
    return bs;
}

struct Named {
    std::string name;
    sft::BasicSet set;
};

// The complete fixture list used by the acceptance run: the four literature
// sets, full/empty over r = 2, the three-symbol example, and 20 seeded
// random sets (r = 3 capped at density 1/2 to keep transfer matrices sparse).
inline std::vector<Named> all_fixtures() {
    std::vector<Named> out;
    out.push_back({"gm", gm()});
    out.push_back({"sgm", sgm()});
    out.push_back({"hh", hh()});
    out.push_back({"reducible", reducible()});
    out.push_back({"full2", sft::BasicSet::full(2)});
    out.push_back({"empty2", sft::BasicSet::empty(2)});
    out.push_back({"b30", b30()});
    for (int i = 0; i < 10; ++i) {
        out.push_back({"rnd2_" + std::to_string(i),
                       random_set(0xC0FFEE00ULL + static_cast<std::uint64_t>(i), 2,
                                  0.30 + 0.06 * i)});
    }
    for (int i = 0; i < 10; ++i) {
        out.push_back({"rnd3_" + std::to_string(i),
                       random_set(0xC0FFEE10ULL + static_cast<std::uint64_t>(i), 3,
                                  0.15 + 0.035 * i)});
    }
    return out;
}

}  // namespace fixtures
