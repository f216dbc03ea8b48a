#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sft {

using Symbol = int;

// A 2x2 block of symbols. Coordinates follow the plane convention used
// throughout: x grows rightward, y grows upward, so at(0,1) is the top-left
// cell and at(1,0) the bottom-right cell.
struct Pattern2x2 {
    std::array<Symbol, 4> cells{};  // index = x + 2*y

    Symbol& at(int x, int y) { return cells[static_cast<std::size_t>(x + 2 * y)]; }
    Symbol at(int x, int y) const { return cells[static_cast<std::size_t>(x + 2 * y)]; }

    static Pattern2x2 from_rows(Symbol tl, Symbol tr, Symbol bl, Symbol br) {
        Pattern2x2 p;
        p.at(0, 1) = tl;
        p.at(1, 1) = tr;
        p.at(0, 0) = bl;
        p.at(1, 0) = br;
        return p;
    }

    // Swaps the two off-diagonal cells, i.e. exchanges the roles of the two
    // axes. Involutive.
    Pattern2x2 transposed() const {
        return from_rows(at(1, 0), at(1, 1), at(0, 0), at(0, 1));
    }

    friend auto operator<=>(const Pattern2x2&, const Pattern2x2&) = default;
};

enum class Orientation { Column, Row };

// A finite word of symbols. Column words list symbols top to bottom, row
// words left to right; every index formula in the project relies on that
// reading order.
struct Word {
    std::vector<Symbol> symbols;
    Orientation orientation = Orientation::Column;

    std::size_t size() const { return symbols.size(); }
    friend bool operator==(const Word&, const Word&) = default;
};

// The set of admissible 2x2 blocks over the alphabet {0, ..., r-1}.
class BasicSet {
public:
    explicit BasicSet(int r);

    static BasicSet full(int r);
    static BasicSet empty(int r);
    static BasicSet from_patterns(int r, const std::vector<Pattern2x2>& patterns);

    int r() const { return r_; }

    void insert(const Pattern2x2& p);
    void erase(const Pattern2x2& p);
    bool contains(const Pattern2x2& p) const;
    // Membership by cell values, avoiding a temporary Pattern2x2 in hot loops.
    bool admissible(Symbol bl, Symbol br, Symbol tl, Symbol tr) const {
        return member_[pack(bl, br, tl, tr)];
    }

    std::size_t size() const;
    std::vector<Pattern2x2> patterns() const;  // sorted, duplicate-free

    friend bool operator==(const BasicSet&, const BasicSet&) = default;

private:
    std::size_t pack(Symbol bl, Symbol br, Symbol tl, Symbol tr) const {
        return static_cast<std::size_t>(((bl * r_ + br) * r_ + tl) * r_ + tr);
    }
    void check_symbol(Symbol s) const;

    int r_;
    std::vector<bool> member_;  // indexed by pack()
};

// Word index: 1 + sum_j u_j r^(n-j) for u = u_1...u_n, so indices run
// 1..r^n and the first symbol is the most significant digit.
std::int64_t chi(const Word& word, int r);

// Inverse of chi for words of length n: index in 1..r^n back to the word.
Word unchi(std::int64_t index, int n, int r,
           Orientation orientation = Orientation::Column);

// Index action of the cyclic left shift: sigma(i) is the index of
// (u_2, ..., u_n, u_1) when i is the index of (u_1, ..., u_n).
std::int64_t sigma(std::int64_t index, int n, int r);

// Reflects every pattern across the main diagonal (axis swap). Involutive.
BasicSet reflect(const BasicSet& bs);

// Text form:
//   r=<int>
//   tl tr / bl br        (one pattern per line; '#' starts a comment)
// JSON form: {"r": <int>, "patterns": [[tl, tr, bl, br], ...]}.
BasicSet read_basic_set_text(std::istream& in);
BasicSet read_basic_set_json(std::istream& in);
void write_basic_set_text(std::ostream& out, const BasicSet& bs);

// Loads either format from a file; JSON is detected by a leading '{'.
BasicSet load_basic_set(const std::string& path);

}  // namespace sft
