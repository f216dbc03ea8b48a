#include "sft/basic_set.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sft {

namespace {

void check_alphabet(int r) {
    if (r < 2) {
        throw std::invalid_argument("alphabet size must be at least 2, got " +
                                    std::to_string(r));
    }
    if (r > 64) {
        throw std::invalid_argument("alphabet size too large: " + std::to_string(r));
    }
}

}  // namespace

BasicSet::BasicSet(int r) : r_(r) {
    check_alphabet(r);
    member_.assign(static_cast<std::size_t>(r) * r * r * r, false);
}

BasicSet BasicSet::full(int r) {
    BasicSet bs(r);
    bs.member_.assign(bs.member_.size(), true);
    return bs;
}

BasicSet BasicSet::empty(int r) { return BasicSet(r); }

BasicSet BasicSet::from_patterns(int r, const std::vector<Pattern2x2>& patterns) {
    BasicSet bs(r);
    for (const Pattern2x2& p : patterns) bs.insert(p);
    return bs;
}

void BasicSet::check_symbol(Symbol s) const {
    if (s < 0 || s >= r_) {
        throw std::invalid_argument("symbol " + std::to_string(s) +
                                    " outside alphabet of size " + std::to_string(r_));
    }
}

void BasicSet::insert(const Pattern2x2& p) {
    for (Symbol s : p.cells) check_symbol(s);
    member_[pack(p.at(0, 0), p.at(1, 0), p.at(0, 1), p.at(1, 1))] = true;
}

void BasicSet::erase(const Pattern2x2& p) {
    for (Symbol s : p.cells) check_symbol(s);
    member_[pack(p.at(0, 0), p.at(1, 0), p.at(0, 1), p.at(1, 1))] = false;
}

bool BasicSet::contains(const Pattern2x2& p) const {
    for (Symbol s : p.cells) check_symbol(s);
    return admissible(p.at(0, 0), p.at(1, 0), p.at(0, 1), p.at(1, 1));
}

std::size_t BasicSet::size() const {
    return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true));
}

std::vector<Pattern2x2> BasicSet::patterns() const {
    std::vector<Pattern2x2> out;
    for (Symbol bl = 0; bl < r_; ++bl)
        for (Symbol br = 0; br < r_; ++br)
            for (Symbol tl = 0; tl < r_; ++tl)
                for (Symbol tr = 0; tr < r_; ++tr)
                    if (admissible(bl, br, tl, tr))
                        out.push_back(Pattern2x2::from_rows(tl, tr, bl, br));
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t chi(const Word& word, int r) {
    check_alphabet(r);
    if (word.symbols.empty()) {
        throw std::invalid_argument("chi of an empty word");
    }
    std::int64_t index = 0;
    for (Symbol s : word.symbols) {
        if (s < 0 || s >= r) {
            throw std::invalid_argument("symbol outside alphabet in chi");
        }
        if (index > (std::int64_t(1) << 56) / r) {
            throw std::invalid_argument("word too long for chi index");
        }
        index = index * r + s;
    }
    return index + 1;
}

Word unchi(std::int64_t index, int n, int r, Orientation orientation) {
    check_alphabet(r);
    if (n < 1) throw std::invalid_argument("unchi needs word length >= 1");
    std::int64_t count = 1;
    for (int j = 0; j < n; ++j) {
        if (count > (std::int64_t(1) << 56) / r) {
            throw std::invalid_argument("word length too large for unchi");
        }
        count *= r;
    }
    if (index < 1 || index > count) {
        throw std::invalid_argument("index " + std::to_string(index) +
                                    " outside [1, r^n] in unchi");
    }
    Word w;
    w.orientation = orientation;
    w.symbols.assign(static_cast<std::size_t>(n), 0);
    std::int64_t rest = index - 1;
    for (int j = n - 1; j >= 0; --j) {
        w.symbols[static_cast<std::size_t>(j)] = static_cast<Symbol>(rest % r);
        rest /= r;
    }
    return w;
}

std::int64_t sigma(std::int64_t index, int n, int r) {
    Word w = unchi(index, n, r);
    std::rotate(w.symbols.begin(), w.symbols.begin() + 1, w.symbols.end());
    return chi(w, r);
}

BasicSet reflect(const BasicSet& bs) {
    BasicSet out(bs.r());
    for (const Pattern2x2& p : bs.patterns()) out.insert(p.transposed());
    return out;
}

namespace {

Symbol parse_symbol(const std::string& token, int r) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(token, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad symbol token '" + token + "'");
    }
    if (pos != token.size()) {
        throw std::invalid_argument("bad symbol token '" + token + "'");
    }
    if (value < 0 || value >= r) {
        throw std::invalid_argument("symbol " + token + " outside alphabet of size " +
                                    std::to_string(r));
    }
    return value;
}

}  // namespace

BasicSet read_basic_set_text(std::istream& in) {
    std::string line;
    int r = 0;
    bool have_r = false;
    std::vector<Pattern2x2> patterns;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank line
        if (!have_r) {
            if (first.rfind("r=", 0) != 0) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": expected 'r=<int>' header");
            }
            r = std::stoi(first.substr(2));
            check_alphabet(r);
            have_r = true;
            std::string extra;
            if (ls >> extra) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": trailing tokens after header");
            }
            continue;
        }
        std::string tr_tok, slash, bl_tok, br_tok;
        if (!(ls >> tr_tok >> slash >> bl_tok >> br_tok) || slash != "/") {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'tl tr / bl br'");
        }
        std::string extra;
        if (ls >> extra) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": trailing tokens after pattern");
        }
        patterns.push_back(Pattern2x2::from_rows(parse_symbol(first, r),
                                                 parse_symbol(tr_tok, r),
                                                 parse_symbol(bl_tok, r),
                                                 parse_symbol(br_tok, r)));
    }
    if (!have_r) throw std::invalid_argument("missing 'r=<int>' header");
    return BasicSet::from_patterns(r, patterns);
}

BasicSet read_basic_set_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad JSON basic set: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("r") || !doc.contains("patterns")) {
        throw std::invalid_argument("JSON basic set needs fields 'r' and 'patterns'");
    }
    if (!doc["r"].is_number_integer()) {
        throw std::invalid_argument("JSON field 'r' must be an integer");
    }
    int r = doc["r"].get<int>();
    check_alphabet(r);
    std::vector<Pattern2x2> patterns;
    for (const auto& entry : doc["patterns"]) {
        if (!entry.is_array() || entry.size() != 4) {
            throw std::invalid_argument("each JSON pattern must be [tl, tr, bl, br]");
        }
        std::array<Symbol, 4> v{};
        for (int idx = 0; idx < 4; ++idx) {
            if (!entry[static_cast<std::size_t>(idx)].is_number_integer()) {
                throw std::invalid_argument("pattern entries must be integers");
            }
            v[static_cast<std::size_t>(idx)] = entry[static_cast<std::size_t>(idx)].get<int>();
            if (v[static_cast<std::size_t>(idx)] < 0 || v[static_cast<std::size_t>(idx)] >= r) {
                throw std::invalid_argument("pattern symbol outside alphabet");
            }
        }
        patterns.push_back(Pattern2x2::from_rows(v[0], v[1], v[2], v[3]));
    }
    return BasicSet::from_patterns(r, patterns);
}

void write_basic_set_text(std::ostream& out, const BasicSet& bs) {
    out << "r=" << bs.r() << '\n';
    for (const Pattern2x2& p : bs.patterns()) {
        out << p.at(0, 1) << ' ' << p.at(1, 1) << " / " << p.at(0, 0) << ' '
            << p.at(1, 0) << '\n';
    }
}

BasicSet load_basic_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open basic set file: " + path);
    char c = 0;
    while (in.get(c) && (c == ' ' || c == '\t' || c == '\r' || c == '\n')) {
    }
    if (!in) throw std::invalid_argument("empty basic set file: " + path);
    in.unget();
    if (c == '{') return read_basic_set_json(in);
    return read_basic_set_text(in);
}

}  // namespace sft
