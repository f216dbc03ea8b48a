#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sft {

inline constexpr const char* kToolName = "sft";
inline constexpr const char* kToolVersion = "0.1.0";

// Fixed-width text for report cells: 12 significant digits, plain "inf",
// "-inf", "nan" for non-finite values, no locale dependence.
std::string format_real(double value);
std::string format_int(std::int64_t value);

// FNV-1a 64-bit digest of a byte string, 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);
// Digest of a file's raw bytes; throws std::invalid_argument if unreadable.
std::string file_digest(const std::string& path);

// A report is an ordered list of key=value metadata plus one rectangular
// table of preformatted cells. TSV renders metadata as leading '#' comment
// lines; JSON mirrors the same content. Both end with a single LF.
struct Report {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> notes;  // free-form comment lines
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_tsv(std::ostream& out, const Report& report);
void write_json(std::ostream& out, const Report& report);

}  // namespace sft
