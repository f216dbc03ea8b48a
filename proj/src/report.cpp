#include "sft/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sft {

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string format_int(std::int64_t value) { return std::to_string(value); }

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a_hex(buffer.str());
}

void write_tsv(std::ostream& out, const Report& report) {
    out << "# " << kToolName << ' ' << kToolVersion << ' ' << report.subcommand << '\n';
    for (const auto& [key, value] : report.meta) {
        out << "# " << key << '=' << value << '\n';
    }
    for (const std::string& note : report.notes) {
        out << "# " << note << '\n';
    }
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        out << (c ? "\t" : "") << report.columns[c];
    }
    if (!report.columns.empty()) out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "\t" : "") << row[c];
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Report& report) {
    nlohmann::ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["subcommand"] = report.subcommand;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.meta) meta[key] = value;
    doc["meta"] = std::move(meta);
    doc["notes"] = report.notes;
    doc["columns"] = report.columns;
    doc["rows"] = report.rows;
    out << doc.dump(2) << '\n';
}

}  // namespace sft
