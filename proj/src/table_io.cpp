#include "zetalab/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zetalab/errors.hpp"

namespace zetalab {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char byte : text) {
        hash ^= byte;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t OutputMeta::config_hash() const {
    return fnv1a64(command + " " + config);
}

std::string OutputMeta::config_hash_hex() const {
    char buf[40];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  (unsigned long long)config_hash());
    return buf;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::abs(v) <= 9007199254740992.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[40];
    for (int prec = 1; prec <= 16; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void append_header(std::ostringstream& out, const OutputMeta& meta) {
    out << "# " << kToolName << " " << kToolVersion << "\n";
    out << "# command: " << meta.command << "\n";
    out << "# config: " << meta.config << "\n";
    out << "# config_hash: " << meta.config_hash_hex() << "\n";
    for (const std::string& d : meta.disclosures)
        out << "# disclosure: " << d << "\n";
}

}  // namespace

std::string csv_document(const OutputMeta& meta, const CsvTable& table) {
    if (table.columns.empty())
        raise(errc::invalid_argument, "CSV table needs at least one column");
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            raise(errc::invalid_argument,
                  "CSV row width does not match the column count");
    std::ostringstream out;
    append_header(out, meta);
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ",";
        out << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << row[i];
        }
        out << "\n";
    }
    return out.str();
}

std::string json_document(const OutputMeta& meta,
                          const nlohmann::json& result) {
    nlohmann::json doc;
    doc["meta"]["tool"] = kToolName;
    doc["meta"]["version"] = kToolVersion;
    doc["meta"]["command"] = meta.command;
    doc["meta"]["config"] = meta.config;
    doc["meta"]["config_hash"] = meta.config_hash_hex();
    doc["meta"]["disclosures"] = meta.disclosures;
    doc["result"] = result;
    return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(errc::io_error, "cannot open for writing: " + tmp);
        out.write(content.data(), (std::streamsize)content.size());
        out.flush();
        if (!out) raise(errc::io_error, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        raise(errc::io_error, "cannot move output into place: " + path);
    }
}

}  // namespace zetalab
