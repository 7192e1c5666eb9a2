// Provenance-stamped result emission: CSV for curves, JSON for structured
// reports. Every document starts with the tool version, the canonical
// config line it was produced from, a 64-bit FNV-1a hash of that line, and
// the truncation / tolerance disclosures of the computation. Rendering is
// locale-independent and rerun-stable: the same inputs give byte-identical
// documents.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace zetalab {

inline constexpr const char* kToolName = "zetalab";
inline constexpr const char* kToolVersion = "1.0.0";

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(const std::string& text);

/// Header block embedded in every output document.
struct OutputMeta {
  std::string command;                   // the operation that produced it
  std::string config;                    // canonical "key=value ..." line
  std::vector<std::string> disclosures;  // truncation / tolerance notes

  /// FNV-1a of "<command> <config>"; hex form "fnv1a64:<16 hex digits>".
  std::uint64_t config_hash() const;
  std::string config_hash_hex() const;
};

/// Shortest-faithful decimal rendering of a double ("%.17g" cross-checked
/// against "%.<k>g" for k = 1..16; the shortest k that round-trips wins).
/// Integral values at most 2^53 render without an exponent or point.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // each row matches columns
};

/// '#'-prefixed header block (tool/version, command, config, config_hash,
/// one line per disclosure), a column-name line, then the rows.
std::string csv_document(const OutputMeta& meta, const CsvTable& table);

/// {"meta": {...}, "result": <result>} with two-space indentation and
/// lexicographically ordered keys.
std::string json_document(const OutputMeta& meta,
                          const nlohmann::json& result);

/// Whole-file write via a temporary sibling plus rename, so readers never
/// observe a partial document. Raises IoError on any filesystem failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace zetalab
