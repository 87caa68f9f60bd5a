#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "benlab/chain.hpp"
#include "benlab/conformity.hpp"
#include "benlab/digits.hpp"
#include "benlab/growth.hpp"
#include "benlab/schemes.hpp"

namespace benlab {

// Plain decimal or scientific notation with '.' as the only separator.
// "1,234", "1 234", hex, inf and nan are rejected.
std::optional<double> parse_number(std::string_view text);

// One CSV record; quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_record(std::string_view line);

struct IngestSpec {
  enum class Format { Auto, Csv, Jsonl, Plain };
  std::string path;
  Format format = Format::Auto;
  std::string column;  // CSV: header name or 0-based index; empty = first column
  std::string field;   // JSONL: dotted path; empty = first numeric member
  bool drop_zero = true;
  bool absolute_value = true;
  std::optional<double> min_magnitude;
};

struct IngestResult {
  std::vector<double> values;
  std::uint64_t records = 0;
  std::uint64_t malformed = 0;
  std::uint64_t zeros_dropped = 0;
  std::uint64_t below_min = 0;
  IngestSpec::Format format = IngestSpec::Format::Plain;
};

IngestSpec::Format detect_format(const std::string& path, std::string_view first_line);
IngestResult ingest(std::istream& in, const IngestSpec& spec);
// Throws Unreadable when the file cannot be opened.
IngestResult ingest_file(const IngestSpec& spec);

inline constexpr std::string_view kSchemaVersion = "benlab/v1";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  std::string config_digest;  // FNV-1a of the canonical config JSON
  std::string tool_version{kToolVersion};
  std::string timestamp;      // UTC, ISO 8601
};

RunManifest make_manifest(const std::vector<std::string>& argv, std::uint64_t seed,
                          const nlohmann::json& config);
std::string fnv1a_hex(std::string_view text);

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const DigitDistribution& d);
nlohmann::json to_json(const ChainRunResult& r);
nlohmann::json to_json(const SchemeResult& r);
nlohmann::json to_json(const ConformityReport& r);
nlohmann::json to_json(const AnomalyRecord& r);
nlohmann::json to_json(const SeriesLd& r);

// Wraps a payload as {schema, kind, manifest, ...payload}.
nlohmann::json envelope(std::string_view kind, nlohmann::json payload, const RunManifest& m);

}  // namespace benlab
