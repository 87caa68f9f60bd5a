#include "benlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "benlab/error.hpp"

namespace benlab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                    [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

const nlohmann::json* find_path(const nlohmann::json& j, const std::string& path) {
  const nlohmann::json* cur = &j;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &(*cur)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return cur;
}

std::optional<double> json_number(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_number(v.get<std::string>());
  return std::nullopt;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <std::size_t N>
nlohmann::json counts_json(const std::array<std::uint64_t, N>& c) {
  return nlohmann::json(std::vector<std::uint64_t>(c.begin(), c.end()));
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  // from_chars takes no leading '+', and a bare "inf"/"nan" is not data.
  std::string_view body = s;
  if (body.front() == '+') body.remove_prefix(1);
  for (char c : body) {
    const bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' ||
                    c == 'e' || c == 'E';
    if (!ok) return std::nullopt;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v,
                                         std::chars_format::general);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

IngestSpec::Format detect_format(const std::string& path, std::string_view first_line) {
  if (ends_with(path, ".jsonl") || ends_with(path, ".ndjson")) return IngestSpec::Format::Jsonl;
  if (ends_with(path, ".csv")) return IngestSpec::Format::Csv;
  const auto t = trim(first_line);
  if (!t.empty() && t.front() == '{') return IngestSpec::Format::Jsonl;
  if (t.find(',') != std::string_view::npos) return IngestSpec::Format::Csv;
  return IngestSpec::Format::Plain;
}

IngestResult ingest(std::istream& in, const IngestSpec& spec) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  IngestResult r;
  std::size_t first = 0;
  while (first < lines.size() && trim(lines[first]).empty()) ++first;
  r.format = spec.format == IngestSpec::Format::Auto
                 ? detect_format(spec.path, first < lines.size() ? lines[first] : "")
                 : spec.format;

  auto accept = [&](std::optional<double> v) {
    if (!v) {
      ++r.malformed;
      return;
    }
    double x = spec.absolute_value ? std::abs(*v) : *v;
    if (x == 0.0 && spec.drop_zero) {
      ++r.zeros_dropped;
      return;
    }
    if (spec.min_magnitude && std::abs(x) < *spec.min_magnitude) {
      ++r.below_min;
      return;
    }
    r.values.push_back(x);
  };

  if (r.format == IngestSpec::Format::Csv) {
    if (first >= lines.size()) return r;
    const auto header = split_csv_record(lines[first]);
    std::size_t col = 0;
    bool has_header = true;
    // A header row is one whose selected cell is not a number.
    if (!spec.column.empty()) {
      const auto it = std::find_if(header.begin(), header.end(),
                                   [&](const std::string& h) { return trim(h) == spec.column; });
      if (it != header.end()) {
        col = static_cast<std::size_t>(it - header.begin());
      } else {
        int idx = -1;
        const auto [p, ec] = std::from_chars(spec.column.data(), spec.column.data() + spec.column.size(), idx);
        if (ec != std::errc() || p != spec.column.data() + spec.column.size() || idx < 0) {
          throw Error(ErrorCode::InvalidParameter, "column '" + spec.column + "' not in header");
        }
        col = static_cast<std::size_t>(idx);
      }
    }
    has_header = col >= header.size() || !parse_number(header[col]);
    for (std::size_t i = first + (has_header ? 1 : 0); i < lines.size(); ++i) {
      if (trim(lines[i]).empty()) continue;
      ++r.records;
      const auto f = split_csv_record(lines[i]);
      // A ragged row usually means an unquoted "1,234"; never guess.
      if (f.size() != header.size()) {
        ++r.malformed;
        continue;
      }
      accept(col < f.size() ? parse_number(f[col]) : std::nullopt);
    }
    return r;
  }

  for (std::size_t i = first; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    ++r.records;
    if (r.format == IngestSpec::Format::Plain) {
      accept(parse_number(lines[i]));
      continue;
    }
    const auto j = nlohmann::json::parse(lines[i], nullptr, false);
    if (j.is_discarded()) {
      ++r.malformed;
      continue;
    }
    std::optional<double> v;
    if (!spec.field.empty()) {
      if (const auto* node = find_path(j, spec.field)) v = json_number(*node);
    } else if (j.is_object()) {
      for (const auto& [k, val] : j.items()) {
        if (val.is_number()) {
          v = val.get<double>();
          break;
        }
      }
    } else if (j.is_number()) {
      v = j.get<double>();
    }
    accept(v);
  }
  return r;
}

IngestResult ingest_file(const IngestSpec& spec) {
  std::ifstream in(spec.path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Unreadable, "cannot open '" + spec.path + "'");
  return ingest(in, spec);
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunManifest make_manifest(const std::vector<std::string>& argv, std::uint64_t seed,
                          const nlohmann::json& config) {
  RunManifest m;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (i) m.command_line.push_back(' ');
    m.command_line += argv[i];
  }
  m.seed = seed;
  m.config_digest = fnv1a_hex(config.dump());
  m.timestamp = utc_now();
  return m;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"command_line", m.command_line},
          {"seed", m.seed},
          {"config_digest", m.config_digest},
          {"tool_version", m.tool_version},
          {"timestamp", m.timestamp}};
}

nlohmann::json to_json(const DigitDistribution& d) {
  return {{"base", d.base}, {"order", d.order}, {"probs", d.probs}};
}

nlohmann::json to_json(const ChainRunResult& r) {
  return {{"spec_text", r.spec_text},
          {"seed", r.seed},
          {"n", r.n_requested},
          {"n_accepted", r.n_accepted},
          {"ld_counts", counts_json(r.counts)},
          {"ld_probs", r.ld.probs},
          {"chi_sqr", r.chi_sqr},
          {"skips",
           {{"zero", r.n_zero},
            {"nonfinite", r.n_nonfinite},
            {"policy_dropped", r.n_policy_dropped},
            {"resampled", r.n_resampled},
            {"rate", r.skip_rate()}}},
          {"valid", r.valid},
          {"exact", false}};
}

nlohmann::json to_json(const SchemeResult& r) {
  return {{"ld_probs", r.ld.probs}, {"exact", r.exact}};
}

nlohmann::json to_json(const ConformityReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  nlohmann::json ks;
  if (r.mantissa_ks) {
    ks = {{"statistic", r.mantissa_ks->statistic},
          {"critical", r.mantissa_ks->critical},
          {"pass", r.mantissa_ks->pass}};
  }
  nlohmann::json masses;
  if (r.compartment_masses) masses = std::vector<double>(r.compartment_masses->begin(), r.compartment_masses->end());
  return {{"n", r.n},
          {"n_used", r.n_used},
          {"skipped_zeros", r.skipped_zeros},
          {"skipped_nonfinite", r.skipped_nonfinite},
          {"observed",
           {{"first", counts_json(r.first_counts)},
            {"second", counts_json(r.second_counts)},
            {"third", counts_json(r.third_counts)},
            {"excluded_second", r.excluded_second},
            {"excluded_third", r.excluded_third}}},
          {"chi_sqr_first", opt(r.chi_sqr_first)},
          {"chi_sqr_critical", r.chi_sqr_critical},
          {"l_inf", opt(r.l_inf)},
          {"l1", opt(r.l1)},
          {"mantissa_ks", ks},
          {"compartment_masses", masses},
          {"decades_spanned", r.decades_spanned},
          {"annotations", r.annotations}};
}

nlohmann::json to_json(const AnomalyRecord& r) {
  return {{"L", r.L},
          {"T", r.T},
          {"fraction", r.fraction},
          {"percent", r.percent},
          {"first_power_of_ten_factor", r.first_power_of_ten_factor},
          {"verified", r.verified}};
}

nlohmann::json to_json(const SeriesLd& r) {
  return {{"n", r.n},
          {"ld_counts", counts_json(r.counts)},
          {"ld_probs", r.ld.probs},
          {"chi_sqr", r.chi_sqr},
          {"distinct_digits", r.distinct_digits()},
          {"skipped_zeros", r.skipped_zeros},
          {"boundary_snaps", r.snapped}};
}

nlohmann::json envelope(std::string_view kind, nlohmann::json payload, const RunManifest& m) {
  nlohmann::json out = {{"schema", kSchemaVersion}, {"kind", kind}, {"manifest", to_json(m)}};
  for (auto& [k, v] : payload.items()) out[k] = v;
  return out;
}

}  // namespace benlab
