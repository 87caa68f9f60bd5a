#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "benlab/analytic.hpp"
#include "benlab/chain.hpp"
#include "benlab/conformity.hpp"
#include "benlab/digits.hpp"
#include "benlab/distributions.hpp"
#include "benlab/error.hpp"
#include "benlab/growth.hpp"
#include "benlab/io.hpp"
#include "benlab/schemes.hpp"

using namespace benlab;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct Globals {
  std::uint64_t seed = 1;
  std::string json_path;
  std::string csv_path;
  bool quiet = false;
  int threads = 0;
};

// Shared by every subcommand: the manifest, the JSON file and the CSV file.
struct Output {
  const Globals& g;
  RunManifest manifest;

  void emit(std::string_view kind, json payload) const {
    if (g.json_path.empty()) return;
    const json doc = envelope(kind, std::move(payload), manifest);
    if (g.json_path == "-") {
      std::cout << doc.dump(2) << "\n";
      return;
    }
    std::ofstream out(g.json_path);
    if (!out) throw Error(ErrorCode::Unreadable, "cannot write '" + g.json_path + "'");
    out << doc.dump(2) << "\n";
  }

  bool wants_csv() const { return !g.csv_path.empty(); }

  void csv(const std::string& text) const {
    if (g.csv_path.empty()) return;
    if (g.csv_path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(g.csv_path);
    if (!out) throw Error(ErrorCode::Unreadable, "cannot write '" + g.csv_path + "'");
    out << text;
  }

  // Tables go to stdout unless --quiet, or stdout already carries JSON/CSV.
  bool table() const { return !g.quiet && g.json_path != "-" && g.csv_path != "-"; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void print_ld(const std::vector<double>& probs, const std::array<std::uint64_t, 9>* counts = nullptr) {
  std::printf("digit  %-10s%-10s%s\n", "observed", "benford", counts ? "count" : "");
  for (int d = 1; d <= 9; ++d) {
    std::printf("%-7d%-10.4f%-10.4f", d, probs[d - 1], benford_first(d));
    if (counts) std::printf("%llu", static_cast<unsigned long long>((*counts)[d - 1]));
    std::printf("\n");
  }
}

std::string canonical_family(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '-' || c == '_' || c == ' '; }), s.end());
  return s;
}

Family family_arg(const std::string& name) {
  const auto f = family_by_name(canonical_family(name));
  if (!f) throw Error(ErrorCode::UnknownFamily, "unknown family '" + name + "'");
  return *f;
}

// Representative parameters, used when a flag leaves one out.
std::vector<double> default_params(Family f) {
  switch (f) {
    case Family::Uniform: return {0, 1};
    case Family::Normal: return {5, 2};
    case Family::GenExp1:
    case Family::GenExp2: return {1, 3};
    case Family::Gamma:
    case Family::Weibull: return {2, 1};
    case Family::Wald: return {5, 2};
    case Family::LogNormal: return {1, 1.1};
    case Family::Gompertz: return {0.5, 2};
    case Family::Nakagami: return {1.5, 4};
    case Family::GuptaKundu: return {2.5, 0.7};
    case Family::Pareto: return {2, 3};
    case Family::FisherTippett:
    case Family::Logistic:
    case Family::Cauchy: return {0, 1};
    case Family::ChiSqr: return {4};
    case Family::Triangular: return {0, 1, 3};
    case Family::PowerLaw: return {1, 1, 1000};
    case Family::Die: return {6};
    default: return {1};
  }
}

// --params fills positions in order; name=value pairs fill by parameter name.
DistributionModel model_from(const std::string& family, const std::vector<double>& positional,
                             const std::map<std::string, double>& named) {
  DistributionModel m{family_arg(family), default_params(family_arg(family))};
  const auto& names = family_info(m.family).params;
  if (positional.size() > names.size()) throw Error(ErrorCode::ArityMismatch, "too many parameters");
  for (std::size_t i = 0; i < positional.size(); ++i) m.params[i] = positional[i];
  for (const auto& [k, v] : named) {
    const auto it = std::find_if(names.begin(), names.end(), [&](std::string_view n) {
      return std::equal(n.begin(), n.end(), k.begin(), k.end(),
                        [](char a, char b) { return std::tolower(a) == std::tolower(b); });
    });
    if (it == names.end()) throw Error(ErrorCode::InvalidParameter, to_string(m) + " has no parameter '" + k + "'");
    m.params[static_cast<std::size_t>(it - names.begin())] = v;
  }
  require_valid(resolve_integer_params(m));
  return m;
}

std::map<std::string, double> parse_named(const std::vector<std::string>& pairs) {
  std::map<std::string, double> out;
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    const auto v = eq == std::string::npos ? std::nullopt : parse_number(p.substr(eq + 1));
    if (!v) throw Error(ErrorCode::SyntaxError, "expected name=value, got '" + p + "'");
    out[p.substr(0, eq)] = *v;
  }
  return out;
}

// ---- analyze -------------------------------------------------------------

struct AnalyzeArgs {
  std::string path;
  std::string format = "auto";
  std::string column;
  std::string field;
  bool keep_zero = false;
  bool keep_sign = false;
  std::optional<double> min_magnitude;
  double alpha = 0.01;
};

int run_analyze(const AnalyzeArgs& a, const Output& out) {
  IngestSpec spec;
  spec.path = a.path;
  static const std::map<std::string, IngestSpec::Format> formats{{"auto", IngestSpec::Format::Auto},
                                                                 {"csv", IngestSpec::Format::Csv},
                                                                 {"jsonl", IngestSpec::Format::Jsonl},
                                                                 {"plain", IngestSpec::Format::Plain}};
  spec.format = formats.at(a.format);
  spec.column = a.column;
  spec.field = a.field;
  spec.drop_zero = !a.keep_zero;
  spec.absolute_value = !a.keep_sign;
  spec.min_magnitude = a.min_magnitude;
  const IngestResult in = ingest_file(spec);
  if (in.values.empty()) {
    std::fprintf(stderr, "benlab: no usable values in '%s' (%llu records, %llu malformed)\n", a.path.c_str(),
                 static_cast<unsigned long long>(in.records), static_cast<unsigned long long>(in.malformed));
    return kExitData;
  }
  ConformityConfig cfg;
  cfg.alpha = a.alpha;
  const ConformityReport r = report(in.values, cfg);
  json payload = to_json(r);
  payload["ingest"] = {{"records", in.records},
                       {"malformed", in.malformed},
                       {"zeros_dropped", in.zeros_dropped},
                       {"below_min", in.below_min}};
  out.emit("analyze", payload);
  if (out.table()) {
    std::printf("values %zu  used %zu  malformed %llu  zeros dropped %llu\n", r.n, r.n_used,
                static_cast<unsigned long long>(in.malformed), static_cast<unsigned long long>(in.zeros_dropped));
    std::vector<double> probs(9);
    for (int d = 0; d < 9; ++d) probs[d] = r.n_used ? static_cast<double>(r.first_counts[d]) / r.n_used : 0.0;
    print_ld(probs, &r.first_counts);
    if (r.chi_sqr_first) std::printf("chi_sqr %.4f (critical %.2f)\n", *r.chi_sqr_first, r.chi_sqr_critical);
    if (r.l_inf) std::printf("l_inf %.5f  l1 %.5f\n", *r.l_inf, *r.l1);
    if (r.mantissa_ks)
      std::printf("mantissa KS %.5f (critical %.5f) %s\n", r.mantissa_ks->statistic, r.mantissa_ks->critical,
                  r.mantissa_ks->pass ? "pass" : "fail");
    std::printf("second order (%zu excluded):", r.excluded_second);
    for (auto c : r.second_counts) std::printf(" %llu", static_cast<unsigned long long>(c));
    std::printf("\nthird order (%zu excluded):", r.excluded_third);
    for (auto c : r.third_counts) std::printf(" %llu", static_cast<unsigned long long>(c));
    std::printf("\n");
    for (const auto& note : r.annotations) std::printf("note: %s\n", note.c_str());
  }
  return 0;
}

// ---- chain ---------------------------------------------------------------

struct ChainArgs {
  std::string spec;
  std::string preset_name;
  std::vector<double> preset_args;
  std::uint64_t n = 10000;
  int max_attempts = 100;
  std::string on_exhaustion = "skip";
  bool sequential = false;
};

int run_chain(const ChainArgs& a, const Globals& g, const Output& out) {
  if (a.spec.empty() == a.preset_name.empty())
    throw Error(ErrorCode::InvalidParameter, "give exactly one of --spec and --preset");
  const ChainSpec spec = a.spec.empty() ? preset(a.preset_name, a.preset_args) : parse_chain(a.spec);
  ResamplePolicy policy;
  policy.max_attempts = a.max_attempts;
  policy.on_exhaustion =
      a.on_exhaustion == "error" ? ResamplePolicy::OnExhaustion::Error : ResamplePolicy::OnExhaustion::SkipSample;

  if (a.sequential) {
    const auto rows = sequential_chisqr(spec, a.n, g.seed, policy);
    json list = json::array();
    std::string csv = "path,chi_sqr,spec\n";
    for (const auto& r : rows) {
      list.push_back({{"path", r.path}, {"spec", r.text}, {"chi_sqr", r.chi_sqr}});
      csv += r.path + "," + fmt("%.6f", r.chi_sqr) + ",\"" + r.text + "\"\n";
    }
    out.emit("chain_sequential", {{"rows", list}});
    out.csv(csv);
    if (out.table())
      for (const auto& r : rows) std::printf("%-12s %12.3f  %s\n", r.path.empty() ? "(root)" : r.path.c_str(), r.chi_sqr, r.text.c_str());
    return 0;
  }

  SimulateOptions opts;
  opts.threads = g.threads;
  opts.retain_samples = out.wants_csv();
  const ChainRunResult r = simulate_chain(spec, a.n, g.seed, policy, opts);
  out.emit("chain", to_json(r));
  if (out.wants_csv()) {
    std::string csv = "value\n";
    for (double x : r.samples) csv += fmt("%.17g", x) + "\n";
    out.csv(csv);
  }
  if (out.table()) {
    std::printf("%s  n %llu  accepted %llu  seed %llu\n", r.spec_text.c_str(),
                static_cast<unsigned long long>(r.n_requested), static_cast<unsigned long long>(r.n_accepted),
                static_cast<unsigned long long>(r.seed));
    print_ld(r.ld.probs, &r.counts);
    std::printf("chi_sqr %.4f  skip rate %.5f%s\n", r.chi_sqr, r.skip_rate(), r.valid ? "" : "  (invalid: skip rate above 1%)");
  }
  return 0;
}

// ---- scheme --------------------------------------------------------------

struct SchemeArgs {
  std::string kind = "simple";
  std::int64_t lb = 1;
  std::int64_t ub_min = 1;
  std::int64_t ub_max = 9;
  int depth = 2;
  std::string top;
  std::int64_t middle_ub_min = 0;
  double rate = 2.0;
  std::int64_t start = 99;
  std::int64_t end = 999;
  std::int64_t width = 1000;
};

std::pair<std::int64_t, std::int64_t> range_arg(const std::string& text) {
  const auto colon = text.find(':');
  const auto a = colon == std::string::npos ? std::nullopt : parse_number(text.substr(0, colon));
  const auto b = colon == std::string::npos ? std::nullopt : parse_number(text.substr(colon + 1));
  if (!a || !b) throw Error(ErrorCode::SyntaxError, "expected lo:hi, got '" + text + "'");
  return {static_cast<std::int64_t>(*a), static_cast<std::int64_t>(*b)};
}

int run_scheme(const SchemeArgs& a, const Globals& g, const Output& out) {
  SchemeResult r;
  json cfg = {{"kind", a.kind}, {"lb", a.lb}};
  if (a.kind == "simple") {
    r = simple_scheme(a.lb, a.ub_min, a.ub_max, g.threads);
    cfg["ub_min"] = a.ub_min;
    cfg["ub_max"] = a.ub_max;
  } else if (a.kind == "iterated") {
    const auto [lo, hi] = a.top.empty() ? std::pair<std::int64_t, std::int64_t>{a.ub_min, a.ub_max} : range_arg(a.top);
    r = iterated_scheme(a.lb, a.ub_min, lo, hi, a.depth, a.middle_ub_min);
    cfg["depth"] = a.depth;
    cfg["top"] = {lo, hi};
  } else if (a.kind == "twist") {
    r = benford_twist_scheme(a.rate, a.start, a.end, a.lb);
    cfg["rate"] = a.rate;
    cfg["start"] = a.start;
    cfg["end"] = a.end;
  } else if (a.kind == "fixed-width") {
    r = fixed_width_scheme(a.ub_min, a.ub_max, a.width);
    cfg["width"] = a.width;
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown scheme '" + a.kind + "'");
  }
  json payload = to_json(r);
  payload["scheme"] = cfg;
  out.emit("scheme", payload);
  if (out.table()) {
    std::printf("%s scheme\n", a.kind.c_str());
    print_ld(r.ld.probs);
  }
  return 0;
}

// ---- analytic ------------------------------------------------------------

struct AnalyticArgs {
  std::string name;
  double s = 0, g = 3;                 // kx
  double m = 1, lo = 1, hi = 1000;     // power-law
  double p = 0.069314718;              // exponential
  double r = 1, center = 11, elevation = 0;
  double a = 0, mode = 1, b = 3;       // triangular
  double rs = 3;                       // ten-to-uniform upper end
  bool natural = false;                // e^Y instead of 10^Y
  int bins = 0;
  double from = 0.05, to = 35, step = 0.05;  // exp-sweep
};

LogDensitySpec log_spec(const AnalyticArgs& a) {
  LogDensitySpec s;
  if (a.name == "ten-to-uniform") s = LogDensitySpec::uniform(a.r, a.rs);
  else if (a.name == "ten-to-triangular") s = LogDensitySpec::triangular(a.a, a.mode, a.b);
  else if (a.elevation > 0) s = LogDensitySpec::hanging_semicircle(a.center, a.r, a.elevation);
  else s = LogDensitySpec::semicircle(a.center, a.r);
  if (a.natural) s.log10_per_unit = std::log10(std::exp(1.0));
  return s;
}

int run_analytic(const AnalyticArgs& a, const Output& out) {
  DigitDistribution ld;
  json extra = json::object();
  const double k10 = 1 / std::log(10.0);
  if (a.name == "kx") {
    ld = ld_kx(a.s, a.g);
  } else if (a.name == "power-law") {
    ld = ld_power_law(a.m, a.lo, a.hi);
    extra["k"] = power_law_k(a.m, a.lo, a.hi);
    extra["over_steepness"] = over_steepness(ld);
  } else if (a.name == "exponential") {
    ld = ld_exponential(a.p);
    extra["inflection_point"] = 1 / a.p;
  } else if (a.name == "exp-sweep") {
    if (!(a.step > 0) || !(a.from > 0) || !(a.to >= a.from)) throw Error(ErrorCode::InvalidParameter, "bad sweep range");
    std::string csv = "p,d1,d2,d3,d4,d5,d6,d7,d8,d9\n";
    std::array<double, 9> lo, hi;
    lo.fill(1);
    hi.fill(0);
    const auto steps = static_cast<long>(std::floor((a.to - a.from) / a.step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      const double p = a.from + i * a.step;
      const auto e = ld_exponential(p);
      csv += fmt("%.6g", p);
      for (int d = 1; d <= 9; ++d) {
        csv += fmt(",%.10f", e[d]);
        lo[d - 1] = std::min(lo[d - 1], e[d]);
        hi[d - 1] = std::max(hi[d - 1], e[d]);
      }
      csv += "\n";
    }
    std::vector<double> amp(9);
    for (int d = 0; d < 9; ++d) amp[d] = hi[d] - lo[d];
    out.emit("analytic", {{"case", a.name}, {"amplitudes", amp}, {"points", steps + 1}});
    out.csv(csv);
    if (out.table()) {
      std::printf("digit  amplitude\n");
      for (int d = 0; d < 9; ++d) std::printf("%-7d%.4f\n", d + 1, amp[d]);
    }
    return 0;
  } else if (a.name == "ten-to-uniform" || a.name == "ten-to-triangular" || a.name == "ten-to-semicircle") {
    const auto spec = log_spec(a);
    ld = ld_ten_to_symmetric(spec);
    if (a.bins > 0) {
      const auto h = mantissa_density(spec, a.bins);
      extra["mantissa_density"] = h;
      std::string csv = "bin_lo,bin_hi,density\n";
      for (int i = 0; i < a.bins; ++i)
        csv += fmt("%.6f", static_cast<double>(i) / a.bins) + "," + fmt("%.6f", static_cast<double>(i + 1) / a.bins) + "," +
               fmt("%.10f", h[i]) + "\n";
      out.csv(csv);
    }
  } else if (a.name == "shifted-kx") {
    ld = ld_of_density([&](double x) { return k10 / (x - 4); }, 5, 14).ld;
  } else if (a.name == "mixed-sign-kx") {
    ld = ld_of_density([&](double x) { return k10 / (x + 4); }, -3, 6).ld;
  } else if (a.name == "ratio-uniforms") {
    ld = ratio_of_uniforms_ld();
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown analytic case '" + a.name + "'");
  }
  json payload = {{"case", a.name}, {"ld", to_json(ld)}, {"l_inf_benford", linf(ld, DigitDistribution::benford())}};
  payload.update(extra);
  out.emit("analytic", payload);
  if (out.table()) {
    std::printf("%s\n", a.name.c_str());
    print_ld(ld.probs);
    std::printf("l_inf vs benford %.3g\n", linf(ld, DigitDistribution::benford()));
  }
  return 0;
}

// ---- growth --------------------------------------------------------------

struct GrowthArgs {
  double base = 3;
  double rate = 40;
  std::uint64_t n = 1000;
  std::vector<std::int64_t> L{1};
  std::int64_t t_min = 1;
  std::int64_t t_max = 50;
  double tol = 1e-6;
  double from = 1, to = 600, step = 0.01;
  std::int64_t t_flag = 100;
  std::uint64_t count = 31;
  int subdivisions = 12;
  std::string family = "Uniform";
  std::vector<double> params{0.5, 2.5};
  double start = 1;
  bool divide = false;
  int exponent = 13;
};

int run_growth(const std::string& sub, const GrowthArgs& a, const Globals& g, const Output& out) {
  if (sub == "series") {
    GrowthSeries s{a.base, a.rate, a.n};
    std::uint64_t snapped = 0;
    const auto m = series_mantissae(s, &snapped);
    const auto r = series_ld(s);
    json payload = to_json(r);
    const auto anomaly = detect_anomalous(a.rate, 1000, 1e-10);
    payload["anomaly"] = anomaly ? to_json(*anomaly) : json();
    out.emit("growth_series", payload);
    if (out.wants_csv()) {
      std::string csv = "index,mantissa\n";
      for (std::size_t i = 0; i < m.size(); ++i) csv += std::to_string(i) + "," + fmt("%.12f", m[i]) + "\n";
      out.csv(csv);
    }
    if (out.table()) {
      std::printf("base %g  rate %g%%  elements %llu\n", a.base, a.rate, static_cast<unsigned long long>(a.n));
      print_ld(r.ld.probs, &r.counts);
      std::printf("chi_sqr %.4f  distinct leading digits %d\n", r.chi_sqr, r.distinct_digits());
      if (anomaly) std::printf("anomalous: L=%lld T=%lld\n", static_cast<long long>(anomaly->L), static_cast<long long>(anomaly->T));
    }
    return 0;
  }
  if (sub == "anomalies") {
    const auto rows = enumerate_anomalous(a.L, a.t_min, a.t_max);
    json list = json::array();
    std::string csv = "L,T,fraction,percent\n";
    for (const auto& r : rows) {
      list.push_back(to_json(r));
      csv += std::to_string(r.L) + "," + std::to_string(r.T) + "," + fmt("%.6f", r.fraction) + "," + fmt("%.4f", r.percent) + "\n";
    }
    out.emit("growth_anomalies", {{"rows", list}});
    out.csv(csv);
    if (out.table())
      for (const auto& r : rows)
        std::printf("L %-4lld T %-6lld %10.4f%%\n", static_cast<long long>(r.L), static_cast<long long>(r.T), r.percent);
    return 0;
  }
  if (sub == "detect") {
    const auto r = detect_anomalous(a.rate, a.t_max, a.tol);
    out.emit("growth_detect", {{"percent", a.rate}, {"anomaly", r ? to_json(*r) : json()}});
    if (out.table()) {
      if (r)
        std::printf("%g%% is anomalous: L=%lld T=%lld (%s)\n", a.rate, static_cast<long long>(r->L),
                    static_cast<long long>(r->T), r->verified ? "verified" : "unverified");
      else
        std::printf("%g%%: no rational L/T with T <= %lld within %g\n", a.rate, static_cast<long long>(a.t_max), a.tol);
    }
    return 0;
  }
  if (sub == "scan") {
    ScanConfig c;
    c.lo_percent = a.from;
    c.hi_percent = a.to;
    c.step = a.step;
    c.n_elements = a.n;
    c.base = a.base;
    c.T_flag = a.t_flag;
    c.threads = g.threads;
    const auto rows = rate_scan(c);
    std::size_t flagged = 0;
    double worst = 0;
    for (const auto& r : rows) {
      flagged += r.anomaly.has_value();
      worst = std::max(worst, r.chi_sqr);
    }
    out.emit("growth_scan", {{"rates", rows.size()}, {"flagged", flagged}, {"max_chi_sqr", worst}});
    const std::string csv = scan_csv(rows);
    out.csv(csv);
    if (out.table()) {
      if (out.wants_csv())
        std::printf("%zu rates, %zu flagged, max chi_sqr %.1f\n", rows.size(), flagged, worst);
      else
        std::fputs(csv.c_str(), stdout);
    }
    return 0;
  }
  if (sub == "factors") {
    const auto logs = cumulative_log10_factors(a.rate, a.count);
    json list = json::array();
    std::string csv = "index,factor,log10_factor\n";
    for (std::size_t j = 0; j < logs.size(); ++j) {
      const double lg = static_cast<double>(logs[j]);
      const double f = std::pow(10.0, lg);
      list.push_back({{"index", j + 1}, {"factor", f}, {"log10", lg}});
      csv += std::to_string(j + 1) + "," + fmt("%.6g", f) + "," + fmt("%.12f", lg) + "\n";
    }
    out.emit("growth_factors", {{"percent", a.rate}, {"factors", list}});
    out.csv(csv);
    if (out.table())
      for (std::size_t j = 0; j < logs.size(); ++j)
        std::printf("%-4zu %.2f\n", j + 1, std::pow(10.0, static_cast<double>(logs[j])));
    return 0;
  }
  if (sub == "equivalent") {
    const double r = equivalent_rate(a.rate, a.subdivisions);
    out.emit("growth_equivalent", {{"percent", a.rate}, {"subdivisions", a.subdivisions}, {"equivalent_percent", r}});
    if (out.table()) std::printf("%g%% over 1 period = %.6f%% over each of %d\n", a.rate, r, a.subdivisions);
    return 0;
  }
  if (sub == "multiply" || sub == "power") {
    const auto model = model_from(a.family, a.params, {});
    json payload;
    std::vector<double> probs;
    std::array<std::uint64_t, 9> counts{};
    double chi = 0;
    if (sub == "multiply") {
      const auto r = random_multiplication_process(model, a.n, a.start, g.seed, a.divide);
      payload = {{"ld_counts", r.counts}, {"ld_probs", r.ld.probs}, {"chi_sqr", r.chi_sqr}, {"resampled", r.n_resampled}};
      probs = r.ld.probs;
      counts = r.counts;
      chi = r.chi_sqr;
    } else {
      const auto r = power_transform_ld(model, a.exponent, a.n, g.seed);
      payload = to_json(r);
      payload["exponent"] = a.exponent;
      probs = r.ld.probs;
      counts = r.counts;
      chi = r.chi_sqr;
    }
    payload["model"] = to_string(model);
    out.emit(sub == "multiply" ? "growth_multiply" : "growth_power", payload);
    if (out.table()) {
      std::printf("%s\n", to_string(model).c_str());
      print_ld(probs, &counts);
      std::printf("chi_sqr %.4f\n", chi);
    }
    return 0;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown growth command '" + sub + "'");
}

// ---- invariance ----------------------------------------------------------

struct InvarianceArgs {
  std::string family = "exponential";
  std::vector<double> params;
  std::vector<std::string> named;
  std::optional<double> rho, mu, sigma;
  int m = 1;
  bool both = false;
  bool scale_only = false;
  bool monte_carlo = false;
  std::uint64_t n = 1000000;
};

int run_invariance(const InvarianceArgs& a, const Globals& g, const Output& out) {
  auto named = parse_named(a.named);
  if (a.rho) named["rho"] = *a.rho;
  if (a.mu) named["mu"] = *a.mu;
  if (a.sigma) named["sigma"] = *a.sigma;
  const auto model = model_from(a.family, a.params, named);
  std::vector<int> scaled;  // empty: every parameter
  if (a.scale_only) scaled = {0};
  InvarianceMode mode;
  mode.kind = a.monte_carlo ? InvarianceMode::Kind::MonteCarlo : InvarianceMode::Kind::Analytic;
  mode.n = a.n;
  mode.seed = g.seed;
  const auto r = power_of_ten_invariance_check(model, a.m, scaled, mode);
  out.emit("invariance", {{"model", to_string(model)},
                          {"m", a.m},
                          {"scaled_params", scaled.empty() ? json("all") : json(scaled)},
                          {"mode", a.monte_carlo ? "monte_carlo" : "analytic"},
                          {"linf", r.linf},
                          {"original", to_json(r.original)},
                          {"scaled", to_json(r.scaled)}});
  if (out.table()) {
    std::printf("%s, parameters %s times 10^%d (%s)\n", to_string(model).c_str(), a.scale_only ? "rho" : "all", a.m,
                a.monte_carlo ? "monte carlo" : "analytic");
    std::printf("digit  original  scaled\n");
    for (int d = 1; d <= 9; ++d) std::printf("%-7d%-10.6f%.6f\n", d, r.original[d], r.scaled[d]);
    std::printf("max difference %.3g\n", r.linf);
  }
  return 0;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::EmptyInput:
    case ErrorCode::ZeroInput:
    case ErrorCode::NonFinite: return kExitData;
    case ErrorCode::NumericFailure:
    case ErrorCode::Overflow:
    case ErrorCode::PolicyExhausted:
    case ErrorCode::TooLarge: return kExitNumeric;
    default: return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leading-digit laboratory: conformity analysis, random chains, averaging schemes, "
               "analytic digit laws and growth series."};
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--json", g.json_path, "Write a JSON result ('-' for stdout)");
  app.add_option("--csv", g.csv_path, "Write plot-ready CSV ('-' for stdout)");
  app.add_flag("--quiet", g.quiet, "No table on stdout");
  app.add_option("--threads", g.threads, "Worker threads; 1 forces the serial path")->check(CLI::NonNegativeNumber);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Conformity report for a dataset");
  analyze->add_option("path", an.path, "CSV, JSONL or one-value-per-line file")->required();
  analyze->add_option("--format", an.format)->check(CLI::IsMember({"auto", "csv", "jsonl", "plain"}))->capture_default_str();
  analyze->add_option("--column", an.column, "CSV header name or 0-based index");
  analyze->add_option("--field", an.field, "JSONL dotted field path");
  analyze->add_flag("--keep-zero", an.keep_zero);
  analyze->add_flag("--keep-sign", an.keep_sign);
  analyze->add_option("--min-magnitude", an.min_magnitude);
  analyze->add_option("--alpha", an.alpha)->capture_default_str();

  ChainArgs ch;
  auto* chain = app.add_subcommand("chain", "Simulate a chain of distributions");
  chain->add_option("--spec", ch.spec, "e.g. 'Uniform(0, Uniform(0, 17))'");
  chain->add_option("--preset", ch.preset_name, "flehinger | benford_twist | mini_hill | rayleigh_cycles | table8_chain");
  chain->add_option("--preset-args", ch.preset_args)->delimiter(',');
  chain->add_option("--n", ch.n)->capture_default_str();
  chain->add_option("--max-attempts", ch.max_attempts)->capture_default_str();
  chain->add_option("--on-exhaustion", ch.on_exhaustion)->check(CLI::IsMember({"skip", "error"}))->capture_default_str();
  chain->add_flag("--sequential", ch.sequential, "Chi-square of every sub-chain");

  SchemeArgs sc;
  auto* scheme = app.add_subcommand("scheme", "Exact averaging schemes");
  scheme->add_option("kind", sc.kind)->check(CLI::IsMember({"simple", "iterated", "twist", "fixed-width"}))->required();
  scheme->add_option("--lb", sc.lb)->capture_default_str();
  scheme->add_option("--ub-min", sc.ub_min)->capture_default_str();
  scheme->add_option("--ub-max", sc.ub_max)->capture_default_str();
  scheme->add_option("--depth", sc.depth)->capture_default_str();
  scheme->add_option("--top", sc.top, "lo:hi range of outermost upper bounds");
  scheme->add_option("--middle-ub-min", sc.middle_ub_min);
  scheme->add_option("--rate", sc.rate)->capture_default_str();
  scheme->add_option("--start", sc.start)->capture_default_str();
  scheme->add_option("--end", sc.end)->capture_default_str();
  scheme->add_option("--width", sc.width)->capture_default_str();

  AnalyticArgs al;
  auto* analytic = app.add_subcommand("analytic", "Exact digit laws of analytic densities");
  analytic
      ->add_option("case", al.name)
      ->check(CLI::IsMember({"kx", "power-law", "exponential", "exp-sweep", "ten-to-uniform", "ten-to-triangular",
                             "ten-to-semicircle", "shifted-kx", "mixed-sign-kx", "ratio-uniforms"}))
      ->required();
  analytic->add_option("--s", al.s, "kx: log10 of the lower end")->capture_default_str();
  analytic->add_option("--g", al.g, "kx: decades covered")->capture_default_str();
  analytic->add_option("--m", al.m)->capture_default_str();
  analytic->add_option("--lo", al.lo)->capture_default_str();
  analytic->add_option("--hi", al.hi)->capture_default_str();
  analytic->add_option("--p", al.p, "exponential rate")->capture_default_str();
  analytic->add_option("--r", al.r, "semicircle radius, or lower end of the uniform log")->capture_default_str();
  analytic->add_option("--upper", al.rs, "upper end of the uniform log")->capture_default_str();
  analytic->add_option("--center", al.center)->capture_default_str();
  analytic->add_option("--elevation", al.elevation)->capture_default_str();
  analytic->add_option("--a", al.a)->capture_default_str();
  analytic->add_option("--mode", al.mode)->capture_default_str();
  analytic->add_option("--b", al.b)->capture_default_str();
  analytic->add_flag("--natural", al.natural, "Y is a natural log (e^Y)");
  analytic->add_option("--bins", al.bins, "Mantissa histogram bins (CSV)");
  analytic->add_option("--from", al.from)->capture_default_str();
  analytic->add_option("--to", al.to)->capture_default_str();
  analytic->add_option("--step", al.step)->capture_default_str();

  GrowthArgs gr;
  auto* growth = app.add_subcommand("growth", "Exponential growth series and anomalous rates");
  growth->require_subcommand(1);
  auto* g_series = growth->add_subcommand("series", "Digit law of one series");
  g_series->add_option("--base", gr.base)->capture_default_str();
  g_series->add_option("--rate", gr.rate, "percent per step")->capture_default_str();
  g_series->add_option("--n", gr.n)->capture_default_str();
  auto* g_anom = growth->add_subcommand("anomalies", "Rates 100(10^(L/T) - 1)");
  g_anom->add_option("--l", gr.L)->delimiter(',')->capture_default_str();
  g_anom->add_option("--t-min", gr.t_min)->capture_default_str();
  g_anom->add_option("--t-max", gr.t_max)->capture_default_str();
  auto* g_detect = growth->add_subcommand("detect", "Is a rate anomalous?");
  g_detect->add_option("--rate", gr.rate)->required();
  g_detect->add_option("--t-max", gr.t_max)->capture_default_str();
  g_detect->add_option("--tol", gr.tol)->capture_default_str();
  auto* g_scan = growth->add_subcommand("scan", "Chi-square over a grid of rates");
  g_scan->add_option("--from", gr.from)->capture_default_str();
  g_scan->add_option("--to", gr.to)->capture_default_str();
  g_scan->add_option("--step", gr.step)->capture_default_str();
  g_scan->add_option("--n", gr.n)->capture_default_str();
  g_scan->add_option("--base", gr.base)->capture_default_str();
  g_scan->add_option("--t-flag", gr.t_flag)->capture_default_str();
  auto* g_factors = growth->add_subcommand("factors", "Cumulative factors (1 + P/100)^j");
  g_factors->add_option("--rate", gr.rate)->required();
  g_factors->add_option("--count", gr.count)->capture_default_str();
  auto* g_equiv = growth->add_subcommand("equivalent", "Rate over each of R sub-periods");
  g_equiv->add_option("--rate", gr.rate)->required();
  g_equiv->add_option("--r", gr.subdivisions)->capture_default_str();
  auto* g_mult = growth->add_subcommand("multiply", "Random multiplication process");
  auto* g_power = growth->add_subcommand("power", "Digit law of X^N");
  for (auto* s : {g_mult, g_power}) {
    s->add_option("--family", gr.family)->capture_default_str();
    s->add_option("--params", gr.params)->delimiter(',');
    s->add_option("--n", gr.n)->capture_default_str();
  }
  g_mult->add_option("--start", gr.start)->capture_default_str();
  g_mult->add_flag("--divide", gr.divide);
  g_power->add_option("--exponent", gr.exponent)->capture_default_str();

  InvarianceArgs iv;
  auto* invariance = app.add_subcommand("invariance", "Digit law before and after scaling parameters by 10^m");
  invariance->add_option("--family", iv.family)->capture_default_str();
  invariance->add_option("--params", iv.params, "Positional parameters")->delimiter(',');
  invariance->add_option("--param", iv.named, "name=value");
  invariance->add_option("--rho", iv.rho);
  invariance->add_option("--mu", iv.mu);
  invariance->add_option("--sigma", iv.sigma);
  invariance->add_option("--m", iv.m)->capture_default_str();
  auto* both = invariance->add_flag("--both", iv.both, "Scale every parameter (default)");
  invariance->add_flag("--scale-only", iv.scale_only, "Scale only the first parameter")->excludes(both);
  invariance->add_flag("--mc", iv.monte_carlo, "Monte Carlo instead of quadrature");
  invariance->add_option("--n", iv.n, "Monte Carlo draws per side")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    const std::vector<std::string> args(argv, argv + argc);
    const json config = {{"options", app.config_to_str(true, false)}};
    Output out{g, make_manifest(args, g.seed, config)};
    if (analyze->parsed()) return run_analyze(an, out);
    if (chain->parsed()) return run_chain(ch, g, out);
    if (scheme->parsed()) return run_scheme(sc, g, out);
    if (analytic->parsed()) return run_analytic(al, out);
    if (invariance->parsed()) return run_invariance(iv, g, out);
    for (auto* s : growth->get_subcommands())
      if (s->parsed()) return run_growth(s->get_name(), gr, g, out);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "benlab: %s: %s\n", std::string(error_code_name(e.code())).c_str(), e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "benlab: %s: %s\n", std::string(error_code_name(e.code())).c_str(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "benlab: internal error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}
