#include "benlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "benlab/conformity.hpp"
#include "benlab/error.hpp"
#include "benlab/numeric.hpp"
#include "benlab/rng.hpp"
#include "parallel.hpp"

namespace benlab {
namespace {

const std::array<long double, 10>& log_bounds() {
  static const std::array<long double, 10> b = [] {
    std::array<long double, 10> a{};
    for (int d = 1; d <= 10; ++d) a[d - 1] = std::log10(static_cast<long double>(d));
    return a;
  }();
  return b;
}

long double frac(long double v) { return v - std::floor(v); }

// Moves m onto a boundary it sits within `slack` of. Returns true when it did.
bool snap(long double& m, long double slack) {
  const auto& b = log_bounds();
  for (long double edge : b) {
    if (std::abs(m - edge) <= slack) {
      m = edge == 1.0L ? 0.0L : edge;
      return true;
    }
  }
  return false;
}

int digit_of_mantissa(long double m) {
  const auto& b = log_bounds();
  for (int d = 1; d < 9; ++d) {
    if (m < b[d]) return d;
  }
  return 9;
}

SeriesLd finish(const std::array<std::uint64_t, 9>& counts) {
  SeriesLd r;
  r.counts = counts;
  for (auto c : counts) r.n += c;
  if (r.n == 0) throw Error(ErrorCode::EmptyInput, "no nonzero values");
  std::array<double, 9> mass{};
  for (int i = 0; i < 9; ++i) mass[i] = static_cast<double>(counts[i]);
  r.ld = DigitDistribution::from_counts(mass);
  r.chi_sqr = chi_sqr_benford(counts);
  return r;
}

// Rounding slack for element j: the rate is a double, so log10 f carries
// about half an ulp, and j multiplies it.
long double slack_for(long double log_base, long double log_f, std::uint64_t j) {
  constexpr long double eps = std::numeric_limits<double>::epsilon();
  return 64 * eps * (1 + std::abs(log_base) + static_cast<long double>(j) * std::abs(log_f));
}

// Smallest-denominator rational in [lo, hi], lo <= hi. Gives up (nullopt)
// when the denominator passes t_max.
std::optional<std::pair<std::int64_t, std::int64_t>> simplest_in(long double lo, long double hi,
                                                                 std::int64_t t_max) {
  // Track the Moebius map x -> (p0 x + p1) / (q0 x + q1) from the reduced
  // interval back to the original one.
  std::int64_t p0 = 1, p1 = 0, q0 = 0, q1 = 1;
  for (int depth = 0; depth < 90; ++depth) {
    const long double fl = std::floor(lo);
    const long double c = std::ceil(lo);
    if (c <= hi) {
      const auto a = static_cast<std::int64_t>(c);
      const std::int64_t num = p0 * a + p1, den = q0 * a + q1;
      if (den > t_max) return std::nullopt;
      return std::make_pair(num, den);
    }
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t np0 = p0 * a + p1, nq0 = q0 * a + q1;
    p1 = p0;
    q1 = q0;
    p0 = np0;
    q0 = nq0;
    if (q0 > t_max) return std::nullopt;
    const long double nlo = 1.0L / (hi - fl), nhi = 1.0L / (lo - fl);
    lo = nlo;
    hi = nhi;
  }
  return std::nullopt;
}

std::array<std::uint64_t, 9> series_counts(long double log_base, long double log_f,
                                           std::uint64_t n) {
  std::array<std::uint64_t, 9> c{};
  for (std::uint64_t j = 0; j < n; ++j) {
    long double m = frac(log_base + static_cast<long double>(j) * log_f);
    snap(m, slack_for(log_base, log_f, j));
    ++c[digit_of_mantissa(m) - 1];
  }
  return c;
}

ScanRow scan_row(const ScanConfig& c, double percent, double tol) {
  GrowthSeries s{c.base, percent, c.n_elements};
  ScanRow row;
  row.percent = percent;
  row.chi_sqr = chi_sqr_benford(
      series_counts(std::log10(static_cast<long double>(c.base)), s.log10_factor(), c.n_elements));
  row.anomaly = detect_anomalous(percent, c.T_flag, tol);
  return row;
}

void check_scan(const ScanConfig& c) {
  if (!(c.lo_percent < c.hi_percent) || !(c.step > 0) || c.n_elements == 0 || !(c.base > 0) ||
      c.T_flag < 1 || c.lo_percent <= -100) {
    throw Error(ErrorCode::InvalidParameter, "scan needs lo < hi, step > 0, n >= 1, base > 0");
  }
}

}  // namespace

long double GrowthSeries::log10_factor() const {
  return std::log1p(static_cast<long double>(percent) / 100.0L) / std::log(10.0L);
}

void validate(const GrowthSeries& s) {
  if (!(s.base > 0) || !std::isfinite(s.base)) throw Error(ErrorCode::InvalidParameter, "base must be > 0");
  if (!(s.percent > -100) || !std::isfinite(s.percent)) {
    throw Error(ErrorCode::InvalidParameter, "percent must exceed -100");
  }
  if (s.length < 1) throw Error(ErrorCode::InvalidParameter, "length must be >= 1");
}

std::vector<double> generate_series(const GrowthSeries& s) {
  validate(s);
  const double f = 1.0 + s.percent / 100.0;
  std::vector<double> out(s.length);
  for (std::uint64_t j = 0; j < s.length; ++j) {
    out[j] = s.base * std::pow(f, static_cast<double>(j));
    if (!std::isfinite(out[j]) || out[j] == 0.0) {
      throw Error(ErrorCode::Overflow, "element " + std::to_string(j) + " leaves the double range");
    }
  }
  return out;
}

std::vector<double> series_mantissae(const GrowthSeries& s, std::uint64_t* snapped) {
  validate(s);
  const long double lb = std::log10(static_cast<long double>(s.base));
  const long double lf = s.log10_factor();
  std::vector<double> out(s.length);
  std::uint64_t hits = 0;
  for (std::uint64_t j = 0; j < s.length; ++j) {
    long double m = frac(lb + static_cast<long double>(j) * lf);
    if (snap(m, slack_for(lb, lf, j))) ++hits;
    out[j] = static_cast<double>(m);
  }
  if (snapped) *snapped = hits;
  return out;
}

int SeriesLd::distinct_digits() const {
  return static_cast<int>(std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }));
}

SeriesLd series_ld(std::span<const double> values) {
  std::array<std::uint64_t, 9> c{};
  std::uint64_t zeros = 0;
  for (double x : values) {
    if (x == 0.0 || !std::isfinite(x)) {
      ++zeros;
      continue;
    }
    ++c[first_digit(x) - 1];
  }
  SeriesLd r = finish(c);
  r.skipped_zeros = zeros;
  return r;
}

SeriesLd series_ld(const GrowthSeries& s) {
  validate(s);
  const long double lb = std::log10(static_cast<long double>(s.base));
  const long double lf = s.log10_factor();
  std::array<std::uint64_t, 9> c{};
  std::uint64_t hits = 0;
  for (std::uint64_t j = 0; j < s.length; ++j) {
    long double m = frac(lb + static_cast<long double>(j) * lf);
    if (snap(m, slack_for(lb, lf, j))) ++hits;
    ++c[digit_of_mantissa(m) - 1];
  }
  SeriesLd r = finish(c);
  r.snapped = hits;
  return r;
}

AnomalyRecord anomaly_of(std::int64_t L, std::int64_t T) {
  if (T < 1) throw Error(ErrorCode::InvalidParameter, "T must be >= 1");
  if (std::gcd(L < 0 ? -L : L, T) != 1) throw Error(ErrorCode::InvalidParameter, "L/T must be reduced");
  AnomalyRecord r;
  r.L = L;
  r.T = T;
  r.fraction = static_cast<double>(L) / static_cast<double>(T);
  r.percent = static_cast<double>(100.0L * std::expm1(std::log(10.0L) * L / T));
  r.first_power_of_ten_factor = std::pow(10.0, static_cast<double>(L));
  r.verified = true;
  return r;
}

std::optional<AnomalyRecord> detect_anomalous(double percent, std::int64_t T_max, double tol) {
  if (!(percent > -100) || !std::isfinite(percent)) {
    throw Error(ErrorCode::InvalidParameter, "percent must exceed -100");
  }
  if (T_max < 1 || !(tol >= 0)) throw Error(ErrorCode::InvalidParameter, "need T_max >= 1, tol >= 0");
  const long double x = GrowthSeries{1.0, percent, 1}.log10_factor();
  const auto q = simplest_in(x - tol, x + tol, T_max);
  if (!q) return std::nullopt;
  const auto [L, T] = *q;
  if (std::abs(x - static_cast<long double>(L) / T) > tol) return std::nullopt;
  AnomalyRecord r = anomaly_of(L, T);
  // f^T against 10^L, in logs: relative error ~ ln10 * T * |x - L/T|.
  const long double rel = std::expm1(std::abs(std::log(10.0L) * (T * x - L)));
  r.verified = rel <= 10.0L * tol;
  return r;
}

std::vector<AnomalyRecord> enumerate_anomalous(std::span<const std::int64_t> L_set,
                                               std::int64_t T_lo, std::int64_t T_hi) {
  if (T_lo < 1 || T_hi < T_lo) throw Error(ErrorCode::InvalidParameter, "need 1 <= T_lo <= T_hi");
  std::vector<AnomalyRecord> out;
  for (auto L : L_set) {
    if (L < 1) throw Error(ErrorCode::InvalidParameter, "L must be >= 1");
    for (std::int64_t T = T_lo; T <= T_hi; ++T) {
      if (std::gcd(L, T) == 1) out.push_back(anomaly_of(L, T));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const AnomalyRecord& a, const AnomalyRecord& b) { return a.percent < b.percent; });
  return out;
}

std::vector<long double> cumulative_log10_factors(double percent, std::uint64_t count) {
  validate(GrowthSeries{1.0, percent, count});
  const long double lf = GrowthSeries{1.0, percent, 1}.log10_factor();
  std::vector<long double> out(count);
  for (std::uint64_t j = 1; j <= count; ++j) out[j - 1] = static_cast<long double>(j) * lf;
  return out;
}

std::vector<double> cumulative_factors(double percent, std::uint64_t count) {
  const auto logs = cumulative_log10_factors(percent, count);
  std::vector<double> out(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    out[i] = static_cast<double>(std::pow(10.0L, logs[i]));
    if (!std::isfinite(out[i]) || out[i] == 0.0) {
      throw Error(ErrorCode::Overflow, "factor " + std::to_string(i + 1) + " leaves the double range");
    }
  }
  return out;
}

std::vector<double> scan_rates(const ScanConfig& c) {
  check_scan(c);
  const auto steps = static_cast<std::uint64_t>(std::floor((c.hi_percent - c.lo_percent) / c.step + 1e-9));
  std::vector<double> rates(steps + 1);
  // Multiply, never accumulate: 1 + 0.01 i stays the nearest double.
  for (std::uint64_t i = 0; i <= steps; ++i) rates[i] = c.lo_percent + static_cast<double>(i) * c.step;
  return rates;
}

std::vector<ScanRow> rate_scan(const ScanConfig& c) {
  const auto rates = scan_rates(c);
  const double tol = c.tol > 0 ? c.tol : 1.0 / static_cast<double>(c.n_elements);
  std::vector<ScanRow> rows(rates.size());
  const auto count = static_cast<std::int64_t>(rates.size());
#pragma omp parallel for schedule(static) num_threads(c.threads > 0 ? c.threads : omp_default_threads())
  for (std::int64_t i = 0; i < count; ++i) rows[i] = scan_row(c, rates[i], tol);
  return rows;
}

std::vector<ScanRow> rate_scan_serial(const ScanConfig& c) {
  const auto rates = scan_rates(c);
  const double tol = c.tol > 0 ? c.tol : 1.0 / static_cast<double>(c.n_elements);
  std::vector<ScanRow> rows;
  rows.reserve(rates.size());
  for (double p : rates) rows.push_back(scan_row(c, p, tol));
  return rows;
}

std::string scan_csv(std::span<const ScanRow> rows) {
  std::ostringstream os;
  os << "rate_percent,chi_sqr,anomaly_L,anomaly_T\n";
  for (const auto& r : rows) {
    os << format_double(r.percent) << ',' << format_double(r.chi_sqr) << ',';
    if (r.anomaly) os << r.anomaly->L << ',' << r.anomaly->T;
    else os << ',';
    os << '\n';
  }
  return os.str();
}

double equivalent_rate(double percent, int subdivisions) {
  if (subdivisions < 1) throw Error(ErrorCode::InvalidParameter, "subdivisions must be >= 1");
  if (!(percent > -100)) throw Error(ErrorCode::InvalidParameter, "percent must exceed -100");
  if (subdivisions == 1) return percent;
  return static_cast<double>(
      100.0L * std::expm1(std::log1p(static_cast<long double>(percent) / 100.0L) / subdivisions));
}

MultiplicationResult random_multiplication_process(const DistributionModel& factor_model,
                                                   std::uint64_t n, double start,
                                                   std::uint64_t seed, bool divide,
                                                   const ResamplePolicy& policy) {
  if (!(start > 0) || !std::isfinite(start)) throw Error(ErrorCode::InvalidParameter, "start must be > 0");
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  const DistributionModel model = resolve_integer_params(factor_model);
  require_valid(model);
  Rng rng(seed);
  MultiplicationResult r;
  r.log10_values.reserve(n + 1);
  long double lx = std::log10(static_cast<long double>(start));
  r.log10_values.push_back(lx);
  for (std::uint64_t j = 0; j < n; ++j) {
    double f = 0.0;
    for (int attempt = 0;; ++attempt) {
      f = sample(model, rng);
      if (f > 0 && std::isfinite(f)) break;
      if (attempt + 1 >= policy.max_attempts) {
        throw Error(ErrorCode::PolicyExhausted, "factor model keeps producing non-positive values");
      }
      ++r.n_resampled;
    }
    const long double lf = std::log10(static_cast<long double>(f));
    lx += divide ? -lf : lf;
    r.log10_values.push_back(lx);
  }
  // LD of the trajectory after the start value.
  for (std::size_t i = 1; i < r.log10_values.size(); ++i) {
    ++r.counts[digit_of_mantissa(frac(r.log10_values[i])) - 1];
  }
  const SeriesLd s = finish(r.counts);
  r.ld = s.ld;
  r.chi_sqr = s.chi_sqr;
  return r;
}

SeriesLd power_transform_ld(const DistributionModel& model, int exponent, std::uint64_t n,
                            std::uint64_t seed) {
  if (exponent < 1) throw Error(ErrorCode::InvalidParameter, "exponent must be >= 1");
  const DistributionModel m = resolve_integer_params(model);
  require_valid(m);
  Rng rng(seed);
  std::array<std::uint64_t, 9> c{};
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = sample(m, rng);
    if (x == 0.0 || !std::isfinite(x)) {
      ++zeros;
      continue;
    }
    if (exponent == 1) {
      ++c[first_digit(x) - 1];
      continue;
    }
    const long double lx = exponent * std::log10(std::abs(static_cast<long double>(x)));
    ++c[digit_of_mantissa(frac(lx)) - 1];
  }
  SeriesLd r = finish(c);
  r.skipped_zeros = zeros;
  return r;
}

}  // namespace benlab
