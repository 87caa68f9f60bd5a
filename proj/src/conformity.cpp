#include "benlab/conformity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "benlab/error.hpp"
#include "benlab/numeric.hpp"

namespace benlab {
namespace {

bool usable(double x) { return x != 0.0 && std::isfinite(x); }

std::vector<double> sorted_mantissae(std::span<const double> values) {
  std::vector<double> m;
  m.reserve(values.size());
  for (double x : values) {
    if (usable(x)) m.push_back(mantissa10(x).value);
  }
  std::sort(m.begin(), m.end());
  return m;
}

double ks_uniform(const std::vector<double>& sorted) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double u = sorted[i];
    d = std::max(d, std::max((i + 1) / n - u, u - i / n));
  }
  return d;
}

}  // namespace

double chi_sqr(std::span<const double> observed, const DigitDistribution& expected) {
  if (observed.size() != expected.probs.size()) {
    throw Error(ErrorCode::InvalidParameter, "observed and expected differ in length");
  }
  const double n = neumaier_sum(observed.begin(), observed.end());
  if (!(n > 0)) throw Error(ErrorCode::EmptyInput, "chi-square of an empty tally");
  NeumaierSum acc;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * expected.probs[i];
    if (e <= 0) {
      if (observed[i] > 0) throw Error(ErrorCode::InvalidParameter, "zero expected cell with observations");
      continue;
    }
    const double diff = observed[i] - e;
    acc.add(diff * diff / e);
  }
  return acc.value();
}

double chi_sqr(std::span<const std::uint64_t> observed, const DigitDistribution& expected) {
  std::vector<double> o(observed.begin(), observed.end());
  return chi_sqr(o, expected);
}

double chi_sqr_benford(std::span<const std::uint64_t> counts) {
  return chi_sqr(counts, DigitDistribution::benford(10));
}

std::array<std::uint64_t, 9> first_digit_counts(std::span<const double> values) {
  std::array<std::uint64_t, 9> c{};
  for (double x : values) {
    if (usable(x)) ++c[first_digit(x) - 1];
  }
  return c;
}

double ks_critical(std::size_t n, double alpha) {
  // Asymptotic Kolmogorov quantile: sqrt(-ln(alpha/2)/2)/sqrt(n).
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

KsResult mantissa_uniformity_test(std::span<const double> values, double alpha) {
  const auto m = sorted_mantissae(values);
  if (m.empty()) throw Error(ErrorCode::EmptyInput, "no nonzero values");
  KsResult r;
  r.n = m.size();
  r.statistic = ks_uniform(m);
  r.critical = ks_critical(r.n, alpha);
  r.pass = r.statistic <= r.critical;
  return r;
}

AllotmentResult compartmental_allotment_test(std::span<const double> values, double alpha) {
  AllotmentResult r;
  std::array<double, 9> counts{};
  for (double x : values) {
    if (!usable(x)) continue;
    ++counts[compartment_of(mantissa10(x).value) - 1];
    ++r.n;
  }
  if (r.n == 0) throw Error(ErrorCode::EmptyInput, "no nonzero values");
  for (int d = 1; d <= 9; ++d) {
    r.masses[d - 1] = counts[d - 1] / static_cast<double>(r.n);
    r.max_deviation = std::max(r.max_deviation, std::abs(r.masses[d - 1] - benford_first(d)));
  }
  r.chi_sqr = chi_sqr(counts, DigitDistribution::benford(10));
  r.pass = r.chi_sqr <= chi_square_critical(alpha, 8);
  return r;
}

std::vector<double> reshuffle_within_compartments(std::span<const double> values,
                                                  std::uint64_t seed, double skew) {
  Rng rng(seed);
  const auto bounds = compartment_boundaries(10);
  std::vector<double> out;
  out.reserve(values.size());
  for (double x : values) {
    if (!usable(x)) {
      out.push_back(x);
      continue;
    }
    const int d = first_digit(x);
    const double e = std::floor(std::log10(std::abs(x)));
    const double lo = bounds[d - 1], hi = bounds[d];
    const double m = lo + (hi - lo) * std::pow(rng.uniform(), skew);
    double y = std::copysign(std::pow(10.0, e + m), x);
    // Rounding may push a value sitting on the low edge into the previous digit.
    while (first_digit(y) != d) y = std::nextafter(y, 2 * y);
    out.push_back(y);
  }
  return out;
}

std::vector<ScaleDelta> scale_invariance_probe(std::span<const double> values,
                                               std::span<const double> factors) {
  const auto base_counts = first_digit_counts(values);
  std::uint64_t total = 0;
  for (auto c : base_counts) total += c;
  if (total == 0) throw Error(ErrorCode::EmptyInput, "no nonzero values");
  const double base_chi = chi_sqr_benford(base_counts);
  std::vector<ScaleDelta> out;
  std::vector<double> scaled(values.size());
  for (double c : factors) {
    if (!(c > 0)) throw Error(ErrorCode::InvalidParameter, "factors must be positive");
    for (std::size_t i = 0; i < values.size(); ++i) scaled[i] = values[i] * c;
    const double chi = chi_sqr_benford(first_digit_counts(scaled));
    out.push_back({c, chi, chi - base_chi});
  }
  return out;
}

int significant_digits(double x) {
  if (!usable(x)) return 0;
  const std::string s = format_double(std::abs(x));
  std::string mant = s.substr(0, s.find_first_of("eE"));
  const bool has_exp = mant.size() != s.size();
  const auto dot = mant.find('.');
  std::string digits;
  for (char c : mant) {
    if (c != '.') digits.push_back(c);
  }
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos) return 0;
  digits.erase(0, first);
  // Trailing zeros only carry information when they sit left of the point
  // in plain notation (the 0s of 500 count, those of 5e2 do not).
  if (dot != std::string::npos || has_exp) {
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
  }
  return static_cast<int>(digits.size());
}

ConformityReport report(std::span<const double> values, const ConformityConfig& config) {
  ConformityReport r;
  r.chi_sqr_critical = chi_square_critical(config.alpha, 8);
  std::vector<double> kept;
  kept.reserve(values.size());
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double x : values) {
    if (x == 0.0) {
      ++r.skipped_zeros;
      continue;
    }
    if (!std::isfinite(x)) {
      ++r.skipped_nonfinite;
      continue;
    }
    kept.push_back(x);
    const double ax = std::abs(x);
    lo = std::min(lo, ax);
    hi = std::max(hi, ax);
    const int sig = significant_digits(x);
    const auto pat = digit_pattern(x, std::min(3, std::max(1, sig)));
    ++r.first_counts[pat[0] - 1];
    if (sig >= 2) ++r.second_counts[pat[1]]; else ++r.excluded_second;
    if (sig >= 3) ++r.third_counts[pat[2]]; else ++r.excluded_third;
  }
  r.n = values.size();
  r.n_used = kept.size();
  if (r.n_used == 0) {
    r.annotations.push_back("no nonzero values; statistics are null");
    return r;
  }
  r.decades_spanned = std::log10(hi / lo);
  r.chi_sqr_first = chi_sqr_benford(r.first_counts);
  const auto benford = DigitDistribution::benford(10);
  double linf_v = 0.0, l1_v = 0.0;
  for (int d = 1; d <= 9; ++d) {
    const double dev =
        std::abs(r.first_counts[d - 1] / static_cast<double>(r.n_used) - benford[d]);
    linf_v = std::max(linf_v, dev);
    l1_v += dev;
  }
  r.l_inf = linf_v;
  r.l1 = l1_v;
  r.mantissa_ks = mantissa_uniformity_test(kept, config.alpha);
  r.compartment_masses = compartmental_allotment_test(kept, config.alpha).masses;
  if (r.n_used < config.min_n) {
    r.annotations.push_back("small sample (n < " + std::to_string(config.min_n) +
                            "): chi-square on a subset can mislead");
  }
  if (r.decades_spanned < config.min_decades) {
    r.annotations.push_back("values span fewer than " + format_double(config.min_decades) +
                            " decades: digit law not expected");
  }
  return r;
}

}  // namespace benlab
