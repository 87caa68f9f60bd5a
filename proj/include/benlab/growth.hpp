#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "benlab/chain.hpp"
#include "benlab/digits.hpp"
#include "benlab/distributions.hpp"

namespace benlab {

struct GrowthSeries {
  double base = 1.0;
  double percent = 0.0;  // factor 1 + percent/100; above -100
  std::uint64_t length = 1;

  // log10 of the factor, from log1p so small rates keep their digits.
  long double log10_factor() const;
};

void validate(const GrowthSeries& s);

// B * f^j for j = 0..length-1; throws Overflow if an element leaves the
// double range (use the log-space routines for long series).
std::vector<double> generate_series(const GrowthSeries& s);

// frac(log10 B + j log10 f). A value within rounding distance of a digit
// boundary is placed on the boundary, i.e. in the upper compartment, and
// counted in `snapped`.
std::vector<double> series_mantissae(const GrowthSeries& s, std::uint64_t* snapped = nullptr);

struct SeriesLd {
  std::array<std::uint64_t, 9> counts{};
  DigitDistribution ld;
  double chi_sqr = 0.0;
  std::uint64_t n = 0;
  std::uint64_t skipped_zeros = 0;
  std::uint64_t snapped = 0;

  int distinct_digits() const;
};

SeriesLd series_ld(std::span<const double> values);
SeriesLd series_ld(const GrowthSeries& s);

struct AnomalyRecord {
  std::int64_t L = 0;
  std::int64_t T = 1;
  double fraction = 0.0;  // L / T
  double percent = 0.0;   // 100 (10^(L/T) - 1)
  double first_power_of_ten_factor = 1.0;  // 10^L
  // (1 + percent/100)^T within relative 10 tol of 10^L, for the input rate.
  bool verified = false;
};

AnomalyRecord anomaly_of(std::int64_t L, std::int64_t T);

// Smallest-denominator rational within tol of log10(1 + percent/100), if
// its denominator is at most T_max.
std::optional<AnomalyRecord> detect_anomalous(double percent, std::int64_t T_max,
                                              double tol = 1e-6);

// Reduced pairs only, sorted by percent.
std::vector<AnomalyRecord> enumerate_anomalous(std::span<const std::int64_t> L_set,
                                               std::int64_t T_lo, std::int64_t T_hi);

// (1 + P/100)^j for j = 1..count; Overflow when a factor is not finite.
std::vector<double> cumulative_factors(double percent, std::uint64_t count);
// j log10(1 + P/100), never overflows.
std::vector<long double> cumulative_log10_factors(double percent, std::uint64_t count);

struct ScanConfig {
  double lo_percent = 1.0;
  double hi_percent = 600.0;
  double step = 0.01;
  std::uint64_t n_elements = 1000;
  double base = 3.0;
  std::int64_t T_flag = 100;
  double tol = 0.0;  // 0: 1 / n_elements
  int threads = 0;
};

struct ScanRow {
  double percent = 0.0;
  double chi_sqr = 0.0;
  std::optional<AnomalyRecord> anomaly;
};

std::vector<double> scan_rates(const ScanConfig& c);
std::vector<ScanRow> rate_scan(const ScanConfig& c);
std::vector<ScanRow> rate_scan_serial(const ScanConfig& c);
// rate_percent,chi_sqr,anomaly_L,anomaly_T
std::string scan_csv(std::span<const ScanRow> rows);

double equivalent_rate(double percent, int subdivisions);

struct MultiplicationResult {
  std::vector<long double> log10_values;  // trajectory, start included
  std::array<std::uint64_t, 9> counts{};
  DigitDistribution ld;
  double chi_sqr = 0.0;
  std::uint64_t n_resampled = 0;
};

// x_{j+1} = x_j * factor_j (or x_j / factor_j), tracked in log space.
MultiplicationResult random_multiplication_process(const DistributionModel& factor_model,
                                                   std::uint64_t n, double start,
                                                   std::uint64_t seed, bool divide = false,
                                                   const ResamplePolicy& policy = {});

// LD of x^N for x drawn from the model, via N log10|x|.
SeriesLd power_transform_ld(const DistributionModel& model, int exponent, std::uint64_t n,
                            std::uint64_t seed);

}  // namespace benlab
