#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "benlab/digits.hpp"
#include "benlab/rng.hpp"

namespace benlab {

// Sum over digits of (O - n p)^2 / (n p).
double chi_sqr(std::span<const double> observed, const DigitDistribution& expected);
double chi_sqr(std::span<const std::uint64_t> observed, const DigitDistribution& expected);
double chi_sqr_benford(std::span<const std::uint64_t> first_digit_counts);

// First-digit counts (index d-1) of the nonzero finite values.
std::array<std::uint64_t, 9> first_digit_counts(std::span<const double> values);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;  // asymptotic, at the stated significance
  bool pass = false;
  std::size_t n = 0;
};

// KS distance between the empirical mantissa CDF and the uniform CDF.
KsResult mantissa_uniformity_test(std::span<const double> values, double alpha = 0.01);
double ks_critical(std::size_t n, double alpha = 0.01);

struct AllotmentResult {
  std::array<double, 9> masses{};
  double max_deviation = 0.0;
  double chi_sqr = 0.0;
  bool pass = false;  // chi-square below the 8-dof critical value
  std::size_t n = 0;
};

AllotmentResult compartmental_allotment_test(std::span<const double> values,
                                             double alpha = 0.01);

// Redraws every mantissa inside the compartment it already occupies, at
// lo + (hi - lo) * U^skew. First digits are untouched; for skew != 1 the
// mantissae pile up toward the low edge of each compartment.
std::vector<double> reshuffle_within_compartments(std::span<const double> values,
                                                  std::uint64_t seed, double skew = 3.0);

struct ScaleDelta {
  double factor = 1.0;
  double chi_sqr = 0.0;
  double delta = 0.0;
};

std::vector<ScaleDelta> scale_invariance_probe(std::span<const double> values,
                                               std::span<const double> factors);

struct ConformityConfig {
  double alpha = 0.01;
  std::size_t min_n = 1000;       // below: subset warning
  double min_decades = 2.0;       // value range narrower: subset warning
};

struct ConformityReport {
  std::size_t n = 0;       // values supplied
  std::size_t n_used = 0;  // nonzero finite values tallied
  std::size_t skipped_zeros = 0;
  std::size_t skipped_nonfinite = 0;
  std::array<std::uint64_t, 9> first_counts{};
  std::array<std::uint64_t, 10> second_counts{};
  std::array<std::uint64_t, 10> third_counts{};
  std::size_t excluded_second = 0;  // too few significant digits
  std::size_t excluded_third = 0;
  std::optional<double> chi_sqr_first;
  double chi_sqr_critical = 0.0;
  std::optional<double> l_inf;
  std::optional<double> l1;
  std::optional<KsResult> mantissa_ks;
  std::optional<std::array<double, 9>> compartment_masses;
  double decades_spanned = 0.0;
  std::vector<std::string> annotations;
};

ConformityReport report(std::span<const double> values, const ConformityConfig& config = {});

// Significant digits in the shortest round-trip decimal form of x.
int significant_digits(double x);

}  // namespace benlab
