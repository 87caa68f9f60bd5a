#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "benlab/digits.hpp"

namespace benlab {

struct SchemeSpec {
  enum class Weighting { Uniform, Exponential };
  std::int64_t lb = 1;
  std::int64_t ub_min = 1;
  std::int64_t ub_max = 9;
  int depth = 1;
  Weighting weighting = Weighting::Uniform;
  double growth_percent = 0.0;  // Exponential only
};

void validate(const SchemeSpec& spec);

struct SchemeResult {
  DigitDistribution ld;
  bool exact = true;
};

// Leading-digit counts among 1..n, by digit blocks.
std::array<std::uint64_t, 9> leading_digit_counts(std::uint64_t n);

// Discrete uniform on [lb, ub].
DigitDistribution interval_ld(std::int64_t lb, std::int64_t ub);

// Mean of interval_ld(lb, N) for N in [ub_min, ub_max]. Blocks are summed in
// a fixed order, so the thread count never changes the result.
SchemeResult simple_scheme(std::int64_t lb, std::int64_t ub_min, std::int64_t ub_max,
                           int threads = 0);
SchemeResult simple_scheme_serial(std::int64_t lb, std::int64_t ub_min, std::int64_t ub_max);

// depth 2: mean over T in [top_lo, top_hi] of simple_scheme(lb, inner_ub_min, T).
// depth 3: mean over top in [top_lo, top_hi] of the depth-2 scheme whose top
// range is [middle_ub_min, top]; middle_ub_min defaults to inner_ub_min.
SchemeResult iterated_scheme(std::int64_t lb, std::int64_t inner_ub_min, std::int64_t top_lo,
                             std::int64_t top_hi, int depth, std::int64_t middle_ub_min = 0);

// Upper bounds floor(ub_start * (1 + g/100)^j) up to ub_end, duplicates dropped.
std::vector<std::int64_t> twist_upper_bounds(double growth_percent, std::int64_t ub_start,
                                             std::int64_t ub_end);
SchemeResult benford_twist_scheme(double growth_percent, std::int64_t ub_start,
                                  std::int64_t ub_end, std::int64_t lb = 1);

SchemeResult evaluate(const SchemeSpec& spec);

// Equal-width windows [a, a + width - 1] for a in [a_min, a_max], averaged.
SchemeResult fixed_width_scheme(std::int64_t a_min, std::int64_t a_max, std::int64_t width);

struct Duplication {
  enum class Kind { FactorWeighted, PadRandom };
  Kind kind = Kind::PadRandom;
  std::uint64_t seed = 1;
};

struct SchemeDataset {
  // One row per upper bound. PadRandom rows hold max-UB entries each: full
  // repeats of lb..UB, then distinct random picks. FactorWeighted rows hold
  // lb..UB once with every entry weighted by max-UB / UB.
  std::vector<std::int64_t> values;
  std::vector<double> weights;
  // Weighted frequency of each integer lb..max-UB.
  std::vector<double> histogram;
  std::int64_t histogram_start = 1;

  double total_weight() const;
  DigitDistribution ld() const;
};

inline constexpr std::uint64_t kDatasetCap = 10'000'000;

SchemeDataset scheme_dataset(const SchemeSpec& spec, const Duplication& dup,
                             std::uint64_t cap = kDatasetCap);

}  // namespace benlab
