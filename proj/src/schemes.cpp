#include "benlab/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "benlab/error.hpp"
#include "benlab/numeric.hpp"
#include "benlab/rng.hpp"
#include "parallel.hpp"

namespace benlab {
namespace {

constexpr std::int64_t kSchemeChunk = 4096;

using Acc = std::array<NeumaierSum, 9>;

void add_to(Acc& acc, const DigitDistribution& ld, double scale = 1.0) {
  for (int d = 1; d <= 9; ++d) acc[d - 1].add(ld[d] * scale);
}

void add_to(Acc& acc, const Acc& other) {
  for (int i = 0; i < 9; ++i) acc[i].add(other[i]);
}

DigitDistribution mean_of(const Acc& acc, double count) {
  DigitDistribution out{10, 1, std::vector<double>(9)};
  for (int d = 1; d <= 9; ++d) out[d] = acc[d - 1].value() / count;
  return out;
}

void check_interval(std::int64_t lb, std::int64_t ub) {
  if (lb < 1 || ub < lb) {
    throw Error(ErrorCode::BadInterval, "need 1 <= lb <= ub, got [" + std::to_string(lb) + ", " +
                                            std::to_string(ub) + "]");
  }
}

Acc chunk_sum(std::int64_t lb, std::int64_t from, std::int64_t to) {
  Acc acc{};
  for (std::int64_t n = from; n <= to; ++n) add_to(acc, interval_ld(lb, n));
  return acc;
}

}  // namespace

void validate(const SchemeSpec& s) {
  check_interval(s.lb, s.ub_min);
  if (s.ub_max < s.ub_min) throw Error(ErrorCode::BadInterval, "ub_max below ub_min");
  if (s.depth < 1) throw Error(ErrorCode::InvalidParameter, "depth must be >= 1");
  if (s.weighting == SchemeSpec::Weighting::Exponential) {
    if (s.depth != 1) throw Error(ErrorCode::InvalidParameter, "exponential weighting needs depth 1");
    if (!(s.growth_percent > 0)) throw Error(ErrorCode::InvalidParameter, "growth must be > 0");
  }
}

std::array<std::uint64_t, 9> leading_digit_counts(std::uint64_t n) {
  std::array<std::uint64_t, 9> c{};
  for (std::uint64_t p = 1;; p *= 10) {
    for (std::uint64_t d = 1; d <= 9; ++d) {
      const std::uint64_t lo = d * p;
      if (lo > n) break;
      const std::uint64_t hi = std::min(n, (d + 1) * p - 1);
      c[d - 1] += hi - lo + 1;
    }
    if (p > n / 10) break;
  }
  return c;
}

DigitDistribution interval_ld(std::int64_t lb, std::int64_t ub) {
  check_interval(lb, ub);
  const auto hi = leading_digit_counts(static_cast<std::uint64_t>(ub));
  const auto lo = leading_digit_counts(static_cast<std::uint64_t>(lb - 1));
  const double n = static_cast<double>(ub - lb + 1);
  DigitDistribution out{10, 1, std::vector<double>(9)};
  for (int d = 1; d <= 9; ++d) out[d] = static_cast<double>(hi[d - 1] - lo[d - 1]) / n;
  return out;
}

SchemeResult simple_scheme(std::int64_t lb, std::int64_t ub_min, std::int64_t ub_max,
                           int threads) {
  check_interval(lb, ub_min);
  if (ub_max < ub_min) throw Error(ErrorCode::BadInterval, "ub_max below ub_min");
  const std::int64_t count = ub_max - ub_min + 1;
  const std::int64_t chunks = (count + kSchemeChunk - 1) / kSchemeChunk;
  std::vector<Acc> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_default_threads())
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::int64_t from = ub_min + c * kSchemeChunk;
    parts[c] = chunk_sum(lb, from, std::min(ub_max, from + kSchemeChunk - 1));
  }
  Acc total{};
  for (const auto& p : parts) add_to(total, p);
  return {mean_of(total, static_cast<double>(count)), true};
}

SchemeResult simple_scheme_serial(std::int64_t lb, std::int64_t ub_min, std::int64_t ub_max) {
  check_interval(lb, ub_min);
  if (ub_max < ub_min) throw Error(ErrorCode::BadInterval, "ub_max below ub_min");
  const std::int64_t count = ub_max - ub_min + 1;
  Acc total{};
  for (std::int64_t from = ub_min; from <= ub_max; from += kSchemeChunk) {
    add_to(total, chunk_sum(lb, from, std::min(ub_max, from + kSchemeChunk - 1)));
  }
  return {mean_of(total, static_cast<double>(count)), true};
}

SchemeResult iterated_scheme(std::int64_t lb, std::int64_t inner_ub_min, std::int64_t top_lo,
                             std::int64_t top_hi, int depth, std::int64_t middle_ub_min) {
  if (depth == 1) return simple_scheme(lb, top_lo, top_hi);
  if (depth < 1) throw Error(ErrorCode::InvalidParameter, "depth must be >= 1");
  if (depth > 3) throw Error(ErrorCode::DepthUnsupported, "iterated schemes stop at depth 3");
  if (middle_ub_min == 0) middle_ub_min = inner_ub_min;
  check_interval(lb, inner_ub_min);
  if (top_hi < top_lo) throw Error(ErrorCode::BadInterval, "empty top range");
  if (top_lo < inner_ub_min || (depth == 3 && (middle_ub_min < inner_ub_min || top_lo < middle_ub_min))) {
    throw Error(ErrorCode::BadInterval, "ranges must nest: inner min <= middle min <= top start");
  }
  // Running sums replace the nested averages: inner holds the sum of
  // interval_ld over [inner_ub_min, T], middle the sum of simple(T).
  Acc inner{}, middle{}, outer{};
  for (std::int64_t t = inner_ub_min; t <= top_hi; ++t) {
    add_to(inner, interval_ld(lb, t));
    const double n_inner = static_cast<double>(t - inner_ub_min + 1);
    if (depth == 2) {
      if (t >= top_lo) {
        for (int i = 0; i < 9; ++i) outer[i].add(inner[i].value() / n_inner);
      }
      continue;
    }
    if (t >= middle_ub_min) {
      for (int i = 0; i < 9; ++i) middle[i].add(inner[i].value() / n_inner);
      const double n_mid = static_cast<double>(t - middle_ub_min + 1);
      if (t >= top_lo) {
        for (int i = 0; i < 9; ++i) outer[i].add(middle[i].value() / n_mid);
      }
    }
  }
  return {mean_of(outer, static_cast<double>(top_hi - top_lo + 1)), true};
}

std::vector<std::int64_t> twist_upper_bounds(double growth_percent, std::int64_t ub_start,
                                             std::int64_t ub_end) {
  if (!(growth_percent > 0) || !std::isfinite(growth_percent)) {
    throw Error(ErrorCode::InvalidParameter, "growth must be > 0");
  }
  check_interval(1, ub_start);
  if (ub_end < ub_start) throw Error(ErrorCode::BadInterval, "ub_end below ub_start");
  const double r = 1.0 + growth_percent / 100.0;
  std::vector<std::int64_t> out;
  for (int j = 0;; ++j) {
    const double v = static_cast<double>(ub_start) * std::pow(r, j);
    // A hair of slack so exact integer products are not floored one below.
    const auto ub = static_cast<std::int64_t>(std::floor(v * (1 + 8 * std::numeric_limits<double>::epsilon())));
    if (ub > ub_end) break;
    if (out.empty() || out.back() != ub) out.push_back(ub);
  }
  return out;
}

SchemeResult benford_twist_scheme(double growth_percent, std::int64_t ub_start,
                                  std::int64_t ub_end, std::int64_t lb) {
  const auto bounds = twist_upper_bounds(growth_percent, ub_start, ub_end);
  check_interval(lb, bounds.front());
  Acc acc{};
  for (auto ub : bounds) add_to(acc, interval_ld(lb, ub));
  return {mean_of(acc, static_cast<double>(bounds.size())), true};
}

SchemeResult evaluate(const SchemeSpec& s) {
  validate(s);
  if (s.weighting == SchemeSpec::Weighting::Exponential) {
    return benford_twist_scheme(s.growth_percent, s.ub_min, s.ub_max, s.lb);
  }
  if (s.depth == 1) return simple_scheme(s.lb, s.ub_min, s.ub_max);
  return iterated_scheme(s.lb, s.ub_min, s.ub_min, s.ub_max, s.depth);
}

SchemeResult fixed_width_scheme(std::int64_t a_min, std::int64_t a_max, std::int64_t width) {
  check_interval(a_min, a_max);
  if (width < 1) throw Error(ErrorCode::BadInterval, "width must be >= 1");
  Acc acc{};
  for (std::int64_t a = a_min; a <= a_max; ++a) add_to(acc, interval_ld(a, a + width - 1));
  return {mean_of(acc, static_cast<double>(a_max - a_min + 1)), true};
}

double SchemeDataset::total_weight() const {
  return neumaier_sum(weights.begin(), weights.end());
}

DigitDistribution SchemeDataset::ld() const {
  std::array<double, 9> mass{};
  for (std::size_t i = 0; i < values.size(); ++i) {
    mass[first_digit(static_cast<double>(values[i])) - 1] += weights[i];
  }
  return DigitDistribution::from_counts(mass);
}

SchemeDataset scheme_dataset(const SchemeSpec& spec, const Duplication& dup, std::uint64_t cap) {
  validate(spec);
  if (spec.depth != 1) throw Error(ErrorCode::InvalidParameter, "datasets expand simple schemes only");
  std::vector<std::int64_t> ubs;
  if (spec.weighting == SchemeSpec::Weighting::Exponential) {
    ubs = twist_upper_bounds(spec.growth_percent, spec.ub_min, spec.ub_max);
  } else {
    ubs.resize(static_cast<std::size_t>(spec.ub_max - spec.ub_min + 1));
    std::iota(ubs.begin(), ubs.end(), spec.ub_min);
  }
  const std::int64_t top = ubs.back();
  const std::int64_t width = top - spec.lb + 1;

  long double total = 0;
  for (auto ub : ubs) {
    total += dup.kind == Duplication::Kind::PadRandom ? width : ub - spec.lb + 1;
  }
  if (total > static_cast<long double>(cap)) {
    throw Error(ErrorCode::TooLarge, "dataset would hold more than " + std::to_string(cap) + " values");
  }

  SchemeDataset out;
  out.histogram_start = spec.lb;
  out.histogram.assign(static_cast<std::size_t>(width), 0.0);
  out.values.reserve(static_cast<std::size_t>(total));
  out.weights.reserve(static_cast<std::size_t>(total));
  auto push = [&](std::int64_t v, double w) {
    out.values.push_back(v);
    out.weights.push_back(w);
    out.histogram[static_cast<std::size_t>(v - spec.lb)] += w;
  };
  std::vector<std::int64_t> pool;
  for (std::size_t row = 0; row < ubs.size(); ++row) {
    const std::int64_t len = ubs[row] - spec.lb + 1;
    if (dup.kind == Duplication::Kind::FactorWeighted) {
      const double f = static_cast<double>(width) / static_cast<double>(len);
      for (std::int64_t v = spec.lb; v <= ubs[row]; ++v) push(v, f);
      continue;
    }
    for (std::int64_t rep = 0; rep < width / len; ++rep) {
      for (std::int64_t v = spec.lb; v <= ubs[row]; ++v) push(v, 1.0);
    }
    // Remainder: distinct picks from the row, partial Fisher-Yates.
    const std::int64_t rem = width % len;
    if (rem == 0) continue;
    Rng rng(stream_seed(dup.seed, row));
    pool.resize(static_cast<std::size_t>(len));
    std::iota(pool.begin(), pool.end(), spec.lb);
    for (std::int64_t i = 0; i < rem; ++i) {
      const auto j = i + static_cast<std::int64_t>(rng.uniform() * static_cast<double>(len - i));
      std::swap(pool[i], pool[std::min(j, len - 1)]);
    }
    std::sort(pool.begin(), pool.begin() + rem);
    for (std::int64_t i = 0; i < rem; ++i) push(pool[i], 1.0);
  }
  return out;
}

}  // namespace benlab
