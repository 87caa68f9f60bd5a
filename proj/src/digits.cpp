#include "benlab/digits.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "benlab/error.hpp"
#include "benlab/numeric.hpp"

namespace benlab {
namespace {

void check_base(int base) {
  if (base < 2) throw Error(ErrorCode::BadBase, "base must be >= 2");
}

// Powers of ten in extended precision, covering the whole double range.
constexpr int kPow10Min = -350;
constexpr int kPow10Max = 330;

const long double* pow10_table() {
  static const auto* table = [] {
    auto* t = new long double[kPow10Max - kPow10Min + 1];
    for (int e = kPow10Min; e <= kPow10Max; ++e) {
      t[e - kPow10Min] = std::pow(10.0L, static_cast<long double>(e));
    }
    return t;
  }();
  return table;
}

long double power_of(int base, int e) {
  if (base == 10 && e >= kPow10Min && e <= kPow10Max) {
    return pow10_table()[e - kPow10Min];
  }
  if (base == 2) return std::ldexp(1.0L, e);
  return std::pow(static_cast<long double>(base), static_cast<long double>(e));
}

struct Normalized {
  long double y;  // in [1, base)
  int e;
};

Normalized normalize(double ax, int base) {
  int e = static_cast<int>(std::floor(std::log(ax) / std::log(base)));
  long double y = static_cast<long double>(ax) / power_of(base, e);
  while (y >= base) {
    ++e;
    y = static_cast<long double>(ax) / power_of(base, e);
  }
  while (y < 1.0L) {
    --e;
    y = static_cast<long double>(ax) / power_of(base, e);
  }
  return {y, e};
}

// Leading k-digit integer of |x|, with the exponent of its last digit.
// A double that is the nearest representable value of the next digit
// boundary is assigned to that boundary.
struct Leading {
  std::uint64_t value;
  int last_exponent;
};

Leading leading_digits(double ax, int k, int base) {
  const Normalized n = normalize(ax, base);
  const long double scale = power_of(base, k - 1);
  auto p = static_cast<std::uint64_t>(std::floor(n.y * scale));
  int last = n.e - (k - 1);
  const long double next = static_cast<long double>(p + 1) * power_of(base, last);
  if (static_cast<double>(next) == ax) {
    ++p;
    if (p == static_cast<std::uint64_t>(scale * base)) {
      p /= static_cast<std::uint64_t>(base);
      ++last;
    }
  }
  return {p, last};
}

int first_digit_raw(double ax, int base) {
  const Leading l = leading_digits(ax, 1, base);
  return static_cast<int>(l.value);
}

}  // namespace

double DigitDistribution::sum() const {
  return neumaier_sum(probs.begin(), probs.end());
}

DigitDistribution DigitDistribution::benford(int base) {
  check_base(base);
  DigitDistribution out{base, 1, std::vector<double>(base - 1)};
  for (int d = 1; d < base; ++d) out[d] = benford_first(d, base);
  return out;
}

DigitDistribution DigitDistribution::from_counts(std::span<const double> counts,
                                                 int base) {
  DigitDistribution out{base, 1, std::vector<double>(counts.begin(), counts.end())};
  const double total = neumaier_sum(counts.begin(), counts.end());
  if (total > 0) {
    for (auto& p : out.probs) p /= total;
  }
  return out;
}

double linf(const DigitDistribution& a, const DigitDistribution& b) {
  double m = 0.0;
  const std::size_t n = std::min(a.probs.size(), b.probs.size());
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, std::abs(a.probs[i] - b.probs[i]));
  }
  return m;
}

int first_digit(double x, int base, DigitDiagnostics* diag) {
  check_base(base);
  if (x == 0.0) throw Error(ErrorCode::ZeroInput, "first digit of zero");
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite input");
  const double ax = std::abs(x);
  const int d = first_digit_raw(ax, base);
  if (diag != nullptr) {
    ++diag->checked;
    const double lo = std::nextafter(ax, 0.0);
    const double hi = std::nextafter(ax, std::numeric_limits<double>::infinity());
    if ((lo > 0 && first_digit_raw(lo, base) != d) ||
        (std::isfinite(hi) && first_digit_raw(hi, base) != d)) {
      ++diag->boundary_ambiguous;
    }
  }
  return d;
}

std::vector<int> digit_pattern(double x, int k, int base, DigitDiagnostics* diag) {
  check_base(base);
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "pattern length must be >= 1");
  if (x == 0.0) throw Error(ErrorCode::ZeroInput, "digits of zero");
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite input");
  const double limit = std::log(1.8e19) / std::log(base);
  if (k > static_cast<int>(limit)) {
    throw Error(ErrorCode::InvalidParameter, "pattern longer than 64-bit range");
  }
  const double ax = std::abs(x);
  std::uint64_t p = leading_digits(ax, k, base).value;
  if (diag != nullptr) {
    ++diag->checked;
    const double lo = std::nextafter(ax, 0.0);
    const double hi = std::nextafter(ax, std::numeric_limits<double>::infinity());
    if ((lo > 0 && leading_digits(lo, k, base).value != p) ||
        (std::isfinite(hi) && leading_digits(hi, k, base).value != p)) {
      ++diag->boundary_ambiguous;
    }
  }
  std::vector<int> out(k);
  for (int i = k - 1; i >= 0; --i) {
    out[i] = static_cast<int>(p % static_cast<std::uint64_t>(base));
    p /= static_cast<std::uint64_t>(base);
  }
  return out;
}

Mantissa mantissa10(double x) {
  if (x == 0.0) throw Error(ErrorCode::ZeroInput, "mantissa of zero");
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite input");
  const double l = std::log10(std::abs(x));
  double m = l - std::floor(l);
  if (m >= 1.0) m = 0.0;
  return {m};
}

Significand lda(double x, int base) {
  check_base(base);
  if (x == 0.0) throw Error(ErrorCode::ZeroInput, "significand of zero");
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite input");
  const double ax = std::abs(x);
  const Normalized n = normalize(ax, base);
  // Snap to the next power when |x| is the nearest double to it.
  if (static_cast<double>(power_of(base, n.e + 1)) == ax) {
    return {1.0, n.e + 1};
  }
  return {static_cast<double>(n.y), n.e};
}

double benford_first(int d, int base) {
  check_base(base);
  if (d < 1 || d >= base) throw Error(ErrorCode::BadDigit, "digit out of range");
  return std::log1p(1.0 / d) / std::log(static_cast<double>(base));
}

double benford_pattern(std::span<const int> pattern, int base) {
  check_base(base);
  if (pattern.empty()) throw Error(ErrorCode::BadDigit, "empty pattern");
  if (pattern[0] < 1) throw Error(ErrorCode::BadDigit, "pattern starts with 0");
  double value = 0.0;
  for (int d : pattern) {
    if (d < 0 || d >= base) throw Error(ErrorCode::BadDigit, "digit out of range");
    value = value * base + d;
  }
  return std::log1p(1.0 / value) / std::log(static_cast<double>(base));
}

double benford_nth_unconditional(int n, int d, int base) {
  check_base(base);
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "order must be >= 2");
  if (d < 0 || d >= base) throw Error(ErrorCode::BadDigit, "digit out of range");
  const double prefixes = std::pow(static_cast<double>(base), n - 1);
  if (prefixes > 2e8) throw Error(ErrorCode::TooLarge, "order too high for direct summation");
  const auto first = static_cast<std::uint64_t>(std::llround(std::pow(base, n - 2)));
  const auto last = static_cast<std::uint64_t>(std::llround(prefixes));
  const double lb = std::log(static_cast<double>(base));
  NeumaierSum acc;
  for (std::uint64_t p = first; p < last; ++p) {
    const double v = static_cast<double>(p) * base + d;
    acc.add(std::log1p(1.0 / v) / lb);
  }
  return acc.value();
}

double benford_conditional(int n, int d, std::span<const int> prefix, int base) {
  if (static_cast<int>(prefix.size()) != n - 1) {
    throw Error(ErrorCode::BadDigit, "prefix length must be n-1");
  }
  std::vector<int> full(prefix.begin(), prefix.end());
  full.push_back(d);
  const double denom = benford_pattern(prefix, base);
  if (!(denom > 0)) throw Error(ErrorCode::ZeroPrefixProbability, "prefix has zero probability");
  return benford_pattern(full, base) / denom;
}

DigitDistribution benford_nth_distribution(int n, int base) {
  if (n == 1) return DigitDistribution::benford(base);
  DigitDistribution out{base, n, std::vector<double>(base)};
  for (int d = 0; d < base; ++d) out[d] = benford_nth_unconditional(n, d, base);
  return out;
}

std::vector<double> compartment_boundaries(int base) {
  check_base(base);
  std::vector<double> b(base);
  const double lb = std::log(static_cast<double>(base));
  b[0] = 0.0;
  // log_B(d+1) directly: the same number as the cumulative sum of
  // benford_first, without accumulated rounding.
  for (int d = 1; d < base - 1; ++d) b[d] = std::log(static_cast<double>(d + 1)) / lb;
  b[base - 1] = 1.0;
  return b;
}

int compartment_of(double mantissa, int base) {
  check_base(base);
  const double lb = std::log(static_cast<double>(base));
  for (int d = 1; d < base - 1; ++d) {
    if (mantissa < std::log(static_cast<double>(d + 1)) / lb) return d;
  }
  return base - 1;
}

std::array<double, 10> digital_usage(int num_digits) {
  if (num_digits < 1) throw Error(ErrorCode::InvalidParameter, "need at least one digit");
  std::array<double, 10> out{};
  for (int order = 1; order <= num_digits; ++order) {
    for (int d = 0; d < 10; ++d) {
      double p;
      if (order == 1) {
        p = d == 0 ? 0.0 : benford_first(d);
      } else if (order <= 3) {
        p = benford_nth_unconditional(order, d);
      } else {
        p = 0.1;
      }
      out[d] += p;
    }
  }
  for (auto& v : out) v /= num_digits;
  return out;
}

}  // namespace benlab
