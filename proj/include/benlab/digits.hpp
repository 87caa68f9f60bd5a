#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace benlab {

// Probability vector over digit values. First-order distributions cover
// digits 1..base-1; higher-order (n-th digit) distributions cover 0..base-1.
struct DigitDistribution {
  int base = 10;
  int order = 1;
  std::vector<double> probs;

  int min_digit() const { return order == 1 ? 1 : 0; }
  int max_digit() const { return base - 1; }
  double operator[](int digit) const { return probs[digit - min_digit()]; }
  double& operator[](int digit) { return probs[digit - min_digit()]; }
  double sum() const;

  static DigitDistribution benford(int base = 10);
  static DigitDistribution from_counts(std::span<const double> counts,
                                       int base = 10);
};

// Max absolute per-digit difference between two distributions of equal shape.
double linf(const DigitDistribution& a, const DigitDistribution& b);

struct Mantissa {
  double value = 0.0;
};

struct Significand {
  double value = 1.0;
  int exponent = 0;
};

// Counts inputs whose digit changes under a one-ulp perturbation. Callers
// that care about boundary mass pass one in; nothing is tracked otherwise.
struct DigitDiagnostics {
  std::uint64_t checked = 0;
  std::uint64_t boundary_ambiguous = 0;
};

int first_digit(double x, int base = 10, DigitDiagnostics* diag = nullptr);
std::vector<int> digit_pattern(double x, int k, int base = 10,
                               DigitDiagnostics* diag = nullptr);
Mantissa mantissa10(double x);
Significand lda(double x, int base = 10);

double benford_first(int d, int base = 10);
double benford_pattern(std::span<const int> pattern, int base = 10);
double benford_nth_unconditional(int n, int d, int base = 10);
double benford_conditional(int n, int d, std::span<const int> prefix,
                           int base = 10);
DigitDistribution benford_nth_distribution(int n, int base = 10);

// base boundaries b[0]=0 < ... < b[base-1]=1; digit d owns [b[d-1], b[d]).
std::vector<double> compartment_boundaries(int base = 10);
// Digit whose compartment holds mantissa m (half-open convention).
int compartment_of(double mantissa, int base = 10);

// Average digit usage over num_digits positions; orders >= 4 taken as uniform.
std::array<double, 10> digital_usage(int num_digits);

}  // namespace benlab
