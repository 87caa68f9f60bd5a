#include <doctest.h>

#include <cmath>
#include <vector>

#include "benlab/digits.hpp"
#include "benlab/error.hpp"

using namespace benlab;

TEST_CASE("first_digit of examples") {
  CHECK(first_digit(567.34) == 5);
  CHECK(first_digit(0.0367) == 3);
  CHECK(first_digit(-345.23) == 3);
  CHECK(first_digit(1.0) == 1);
  CHECK(first_digit(9.999999) == 9);
  CHECK(first_digit(1e-300) == 1);
  CHECK(first_digit(5e-324) == 5);  // the nearest double to the boundary 5e-324 counts as on it
  CHECK(first_digit(1.7976931348623157e308) == 1);
  CHECK(first_digit(7.0, 8) == 7);
  CHECK(first_digit(8.0, 8) == 1);
  CHECK(first_digit(5.0, 2) == 1);
}

TEST_CASE("first_digit rejects zero, nonfinite and bad bases") {
  CHECK_THROWS_AS(first_digit(0.0), Error);
  try {
    first_digit(0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInput);
  }
  CHECK_THROWS_AS(first_digit(INFINITY), Error);
  CHECK_THROWS_AS(first_digit(NAN), Error);
  CHECK_THROWS_AS(first_digit(3.0, 1), Error);
}

TEST_CASE("exact powers of ten land on digit 1") {
  for (int k = -30; k <= 30; ++k) {
    const double x = std::pow(10.0, k);
    INFO("k = " << k);
    CHECK(first_digit(x) == 1);
  }
}

TEST_CASE("boundary diagnostics count ambiguous inputs") {
  DigitDiagnostics diag;
  first_digit(2.0, 10, &diag);
  first_digit(2.5, 10, &diag);
  CHECK(diag.checked == 2);
  CHECK(diag.boundary_ambiguous == 1);
}

TEST_CASE("digit_pattern") {
  CHECK(digit_pattern(4782, 3) == std::vector<int>{4, 7, 8});
  CHECK(digit_pattern(1.0, 3) == std::vector<int>{1, 0, 0});
  CHECK(digit_pattern(0.0314, 2) == std::vector<int>{3, 1});
  CHECK(digit_pattern(314, 3) == digit_pattern(0.0314, 3));
  for (double x : {1.2345, 98765.4, 0.000777, 3e200}) {
    for (int k = 1; k <= 5; ++k) CHECK(digit_pattern(x, k).front() == first_digit(x));
  }
}

TEST_CASE("mantissa10") {
  CHECK(mantissa10(4782).value == doctest::Approx(mantissa10(4.782).value).epsilon(1e-13));
  CHECK(mantissa10(0.2).value == doctest::Approx(0.3010299957).epsilon(1e-10));
  CHECK(mantissa10(100).value == 0.0);
  CHECK(mantissa10(1e-5).value == 0.0);
  for (int m = -8; m <= 8; ++m) {
    const double a = mantissa10(3.7).value;
    const double b = mantissa10(3.7 * std::pow(10.0, m)).value;
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("lda") {
  auto s = lda(314);
  CHECK(s.value == doctest::Approx(3.14));
  CHECK(s.exponent == 2);
  s = lda(0.0314);
  CHECK(s.value == doctest::Approx(3.14));
  CHECK(s.exponent == -2);
  s = lda(1.0);
  CHECK(s.value == 1.0);
  CHECK(s.exponent == 0);
}

TEST_CASE("benford_first") {
  CHECK(benford_first(1) == doctest::Approx(0.30103).epsilon(1e-5));
  CHECK(benford_first(9) == doctest::Approx(0.04576).epsilon(1e-4));
  CHECK(benford_first(1, 2) == 1.0);
  for (int b = 2; b <= 36; ++b) {
    double s = 0;
    for (int d = 1; d < b; ++d) s += benford_first(d, b);
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(benford_first(0), Error);
  CHECK_THROWS_AS(benford_first(10), Error);
}

TEST_CASE("benford_pattern") {
  const std::vector<int> one{1};
  CHECK(benford_pattern(one) == doctest::Approx(benford_first(1)));
  const std::vector<int> p{3, 1, 4};
  CHECK(benford_pattern(p) == doctest::Approx(std::log10(1.0 + 1.0 / 314)));
  double s = 0;
  for (int a = 1; a <= 9; ++a)
    for (int b = 0; b <= 9; ++b) {
      const std::vector<int> q{a, b};
      s += benford_pattern(q);
    }
  CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("higher-order digits") {
  CHECK(benford_nth_unconditional(2, 5) == doctest::Approx(0.097).epsilon(0.005));
  CHECK(benford_nth_unconditional(2, 2) == doctest::Approx(0.109).epsilon(0.005));
  CHECK(benford_nth_unconditional(3, 0) == doctest::Approx(0.102).epsilon(0.005));

  // Brute force over the nine first digits.
  for (int d = 0; d <= 9; ++d) {
    double s = 0;
    for (int a = 1; a <= 9; ++a) s += std::log10(1.0 + 1.0 / (10 * a + d));
    CHECK(std::abs(benford_nth_unconditional(2, d) - s) < 1e-15);
  }
  double dev = 0;
  for (int d = 0; d <= 9; ++d) dev = std::max(dev, std::abs(benford_nth_unconditional(4, d) - 0.1));
  CHECK(dev < 0.002);
  CHECK(benford_nth_distribution(3).sum() == doctest::Approx(1.0));
}

TEST_CASE("conditional digit law") {
  const std::vector<int> one{1}, nine{9}, seven{7};
  CHECK(std::abs(benford_conditional(2, 2, one) - 0.115) < 0.001);
  CHECK(std::abs(benford_conditional(2, 2, nine) - 0.103) < 0.001);
  double s = 0;
  for (int d = 0; d <= 9; ++d) s += benford_conditional(2, d, seven);
  CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("compartments") {
  const auto b = compartment_boundaries();
  REQUIRE(b.size() == 10);
  CHECK(b[0] == 0.0);
  CHECK(b[1] == doctest::Approx(0.301).epsilon(1e-3));
  CHECK(b[9] == 1.0);
  CHECK(compartment_boundaries(2) == std::vector<double>{0.0, 1.0});
  // Half-open: the boundary belongs to the upper digit.
  CHECK(compartment_of(b[1]) == 2);
  CHECK(compartment_of(0.0) == 1);
  CHECK(compartment_of(0.9999999) == 9);
  for (double x : {1.5, 2.0, 29.9, 0.0731, 8.1e7, 5e-5}) {
    CHECK(compartment_of(mantissa10(x).value) == first_digit(x));
  }
}

TEST_CASE("digital usage") {
  const auto u4 = digital_usage(4);
  CHECK(std::abs(u4[1] - 0.154) < 0.001);
  CHECK(std::abs(u4[0] - 0.080) < 0.001);
  const auto u7 = digital_usage(7);
  CHECK(std::abs(u7[1] - 0.131) < 0.001);
  CHECK(std::abs(u7[0] - 0.089) < 0.001);
  for (int n : {1, 2, 4, 7, 12}) {
    const auto u = digital_usage(n);
    double s = 0;
    for (double v : u) s += v;
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("distribution helpers") {
  const auto b = DigitDistribution::benford();
  CHECK(b.probs.size() == 9);
  CHECK(b[1] == doctest::Approx(benford_first(1)));
  CHECK(linf(b, b) == 0.0);
  const std::vector<double> counts{3, 1, 0, 0, 0, 0, 0, 0, 0};
  const auto d = DigitDistribution::from_counts(counts);
  CHECK(d[1] == 0.75);
  CHECK(d[2] == 0.25);
}
