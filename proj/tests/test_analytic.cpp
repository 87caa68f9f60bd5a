#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "benlab/analytic.hpp"
#include "benlab/conformity.hpp"
#include "benlab/digits.hpp"
#include "benlab/distributions.hpp"
#include "benlab/error.hpp"
#include "benlab/rng.hpp"

using namespace benlab;

namespace {

const double kLn10 = std::log(10.0);

double linf_benford(const DigitDistribution& d) { return linf(d, DigitDistribution::benford()); }

// Per-digit closeness to a nine-vector.
void check_vector(const DigitDistribution& got, const std::vector<double>& want, double tol) {
  for (int d = 1; d <= 9; ++d) {
    INFO("digit " << d << " got " << got[d] << " want " << want[d - 1]);
    CHECK(std::abs(got[d] - want[d - 1]) <= tol);
  }
}

}  // namespace

TEST_CASE("k/x over whole decades is exactly Benford") {
  CHECK(linf_benford(ld_kx(0, 3)) < 1e-12);
  CHECK(linf_benford(ld_kx(0.5, 2)) < 1e-12);
  for (double S : {0.0, 0.25, 0.5, 1.7})
    for (int G = 1; G <= 10; ++G) {
      INFO("S " << S << " G " << G);
      CHECK(linf_benford(ld_kx(S, G)) < 1e-12);
    }
  CHECK_THROWS_AS(ld_kx(0, 0), Error);
  CHECK_THROWS_AS(ld_kx(0, -1), Error);
}

TEST_CASE("k/x over a fractional span drifts off like 1/G") {
  CHECK(linf_benford(ld_kx(0, 2.5)) > 1e-6);
  // Worst case over the fraction f sits at f = log10 2, where digit 1 is
  // over-represented by log10(2)(1 - log10 2)/(n + log10 2).
  const double l2 = std::log10(2.0);
  for (int n : {3, 26, 100, 300}) {
    double worst = 0;
    for (double f = 0.001; f < 1.0; f += 0.001) worst = std::max(worst, linf_benford(ld_kx(0, n + f)));
    INFO("n " << n);
    CHECK(worst == doctest::Approx(l2 * (1 - l2) / (n + l2)).epsilon(1e-3));
  }
}

TEST_CASE("power laws") {
  const auto m2 = ld_power_law(2, 1, 1000);
  CHECK(std::abs(m2[1] - 0.56) < 0.005);
  CHECK(std::abs(m2[2] - 0.19) < 0.005);
  CHECK(std::abs(ld_power_law(0.5, 1, 1000)[1] - 0.19) < 0.005);
  CHECK(linf_benford(ld_power_law(1, 1, 1000)) < 1e-12);
  CHECK(power_law_k(1, 1, 1000) == doctest::Approx(1 / (3 * kLn10)));
  CHECK(power_law_k(2, 1, 1000) == doctest::Approx(1000.0 / 999));
  CHECK_THROWS_AS(ld_power_law(0, 1, 10), Error);
  CHECK_THROWS_AS(ld_power_law(1, 10, 1), Error);
}

TEST_CASE("power-law closed form agrees with quadrature") {
  for (double m : {0.5, 1.5, 3.0}) {
    const double k = power_law_k(m, 1, 1000);
    const auto q = ld_of_density([&](double x) { return k * std::pow(x, -m); }, 1, 1000);
    CHECK(linf(q.ld, ld_power_law(m, 1, 1000)) < 1e-9);
    CHECK(q.total_mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("shifted and sign-mixed k/x curves") {
  const double k = 1 / kLn10;
  // 1/(x-4) over (5, 14): after the shift only the 5..9 and 10..14 blocks remain.
  const auto shifted = ld_of_density([&](double x) { return k / (x - 4); }, 5, 14);
  check_vector(shifted.ld, {0.22, 0, 0, 0, 0.30, 0.18, 0.12, 0.10, 0.08}, 0.005);
  const auto mixed = ld_of_density([&](double x) { return k / (x + 4); }, -3, 6);
  check_vector(mixed.ld, {0.28, 0.39, 0.08, 0.08, 0.07, 0.02, 0.02, 0.03, 0.03}, 0.005);
  CHECK(mixed.total_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("flat density over one decade") {
  const auto u = ld_of_density([](double) { return 1.0 / 900; }, 100, 1000);
  for (int d = 1; d <= 9; ++d) CHECK(u.ld[d] == doctest::Approx(1.0 / 9).epsilon(1e-10));
}

TEST_CASE("shifted k/x is locally but not globally logarithmic") {
  const double k = 1 / std::log(1000.0);
  auto f = [&](double x) { return k / (x - 4); };
  const auto high = ld_of_density(f, 100, 1000).ld;
  const auto low = ld_of_density(f, 10, 100).ld;
  CHECK(linf_benford(high) < 0.01);
  CHECK(linf_benford(low) > 0.01);
}

TEST_CASE("ld_of_density errors") {
  CHECK_THROWS_AS(ld_of_density([](double) { return 1.0; }, 5, 5), Error);
  CHECK_THROWS_AS(ld_of_density([](double) { return 0.0; }, 1, 5), Error);
  CHECK_THROWS_AS(ld_of_model({Family::Die, {6}}), Error);
}

TEST_CASE("ld_of_model on an exponential matches the closed form") {
  const auto q = ld_of_model({Family::Exp1, {0.3}});
  CHECK(linf(q.ld, ld_exponential(0.3)) < 1e-9);
  CHECK(q.total_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("exponential law") {
  const auto a = ld_exponential(0.3);
  CHECK(linf(a, ld_exponential(3.0)) < 1e-12);
  CHECK(linf(a, ld_exponential(0.03)) < 1e-12);
  for (double p : {0.01, 0.069314718, 0.5, 1.0, 7.0}) CHECK(linf_benford(ld_exponential(p)) > 0);
  double sum = 0;
  for (double v : a.probs) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ld_exponential(0), Error);
  CHECK_THROWS_AS(ld_exponential(std::nan("")), Error);
}

TEST_CASE("exponential sweep oscillates around Benford") {
  double lo = 1, hi = 0;
  for (int i = 1; i <= 700; ++i) {
    const double v = ld_exponential(0.05 * i)[1];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo < benford_first(1));
  CHECK(hi > benford_first(1));
  CHECK(std::abs((hi - lo) - 0.062) < 0.005);
}

TEST_CASE("ten to a symmetric log-density") {
  const auto r1 = ld_ten_to_symmetric(LogDensitySpec::semicircle(11, 1));
  CHECK(std::abs(r1[1] - 0.2828) < 5e-4);
  CHECK(std::abs(r1[9] - 0.0347) < 5e-4);
  const auto r21 = ld_ten_to_symmetric(LogDensitySpec::semicircle(11, 2.1));
  CHECK(std::abs(r21[1] - 0.2987) < 5e-4);
  for (double R : {-2.0, 0.0, 0.37, 5.5}) CHECK(linf_benford(ld_ten_to_symmetric(LogDensitySpec::uniform(R, R + 3))) < 1e-12);
  CHECK(linf_benford(ld_ten_to_symmetric(LogDensitySpec::uniform(0, 0.5))) > 0.05);
  CHECK_THROWS_AS(ld_ten_to_symmetric(LogDensitySpec::uniform(2, 1)), Error);
  CHECK_THROWS_AS(ld_ten_to_symmetric(LogDensitySpec::semicircle(0, 0)), Error);
  CHECK_THROWS_AS(ld_ten_to_symmetric(LogDensitySpec::triangular(0, 3, 2)), Error);
}

TEST_CASE("log densities integrate to one") {
  const std::vector<LogDensitySpec> specs{
      LogDensitySpec::uniform(1, 4), LogDensitySpec::triangular(0, 1, 3),
      LogDensitySpec::semicircle(2, 1.5), LogDensitySpec::hanging_semicircle(2, 1.5, 0.3)};
  for (const auto& s : specs) {
    double total = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) total += log_density(s, -1 + 7.0 * (i + 0.5) / n) * 7.0 / n;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(log_cdf(s, -10) == 0.0);
    CHECK(log_cdf(s, 10) == 1.0);
  }
}

TEST_CASE("mantissa density") {
  const auto flat = mantissa_density(LogDensitySpec::uniform(0, 3), 50);
  for (double v : flat) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  auto maxdev = [](const std::vector<double>& h) {
    double m = 0;
    for (double v : h) m = std::max(m, std::abs(v - 1));
    return m;
  };
  const auto wide = mantissa_density(LogDensitySpec::semicircle(11, 8), 100);
  CHECK(maxdev(wide) < 0.02);
  CHECK(maxdev(wide) > 0);
  const auto narrow = mantissa_density(LogDensitySpec::semicircle(11, 1), 100);
  CHECK(maxdev(narrow) > 0.05);
  CHECK(linf_benford(ld_ten_to_symmetric(LogDensitySpec::semicircle(11, 1))) < 0.02);
  double total = 0;
  for (double v : narrow) total += v / 100;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(mantissa_density(LogDensitySpec::uniform(0, 1), 5), Error);
}

TEST_CASE("folding agrees with x-space quadrature") {
  std::vector<LogDensitySpec> specs{
      LogDensitySpec::uniform(0.3, 2.9), LogDensitySpec::triangular(0, 1.2, 2.5),
      LogDensitySpec::semicircle(3, 1), LogDensitySpec::semicircle(11, 2.1),
      LogDensitySpec::hanging_semicircle(1.5, 1.2, 0.4)};
  LogDensitySpec e = LogDensitySpec::triangular(0, 2, 5);
  e.log10_per_unit = std::log10(std::exp(1.0));
  specs.push_back(e);
  for (const auto& s : specs) {
    const auto folded = ld_ten_to_symmetric(s);
    // Kinks of the log-density become break points in x.
    std::vector<double> breaks;
    for (double y : s.params) breaks.push_back(std::pow(10.0, y * s.log10_per_unit));
    if (s.shape != LogDensitySpec::Shape::UniformLog && s.shape != LogDensitySpec::Shape::TriangularLog) {
      const double c = s.params[0], r = s.params[1];
      breaks = {std::pow(10.0, c - r), std::pow(10.0, c), std::pow(10.0, c + r)};
    }
    const double lo = *std::min_element(breaks.begin(), breaks.end());
    const double hi = *std::max_element(breaks.begin(), breaks.end());
    const auto quad = ld_of_density_with_breaks([&](double x) { return x_density(s, x); }, lo, hi, breaks, 1e-13);
    CHECK(linf(folded, quad.ld) < 1e-6);
  }
}

TEST_CASE("integer translation leaves the law unchanged") {
  const auto base = ld_ten_to_symmetric(LogDensitySpec::triangular(0.2, 0.9, 1.4));
  const auto semi = ld_ten_to_symmetric(LogDensitySpec::semicircle(0.4, 0.7));
  for (int k : {-3, 1, 2, 7}) {
    CHECK(linf(base, ld_ten_to_symmetric(LogDensitySpec::triangular(0.2 + k, 0.9 + k, 1.4 + k))) < 1e-12);
    CHECK(linf(semi, ld_ten_to_symmetric(LogDensitySpec::semicircle(0.4 + k, 0.7))) < 1e-12);
  }
}

TEST_CASE("symmetric x-densities are never logarithmic") {
  const std::vector<DistributionModel> models{
      {Family::Uniform, {0, 1}},   {Family::Uniform, {0, 7}},    {Family::Uniform, {0, 50}},
      {Family::Uniform, {3, 7000}}, {Family::Uniform, {-20, 35}}, {Family::Normal, {5, 2}},
      {Family::Normal, {0, 1}},    {Family::Normal, {100, 30}},  {Family::Normal, {0, 1000}},
      {Family::Normal, {30, 20}}};
  for (const auto& m : models) {
    INFO(to_string(m));
    CHECK(linf_benford(ld_of_model(m).ld) > 0.02);
  }
}

TEST_CASE("decade decompositions") {
  const auto ln = ld_decades({Family::LogNormal, {1, 2.3}}, -3, 4);
  REQUIRE(ln.decades.size() == 7);
  double wsum = 0;
  std::array<double, 9> blend{};
  // Simulated digit-1 shares per decade from a 13,000-draw run, with about
  // three binomial standard errors of slack each.
  const double sim[7] = {0.08, 0.14, 0.20, 0.31, 0.41, 0.52, 0.71};
  const double slack[7] = {0.09, 0.04, 0.025, 0.02, 0.03, 0.06, 0.16};
  for (std::size_t i = 0; i < ln.decades.size(); ++i) {
    const auto& e = ln.decades[i];
    wsum += e.weight;
    for (int d = 1; d <= 9; ++d) blend[d - 1] += e.weight * e.local_ld[d];
    INFO("decade " << e.j);
    CHECK(std::abs(e.local_ld[1] - sim[i]) < slack[i]);
  }
  CHECK(std::abs(ln.decades[3].local_ld[1] - 0.31) < 0.02);
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
  for (int d = 1; d <= 9; ++d) CHECK(std::abs(blend[d - 1] - ln.overall[d]) < 1e-9);

  const auto pl = ld_decades({Family::PowerLaw, {1, 1, 1000}}, 0, 3);
  for (const auto& e : pl.decades) CHECK(linf_benford(e.local_ld) < 1e-10);
  CHECK(pl.covered_mass == doctest::Approx(1.0).epsilon(1e-9));

  // Around 1/p the exponential looks roughly logarithmic: {0.24, 0.20, 0.15, ...}
  // over 9041 simulated draws.
  const auto ex = ld_decades({Family::Exp1, {0.02547}}, 1, 2);
  const double col[9] = {0.24, 0.20, 0.15, 0.12, 0.09, 0.07, 0.06, 0.04, 0.03};
  for (int d = 1; d <= 9; ++d) CHECK(std::abs(ex.decades[0].local_ld[d] - col[d - 1]) < 0.015);
  CHECK(linf_benford(ex.decades[0].local_ld) < 0.06);

  CHECK_THROWS_AS(ld_decades({Family::Exp1, {1}}, 2, 2), Error);
}

TEST_CASE("decade blend identity across models") {
  const std::vector<DistributionModel> models{
      {Family::Gamma, {3, 2}}, {Family::Weibull, {0.7, 40}}, {Family::Normal, {0, 5}}, {Family::Wald, {5, 2}}};
  for (const auto& m : models) {
    const auto dd = ld_decades(m, -4, 5);
    std::array<double, 9> blend{};
    for (const auto& e : dd.decades)
      for (int d = 1; d <= 9; ++d) blend[d - 1] += e.weight * e.local_ld[d];
    for (int d = 1; d <= 9; ++d) CHECK(std::abs(blend[d - 1] - dd.overall[d]) < 1e-9);
  }
}

TEST_CASE("inflection points") {
  const double e1 = ld_inflection_point({Family::Exp1, {0.271}});
  CHECK(e1 == doctest::Approx(3.690).epsilon(1e-3));
  CHECK(std::log10(e1) == doctest::Approx(0.567).epsilon(1e-3));
  CHECK(ld_inflection_point({Family::LogNormal, {2.303, 0.4}}) == doctest::Approx(10.0).epsilon(1e-3));
  CHECK(ld_inflection_point({Family::Exp1, {1}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ld_inflection_point({Family::Normal, {0, 1}}), Error);
}

TEST_CASE("ratio of uniforms") {
  const auto r = ratio_of_uniforms_ld();
  CHECK(r[1] == doctest::Approx(1.0 / 3));
  CHECK(std::abs(r[9] - 0.0617) < 5e-5);
  double sum = 0;
  for (double v : r.probs) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(77);
  std::vector<double> q(1000000);
  for (auto& x : q) x = rng.uniform() / rng.uniform();
  const auto counts = first_digit_counts(q);
  for (int d = 1; d <= 9; ++d) CHECK(std::abs(counts[d - 1] / 1e6 - r[d]) < 0.003);
}

TEST_CASE("over-steepness") {
  CHECK(std::abs(over_steepness(DigitDistribution::benford())) < 1e-12);
  CHECK(over_steepness(ld_power_law(2, 1, 1000)) > 0);
  CHECK(over_steepness(ld_power_law(0.5, 1, 1000)) < 0);
}

TEST_CASE("log10 of k/x samples is uniform") {
  Rng rng(5);
  const DistributionModel m{Family::PowerLaw, {1, 1, 1000}};
  std::vector<double> y(100000);
  for (auto& v : y) v = std::log10(sample(m, rng)) / 3;
  std::sort(y.begin(), y.end());
  double d = 0;
  const double n = static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) d = std::max({d, (i + 1) / n - y[i], y[i] - i / n});
  CHECK(d < ks_critical(y.size(), 0.01));
}

TEST_CASE("ten to a uniform log has a k/x density") {
  Rng rng(6);
  const int n = 4000000;
  std::vector<int> bins(30);
  // 10^U(0,3); ten equal-width bins per decade over (10, 100).
  for (int i = 0; i < n; ++i) {
    const double x = std::pow(10.0, 3 * rng.uniform());
    if (x >= 10 && x < 100) ++bins[static_cast<int>((x - 10) / 3)];
  }
  for (int b = 0; b < 30; ++b) {
    const double a = 10 + 3.0 * b;
    const double want = n * std::log10((a + 3) / a) / 3;
    INFO("bin " << b);
    CHECK(std::abs(bins[b] - want) < 0.05 * want);
  }
}

// Stated bounds that the exact computation cannot meet; each runs as its own
// ctest entry and stays red.
TEST_CASE("k/x within 0.02 at G = 2.5 and 1e-3 beyond G = 26" * doctest::test_suite("property_red")) {
  CHECK(linf_benford(ld_kx(0, 2.5)) < 0.02);
  double worst = 0;
  for (double G = 26.0; G <= 40.0; G += 0.01) worst = std::max(worst, linf_benford(ld_kx(0, G)));
  CHECK(worst < 1e-3);
}

TEST_CASE("lognormal top decade and exponential mid decade" * doctest::test_suite("property_red")) {
  const auto ln = ld_decades({Family::LogNormal, {1, 2.3}}, -3, 4);
  CHECK(std::abs(ln.decades.back().local_ld[1] - 0.71) < 0.04);
  const auto ex = ld_decades({Family::Exp1, {0.02547}}, 1, 2);
  CHECK(linf_benford(ex.decades[0].local_ld) < 0.04);
}
