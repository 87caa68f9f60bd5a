#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "benlab/conformity.hpp"
#include "benlab/error.hpp"
#include "benlab/growth.hpp"

using namespace benlab;

namespace {

GrowthSeries series(double base, double percent, std::uint64_t n) {
  GrowthSeries s;
  s.base = base;
  s.percent = percent;
  s.length = n;
  return s;
}

// Distinct values up to a tolerance, treating 0 and 1 as the same point.
std::size_t distinct_mod1(std::vector<double> v, double tol) {
  for (auto& x : v)
    if (x > 1 - tol) x = 0;
  std::sort(v.begin(), v.end());
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i == 0 || v[i] - v[i - 1] > tol) ++n;
  return n;
}

}  // namespace

TEST_CASE("series generation") {
  const auto a = generate_series(series(1, 12, 21));
  REQUIRE(a.size() == 21);
  const double head[7] = {1.0, 1.1, 1.3, 1.4, 1.6, 1.8, 2.0};
  for (int i = 0; i < 7; ++i) CHECK(std::round(a[i] * 10) / 10 == doctest::Approx(head[i]));
  CHECK(std::round(a[20] * 10) / 10 == doctest::Approx(9.6));

  const auto b = generate_series(series(1000, 8, 20));
  const auto cross = std::find_if(b.begin(), b.end(), [](double x) { return x > 2000; });
  CHECK(cross - b.begin() == 10);

  for (double x : generate_series(series(3, 0, 50))) CHECK(x == 3.0);
  CHECK_THROWS_AS(generate_series(series(1, 900, 400)), Error);
  CHECK_THROWS_AS(validate(series(1, -100, 5)), Error);
  CHECK_THROWS_AS(validate(series(0, 5, 5)), Error);
  CHECK_THROWS_AS(validate(series(1, 5, 0)), Error);
}

TEST_CASE("log-space mantissae agree with direct series") {
  const auto s = series(3, 7.3, 200);
  const auto v = generate_series(s);
  const auto m = series_mantissae(s);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lg = std::log10(v[i]);
    CHECK(std::abs(m[i] - (lg - std::floor(lg))) < 1e-10);
  }
  // A million elements run past 10^300 without trouble.
  const auto big = series_ld(series(3, 7.3, 1000000));
  CHECK(big.n == 1000000);
  CHECK(big.chi_sqr < 25);
}

TEST_CASE("series_ld examples") {
  const auto slow = series_ld(series(3, 2.3293, 1000));
  CHECK(slow.chi_sqr < 15.5);
  CHECK(slow.chi_sqr > 0.75);
  CHECK(slow.chi_sqr < 3.0);
  CHECK(series_ld(series(3, 216.2278, 1000)).distinct_digits() == 2);
  const auto ten = series_ld(series(3, 900, 1000));
  CHECK(ten.counts[2] == 1000);
  CHECK(ten.distinct_digits() == 1);

  const std::vector<double> vals{0.0, 12.0, 0.0, 35.0};
  const auto r = series_ld(vals);
  CHECK(r.n == 2);
  CHECK(r.skipped_zeros == 2);
  CHECK_THROWS_AS(series_ld(std::vector<double>{}), Error);
  CHECK_THROWS_AS(series_ld(std::vector<double>{0.0, 0.0}), Error);
}

TEST_CASE("anomaly detection") {
  const auto a = detect_anomalous(21.152765862859, 100);
  REQUIRE(a);
  CHECK(a->L == 1);
  CHECK(a->T == 12);
  CHECK(a->verified);
  const auto b = detect_anomalous(151.1886, 100);
  REQUIRE(b);
  CHECK(b->L == 2);
  CHECK(b->T == 5);
  CHECK(!detect_anomalous(40.0, 1000, 1e-12));
  const auto ten = detect_anomalous(900, 10);
  REQUIRE(ten);
  CHECK(ten->T == 1);
}

TEST_CASE("anomaly records") {
  CHECK(std::abs(anomaly_of(1, 2).percent - 216.2278) < 5e-5);
  CHECK(std::abs(anomaly_of(3, 4).percent - 462.3413) < 5e-5);
  CHECK(std::abs(anomaly_of(2, 25).percent - 20.2264) < 5e-5);
  CHECK(anomaly_of(0, 1).percent == 0.0);
  CHECK(anomaly_of(2, 25).fraction == doctest::Approx(0.08));
  CHECK(anomaly_of(3, 4).first_power_of_ten_factor == doctest::Approx(1000.0));
  CHECK_THROWS_AS(anomaly_of(2, 4), Error);
  CHECK_THROWS_AS(anomaly_of(0, 4), Error);
}

TEST_CASE("enumeration") {
  const std::vector<std::int64_t> one{1};
  const auto t17 = enumerate_anomalous(one, 1, 45);
  CHECK(t17.size() == 45);
  for (std::size_t i = 1; i < t17.size(); ++i) CHECK(t17[i].percent > t17[i - 1].percent);
  CHECK(t17.back().percent == doctest::Approx(900.0));

  const std::vector<std::int64_t> two{2};
  const auto t18 = enumerate_anomalous(two, 1, 30);
  for (const auto& r : t18) CHECK(std::gcd(r.L, r.T) == 1);
  CHECK(std::none_of(t18.begin(), t18.end(), [](const AnomalyRecord& r) { return r.T == 4; }));
  CHECK(std::any_of(t18.begin(), t18.end(), [](const AnomalyRecord& r) { return r.T == 25; }));

  for (const auto& r : enumerate_anomalous(std::vector<std::int64_t>{1, 2, 3, 4, 7}, 1, 60)) {
    const auto back = detect_anomalous(r.percent, 100, 1e-10);
    REQUIRE(back);
    CHECK(back->L == r.L);
    CHECK(back->T == r.T);
  }
}

TEST_CASE("cumulative factors") {
  CHECK(std::abs(cumulative_factors(29.154, 9)[8] - 10.0) < 0.01);
  CHECK(std::abs(cumulative_factors(58.489, 5)[4] - 10.0) < 0.01);
  CHECK(std::abs(cumulative_factors(93.070, 7)[6] - 100.0) < 0.1);
  CHECK(cumulative_factors(40, 3)[0] == doctest::Approx(1.4));
  CHECK_THROWS_AS(cumulative_factors(900, 400), Error);
  const auto logs = cumulative_log10_factors(900, 400);
  CHECK(logs.back() == doctest::Approx(400.0L));
}

TEST_CASE("anomalous rates hit powers of ten every T steps") {
  for (const auto& r : enumerate_anomalous(std::vector<std::int64_t>{1, 2, 3, 7}, 2, 40)) {
    const auto logs = cumulative_log10_factors(r.percent, 5 * r.T);
    for (int j = 1; j <= 5; ++j) {
      INFO("L " << r.L << " T " << r.T << " j " << j);
      CHECK(std::abs(static_cast<double>(logs[j * r.T - 1]) - j * r.L) < 1e-9);
    }
  }
}

TEST_CASE("anomalous series have exactly T mantissae") {
  for (std::int64_t T = 1; T <= 25; ++T)
    for (std::int64_t L : {1, 2, 3}) {
      if (std::gcd(L, T) != 1) continue;
      const auto rec = anomaly_of(L, T);
      const auto m = series_mantissae(series(3, rec.percent, 10 * T));
      INFO("L " << L << " T " << T);
      CHECK(distinct_mod1(m, 1e-9) == static_cast<std::size_t>(T));
    }
}

TEST_CASE("rate scans") {
  ScanConfig c;
  c.lo_percent = 5.0;
  c.hi_percent = 5.2;
  c.step = 0.01;
  const auto rows = rate_scan(c);
  CHECK(rows.size() == 21);
  for (const auto& r : rows) CHECK(r.chi_sqr < 30);
  CHECK(rows.front().percent == doctest::Approx(5.0));
  CHECK(rows.back().percent == doctest::Approx(5.2));

  CHECK(series_ld(series(3, 21.1727, 1000)).chi_sqr < 15.5);
  CHECK(series_ld(series(3, 21.1528, 1000)).chi_sqr > 100);

  ScanConfig w;
  w.lo_percent = 1;
  w.hi_percent = 100;
  w.T_flag = 500;
  const auto wide = rate_scan(w);
  int spikes = 0;
  for (const auto& r : wide) {
    if (r.chi_sqr <= 50) continue;
    ++spikes;
    INFO("rate " << r.percent << " chi " << r.chi_sqr);
    REQUIRE(r.anomaly);
    CHECK(r.anomaly->T <= 100);
  }
  CHECK(spikes > 10);

  const std::string csv = scan_csv(rows);
  CHECK(csv.rfind("rate_percent,chi_sqr,anomaly_L,anomaly_T\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);
}

TEST_CASE("parallel scan matches the serial one") {
  ScanConfig c;
  c.lo_percent = 10;
  c.hi_percent = 30;
  c.step = 0.05;
  const auto serial = rate_scan_serial(c);
  for (int t : {1, 2, 4}) {
    c.threads = t;
    const auto par = rate_scan(c);
    REQUIRE(par.size() == serial.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].percent == serial[i].percent);
      CHECK(par[i].chi_sqr == serial[i].chi_sqr);
      CHECK(par[i].anomaly.has_value() == serial[i].anomaly.has_value());
    }
  }
}

TEST_CASE("non-anomalous rates behave logarithmically") {
  for (double p : {0.7, 3.3, 11.11, 40.0, 137.0, 333.3}) {
    if (detect_anomalous(p, 500, 1e-12)) continue;
    INFO("rate " << p);
    CHECK(series_ld(series(3, p, 10000)).chi_sqr < 25);
  }
}

TEST_CASE("base does not matter for a typical rate") {
  const auto a = series_ld(series(1, 4.7, 10000));
  const auto b = series_ld(series(7.3, 4.7, 10000));
  for (int d = 1; d <= 9; ++d) {
    const double p = benford_first(d);
    CHECK(std::abs(a.ld[d] - b.ld[d]) < 3 * std::sqrt(2 * p * (1 - p) / 1e4));
  }
}

TEST_CASE("equivalent rates") {
  CHECK(std::abs(equivalent_rate(150, 12) - 7.9) < 0.05);
  CHECK(equivalent_rate(29.1550, 2) == doctest::Approx(13.6464).epsilon(1e-5));
  CHECK(equivalent_rate(17.5, 1) == doctest::Approx(17.5));
  const auto r = detect_anomalous(equivalent_rate(anomaly_of(1, 9).percent, 2), 100);
  REQUIRE(r);
  CHECK(r->T == 18);
  CHECK_THROWS_AS(equivalent_rate(10, 0), Error);
}

TEST_CASE("multiplication processes") {
  const DistributionModel u{Family::Uniform, {0.5, 2.5}};
  const auto m = random_multiplication_process(u, 100000, 1.0, 3);
  CHECK(m.chi_sqr < 15.5);
  CHECK(m.log10_values.size() == 100001);
  const auto again = random_multiplication_process(u, 100000, 1.0, 3);
  CHECK(again.counts == m.counts);

  const auto d = random_multiplication_process(u, 100000, 1.0, 4, true);
  CHECK(d.chi_sqr < 15.5);

  const DistributionModel ten{Family::Uniform, {10, 10 + 1e-13}};
  const auto c = random_multiplication_process(ten, 500, 3.0, 1);
  CHECK(c.counts[2] == 500);

  // Normal factors go negative; those draws are redrawn.
  const auto n = random_multiplication_process({Family::Normal, {1, 1}}, 2000, 1.0, 5);
  CHECK(n.n_resampled > 0);
}

TEST_CASE("power transforms of a uniform") {
  const DistributionModel u{Family::Uniform, {0, 1}};
  const auto one = power_transform_ld(u, 1, 100000, 1);
  for (int d = 1; d <= 9; ++d) CHECK(std::abs(one.ld[d] - 1.0 / 9) < 0.01);
  double prev = 1e300;
  for (int N : {2, 4, 8, 13}) {
    const double chi = power_transform_ld(u, N, 100000, 2).chi_sqr;
    INFO("N " << N);
    CHECK(chi <= prev + 16);
    prev = chi;
  }
  // log10 of U^N is -N E / ln 10 with E ~ Exp(1), so the exact law is a
  // folded exponential; the sample should sit within a few SE of it.
  const double c = 13 / std::log(10.0);
  const auto th = power_transform_ld(u, 13, 100000, 3);
  for (int d = 1; d <= 9; ++d) {
    double p = 0;
    const double a = std::log10(d), b = std::log10(d + 1.0);
    for (int k = 0; k < 400; ++k) p += std::exp(-std::max(0.0, (k + 1 - b) / c)) - std::exp(-(k + 1 - a) / c);
    INFO("digit " << d);
    CHECK(std::abs(th.ld[d] - p) < 4 * std::sqrt(p * (1 - p) / 1e5));
  }
  CHECK_THROWS_AS(power_transform_ld(u, 0, 10, 1), Error);
}

// Stated expectations the exact analysis rules out; own ctest entry.
TEST_CASE("thirteenth power of a uniform and base independence at 4.7129%" *
          doctest::test_suite("property_red")) {
  // Exact chi-square expectation at n = 1e5 is about 250.
  CHECK(power_transform_ld({Family::Uniform, {0, 1}}, 13, 100000, 1).chi_sqr < 20);
  // 4.7129% is 10^(1/50) rounded, so 10^4 elements trace a 50-point cycle.
  const auto a = series_ld(series(1, 4.7129, 10000));
  const auto b = series_ld(series(7.3, 4.7129, 10000));
  for (int d = 1; d <= 9; ++d) {
    const double p = benford_first(d);
    CHECK(std::abs(a.ld[d] - b.ld[d]) < 3 * std::sqrt(2 * p * (1 - p) / 1e4));
  }
}
