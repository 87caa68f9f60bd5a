#include "benlab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "benlab/error.hpp"
#include "benlab/numeric.hpp"

namespace benlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMinDecade = -300;  // below this the integrands go subnormal
constexpr int kMaxDecade = 307;

DigitDistribution normalized(std::array<double, 9> mass) {
  return DigitDistribution::from_counts(mass);
}

// Masses of digit intervals d*10^j <= t < (d+1)*10^j of g over (a, b),
// with 0 <= a < b <= inf. Interval pieces are split at the breakpoints.
void accumulate_digit_masses(const std::function<double(double)>& g, double a, double b,
                             const std::vector<double>& breaks, double tol,
                             std::array<NeumaierSum, 9>& mass, NeumaierSum& total) {
  const int jlo = a > 0 ? static_cast<int>(std::floor(std::log10(a))) - 1 : kMinDecade;
  const int jhi = std::isfinite(b) ? static_cast<int>(std::floor(std::log10(b))) + 1 : kMaxDecade;
  auto safe = [&](double t) {
    const double v = g(t);
    return std::isfinite(v) ? v : 0.0;
  };
  for (int j = std::max(jlo, kMinDecade); j <= std::min(jhi, kMaxDecade); ++j) {
    const double p = std::pow(10.0, j);
    for (int d = 1; d <= 9; ++d) {
      double lo = std::max(a, d * p);
      double hi = std::min(b, (d + 1) * p);
      if (!(lo < hi)) continue;
      std::vector<double> cuts{lo};
      for (double c : breaks) {
        if (c > lo && c < hi) cuts.push_back(c);
      }
      cuts.push_back(hi);
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!std::isfinite(cuts[i + 1])) continue;
        const double v = integrate(safe, cuts[i], cuts[i + 1], tol);
        mass[d - 1].add(v);
        total.add(v);
      }
    }
  }
}

double cdf_clamped(double t) { return std::clamp(t, 0.0, 1.0); }

// Range of Y for a log-density spec, in its own units.
std::pair<double, double> log_range(const LogDensitySpec& s) {
  const auto& p = s.params;
  switch (s.shape) {
    case LogDensitySpec::Shape::UniformLog: return {p[0], p[1]};
    case LogDensitySpec::Shape::TriangularLog: return {p[0], p[2]};
    default: return {p[0] - p[1], p[0] + p[1]};
  }
}

// Sum over integers k of G((k + hi)/s) - G((k + lo)/s), for log10 offsets.
double folded_mass(const LogDensitySpec& spec, double lo, double hi) {
  const auto [ya, yb] = log_range(spec);
  const double s = spec.log10_per_unit;
  const double ua = std::min(ya * s, yb * s), ub = std::max(ya * s, yb * s);
  NeumaierSum acc;
  for (double k = std::floor(ua) - 1; k <= std::floor(ub) + 1; k += 1.0) {
    acc.add(log_cdf(spec, (k + hi) / s) - log_cdf(spec, (k + lo) / s));
  }
  return acc.value();
}

}  // namespace

DigitDistribution ld_kx(double S, double G) {
  if (!(G > 0) || !std::isfinite(S) || !std::isfinite(G)) {
    throw Error(ErrorCode::EmptyRange, "k/x needs G > 0");
  }
  std::array<double, 9> mass{};
  const double end = S + G;
  for (double k = std::floor(S); k <= std::floor(end); k += 1.0) {
    for (int d = 1; d <= 9; ++d) {
      const double lo = std::max(S, k + std::log10(static_cast<double>(d)));
      const double hi = std::min(end, k + std::log10(d + 1.0));
      if (hi > lo) mass[d - 1] += (hi - lo) / G;
    }
  }
  return normalized(mass);
}

double power_law_k(double m, double lo, double hi) {
  if (!(lo > 0 && lo < hi)) throw Error(ErrorCode::EmptyRange, "power law needs 0 < lo < hi");
  if (m == 1.0) return 1.0 / std::log(hi / lo);
  return (1.0 - m) / (std::pow(hi, 1.0 - m) - std::pow(lo, 1.0 - m));
}

DigitDistribution ld_power_law(double m, double lo, double hi) {
  if (!(m > 0)) throw Error(ErrorCode::InvalidParameter, "power law exponent must be > 0");
  const double k = power_law_k(m, lo, hi);
  auto antideriv = [m](double x) { return m == 1.0 ? std::log(x) : std::pow(x, 1.0 - m) / (1.0 - m); };
  std::array<double, 9> mass{};
  const int jlo = static_cast<int>(std::floor(std::log10(lo))) - 1;
  const int jhi = static_cast<int>(std::floor(std::log10(hi))) + 1;
  for (int j = jlo; j <= jhi; ++j) {
    const double p = std::pow(10.0, j);
    for (int d = 1; d <= 9; ++d) {
      const double a = std::max(lo, d * p), b = std::min(hi, (d + 1) * p);
      if (b > a) mass[d - 1] += k * (antideriv(b) - antideriv(a));
    }
  }
  return normalized(mass);
}

DensityLd ld_of_density(const std::function<double(double)>& pdf, double lo, double hi,
                        double tol) {
  return ld_of_density_with_breaks(pdf, lo, hi, {}, tol);
}

DensityLd ld_of_density_with_breaks(const std::function<double(double)>& pdf, double lo,
                                    double hi, const std::vector<double>& breaks, double tol) {
  if (!(lo < hi)) throw Error(ErrorCode::EmptyRange, "empty support");
  std::array<NeumaierSum, 9> mass{};
  NeumaierSum total;
  if (hi > 0) {
    std::vector<double> pos;
    for (double c : breaks) {
      if (c > 0) pos.push_back(c);
    }
    accumulate_digit_masses(pdf, std::max(lo, 0.0), hi, pos, tol, mass, total);
  }
  if (lo < 0) {
    std::vector<double> neg;
    for (double c : breaks) {
      if (c < 0) neg.push_back(-c);
    }
    auto mirrored = [&](double t) { return pdf(-t); };
    accumulate_digit_masses(mirrored, std::max(-hi, 0.0), -lo, neg, tol, mass, total);
  }
  DensityLd out;
  out.total_mass = total.value();
  if (!(out.total_mass > 0)) throw Error(ErrorCode::NumericFailure, "density integrates to zero");
  std::array<double, 9> m{};
  for (int i = 0; i < 9; ++i) m[i] = mass[i].value();
  out.ld = normalized(m);
  out.truncated_mass = std::max(0.0, 1.0 - out.total_mass);
  return out;
}

DensityLd ld_of_model(const DistributionModel& model, double tol) {
  if (model.family == Family::Die) throw Error(ErrorCode::UnsupportedForm, "discrete family");
  const DistributionModel m = resolve_integer_params(model);
  require_valid(m);
  const SupportDescriptor s = support(m);
  double lo = s.lo, hi = s.hi;
  if (s.kind == SupportKind::Positive) lo = 0.0;
  // Breakpoints around the bulk keep the adaptive rule from stepping over a
  // narrow peak.
  std::vector<double> breaks;
  const MeanValue mu = mean(m);
  const double centre = mu.infinite ? (s.kind == SupportKind::Real ? m.params[0] : lo) : mu.value;
  const double scale = scale_length(m);
  for (double k : {-40.0, -20.0, -10.0, -5.0, -3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 40.0}) {
    const double c = centre + k * scale;
    if (c > lo && c < hi) breaks.push_back(c);
  }
  if (m.family == Family::Triangular) breaks.push_back(m.params[1]);
  return ld_of_density_with_breaks([&](double x) { return pdf(m, x); }, lo, hi, breaks, tol);
}

DigitDistribution ld_exponential(double p) {
  if (!(p > 0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidParameter, "rate must be > 0");
  // P(d) = sum_j exp(-p d 10^j) - exp(-p (d+1) 10^j); terms vanish below
  // p*10^j ~ 1e-17 and above p*10^j ~ 1e3.
  const int jlo = static_cast<int>(std::floor(-std::log10(p))) - 18;
  const int jhi = static_cast<int>(std::ceil(-std::log10(p))) + 4;
  std::array<double, 9> prob{};
  for (int d = 1; d <= 9; ++d) {
    NeumaierSum acc;
    for (int j = jlo; j <= jhi; ++j) {
      const double a = p * d * std::pow(10.0, j);
      const double w = p * std::pow(10.0, j);
      acc.add(-std::exp(-a) * std::expm1(-w));
    }
    prob[d - 1] = acc.value();
  }
  return normalized(prob);
}

LogDensitySpec LogDensitySpec::uniform(double r, double s) { return {Shape::UniformLog, {r, s}}; }
LogDensitySpec LogDensitySpec::triangular(double a, double m, double b) {
  return {Shape::TriangularLog, {a, m, b}};
}
LogDensitySpec LogDensitySpec::semicircle(double center, double radius) {
  return {Shape::SemiCircularLog, {center, radius}};
}
LogDensitySpec LogDensitySpec::hanging_semicircle(double center, double radius, double elevation) {
  return {Shape::HangingSemiCircularLog, {center, radius, elevation}};
}

void validate(const LogDensitySpec& spec) {
  const auto& p = spec.params;
  auto bad = [] { throw Error(ErrorCode::InvalidParameter, "invalid log-density parameters"); };
  if (!(spec.log10_per_unit > 0)) bad();
  for (double v : p) {
    if (!std::isfinite(v)) bad();
  }
  switch (spec.shape) {
    case LogDensitySpec::Shape::UniformLog:
      if (p.size() != 2 || !(p[0] < p[1])) bad();
      break;
    case LogDensitySpec::Shape::TriangularLog:
      if (p.size() != 3 || !(p[0] <= p[1] && p[1] <= p[2] && p[0] < p[2])) bad();
      break;
    case LogDensitySpec::Shape::SemiCircularLog:
      if (p.size() != 2 || !(p[1] > 0)) bad();
      break;
    case LogDensitySpec::Shape::HangingSemiCircularLog:
      if (p.size() != 3 || !(p[1] > 0) || !(p[2] >= 0)) bad();
      break;
  }
}

double log_density(const LogDensitySpec& spec, double y) {
  validate(spec);
  const auto& p = spec.params;
  switch (spec.shape) {
    case LogDensitySpec::Shape::UniformLog:
      return (y >= p[0] && y <= p[1]) ? 1.0 / (p[1] - p[0]) : 0.0;
    case LogDensitySpec::Shape::TriangularLog: {
      const double a = p[0], m = p[1], b = p[2];
      if (y < a || y > b) return 0.0;
      if (y < m) return 2 * (y - a) / ((b - a) * (m - a));
      if (y == m) return 2 / (b - a);
      return 2 * (b - y) / ((b - a) * (b - m));
    }
    case LogDensitySpec::Shape::SemiCircularLog: {
      const double u = y - p[0], r = p[1];
      if (std::abs(u) > r) return 0.0;
      return 2.0 / (std::numbers::pi * r * r) * std::sqrt(r * r - u * u);
    }
    case LogDensitySpec::Shape::HangingSemiCircularLog: {
      const double u = y - p[0], r = p[1], h = p[2];
      if (std::abs(u) > r) return 0.0;
      const double area = std::numbers::pi * r * r / 2 + 2 * r * h;
      return (std::sqrt(r * r - u * u) + h) / area;
    }
  }
  return 0.0;
}

double log_cdf(const LogDensitySpec& spec, double y) {
  const auto& p = spec.params;
  switch (spec.shape) {
    case LogDensitySpec::Shape::UniformLog: return cdf_clamped((y - p[0]) / (p[1] - p[0]));
    case LogDensitySpec::Shape::TriangularLog: {
      const double a = p[0], m = p[1], b = p[2];
      if (y <= a) return 0.0;
      if (y >= b) return 1.0;
      if (y <= m) return (y - a) * (y - a) / ((b - a) * (m - a));
      return 1.0 - (b - y) * (b - y) / ((b - a) * (b - m));
    }
    case LogDensitySpec::Shape::SemiCircularLog: {
      const double t = std::clamp((y - p[0]) / p[1], -1.0, 1.0);
      return cdf_clamped(0.5 + (t * std::sqrt(1 - t * t) + std::asin(t)) / std::numbers::pi);
    }
    case LogDensitySpec::Shape::HangingSemiCircularLog: {
      const double r = p[1], h = p[2];
      const double t = std::clamp((y - p[0]) / r, -1.0, 1.0);
      const double area = std::numbers::pi * r * r / 2 + 2 * r * h;
      const double circ = r * r / 2 * (t * std::sqrt(1 - t * t) + std::asin(t) + std::numbers::pi / 2);
      return cdf_clamped((circ + h * r * (t + 1)) / area);
    }
  }
  return 0.0;
}

DigitDistribution ld_ten_to_symmetric(const LogDensitySpec& spec) {
  validate(spec);
  std::array<double, 9> mass{};
  for (int d = 1; d <= 9; ++d) {
    mass[d - 1] = folded_mass(spec, std::log10(static_cast<double>(d)), std::log10(d + 1.0));
  }
  return normalized(mass);
}

double x_density(const LogDensitySpec& spec, double x) {
  if (!(x > 0)) return 0.0;
  const double s = spec.log10_per_unit;
  const double y = std::log10(x) / s;
  return log_density(spec, y) / (x * std::log(10.0) * s);
}

std::vector<double> mantissa_density(const LogDensitySpec& spec, int bins) {
  validate(spec);
  if (bins < 10) throw Error(ErrorCode::InvalidParameter, "need at least 10 bins");
  std::vector<double> out(bins);
  for (int i = 0; i < bins; ++i) {
    out[i] = folded_mass(spec, static_cast<double>(i) / bins, static_cast<double>(i + 1) / bins) * bins;
  }
  return out;
}

DecadeDecomposition ld_decades(const DistributionModel& model, int j_lo, int j_hi) {
  if (j_hi <= j_lo) throw Error(ErrorCode::EmptyRange, "no decades requested");
  const DistributionModel m = resolve_integer_params(model);
  require_valid(m);
  const SupportDescriptor s = support(m);
  auto f = [&](double x) { return pdf(m, x) + (s.kind == SupportKind::Real ? pdf(m, -x) : 0.0); };
  DecadeDecomposition out;
  NeumaierSum covered;
  std::array<double, 9> blend{};
  for (int j = j_lo; j < j_hi; ++j) {
    const double p = std::pow(10.0, j);
    std::array<double, 9> local{};
    double w = 0.0;
    for (int d = 1; d <= 9; ++d) {
      double a = d * p, b = (d + 1) * p;
      if (s.kind == SupportKind::Bounded || s.kind == SupportKind::LowerBounded) {
        a = std::max(a, s.lo);
        b = std::min(b, s.hi);
      }
      if (!(b > a)) continue;
      local[d - 1] = integrate(f, a, b, 1e-12);
      w += local[d - 1];
    }
    DecadeEntry e;
    e.j = j;
    e.weight = w;
    e.local_ld = normalized(local);
    out.decades.push_back(std::move(e));
    covered.add(w);
    for (int i = 0; i < 9; ++i) blend[i] += local[i];
  }
  out.covered_mass = covered.value();
  if (!(out.covered_mass > 0)) throw Error(ErrorCode::NumericFailure, "no mass in requested decades");
  for (auto& e : out.decades) e.weight /= out.covered_mass;
  out.overall = normalized(blend);
  return out;
}

double ld_inflection_point(const DistributionModel& m) {
  require_valid(m);
  switch (m.family) {
    case Family::Exp1:
    case Family::Exp2:
    case Family::Exp3:
    case Family::Exp4:
    case Family::Exp5:
    case Family::Exp6: return mean(m).value;
    case Family::LogNormal: return std::exp(m.params[0]);
    default: throw Error(ErrorCode::UnsupportedForm, "inflection point defined for exponential and lognormal only");
  }
}

DigitDistribution ratio_of_uniforms_ld() {
  DigitDistribution out{10, 1, std::vector<double>(9)};
  for (int d = 1; d <= 9; ++d) out[d] = (1.0 + 10.0 / (d * (d + 1.0))) / 18.0;
  return out;
}

double over_steepness(const DigitDistribution& ld) {
  double s = (ld[1] - benford_first(1)) + (ld[2] - benford_first(2));
  for (int d = 3; d <= 9; ++d) s += benford_first(d) - ld[d];
  return s;
}

}  // namespace benlab
