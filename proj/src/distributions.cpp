#include "benlab/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "benlab/error.hpp"
#include "benlab/numeric.hpp"

namespace benlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEulerGamma = 0.57721566490153286061;

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool is_exp_variant(Family f) {
  return f == Family::Exp1 || f == Family::Exp2 || f == Family::Exp3 ||
         f == Family::Exp4 || f == Family::Exp5 || f == Family::Exp6;
}

// Mean of the exponential variants as a function of rho.
double exp_mean(Family f, double rho) {
  switch (f) {
    case Family::Exp1: return 1.0 / rho;
    case Family::Exp2: return rho;
    case Family::Exp3: return std::sqrt(rho);
    case Family::Exp4: return std::pow(rho, 7.5);
    case Family::Exp5: return std::pow(rho, 8.0);
    case Family::Exp6: return std::log10(rho);
    default: return 0.0;
  }
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double norm_quantile(double u) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double std_normal(Rng& rng) { return norm_quantile(rng.uniform()); }

// Marsaglia-Tsang; shape below 1 boosted through U^(1/k).
double std_gamma(double k, Rng& rng) {
  if (k < 1.0) {
    const double g = std_gamma(k + 1.0, rng);
    return g * std::pow(rng.uniform(), 1.0 / k);
  }
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    double x, v;
    do {
      x = std_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
  throw Error(ErrorCode::NumericFailure, "gamma sampler exceeded attempt cap");
}

double gompertz_cdf(double b, double eta, double x) {
  if (x <= 0) return 0.0;
  const double e = std::exp(-b * x);
  return -std::expm1(-b * x) * std::exp(-eta * e);
}

// Bisection on a monotone CDF to 1e-10 in probability.
template <class F>
double invert_cdf(F cdf_fn, double u, double lo, double hi) {
  while (cdf_fn(hi) < u) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error(ErrorCode::NumericFailure, "cdf inversion diverged");
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double c = cdf_fn(mid);
    if (std::abs(c - u) < 1e-10 || hi - lo <= 1e-15 * hi) return mid;
    if (c < u) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double power_law_norm(double m, double lo, double hi) {
  if (m == 1.0) return 1.0 / std::log(hi / lo);
  return (1.0 - m) / (std::pow(hi, 1.0 - m) - std::pow(lo, 1.0 - m));
}

bool finite_all(const std::vector<double>& p) {
  return std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); });
}

double wald_cdf(double mu, double lam, double x) {
  if (x <= 0) return 0.0;
  const double r = std::sqrt(lam / x);
  const double t1 = norm_cdf(r * (x / mu - 1.0));
  const double z2 = -r * (x / mu + 1.0);
  const double expo = 2.0 * lam / mu;
  double t2;
  if (expo < 700.0) {
    t2 = std::exp(expo) * norm_cdf(z2);
  } else {
    // Phi(z) ~ phi(z)/|z| (1 - 1/z^2) for very negative z.
    const double lz = -0.5 * z2 * z2 - std::log(-z2) - 0.5 * std::log(2 * std::numbers::pi);
    t2 = std::exp(expo + lz) * (1.0 - 1.0 / (z2 * z2));
  }
  return std::clamp(t1 + t2, 0.0, 1.0);
}

}  // namespace

const std::vector<FamilyInfo>& all_families() {
  static const std::vector<FamilyInfo> table = {
      {Family::Uniform, "Uniform", {"U"}, {"a", "b"}},
      {Family::Normal, "Normal", {}, {"mu", "sigma"}},
      {Family::OriginNormal, "OriginNormal", {}, {"sigma"}},
      {Family::Exp1, "Exp1", {"Exponential", "Exp"}, {"rho"}},
      {Family::Exp2, "Exp2", {}, {"rho"}},
      {Family::Exp3, "Exp3", {}, {"rho"}},
      {Family::Exp4, "Exp4", {}, {"rho"}},
      {Family::Exp5, "Exp5", {}, {"rho"}},
      {Family::Exp6, "Exp6", {}, {"rho"}},
      {Family::GenExp1, "GenExp1", {"GeneralizedExp1"}, {"rho", "mu"}},
      {Family::GenExp2, "GenExp2", {"GeneralizedExp2"}, {"rho", "mu"}},
      {Family::Gamma, "Gamma", {}, {"k", "theta"}},
      {Family::Weibull, "Weibull", {}, {"k", "lambda"}},
      {Family::Rayleigh, "Rayleigh", {}, {"sigma"}},
      {Family::Wald, "Wald", {"InverseGaussian"}, {"mu", "lambda"}},
      {Family::LogNormal, "LogNormal", {"Lognormal"}, {"mu", "sigma"}},
      {Family::Gompertz, "Gompertz", {}, {"b", "eta"}},
      {Family::Nakagami, "Nakagami", {}, {"mu", "omega"}},
      {Family::GuptaKundu, "GuptaKundu", {}, {"alpha", "lambda"}},
      {Family::Pareto, "Pareto", {}, {"a", "theta"}},
      {Family::FisherTippett, "FisherTippett", {"Gumbel"}, {"mu", "lambda"}},
      {Family::Logistic, "Logistic", {}, {"mu", "s"}},
      {Family::Cauchy, "Cauchy", {"CauchyLorentz"}, {"x0", "gamma"}},
      {Family::ChiSqr, "ChiSqr", {"ChiSquare"}, {"dof"}},
      {Family::Triangular, "Triangular", {}, {"A", "m", "B"}},
      {Family::PowerLaw, "PowerLaw", {}, {"m", "lo", "hi"}},
      {Family::Die, "Die", {}, {"faces"}},
  };
  return table;
}

const FamilyInfo& family_info(Family f) {
  for (const auto& info : all_families()) {
    if (info.family == f) return info;
  }
  throw Error(ErrorCode::UnknownFamily, "unregistered family");
}

std::optional<Family> family_by_name(std::string_view name) {
  for (const auto& info : all_families()) {
    if (iequals(info.name, name)) return info.family;
    for (auto alias : info.aliases) {
      if (iequals(alias, name)) return info.family;
    }
  }
  return std::nullopt;
}

int arity(Family f) { return static_cast<int>(family_info(f).params.size()); }

bool SupportDescriptor::contains(double x) const {
  switch (kind) {
    case SupportKind::Positive: return x > 0;
    case SupportKind::Negative: return x < 0;
    case SupportKind::Real: return std::isfinite(x);
    case SupportKind::LowerBounded: return x >= lo && std::isfinite(x);
    case SupportKind::Bounded: return x >= lo && x <= hi;
  }
  return false;
}

DistributionModel resolve_integer_params(DistributionModel m) {
  if ((m.family == Family::ChiSqr || m.family == Family::Die) && !m.params.empty() &&
      std::isfinite(m.params[0])) {
    m.params[0] = std::max(1.0, std::floor(m.params[0]));
  }
  return m;
}

bool params_valid(const DistributionModel& m) {
  if (static_cast<int>(m.params.size()) != arity(m.family)) return false;
  if (!finite_all(m.params)) return false;
  const auto& p = m.params;
  switch (m.family) {
    case Family::Uniform: return p[0] < p[1];
    case Family::Normal: return p[1] > 0;
    case Family::OriginNormal: return p[0] > 0;
    case Family::Exp6: return p[0] > 1.0;
    case Family::Exp1:
    case Family::Exp2:
    case Family::Exp3:
    case Family::Exp4:
    case Family::Exp5: {
      if (!(p[0] > 0)) return false;
      const double mu = exp_mean(m.family, p[0]);
      return mu > 0 && std::isfinite(mu);
    }
    case Family::GenExp1:
    case Family::GenExp2: return p[0] > 0;
    case Family::Gamma:
    case Family::Weibull:
    case Family::Wald:
    case Family::Gompertz:
    case Family::GuptaKundu:
    case Family::Pareto: return p[0] > 0 && p[1] > 0;
    case Family::Nakagami: return p[0] >= 0.5 && p[1] > 0;
    case Family::Rayleigh: return p[0] > 0;
    case Family::LogNormal:
    case Family::FisherTippett:
    case Family::Logistic:
    case Family::Cauchy: return p[1] > 0;
    case Family::ChiSqr:
    case Family::Die: return p[0] >= 1 && p[0] == std::floor(p[0]);
    case Family::Triangular: return p[0] <= p[1] && p[1] <= p[2] && p[0] < p[2];
    case Family::PowerLaw: return p[0] > 0 && p[1] > 0 && p[1] < p[2];
  }
  return false;
}

void require_valid(const DistributionModel& m) {
  if (!params_valid(m)) {
    throw Error(ErrorCode::InvalidParameter, "invalid parameters for " + to_string(m));
  }
}

double pdf(const DistributionModel& m, double x) {
  require_valid(m);
  const auto& p = m.params;
  // The exponential density is finite at its closed end, so x = 0 keeps rho.
  if (is_exp_variant(m.family) && x == 0.0) return 1.0 / exp_mean(m.family, p[0]);
  if (!support(m).contains(x)) return 0.0;
  switch (m.family) {
    case Family::Uniform: return x < p[1] ? 1.0 / (p[1] - p[0]) : 0.0;
    case Family::Normal: {
      const double z = (x - p[0]) / p[1];
      return std::exp(-0.5 * z * z) / (p[1] * std::sqrt(2 * std::numbers::pi));
    }
    case Family::OriginNormal: {
      const double z = x / p[0];
      return std::exp(-0.5 * z * z) / (p[0] * std::sqrt(2 * std::numbers::pi));
    }
    case Family::Exp1:
    case Family::Exp2:
    case Family::Exp3:
    case Family::Exp4:
    case Family::Exp5:
    case Family::Exp6: {
      const double mu = exp_mean(m.family, p[0]);
      return std::exp(-x / mu) / mu;
    }
    case Family::GenExp1: return p[0] * std::exp(-p[0] * (x - p[1]));
    case Family::GenExp2: return std::exp(-(x - p[1]) / p[0]) / p[0];
    case Family::Gamma: {
      const double k = p[0], th = p[1];
      return std::exp((k - 1) * std::log(x) - x / th - std::lgamma(k) - k * std::log(th));
    }
    case Family::Weibull: {
      const double k = p[0], l = p[1];
      const double z = x / l;
      return (k / l) * std::pow(z, k - 1) * std::exp(-std::pow(z, k));
    }
    case Family::Rayleigh: {
      const double s2 = p[0] * p[0];
      return x / s2 * std::exp(-x * x / (2 * s2));
    }
    case Family::Wald: {
      const double mu = p[0], lam = p[1];
      return std::sqrt(lam / (2 * std::numbers::pi * x * x * x)) *
             std::exp(-lam * (x - mu) * (x - mu) / (2 * mu * mu * x));
    }
    case Family::LogNormal: {
      const double z = (std::log(x) - p[0]) / p[1];
      return std::exp(-0.5 * z * z) / (x * p[1] * std::sqrt(2 * std::numbers::pi));
    }
    case Family::Gompertz: {
      const double b = p[0], eta = p[1];
      const double e = std::exp(-b * x);
      return b * e * std::exp(-eta * e) * (1 + eta * (1 - e));
    }
    case Family::Nakagami: {
      const double mu = p[0], om = p[1];
      return std::exp(std::log(2.0) + mu * std::log(mu) - std::lgamma(mu) - mu * std::log(om) +
                      (2 * mu - 1) * std::log(x) - mu / om * x * x);
    }
    case Family::GuptaKundu: {
      const double a = p[0], l = p[1];
      return a * l * std::exp(-l * x) * std::pow(-std::expm1(-l * x), a - 1);
    }
    case Family::Pareto: {
      const double a = p[0], th = p[1];
      return (th / a) * std::pow(x / a, -(th + 1));
    }
    case Family::FisherTippett: {
      const double z = (x - p[0]) / p[1];
      return std::exp(-z - std::exp(-z)) / p[1];
    }
    case Family::Logistic: {
      const double z = -std::abs(x - p[0]) / p[1];
      const double e = std::exp(z);
      return e / (p[1] * (1 + e) * (1 + e));
    }
    case Family::Cauchy: {
      const double z = (x - p[0]) / p[1];
      return 1.0 / (std::numbers::pi * p[1] * (1 + z * z));
    }
    case Family::ChiSqr: {
      const double k = p[0] / 2.0;
      return std::exp((k - 1) * std::log(x) - x / 2 - std::lgamma(k) - k * std::log(2.0));
    }
    case Family::Triangular: {
      const double a = p[0], c = p[1], b = p[2];
      if (x < c) return 2 * (x - a) / ((b - a) * (c - a));
      if (x == c) return 2 / (b - a);
      return 2 * (b - x) / ((b - a) * (b - c));
    }
    case Family::PowerLaw: return power_law_norm(p[0], p[1], p[2]) * std::pow(x, -p[0]);
    case Family::Die: {
      const double r = std::round(x);
      return (r == x) ? 1.0 / p[0] : 0.0;
    }
  }
  return 0.0;
}

double cdf(const DistributionModel& m, double x) {
  require_valid(m);
  const auto& p = m.params;
  const SupportDescriptor s = support(m);
  if (s.kind == SupportKind::Positive && x <= 0) return 0.0;
  if ((s.kind == SupportKind::LowerBounded || s.kind == SupportKind::Bounded) && x <= s.lo) return 0.0;
  if (s.kind == SupportKind::Bounded && x >= s.hi) return 1.0;
  switch (m.family) {
    case Family::Uniform: return (x - p[0]) / (p[1] - p[0]);
    case Family::Normal: return norm_cdf((x - p[0]) / p[1]);
    case Family::OriginNormal: return norm_cdf(x / p[0]);
    case Family::Exp1:
    case Family::Exp2:
    case Family::Exp3:
    case Family::Exp4:
    case Family::Exp5:
    case Family::Exp6: return -std::expm1(-x / exp_mean(m.family, p[0]));
    case Family::GenExp1: return -std::expm1(-p[0] * (x - p[1]));
    case Family::GenExp2: return -std::expm1(-(x - p[1]) / p[0]);
    case Family::Gamma: return boost::math::gamma_p(p[0], x / p[1]);
    case Family::Weibull: return -std::expm1(-std::pow(x / p[1], p[0]));
    case Family::Rayleigh: return -std::expm1(-x * x / (2 * p[0] * p[0]));
    case Family::Wald: return wald_cdf(p[0], p[1], x);
    case Family::LogNormal: return norm_cdf((std::log(x) - p[0]) / p[1]);
    case Family::Gompertz: return gompertz_cdf(p[0], p[1], x);
    case Family::Nakagami: return boost::math::gamma_p(p[0], p[0] / p[1] * x * x);
    case Family::GuptaKundu: return std::pow(-std::expm1(-p[1] * x), p[0]);
    case Family::Pareto: return 1.0 - std::pow(x / p[0], -p[1]);
    case Family::FisherTippett: return std::exp(-std::exp(-(x - p[0]) / p[1]));
    case Family::Logistic: return 1.0 / (1.0 + std::exp(-(x - p[0]) / p[1]));
    case Family::Cauchy: return 0.5 + std::atan((x - p[0]) / p[1]) / std::numbers::pi;
    case Family::ChiSqr: return boost::math::gamma_p(p[0] / 2, x / 2);
    case Family::Triangular: {
      const double a = p[0], c = p[1], b = p[2];
      if (x <= c) return (x - a) * (x - a) / ((b - a) * (c - a));
      return 1.0 - (b - x) * (b - x) / ((b - a) * (b - c));
    }
    case Family::PowerLaw: {
      const double mm = p[0], lo = p[1], hi = p[2];
      if (mm == 1.0) return std::log(x / lo) / std::log(hi / lo);
      return (std::pow(x, 1 - mm) - std::pow(lo, 1 - mm)) /
             (std::pow(hi, 1 - mm) - std::pow(lo, 1 - mm));
    }
    case Family::Die: return std::clamp(std::floor(x), 0.0, p[0]) / p[0];
  }
  return 0.0;
}

double triangular_inverse_cdf(double a, double mode, double b, double rd) {
  if (rd < (mode - a) / (b - a)) return a + std::sqrt(rd * (mode - a) * (b - a));
  return b - std::sqrt((1 - rd) * (b - mode) * (b - a));
}

double sample(const DistributionModel& model, Rng& rng) {
  const DistributionModel m = resolve_integer_params(model);
  require_valid(m);
  const auto& p = m.params;
  switch (m.family) {
    case Family::Uniform: return p[0] + (p[1] - p[0]) * rng.uniform();
    case Family::Normal: return p[0] + p[1] * std_normal(rng);
    case Family::OriginNormal: return p[0] * std_normal(rng);
    case Family::Exp1:
    case Family::Exp2:
    case Family::Exp3:
    case Family::Exp4:
    case Family::Exp5:
    case Family::Exp6: return -exp_mean(m.family, p[0]) * std::log(rng.uniform());
    case Family::GenExp1: return p[1] - std::log(rng.uniform()) / p[0];
    case Family::GenExp2: return p[1] - p[0] * std::log(rng.uniform());
    case Family::Gamma: return p[1] * std_gamma(p[0], rng);
    case Family::Weibull: return p[1] * std::pow(-std::log(rng.uniform()), 1.0 / p[0]);
    case Family::Rayleigh: return p[0] * std::sqrt(-2.0 * std::log(rng.uniform()));
    case Family::Wald: {
      // Michael, Schucany and Haas transformation.
      const double mu = p[0], lam = p[1];
      const double z = std_normal(rng);
      const double y = z * z;
      const double x = mu + mu * mu * y / (2 * lam) -
                       mu / (2 * lam) * std::sqrt(4 * mu * lam * y + mu * mu * y * y);
      return rng.uniform() <= mu / (mu + x) ? x : mu * mu / x;
    }
    case Family::LogNormal: return std::exp(p[0] + p[1] * std_normal(rng));
    case Family::Gompertz: {
      const double b = p[0], eta = p[1];
      const double u = rng.uniform();
      return invert_cdf([&](double x) { return gompertz_cdf(b, eta, x); }, u, 0.0, 1.0 / b);
    }
    case Family::Nakagami: {
      const double u = rng.uniform();
      return std::sqrt(p[1] / p[0] * boost::math::gamma_p_inv(p[0], u));
    }
    case Family::GuptaKundu: {
      const double u = rng.uniform();
      return -std::log1p(-std::pow(u, 1.0 / p[0])) / p[1];
    }
    case Family::Pareto: return p[0] * std::pow(rng.uniform(), -1.0 / p[1]);
    case Family::FisherTippett: return p[0] - p[1] * std::log(-std::log(rng.uniform()));
    case Family::Logistic: {
      const double u = rng.uniform();
      return p[0] + p[1] * std::log(u / (1 - u));
    }
    case Family::Cauchy: return p[0] + p[1] * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    case Family::ChiSqr: return 2.0 * std_gamma(p[0] / 2.0, rng);
    case Family::Triangular: return triangular_inverse_cdf(p[0], p[1], p[2], rng.uniform());
    case Family::PowerLaw: {
      const double mm = p[0], lo = p[1], hi = p[2];
      const double u = rng.uniform();
      if (mm == 1.0) return lo * std::pow(hi / lo, u);
      const double a = std::pow(lo, 1 - mm), b = std::pow(hi, 1 - mm);
      return std::pow(a + u * (b - a), 1.0 / (1 - mm));
    }
    case Family::Die: return 1.0 + std::floor(rng.uniform() * p[0]);
  }
  return 0.0;
}

SupportDescriptor support(const DistributionModel& m) {
  const auto& p = m.params;
  switch (m.family) {
    case Family::Normal:
    case Family::OriginNormal:
    case Family::FisherTippett:
    case Family::Logistic:
    case Family::Cauchy: return {SupportKind::Real, -kInf, kInf};
    case Family::GenExp1:
    case Family::GenExp2: return {SupportKind::LowerBounded, p[1], kInf};
    case Family::Pareto: return {SupportKind::LowerBounded, p[0], kInf};
    case Family::Uniform: return {SupportKind::Bounded, p[0], p[1]};
    case Family::Triangular: return {SupportKind::Bounded, p[0], p[2]};
    case Family::PowerLaw: return {SupportKind::Bounded, p[1], p[2]};
    case Family::Die: return {SupportKind::Bounded, 1.0, resolve_integer_params(m).params[0]};
    default: return {SupportKind::Positive, 0.0, kInf};
  }
}

MeanValue mean(const DistributionModel& model) {
  const DistributionModel m = resolve_integer_params(model);
  require_valid(m);
  const auto& p = m.params;
  switch (m.family) {
    case Family::Uniform: return {(p[0] + p[1]) / 2};
    case Family::Normal: return {p[0]};
    case Family::OriginNormal: return {0.0};
    case Family::GenExp1: return {p[1] + 1.0 / p[0]};
    case Family::GenExp2: return {p[1] + p[0]};
    case Family::Gamma: return {p[0] * p[1]};
    case Family::Weibull: return {p[1] * std::tgamma(1 + 1 / p[0])};
    case Family::Rayleigh: return {p[0] * std::sqrt(std::numbers::pi / 2)};
    case Family::Wald: return {p[0]};
    case Family::LogNormal: return {std::exp(p[0] + p[1] * p[1] / 2)};
    case Family::Gompertz: {
      // No closed form: E[X] = integral of the survival function.
      const double b = p[0], eta = p[1];
      const double v = integrate([&](double x) { return 1.0 - gompertz_cdf(b, eta, x); },
                                 0.0, 60.0 / b + std::log1p(eta) / b, 1e-13);
      return {v, false, false};
    }
    case Family::Nakagami:
      return {std::exp(std::lgamma(p[0] + 0.5) - std::lgamma(p[0])) * std::sqrt(p[1] / p[0])};
    case Family::GuptaKundu:
      return {(boost::math::digamma(p[0] + 1) - boost::math::digamma(1.0)) / p[1]};
    case Family::Pareto:
      if (p[1] <= 1) return {kInf, true};
      return {p[0] * p[1] / (p[1] - 1)};
    case Family::FisherTippett: return {p[0] + kEulerGamma * p[1]};
    case Family::Logistic: return {p[0]};
    case Family::Cauchy: return {kInf, true};
    case Family::ChiSqr: return {p[0]};
    case Family::Triangular: return {(p[0] + p[1] + p[2]) / 3};
    case Family::PowerLaw: {
      const double mm = p[0], lo = p[1], hi = p[2];
      const double c = power_law_norm(mm, lo, hi);
      if (mm == 2.0) return {c * std::log(hi / lo)};
      return {c * (std::pow(hi, 2 - mm) - std::pow(lo, 2 - mm)) / (2 - mm)};
    }
    case Family::Die: return {(p[0] + 1) / 2};
    default: break;
  }
  if (is_exp_variant(m.family)) return {exp_mean(m.family, p[0])};
  return {0.0};
}

double scale_length(const DistributionModel& model) {
  const DistributionModel m = resolve_integer_params(model);
  const auto& p = m.params;
  switch (m.family) {
    case Family::Normal: return p[1];
    case Family::OriginNormal: return p[0];
    case Family::GenExp1: return 1.0 / p[0];
    case Family::GenExp2: return p[0];
    case Family::Gamma: return p[1] * std::max(1.0, std::sqrt(p[0]));
    case Family::Weibull: return p[1] * std::max(1.0, 1.0 / p[0]);
    case Family::Rayleigh: return p[0];
    case Family::Wald: return p[0] * std::max(1.0, p[0] / p[1]);
    case Family::Gompertz: return (1.0 + std::log1p(p[1])) / p[0];
    case Family::Nakagami: return std::sqrt(p[1]);
    case Family::GuptaKundu: return (1.0 + std::log1p(p[0])) / p[1];
    case Family::FisherTippett:
    case Family::Logistic:
    case Family::Cauchy: return p[1];
    case Family::ChiSqr: return std::max(2.0, std::sqrt(2 * p[0]));
    default: break;
  }
  if (is_exp_variant(m.family)) return exp_mean(m.family, p[0]);
  return 1.0;
}

std::string to_string(const DistributionModel& m) {
  std::string out(family_info(m.family).name);
  out += '(';
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    if (i) out += ", ";
    out += format_double(m.params[i]);
  }
  out += ')';
  return out;
}

}  // namespace benlab
