#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "benlab/rng.hpp"

namespace benlab {

enum class Family {
  Uniform,
  Normal,
  OriginNormal,
  Exp1,  // rate rho
  Exp2,  // mean rho
  Exp3,  // mean sqrt(rho)
  Exp4,  // mean rho^7.5
  Exp5,  // mean rho^8
  Exp6,  // mean log10(rho)
  GenExp1,  // rho*exp(-rho*(x-mu))
  GenExp2,  // (1/rho)*exp(-(x-mu)/rho)
  Gamma,
  Weibull,
  Rayleigh,
  Wald,
  LogNormal,
  Gompertz,
  Nakagami,
  GuptaKundu,
  Pareto,
  FisherTippett,
  Logistic,
  Cauchy,
  ChiSqr,
  Triangular,
  PowerLaw,
  Die,
};

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::vector<std::string_view> aliases;
  std::vector<std::string_view> params;
};

const std::vector<FamilyInfo>& all_families();
const FamilyInfo& family_info(Family f);
std::optional<Family> family_by_name(std::string_view name);  // case-insensitive
int arity(Family f);

struct DistributionModel {
  Family family = Family::Uniform;
  std::vector<double> params;
};

enum class SupportKind { Positive, Negative, Real, LowerBounded, Bounded };

struct SupportDescriptor {
  SupportKind kind = SupportKind::Real;
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const;
};

// True when the parameter vector satisfies the family's constraints.
// ChiSqr degrees of freedom and Die faces are floored before this check.
bool params_valid(const DistributionModel& m);
// Floors integer-valued parameters (ChiSqr dof, Die faces) to >= 1.
DistributionModel resolve_integer_params(DistributionModel m);
void require_valid(const DistributionModel& m);

double pdf(const DistributionModel& m, double x);
double cdf(const DistributionModel& m, double x);
double sample(const DistributionModel& m, Rng& rng);
SupportDescriptor support(const DistributionModel& m);

struct MeanValue {
  double value = 0.0;
  bool infinite = false;
  bool closed_form = true;
};
MeanValue mean(const DistributionModel& m);

// Characteristic length of the family, used to truncate infinite supports.
double scale_length(const DistributionModel& m);

// Inverse CDF of Triangular(A, m, B) at cumulative probability rd.
double triangular_inverse_cdf(double a, double mode, double b, double rd);

std::string to_string(const DistributionModel& m);

}  // namespace benlab
