#pragma once

#include <functional>
#include <vector>

#include "benlab/digits.hpp"
#include "benlab/distributions.hpp"

namespace benlab {

// First-digit law of k/x over [10^S, 10^(S+G)], by exact decade sums.
DigitDistribution ld_kx(double S, double G);

// First-digit law of k/x^m normalized over (lo, hi), closed form.
DigitDistribution ld_power_law(double m, double lo, double hi);
// Normalization constant k of k/x^m over (lo, hi).
double power_law_k(double m, double lo, double hi);

struct DensityLd {
  DigitDistribution ld;
  double total_mass = 0.0;      // integral of the pdf over the covered decades
  double truncated_mass = 0.0;  // estimate of the mass left out
};

// Quadrature of pdf over every digit interval meeting (lo, hi); negative
// values count through |x|. Infinite ends sweep every decade a double can
// represent, so truncated_mass only reflects quadrature error.
DensityLd ld_of_density(const std::function<double(double)>& pdf, double lo, double hi,
                        double tol = 1e-12);
// Same, with extra split points for narrow peaks or kinks.
DensityLd ld_of_density_with_breaks(const std::function<double(double)>& pdf, double lo,
                                    double hi, const std::vector<double>& breaks,
                                    double tol = 1e-12);
DensityLd ld_of_model(const DistributionModel& m, double tol = 1e-12);

// Exact first-digit law of the exponential with rate p (mean 1/p).
DigitDistribution ld_exponential(double p);

struct LogDensitySpec {
  enum class Shape { UniformLog, TriangularLog, SemiCircularLog, HangingSemiCircularLog };
  Shape shape = Shape::UniformLog;
  // UniformLog: {R, S}; TriangularLog: {A, m, B};
  // SemiCircularLog: {center, R}; HangingSemiCircularLog: {center, R, elevation}.
  std::vector<double> params;
  // Units of the log coordinates: 1 for log10, log10(e) when Y is a natural log.
  double log10_per_unit = 1.0;

  static LogDensitySpec uniform(double r, double s);
  static LogDensitySpec triangular(double a, double m, double b);
  static LogDensitySpec semicircle(double center, double radius);
  static LogDensitySpec hanging_semicircle(double center, double radius, double elevation);
};

void validate(const LogDensitySpec& spec);
// Density and CDF of Y in its own units.
double log_density(const LogDensitySpec& spec, double y);
double log_cdf(const LogDensitySpec& spec, double y);

// First-digit law of 10^Y by folding the CDF of Y modulo 1.
DigitDistribution ld_ten_to_symmetric(const LogDensitySpec& spec);
// Density of X = 10^Y (or e^Y) in x-space, for the quadrature cross-check.
double x_density(const LogDensitySpec& spec, double x);
// Folded mantissa density averaged over `bins` equal bins on [0, 1).
std::vector<double> mantissa_density(const LogDensitySpec& spec, int bins);

struct DecadeEntry {
  int j = 0;  // decade [10^j, 10^(j+1))
  double weight = 0.0;
  DigitDistribution local_ld;
};

struct DecadeDecomposition {
  std::vector<DecadeEntry> decades;
  DigitDistribution overall;
  double covered_mass = 0.0;  // pdf mass inside the requested decades
};

// Decades j_lo .. j_hi - 1; weights renormalized over them.
DecadeDecomposition ld_decades(const DistributionModel& m, int j_lo, int j_hi);

double ld_inflection_point(const DistributionModel& m);

DigitDistribution ratio_of_uniforms_ld();

double over_steepness(const DigitDistribution& local_ld);

}  // namespace benlab
