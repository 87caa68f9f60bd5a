#include "benlab/numeric.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <charconv>

#include "benlab/error.hpp"

namespace benlab {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double* error) {
  if (a == b) {
    if (error) *error = 0.0;
    return 0.0;
  }
  // Map onto [-1, 1] here: the library compares its unscaled error estimate
  // with a scaled tolerance, which never converges on narrow intervals.
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto g = [&](double u) { return f(mid + half * u) * half; };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      g, -1.0, 1.0, 15, rel_tol, &err);
  if (!std::isfinite(v)) throw Error(ErrorCode::NumericFailure, "quadrature diverged");
  if (error) *error = err;
  return v;
}

double chi_square_critical(double alpha, int dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double chi_square_sf(double x, int dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, x));
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace benlab
