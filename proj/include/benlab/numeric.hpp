#pragma once

#include <cmath>
#include <functional>
#include <string>

namespace benlab {

// Compensated (Neumaier) summation.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const NeumaierSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class It>
double neumaier_sum(It first, It last) {
  NeumaierSum s;
  for (; first != last; ++first) s.add(*first);
  return s.value();
}

// Adaptive Gauss-Kronrod on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double* error = nullptr);

// Upper-tail critical value of chi-square with dof degrees of freedom.
double chi_square_critical(double alpha, int dof);
// Survival function of chi-square.
double chi_square_sf(double x, int dof);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double x);

}  // namespace benlab
