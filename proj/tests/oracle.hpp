#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace relax::testing {

using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<90>>;

// E^gamma_{alpha,beta}(x) by plain summation of the defining series in
// 90-digit arithmetic. The coefficients (gamma)_r / (r! Gamma(alpha r + beta))
// are tabulated once per parameter set, so sweeping x is cheap. Trustworthy
// while the largest term stays below ~1e70 times the result, i.e. for
// |x|^(1/alpha) up to ~150.
class HighPrecisionML {
 public:
  HighPrecisionML(double alpha, double beta, double gamma, int terms = 1500) {
    coef_.reserve(static_cast<std::size_t>(terms));
    const big a(alpha), b(beta), g(gamma);
    big ratio = 1;  // (gamma)_r / r!
    for (int r = 0; r < terms; ++r) {
      if (r > 0) ratio *= (g + (r - 1)) / r;
      const big arg = a * r + b;
      const bool pole = arg <= 0 && floor(arg) == arg;
      coef_.push_back(pole ? big(0) : ratio / boost::math::tgamma(arg));
    }
  }

  big exact(double x) const {
    const big bx(x);
    big sum = 0, xr = 1;
    int small = 0;
    for (std::size_t r = 0; r < coef_.size(); ++r) {
      const big term = coef_[r] * xr;
      sum += term;
      small = r > 4 && abs(term) <= big(1e-85) * abs(sum) ? small + 1 : 0;
      if (small >= 3 || (r > 4 && coef_[r] == 0 && coef_[r - 1] == 0 && coef_[r - 2] == 0)) return sum;
      xr *= bx;
    }
    throw std::runtime_error("HighPrecisionML: coefficient table exhausted");
  }

  double operator()(double x) const { return static_cast<double>(exact(x)); }

 private:
  std::vector<big> coef_;
};

}  // namespace relax::testing
