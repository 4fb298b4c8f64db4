#include "relax/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>

#include "relax/errors.hpp"

namespace relax {

namespace {

// Derivative at x[at] of the Lagrange polynomial through x[lo..lo+n).
double stencil_derivative(std::span<const double> x, std::span<const double> y, std::size_t lo,
                          std::size_t n, std::size_t at) {
  const double xi = x[at];
  double d = 0.0;
  for (std::size_t j = lo; j < lo + n; ++j) {
    double w = 0.0;
    if (j == at) {
      for (std::size_t m = lo; m < lo + n; ++m) {
        if (m != at) w += 1.0 / (xi - x[m]);
      }
    } else {
      double num = 1.0;
      double den = 1.0;
      for (std::size_t m = lo; m < lo + n; ++m) {
        if (m != j) den *= x[j] - x[m];
        if (m != j && m != at) num *= xi - x[m];
      }
      w = num / den;
    }
    d += w * y[j];
  }
  return d;
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), d_(x.size()) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw ParameterViolation("MonotoneCubic needs >= 2 matching nodes");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) throw ParameterViolation("MonotoneCubic nodes must increase");
  }
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

  const std::size_t width = std::min<std::size_t>(5, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
    lo = std::min(lo, n - width);
    d_[i] = stencil_derivative(x_, y_, lo, width, i);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const bool has_left = i > 0;
    const bool has_right = i + 1 < n;
    const double dl = has_left ? delta[i - 1] : (has_right ? delta[i] : 0.0);
    const double dr = has_right ? delta[i] : dl;
    const double s = sign(dl);
    if (s == 0.0 || sign(dr) != s) {
      d_[i] = 0.0;
      continue;
    }
    const double bound = 3.0 * std::min(std::abs(dl), std::abs(dr));
    d_[i] = s * std::min(std::max(0.0, s * d_[i]), bound);
  }
}

std::size_t MonotoneCubic::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double s = (x - x_[k]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[k] + (s3 - 2 * s2 + s) * h * d_[k] + (-2 * s3 + 3 * s2) * y_[k + 1] +
         (s3 - s2) * h * d_[k + 1];
}

double MonotoneCubic::derivative(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double s = (x - x_[k]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * y_[k] + (-6 * s2 + 6 * s) * y_[k + 1]) / h + (3 * s2 - 4 * s + 1) * d_[k] +
         (3 * s2 - 2 * s) * d_[k + 1];
}

}  // namespace relax
