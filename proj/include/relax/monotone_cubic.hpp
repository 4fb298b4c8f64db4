#pragma once

#include <span>
#include <vector>

namespace relax {

/// Monotonicity-preserving cubic Hermite interpolant.
///
/// Node slopes start from the fourth-order five-point finite-difference
/// formula (off-centre near the ends) and are then limited
/// (Fritsch-Carlson / Hyman) so the interpolant is monotone wherever the
/// data are.
class MonotoneCubic {
 public:
  MonotoneCubic(std::span<const double> x, std::span<const double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_min() const noexcept { return x_.front(); }
  double x_max() const noexcept { return x_.back(); }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace relax
