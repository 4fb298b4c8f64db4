#pragma once

#include <stdexcept>
#include <string>

#include "relax/series_eval.hpp"

namespace relax {

/// Base for every numerical failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters for the requested operation.
class ParameterViolation : public Error {
 public:
  using Error::Error;
};

/// A series failure that still carries the partial sum reached.
class SeriesError : public Error {
 public:
  SeriesError(const std::string& what, SeriesEval partial) : Error(what), partial_(partial) {}
  const SeriesEval& partial() const noexcept { return partial_; }

 private:
  SeriesEval partial_;
};

/// Term cap reached while terms were still growing.
class NonConvergence : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

/// Smallest term of an asymptotic series is too large for the requested tolerance.
class AsymptoticBreakdown : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

/// A transform was evaluated on its branch cut (closed negative real axis).
class BranchViolation : public Error {
 public:
  using Error::Error;
};

/// Contour quadrature did not stabilize under node doubling.
class OscillationDetected : public Error {
 public:
  using Error::Error;
};

/// The two Laplace inverters disagree beyond the certification tolerance.
class NonAgreement : public Error {
 public:
  NonAgreement(const std::string& what, double talbot, double dehoog)
      : Error(what), talbot_(talbot), dehoog_(dehoog) {}
  double talbot() const noexcept { return talbot_; }
  double dehoog() const noexcept { return dehoog_; }

 private:
  double talbot_;
  double dehoog_;
};

/// No solution route produced an acceptable value at some grid point.
class NoMethodConverged : public Error {
 public:
  using Error::Error;
};

/// The curve is too coarse for the requested interpolation accuracy.
class InsufficientGrid : public Error {
 public:
  using Error::Error;
};

}  // namespace relax
