#include "relax/special_functions.hpp"

#include <algorithm>
#include <vector>
#include <cmath>
#include <complex>
#include <limits>

#include "relax/errors.hpp"

namespace relax::sf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(double z) { return z <= 0.0 && z == std::nearbyint(z); }

// log|Gamma(z)| and sign of Gamma(z) for z not a pole.
double log_abs_gamma(double z, int& sign) {
  int s = 1;
  const double lg = ::lgamma_r(z, &s);
  sign = s;
  return lg;
}

// Neumaier-compensated running sum that also tracks sum |term| weighted by
// the expected relative error of each term.
class Accumulator {
 public:
  void add(double term, double rel_err) {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
    rounding_ += std::abs(term) * rel_err;
  }
  double value() const { return sum_ + comp_; }
  double rounding() const { return rounding_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double rounding_ = 0.0;
};

// Generates the terms (gamma)_r x^r / (r! Gamma(alpha r + beta)). The
// coefficient (gamma)_r x^r / r! is kept as mantissa * 2^exponent so that it
// cannot overflow before the Gamma denominator brings it back down.
class PrabhakarTerms {
 public:
  PrabhakarTerms(double alpha, double beta, double gamma, double x)
      : alpha_(alpha), beta_(beta), gamma_(gamma), x_(x) {}

  // Term r (call with r = 0, 1, 2, ... in order).
  double next(int r, double& rel_err) {
    if (r > 0) advance(r - 1);
    rel_err = kEps * (r + 2);
    if (mantissa_ == 0.0) return 0.0;
    const double z = alpha_ * r + beta_;
    if (is_nonpositive_integer(z)) return 0.0;
    if (z < 170.0 && exponent_ > -900 && exponent_ < 900) {
      return std::ldexp(mantissa_, exponent_) * reciprocal_gamma(z);
    }
    int sign = 1;
    const double lg = log_abs_gamma(z, sign);
    const double log_mag = std::log(std::abs(mantissa_)) + exponent_ * std::log(2.0) - lg;
    rel_err += kEps * std::abs(lg);
    const double mag = std::exp(log_mag);
    return (mantissa_ < 0.0 ? -1.0 : 1.0) * sign * mag;
  }

  // True once (gamma)_r has hit zero, i.e. the series is a finite polynomial.
  bool terminated() const { return mantissa_ == 0.0; }

 private:
  void advance(int r) {
    mantissa_ *= (gamma_ + r) * x_ / (r + 1);
    int e = 0;
    mantissa_ = std::frexp(mantissa_, &e);
    exponent_ += e;
  }

  double alpha_;
  double beta_;
  double gamma_;
  double x_;
  double mantissa_ = 1.0;
  int exponent_ = 0;
};

SeriesEval sum_series(double alpha, double beta, double gamma, double x, double tol,
                      int max_terms, bool abort_on_cancellation) {
  if (!(alpha > 0.0)) throw ParameterViolation("mittag_leffler_3p: alpha must be positive");
  if (!(tol > 0.0)) throw ParameterViolation("mittag_leffler_3p: tol must be positive");
  if (max_terms < 1) throw ParameterViolation("mittag_leffler_3p: max_terms must be >= 1");

  PrabhakarTerms terms(alpha, beta, gamma, x);
  Accumulator acc;
  int small_run = 0;
  double prev_abs = std::numeric_limits<double>::infinity();
  double last_abs = 0.0;
  int r = 0;
  bool stopped = false;
  bool finite_sum = false;
  for (; r < max_terms; ++r) {
    double rel = 0.0;
    const double term = terms.next(r, rel);
    acc.add(term, rel);
    prev_abs = last_abs;
    last_abs = std::abs(term);
    if (terms.terminated()) {
      finite_sum = true;
      stopped = true;
      ++r;
      break;
    }
    const double s = std::abs(acc.value());
    // Terms inside the pole region of Gamma(alpha r + beta) vanish
    // identically and say nothing about convergence.
    if (alpha * r + beta > 0.0 && last_abs <= tol * s) {
      if (++small_run == 3) {
        stopped = true;
        ++r;
        break;
      }
    } else {
      small_run = 0;
    }
    if (abort_on_cancellation && r > 8 && last_abs > prev_abs &&
        acc.rounding() > 1e3 * tol * std::max(1.0, s)) {
      SeriesEval partial{acc.value(), r + 1, acc.rounding() + last_abs, false};
      throw NonConvergence("mittag_leffler_3p: series lost all precision to cancellation",
                           partial);
    }
  }

  SeriesEval out;
  out.value = acc.value();
  out.terms_used = r;
  double omitted = 0.0;
  if (!finite_sum) {
    double rel = 0.0;
    omitted = std::abs(terms.next(r, rel));
  }
  out.error_estimate = omitted + acc.rounding();
  if (!stopped) {
    if (last_abs >= prev_abs && last_abs > 0.0) {
      throw NonConvergence("mittag_leffler_3p: term cap reached with non-decreasing terms", out);
    }
    out.converged = false;
    return out;
  }
  out.converged = out.error_estimate <= tol * std::max(1.0, std::abs(out.value));
  return out;
}

// Trapezoid rule on the hyperbola z(u) = mu (1 + sin(iu - a)). The rounding
// error of the rule is dominated by e^z at |z| ~ mu: an absolute error in z
// is a relative error in the largest terms, which cancel to a much smaller
// result. The nodes and e^z are therefore carried in extended precision;
// the logarithmic factors are O(1) and stay in double.
double hyperbola_quadrature(double alpha, double beta, double gamma, double x, int n,
                            double& abs_sum) {
  using real = long double;
  using cd = std::complex<double>;
  constexpr real a = 1.1721L;
  const real h = 1.0818L / n;
  const real mu = 4.4921L * n;
  const real sa = std::sin(a);
  const real ca = std::cos(a);
  const double power = alpha * gamma - beta;
  real sum = 0.0L;
  real abs_total = 0.0L;
  constexpr real two_pi = 6.283185307179586476925286766559005768L;
  constexpr real ln2 = 0.693147180559945309417232121458176568L;
  for (int k = 0; k <= n; ++k) {
    const real eu = std::exp(k * h);
    const real ch = 0.5L * (eu + 1.0L / eu);
    const real sh = 0.5L * (eu - 1.0L / eu);
    const real zr = mu * (1.0L - sa * ch);
    const real zi = mu * ca * sh;
    const double dzr = static_cast<double>(-mu * sa * sh);
    const double dzi = static_cast<double>(mu * ca * ch);
    const cd z(static_cast<double>(zr), static_cast<double>(zi));
    const cd log_z = std::log(z);
    const cd rest = power * log_z - gamma * std::log(std::exp(alpha * log_z) - x);
    // Reduce exponent and phase exactly enough in extended precision, then
    // finish in double.
    const real er = zr + rest.real();
    const real ei = zi + rest.imag();
    const real n2 = std::nearbyint(er / ln2);
    const double mag = std::ldexp(std::exp(static_cast<double>(er - n2 * ln2)), static_cast<int>(n2));
    const double phase = static_cast<double>(ei - two_pi * std::nearbyint(ei / two_pi));
    const double im = mag * (std::sin(phase) * dzr + std::cos(phase) * dzi);
    const real weight = k == 0 ? 0.5L : 1.0L;
    sum += weight * im;
    abs_total += weight * mag * std::hypot(dzr, dzi);
  }
  const real pi = 3.141592653589793238462643383279502884L;
  abs_sum = static_cast<double>(abs_total * h / pi);
  return static_cast<double>(sum * h / pi);
}

// Positive real saddle of e^s s^(alpha gamma - beta) (s^alpha - x)^(-gamma), x < 0.
double real_saddle(double alpha, double beta, double gamma, double x) {
  auto slope = [&](double s) {
    const double sa = std::pow(s, alpha);
    return 1.0 + (alpha * gamma - beta) / s - gamma * alpha * sa / (s * (sa - x));
  };
  double lo = 1e-3;
  double hi = 1.0;
  if (slope(lo) >= 0.0) return 1.0;
  while (slope(hi) < 0.0 && hi < 1e6) hi *= 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::max(1.0, hi);
}

}  // namespace

double reciprocal_gamma(double z) {
  if (std::isnan(z)) return z;
  if (is_nonpositive_integer(z)) return 0.0;
  if (z > 170.0) return std::exp(-std::lgamma(z));
  if (z < -170.0) {
    // Reflection: 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi.
    const double n = std::nearbyint(z);
    const double s = std::sin(kPi * (z - n)) * (std::fmod(n, 2.0) == 0.0 ? 1.0 : -1.0);
    return std::exp(std::lgamma(1.0 - z)) * s / kPi;
  }
  return 1.0 / std::tgamma(z);
}

SeriesEval mittag_leffler_3p(double alpha, double beta, double gamma, double x, double tol,
                             int max_terms) {
  return sum_series(alpha, beta, gamma, x, tol, max_terms, false);
}

double mittag_leffler_neg_int(double alpha, double beta, int n, double x) {
  if (n < 1) throw ParameterViolation("mittag_leffler_neg_int: n must be >= 1");
  if (!(alpha > 0.0)) throw ParameterViolation("mittag_leffler_neg_int: alpha must be positive");
  // (-n)_k / k! = (-1)^k C(n, k)
  double sum = 0.0;
  double binom = 1.0;
  double power = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * power * reciprocal_gamma(alpha * k + beta);
    binom = binom * (n - k) / (k + 1);
    power *= x;
  }
  return sum;
}

bool contour_applicable(double alpha, double x) { return x < 0.0 && alpha > 0.0 && alpha <= 1.0; }

SeriesEval mittag_leffler_contour(double alpha, double beta, double gamma, double x, double tol) {
  if (!contour_applicable(alpha, x)) {
    throw ParameterViolation("mittag_leffler_contour: needs x < 0 and 0 < alpha <= 1");
  }
  // The rule is tuned for integrands of order one near the origin, where
  // its rounding error grows like e^(mu (1 - sin a)). When the integrand
  // has its saddle far out on the real axis (large beta or gamma) that
  // floor swamps a tiny result unless the contour crosses the axis near the
  // saddle, so the node count is also tried at the saddle scale and the
  // rule with the smaller error estimate wins.
  constexpr double kCrossing = 4.4921 * (1.0 - 0.921568);  // mu (1 - sin a) per node
  const double saddle = real_saddle(alpha, beta, gamma, x);
  const int at_saddle = std::clamp(static_cast<int>(std::ceil(saddle / kCrossing)), 16, 256);
  auto rule = [&](int nodes) {
    double abs_fine = 0.0;
    double abs_coarse = 0.0;
    const double fine = hyperbola_quadrature(alpha, beta, gamma, x, nodes, abs_fine);
    const double coarse = hyperbola_quadrature(alpha, beta, gamma, x, nodes * 3 / 4, abs_coarse);
    SeriesEval out;
    out.value = fine;
    out.terms_used = nodes + 1;
    out.error_estimate = std::abs(fine - coarse) + 4.0 * kEps * abs_fine + kEps * std::abs(fine);
    if (!std::isfinite(out.value) || !std::isfinite(out.error_estimate)) {
      out.error_estimate = std::numeric_limits<double>::infinity();
    }
    out.converged = std::isfinite(fine) &&
                    out.error_estimate <= 1e-8 * std::max(std::abs(fine), abs_fine * 1e-4);
    return out;
  };
  std::vector<int> candidates{24, 32, 16};
  if (at_saddle > 32) candidates = {at_saddle, 2 * at_saddle, 24, 32};
  SeriesEval best;
  best.error_estimate = std::numeric_limits<double>::infinity();
  for (int nodes : candidates) {
    if (nodes > 256) continue;
    const SeriesEval candidate = rule(nodes);
    if (candidate.error_estimate < best.error_estimate) best = candidate;
    if (best.error_estimate <= tol * std::abs(best.value)) break;
  }
  return best;
}

SeriesEval mittag_leffler(double alpha, double beta, double gamma, double x, double tol,
                          int max_terms) {
  SeriesEval series;
  bool have_series = false;
  try {
    series = sum_series(alpha, beta, gamma, x, tol, max_terms, contour_applicable(alpha, x));
    have_series = true;
    // A tiny value can pass the absolute test with no correct digits; the
    // contour rule then usually does better.
    if (series.converged && (series.error_estimate <= tol * std::abs(series.value) ||
                             !contour_applicable(alpha, x))) {
      return series;
    }
  } catch (const NonConvergence& e) {
    if (!contour_applicable(alpha, x)) throw;
    series = e.partial();
  }
  if (!contour_applicable(alpha, x)) return series;
  const SeriesEval contour = mittag_leffler_contour(alpha, beta, gamma, x, tol);
  if (have_series && series.error_estimate < contour.error_estimate) return series;
  SeriesEval out = contour;
  out.converged = out.error_estimate <= tol * std::max(1.0, std::abs(out.value)) ||
                  contour.converged;
  return out;
}

SeriesEval prabhakar_kernel(const PrabhakarParams& p, double t, double tol, int max_terms) {
  validate_eval_mode(p);
  if (!(t > 0.0)) throw ParameterViolation("prabhakar_kernel: t must be positive");
  const double scale = std::pow(t, p.beta - 1.0);
  SeriesEval ml = mittag_leffler(p.alpha, p.beta, p.gamma, p.lambda * std::pow(t, p.alpha), tol,
                                 max_terms);
  ml.value *= scale;
  ml.error_estimate *= scale;
  return ml;
}

}  // namespace relax::sf
