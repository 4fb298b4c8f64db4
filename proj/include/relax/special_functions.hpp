#pragma once

#include "relax/prabhakar_params.hpp"
#include "relax/series_eval.hpp"

namespace relax::sf {

/// 1/Gamma(z). Exactly zero at the nonpositive integers.
double reciprocal_gamma(double z);

/// Three-parameter Mittag-Leffler function by its power series
///   E^gamma_{alpha,beta}(x) = sum_r (gamma)_r x^r / (r! Gamma(alpha r + beta)).
///
/// Summation stops after three consecutive terms below tol*|partial sum|.
/// Hitting `max_terms` while terms are still decreasing returns
/// converged = false; hitting it with growing terms throws NonConvergence.
/// The error estimate includes the rounding error of the summation, so a
/// cancelling series at large |x| reports converged = false rather than a
/// value with no correct digits.
SeriesEval mittag_leffler_3p(double alpha, double beta, double gamma, double x,
                             double tol = kDefaultTol, int max_terms = kDefaultMaxTerms);

/// E^{-n}_{alpha,beta}(x): the degree-n polynomial obtained when the upper
/// index is a negative integer. Finite sum, no truncation.
double mittag_leffler_neg_int(double alpha, double beta, int n, double x);

/// E^gamma_{alpha,beta}(x) for x < 0 and 0 < alpha <= 1 by quadrature of the
/// inverse Laplace integral of s^(alpha gamma - beta) (s^alpha - x)^(-gamma)
/// at t = 1 along a hyperbolic contour around the negative real axis.
/// Several node counts are tried; the first rule whose error estimate meets
/// tol * |value| is returned, otherwise the best one.
SeriesEval mittag_leffler_contour(double alpha, double beta, double gamma, double x,
                                  double tol = kDefaultTol);

/// Series where it is accurate, contour quadrature where the series cancels.
SeriesEval mittag_leffler(double alpha, double beta, double gamma, double x,
                          double tol = kDefaultTol, int max_terms = kDefaultMaxTerms);

/// True when mittag_leffler_contour applies to these arguments.
bool contour_applicable(double alpha, double x);

/// Prabhakar function t^(beta-1) E^gamma_{alpha,beta}(lambda t^alpha), t > 0.
SeriesEval prabhakar_kernel(const PrabhakarParams& p, double t, double tol = kDefaultTol,
                            int max_terms = kDefaultMaxTerms);

}  // namespace relax::sf
