#pragma once

#include <span>
#include <vector>

#include "relax/curve.hpp"
#include "relax/model.hpp"
#include "relax/series_eval.hpp"

namespace relax {

/// Boundary (1-alpha)^2 / (b alpha) between the two series regimes of the
/// tau form: the large-regime series targets tau < tau*, the small-regime
/// series tau > tau*.
double tau_star(double alpha, double b);

/// f(t) = sum_r (-M)^r e^{r gamma}_{alpha, 1 + r(1-beta)}(t; lambda).
/// Converges for every t but cancels once M t^(1-beta) is large; throws
/// NonConvergence (carrying the partial sum) when no digits survive.
SeriesEval solve_series_small_regime(const RelaxationModel& m, double t, double tol = kDefaultTol,
                                     int max_terms = kDefaultMaxTerms);

/// f(t) = M^-1 sum_r (-1)^r M^-r e^{-(1+r) gamma}_{alpha, 1 - (1+r)(1-beta)}(t; lambda).
/// Treated as asymptotic: summation stops where the envelope of three
/// consecutive terms is smallest (single terms can vanish by accident), and
/// that envelope is the error estimate. Throws AsymptoticBreakdown when it
/// exceeds tol * max(1, |sum|).
SeriesEval solve_series_large_regime(const RelaxationModel& m, double t, double tol = kDefaultTol,
                                     int max_terms = kDefaultMaxTerms);

/// The two equivalent closed forms of the gamma = 1, beta = 1 - alpha family.
struct ClosedForms {
  /// M/(M-lambda) E_alpha(-(M-lambda) t^alpha) - lambda/(M-lambda)
  SeriesEval shifted;
  /// E_alpha(-(M-lambda) t^alpha) - lambda t^alpha E_{alpha,1+alpha}(-(M-lambda) t^alpha)
  SeriesEval two_term;
};

/// Throws ParameterViolation unless gamma = 1 and beta = 1 - alpha.
ClosedForms closed_gamma1_forms(const RelaxationModel& m, double t);

/// Closed-form solution valid for every tau > 0. Checks that both closed
/// forms agree to 1e-10 and throws Error otherwise.
double solve_closed_gamma1(const RelaxationModel& m, double t);

/// exp(-Lambda t / B).
double solve_debye(double Lambda, double B, double t);

struct AutoOptions {
  /// Use the closed form when gamma = 1 and beta = 1 - alpha.
  bool use_closed_form = true;
  /// Term cap handed to both series.
  int max_terms = kDefaultMaxTerms;
};

/// Evaluates the model on `grid`, choosing per point the route with the
/// smallest certified error estimate. Throws NoMethodConverged if every
/// route fails somewhere, and ParameterViolation for lambda > 0.
Curve solve_auto(const RelaxationModel& m, std::span<const double> grid, double tol = 1e-8,
                 AutoOptions options = {});

struct ResidualPoint {
  double t = 0.0;
  double residual = 0.0;
};

/// |int_0^{t_i} e^{-gamma}_{alpha,beta}(t_i - t'; lambda) f'(t') dt' + M f(t_i)|
/// at up to `max_checkpoints` curve nodes. On [t_0, t_i] f' comes from a
/// monotone cubic interpolant of the curve; the unsampled head (0, t_0)
/// uses the small-time series of the model, so a curve that does not start
/// at f(0+) = 1 shows up as a jump at t_0. Throws InsufficientGrid when the
/// interpolation error estimate exceeds `tol`. For a Debye model the
/// integrated equation |B (f(t_i) - 1) + Lambda int_0^{t_i} f| is used.
std::vector<ResidualPoint> residual_profile(const RelaxationModel& m, const Curve& c, double tol = 1e-6,
                                            int max_checkpoints = 32);

/// Maximum of residual_profile.
double residual(const RelaxationModel& m, const Curve& c, double tol = 1e-6, int max_checkpoints = 32);

}  // namespace relax
