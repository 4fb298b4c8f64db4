#include "relax/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "relax/errors.hpp"
#include "relax/laplace.hpp"
#include "relax/monotone_cubic.hpp"
#include "relax/special_functions.hpp"

namespace relax {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Once the accumulated rounding of a cancelling series exceeds this fraction
// of the result, no useful digit can survive and summation is abandoned.
constexpr double kHopeless = 1e-4;

double inner_tol(double tol) { return std::clamp(tol * 1e-3, 1e-15, 1e-13); }

void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterViolation("time must be positive and finite");
}

void require_series_model(const RelaxationModel& m) {
  if (m.is_debye()) return;
  const auto& p = m.params();
  if (!(p.beta < 1.0)) throw ParameterViolation("series solutions need beta < 1");
  if (!(p.gamma > 0.0)) throw ParameterViolation("series solutions need gamma > 0");
}

class Accumulator {
 public:
  void add(double term, double rel_err) {
    const double t = sum_ + term;
    comp_ += std::abs(sum_) >= std::abs(term) ? (sum_ - t) + term : (term - t) + sum_;
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

double signed_power(int r) { return r % 2 == 0 ? 1.0 : -1.0; }

SeriesEval debye_series(double y, double tol, int max_terms) {
  Accumulator acc;
  double term = 1.0;
  int small = 0;
  int r = 0;
  for (; r < max_terms; ++r) {
    if (r > 0) term *= -y / r;
    acc.add(term, kEps * (r + 2));
    const double s = acc.value();
    small = std::abs(term) <= tol * std::abs(s) ? small + 1 : 0;
    if (small >= 3) break;
    if (acc.rounding() > kHopeless * std::max(1.0, std::abs(s)) && std::abs(term) < acc.rounding()) break;
  }
  SeriesEval out{acc.value(), std::min(r + 1, max_terms), std::abs(term) + acc.rounding(), false};
  out.converged = small >= 3 && out.error_estimate <= tol * std::max(1.0, std::abs(out.value));
  return out;
}

}  // namespace

double tau_star(double alpha, double b) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterViolation("tau* needs 0 < alpha < 1");
  if (!(b > 0.0)) throw ParameterViolation("tau* needs b > 0");
  return (1.0 - alpha) * (1.0 - alpha) / (b * alpha);
}

SeriesEval solve_series_small_regime(const RelaxationModel& m, double t, double tol, int max_terms) {
  require_time(t);
  require_series_model(m);
  if (!(tol > 0.0) || max_terms < 1) throw ParameterViolation("tol must be positive and max_terms >= 1");

  if (m.is_debye()) {
    SeriesEval s = debye_series(m.Lambda() * t / m.B(), tol, max_terms);
    if (!s.converged) throw NonConvergence("small-time series did not converge", s);
    return s;
  }

  const auto& p = m.params();
  const double y = m.strength() * std::pow(t, 1.0 - p.beta);
  const double x = p.lambda * std::pow(t, p.alpha);
  const double log_y = std::log(y);
  const double itol = inner_tol(tol);

  Accumulator acc;
  double func_err = 0.0;
  double term = 0.0;
  int small = 0;
  int r = 0;
  bool hopeless = false;
  for (; r < max_terms; ++r) {
    double term_err = 0.0;
    if (r == 0) {
      term = 1.0;
    } else {
      const SeriesEval e = sf::mittag_leffler(p.alpha, 1.0 + r * (1.0 - p.beta), r * p.gamma, x, itol, max_terms);
      const double w = std::exp(r * log_y);
      term = signed_power(r) * w * e.value;
      term_err = w * e.error_estimate;
    }
    if (!std::isfinite(term) || !std::isfinite(term_err)) {
      hopeless = true;
      break;
    }
    acc.add(term, kEps * (r + 2));
    func_err += term_err;
    const double s = acc.value();
    small = std::abs(term) <= tol * std::abs(s) ? small + 1 : 0;
    if (small >= 3) break;
    if (acc.rounding() + func_err > kHopeless * std::max(1.0, std::abs(s))) {
      hopeless = true;
      break;
    }
  }

  SeriesEval out{acc.value(), std::min(r + 1, max_terms), 0.0, false};
  out.error_estimate = (std::isfinite(term) ? std::abs(term) : std::numeric_limits<double>::infinity()) +
                       acc.rounding() + func_err;
  out.converged = !hopeless && small >= 3 && out.error_estimate <= tol * std::max(1.0, std::abs(out.value));
  if (!out.converged) {
    std::ostringstream os;
    os << "small-time series failed at t=" << t << " (M t^(1-beta) = " << y << ", error estimate "
       << out.error_estimate << ")";
    throw NonConvergence(os.str(), out);
  }
  return out;
}

SeriesEval solve_series_large_regime(const RelaxationModel& m, double t, double tol, int max_terms) {
  require_time(t);
  if (m.is_debye()) {
    throw ParameterViolation("the large-time series does not exist for the Debye kernel (beta = 1)");
  }
  require_series_model(m);
  if (!(tol > 0.0) || max_terms < 1) throw ParameterViolation("tol must be positive and max_terms >= 1");

  const auto& p = m.params();
  const double log_z = std::log(m.strength()) + (1.0 - p.beta) * std::log(t);
  const double x = p.lambda * std::pow(t, p.alpha);
  const double itol = inner_tol(tol);

  // Terms of these series oscillate, so a single term can be accidentally
  // tiny. Truncation is judged on a three-term envelope instead.
  struct Step {
    double term;
    double sum_before;
    double err_before;  // rounding + function error accumulated before this term
  };
  std::vector<Step> steps;
  Accumulator acc;
  double func_err = 0.0;
  int small = 0;
  double small_run_max = 0.0;  // largest term of the current run of small terms
  bool converged_sum = false;
  double best_env = std::numeric_limits<double>::infinity();
  int since_best = 0;
  auto envelope = [&](std::size_t k) {
    double e = std::abs(steps[k].term);
    if (k > 0) e = std::max(e, std::abs(steps[k - 1].term));
    if (k + 1 < steps.size()) e = std::max(e, std::abs(steps[k + 1].term));
    return e;
  };
  int r = 0;
  for (; r < max_terms; ++r) {
    const int n = r + 1;
    const SeriesEval e =
        sf::mittag_leffler(p.alpha, 1.0 - n * (1.0 - p.beta), -n * p.gamma, x, itol, max_terms);
    const double w = std::exp(-n * log_z);
    const double term = signed_power(r) * w * e.value;
    const double term_err = w * e.error_estimate;
    if (!std::isfinite(term) || !std::isfinite(term_err)) break;
    if (term == 0.0 && term_err == 0.0) {
      // Exact zeros (1/Gamma at a pole) say nothing about growth.
      if (small == 0) small_run_max = 0.0;
      if (++small >= 3 && r > 0) {
        converged_sum = true;
        break;
      }
      continue;
    }
    steps.push_back({term, acc.value(), acc.rounding() + func_err});
    acc.add(term, kEps * (r + 2));
    func_err += term_err;
    if (std::abs(term) <= tol * std::abs(acc.value())) {
      small_run_max = small > 0 ? std::max(small_run_max, std::abs(term)) : std::abs(term);
      ++small;
    } else {
      small = 0;
    }
    if (small >= 3) {
      converged_sum = true;
      break;
    }
    if (steps.size() >= 2) {
      const double env = envelope(steps.size() - 2);
      if (env < best_env) {
        best_env = env;
        since_best = 0;
      } else if (++since_best >= 6) {
        break;
      }
    }
  }

  SeriesEval out{};
  out.terms_used = std::min(r + 1, max_terms);
  if (converged_sum) {
    out.value = acc.value();
    out.error_estimate = small_run_max + acc.rounding() + func_err;
  } else if (!steps.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < steps.size(); ++k) {
      if (envelope(k) < envelope(best)) best = k;
    }
    out.value = steps[best].sum_before;
    out.error_estimate = envelope(best) + steps[best].err_before;
  } else {
    out.value = acc.value();
    out.error_estimate = std::numeric_limits<double>::infinity();
  }
  out.converged = out.error_estimate <= tol * std::max(1.0, std::abs(out.value));
  if (!out.converged) {
    std::ostringstream os;
    os << "large-time series broke down at t=" << t << " (smallest terms " << out.error_estimate << ")";
    throw AsymptoticBreakdown(os.str(), out);
  }
  return out;
}

ClosedForms closed_gamma1_forms(const RelaxationModel& m, double t) {
  require_time(t);
  if (!m.is_gamma1_family()) {
    throw ParameterViolation("closed forms need gamma = 1 and beta = 1 - alpha");
  }
  const auto& p = m.params();
  const double M = m.strength();
  const double a = M - p.lambda;
  if (!(a > 0.0)) throw ParameterViolation("closed forms need M - lambda > 0");
  const double ta = std::pow(t, p.alpha);
  const double X = -a * ta;
  const SeriesEval e1 = sf::mittag_leffler(p.alpha, 1.0, 1.0, X, 1e-15);
  const SeriesEval e2 = sf::mittag_leffler(p.alpha, 1.0 + p.alpha, 1.0, X, 1e-15);

  ClosedForms out;
  out.shifted.value = M / a * e1.value - p.lambda / a;
  out.shifted.error_estimate = M / a * e1.error_estimate + kEps * (std::abs(out.shifted.value) + 1.0);
  out.shifted.terms_used = e1.terms_used;
  out.shifted.converged = e1.converged;
  out.two_term.value = e1.value - p.lambda * ta * e2.value;
  out.two_term.error_estimate =
      e1.error_estimate + std::abs(p.lambda) * ta * e2.error_estimate + kEps * (std::abs(out.two_term.value) + 1.0);
  out.two_term.terms_used = e1.terms_used + e2.terms_used;
  out.two_term.converged = e1.converged && e2.converged;
  return out;
}

double solve_closed_gamma1(const RelaxationModel& m, double t) {
  const ClosedForms f = closed_gamma1_forms(m, t);
  const double diff = std::abs(f.shifted.value - f.two_term.value);
  if (diff > 1e-10 * std::max(1.0, std::abs(f.shifted.value))) {
    std::ostringstream os;
    os << "closed forms disagree at t=" << t << ": " << f.shifted.value << " vs " << f.two_term.value;
    throw Error(os.str());
  }
  return f.shifted.value;
}

double solve_debye(double Lambda, double B, double t) {
  if (!(Lambda > 0.0) || !(B > 0.0)) throw ParameterViolation("Debye needs Lambda > 0 and B > 0");
  require_time(t);
  return std::exp(-Lambda * t / B);
}

namespace {

struct Candidate {
  Method method;
  double value;
  double error;
  bool converged;
};

template <class Fn>
std::optional<Candidate> try_series(Method method, Fn&& fn) {
  try {
    const SeriesEval s = fn();
    return Candidate{method, s.value, s.error_estimate, true};
  } catch (const SeriesError& e) {
    const SeriesEval& s = e.partial();
    if (!std::isfinite(s.value) || !std::isfinite(s.error_estimate)) return std::nullopt;
    return Candidate{method, s.value, s.error_estimate, false};
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

Curve solve_auto(const RelaxationModel& m, std::span<const double> grid, double tol, AutoOptions options) {
  if (!m.is_debye() && m.params().lambda > 0.0) {
    throw ParameterViolation("lambda > 0 is outside the model");
  }
  if (!(tol > 0.0)) throw ParameterViolation("tol must be positive");
  if (grid.empty()) throw ParameterViolation("empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_time(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ParameterViolation("grid must be strictly increasing");
  }

  Curve c;
  c.grid.assign(grid.begin(), grid.end());
  const std::size_t n = grid.size();
  c.values.resize(n);
  c.methods.resize(n);
  c.errors.resize(n);

  if (m.is_debye()) {
    for (std::size_t i = 0; i < n; ++i) {
      c.values[i] = solve_debye(m.Lambda(), m.B(), grid[i]);
      c.methods[i] = Method::debye;
      c.errors[i] = 2.0 * kEps * c.values[i];
    }
    return c;
  }
  require_series_model(m);

  std::vector<bool> done(n, false);
  if (options.use_closed_form && m.is_gamma1_family()) {
    const Method label = m.params().lambda == 0.0 ? Method::cole_cole : Method::closed_gamma1;
    for (std::size_t i = 0; i < n; ++i) {
      const ClosedForms f = closed_gamma1_forms(m, grid[i]);
      const double diff = std::abs(f.shifted.value - f.two_term.value);
      const double err = std::max(f.shifted.error_estimate, diff);
      if (diff <= 1e-10 * std::max(1.0, std::abs(f.shifted.value)) &&
          err <= std::max(tol, laplace::kCertifyTol) * std::max(1.0, std::abs(f.shifted.value))) {
        c.values[i] = f.shifted.value;
        c.methods[i] = label;
        c.errors[i] = err;
        done[i] = true;
      }
    }
    if (std::all_of(done.begin(), done.end(), [](bool d) { return d; })) return c;
  }

  std::vector<std::optional<Candidate>> small(n), large(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    const double t = grid[i];
    small[i] = try_series(Method::series_small,
                          [&] { return solve_series_small_regime(m, t, tol, options.max_terms); });
    large[i] = try_series(Method::series_large,
                          [&] { return solve_series_large_regime(m, t, tol, options.max_terms); });
  }

  // Certify each series against the Laplace oracle at three sentinels; a
  // series whose value misses the oracle by more than its own error budget
  // is not trusted anywhere on this grid.
  const laplace::SDomainFn F = laplace::solution_transform(m);
  bool small_ok = true;
  bool large_ok = true;
  std::vector<std::size_t> sentinels{0, n / 2, n - 1};
  sentinels.erase(std::unique(sentinels.begin(), sentinels.end()), sentinels.end());
  for (std::size_t s : sentinels) {
    if (done[s]) continue;
    laplace::CertifiedValue o;
    try {
      o = laplace::certified_inverse(F, grid[s]);
    } catch (const Error&) {
      continue;
    }
    auto check = [&](const std::optional<Candidate>& cand, bool& ok) {
      if (!cand || !cand->converged) return;
      const double slack = 10.0 * (cand->error + o.discrepancy) + 1e-10 * std::max(1.0, std::abs(o.value));
      if (std::abs(cand->value - o.value) > slack) ok = false;
    };
    check(small[s], small_ok);
    check(large[s], large_ok);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::optional<Candidate> best;
    for (const auto* cand : {&small[i], &large[i]}) {
      if (!*cand) continue;
      const bool ok = (*cand)->method == Method::series_small ? small_ok : large_ok;
      if (!ok) continue;
      if (!best || (*cand)->error < best->error) best = **cand;
    }
    const double scale = best ? std::max(1.0, std::abs(best->value)) : 1.0;
    if (!best || best->error > tol * scale) {
      try {
        const laplace::CertifiedValue o = laplace::certified_inverse(F, grid[i]);
        const double err = std::max(o.discrepancy, kEps * std::max(1.0, std::abs(o.value)));
        if (!best || err < best->error) best = Candidate{Method::inversion, o.value, err, true};
      } catch (const Error&) {
      }
    }
    if (!best || best->error > std::max(tol, laplace::kCertifyTol) * std::max(1.0, std::abs(best->value))) {
      std::ostringstream os;
      os << "no method converged at t=" << grid[i] << " for " << m.describe();
      if (small[i]) os << "; series-small error " << small[i]->error;
      if (large[i]) os << "; series-large error " << large[i]->error;
      throw NoMethodConverged(os.str());
    }
    c.values[i] = best->value;
    c.methods[i] = best->method;
    c.errors[i] = best->error;
  }
  return c;
}

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

template <class Fn>
double gauss(Fn&& f, double a, double b) {
  return Gauss::integrate(f, a, b);
}

// Edges of panels on [lo, hi] shrinking geometrically toward `end` (lo or hi)
// until the innermost panel is `inner` wide.
std::vector<double> graded_edges(double lo, double hi, double inner, bool toward_hi) {
  std::vector<double> widths;
  const double len = hi - lo;
  double w = std::max(inner, len * 1e-15);
  while (w < len) {
    widths.push_back(w);
    w *= 2.0;
  }
  std::vector<double> edges;
  if (toward_hi) {
    edges.push_back(hi);
    double e = hi;
    for (double wi : widths) edges.push_back(e -= wi);
    edges.back() = std::max(edges.back(), lo);
    if (edges.back() > lo) edges.push_back(lo);
    std::reverse(edges.begin(), edges.end());
  } else {
    edges.push_back(lo);
    double e = lo;
    for (double wi : widths) edges.push_back(e += wi);
    edges.back() = std::min(edges.back(), hi);
    if (edges.back() < hi) edges.push_back(hi);
  }
  return edges;
}

class ResidualEvaluator {
 public:
  ResidualEvaluator(const RelaxationModel& m, const Curve& c, double tol)
      : m_(m), c_(c), p_(m.params()), u_(c.size()) {
    for (std::size_t k = 0; k < c.size(); ++k) u_[k] = std::log(c.grid[k]);
    interp_.emplace(u_, c.values);
    check_interpolation(tol);
    if (!m.is_debye()) prepare_head();
  }

  double at(std::size_t i) const {
    const double ti = c_.grid[i];
    if (m_.is_debye()) {
      // Integrated form B (f(t_i) - f(0)) + Lambda int_0^t_i f; the exact
      // head on (0, t0) collapses to B times the jump at t0.
      const double t0 = c_.grid[0];
      double integral = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        integral += gauss([&](double t) { return (*interp_)(std::log(t)); }, c_.grid[j], c_.grid[j + 1]);
      }
      return std::abs(m_.B() * (c_.values[i] - std::exp(-m_.Lambda() * t0 / m_.B())) + m_.Lambda() * integral);
    }
    double integral = head_integral(ti) + jump_ * kernel(ti - c_.grid[0]);
    for (std::size_t j = 0; j < i; ++j) integral += interval_integral(j, ti, j + 1 == i);
    return std::abs(integral + m_.strength() * c_.values[i]);
  }

 private:
  void check_interpolation(double tol) {
    const std::size_t n = u_.size();
    if (n < 9) throw InsufficientGrid("at least 9 curve points are needed to estimate interpolation error");
    std::vector<double> cu, cf;
    for (std::size_t k = 0; k < n; k += 2) {
      cu.push_back(u_[k]);
      cf.push_back(c_.values[k]);
    }
    if ((n - 1) % 2 != 0) {
      cu.push_back(u_[n - 1]);
      cf.push_back(c_.values[n - 1]);
    }
    const MonotoneCubic coarse(cu, cf);
    double est = 0.0;
    for (std::size_t k = 1; k + 1 < n; k += 2) est = std::max(est, std::abs(coarse(u_[k]) - c_.values[k]));
    est /= 16.0;  // fourth-order interpolation: halving the spacing gains 2^4
    if (est > tol) {
      std::ostringstream os;
      os << "interpolation error estimate " << est << " exceeds tolerance " << tol << "; refine the grid";
      throw InsufficientGrid(os.str());
    }
  }

  // Reduced kernel E^{-gamma}_{alpha,beta}(lambda sigma^alpha); the full
  // kernel is sigma^(beta-1) times this.
  double reduced(double sigma) const {
    return sf::mittag_leffler(p_.alpha, p_.beta, -p_.gamma, p_.lambda * std::pow(sigma, p_.alpha), 1e-15).value;
  }
  double kernel(double sigma) const { return std::pow(sigma, p_.beta - 1.0) * reduced(sigma); }

  double fprime(double t) const { return interp_->derivative(std::log(t)) / t; }

  void prepare_head() {
    const double t0 = c_.grid[0];
    y0_ = m_.strength() * std::pow(t0, 1.0 - p_.beta);
    x0_ = p_.lambda * std::pow(t0, p_.alpha);
    if (y0_ > 2.0) {
      std::ostringstream os;
      os << "curve starts too late (M t0^(1-beta) = " << y0_ << "); the first sample must precede the decay";
      throw InsufficientGrid(os.str());
    }
    double head_value = 0.0;
    try {
      head_value = solve_series_small_regime(m_, t0, 1e-14).value;
    } catch (const SeriesError& e) {
      head_value = e.partial().value;
    }
    jump_ = c_.values[0] - head_value;
  }

  // d/dw of the small-time series under t' = t0 w^(1/(1-beta)).
  double head_integrand(double w) const {
    const double p = 1.0 / (1.0 - p_.beta);
    const double x = x0_ * std::pow(w, p * p_.alpha);
    double sum = 0.0;
    double wr = 1.0;  // (-y0)^r w^(r-1)
    int small = 0;
    for (int r = 1; r < 400; ++r) {
      wr *= -y0_ * (r > 1 ? w : 1.0);
      const double term = wr * sf::mittag_leffler(p_.alpha, r * (1.0 - p_.beta), r * p_.gamma, x, 1e-15).value;
      sum += term;
      small = std::abs(term) <= 1e-16 * std::abs(sum) ? small + 1 : 0;
      if (small >= 3 || wr == 0.0) break;
    }
    return p * sum;
  }

  double head_integral(double ti) const {
    const double t0 = c_.grid[0];
    const double p = 1.0 / (1.0 - p_.beta);
    const double dist = std::pow(ti / t0, 1.0 - p_.beta) - 1.0;
    double total = 0.0;
    const auto edges = graded_edges(0.0, 1.0, std::min(dist, 1.0), true);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      total += gauss([&](double w) { return kernel(ti - t0 * std::pow(w, p)) * head_integrand(w); }, edges[k],
                     edges[k + 1]);
    }
    return total;
  }

  // int_{t_j}^{t_{j+1}} k(t_i - t') f'(t') dt' in s = (t_i - t')^beta, which
  // absorbs the sigma^(beta-1) singularity of the kernel.
  double interval_integral(std::size_t j, double ti, bool last) const {
    const double q = 1.0 / p_.beta;
    const double s_lo = std::pow(ti - c_.grid[j + 1], p_.beta);
    const double s_hi = std::pow(ti - c_.grid[j], p_.beta);
    auto integrand = [&](double s) {
      const double sigma = std::pow(s, q);
      return q * reduced(sigma) * fprime(ti - sigma);
    };
    if (!last) return gauss(integrand, s_lo, s_hi);
    double total = 0.0;
    const auto edges = graded_edges(0.0, s_hi, s_hi * std::ldexp(1.0, -12), false);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) total += gauss(integrand, edges[k], edges[k + 1]);
    return total;
  }

  const RelaxationModel& m_;
  const Curve& c_;
  PrabhakarParams p_;
  std::vector<double> u_;
  std::optional<MonotoneCubic> interp_;
  double y0_ = 0.0;
  double x0_ = 0.0;
  double jump_ = 0.0;
};

}  // namespace

std::vector<ResidualPoint> residual_profile(const RelaxationModel& m, const Curve& c, double tol,
                                            int max_checkpoints) {
  c.validate();
  if (max_checkpoints < 1) throw ParameterViolation("max_checkpoints must be >= 1");
  if (!m.is_debye()) require_series_model(m);
  const ResidualEvaluator eval(m, c, tol);

  const std::size_t n = c.size();
  const std::size_t count = std::min<std::size_t>(max_checkpoints, n - 1);
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i =
        count == 1 ? n - 1 : 1 + static_cast<std::size_t>(std::llround(double(k) * (n - 2) / (count - 1)));
    if (idx.empty() || idx.back() != i) idx.push_back(i);
  }
  std::vector<ResidualPoint> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back({c.grid[i], eval.at(i)});
  return out;
}

double residual(const RelaxationModel& m, const Curve& c, double tol, int max_checkpoints) {
  double worst = 0.0;
  for (const auto& r : residual_profile(m, c, tol, max_checkpoints)) worst = std::max(worst, r.residual);
  return worst;
}

}  // namespace relax
