#include "relax/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "relax/curve_io.hpp"
#include "relax/errors.hpp"
#include "relax/laplace.hpp"
#include "relax/relaxation.hpp"
#include "relax/special_functions.hpp"
#include "relax/validation.hpp"

namespace relax::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kResidualPerM = 1e-5;
constexpr int kDenseVerifyPoints = 512;

int max_terms_from_env() {
  const char* v = std::getenv("RELAX_MAX_TERMS");
  if (v == nullptr || *v == '\0') return kDefaultMaxTerms;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 100000000) {
    throw UsageError(std::string("RELAX_MAX_TERMS must be a positive integer, got '") + v + "'");
  }
  return static_cast<int>(n);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Pulls `--config FILE` out of the arguments and splices the file's
// key=value pairs in as flags, right after the subcommand words, for every
// key not already given on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (!path) return args;

  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file '" + *path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(*path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    entries.emplace_back(key, trim(line.substr(eq + 1)));
  }

  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::size_t insert_at = 0;
  while (insert_at < args.size() && args[insert_at].rfind("-", 0) != 0) ++insert_at;
  std::vector<std::string> extra;
  for (const auto& [key, value] : entries) {
    if (given(key)) continue;
    if (value == "true" || value == "false") {
      if (value == "true") extra.push_back("--" + key);
    } else {
      extra.push_back("--" + key + "=" + value);
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), extra.begin(), extra.end());
  return args;
}

struct ModelArgs {
  std::optional<double> alpha, beta, gamma, lambda, M, tau, b, Lambda, B;
  bool debye = false;
};

void add_model_options(CLI::App* app, ModelArgs& a) {
  app->add_option("--alpha", a.alpha, "fractional order alpha");
  app->add_option("--beta", a.beta, "kernel beta (direct form)");
  app->add_option("--gamma", a.gamma, "kernel gamma (direct form, default 1)");
  app->add_option("--lambda", a.lambda, "kernel lambda <= 0 (direct form, default 0)");
  app->add_option("--M", a.M, "relaxation strength M (direct form)");
  app->add_option("--tau", a.tau, "effective relaxation time (tau form)");
  app->add_option("--b", a.b, "rate constant b (tau form)");
  app->add_flag("--debye", a.debye, "constant kernel: f = exp(-Lambda t / B)");
  app->add_option("--Lambda", a.Lambda, "Debye Lambda");
  app->add_option("--B", a.B, "Debye B");
}

RelaxationModel build_model(const ModelArgs& a) {
  const bool direct = a.beta || a.gamma || a.lambda || a.M;
  const bool tau = a.tau || a.b;
  if (a.debye || a.Lambda || a.B) {
    if (a.alpha || direct || tau) throw UsageError("--debye excludes the Prabhakar parameters");
    if (!a.Lambda || !a.B) throw UsageError("--debye needs --Lambda and --B");
    return RelaxationModel::debye(*a.Lambda, *a.B);
  }
  if (direct && tau) throw UsageError("direct (--beta/--gamma/--lambda/--M) and tau-form (--tau/--b) flags are exclusive");
  if (!a.alpha) throw UsageError("--alpha is required");
  if (tau) {
    if (!a.tau || !a.b) throw UsageError("the tau form needs --alpha, --tau and --b");
    return RelaxationModel::tau_form(*a.alpha, *a.tau, *a.b);
  }
  if (!a.beta || !a.M) throw UsageError("the direct form needs --alpha, --beta and --M (or use --tau/--b)");
  const PrabhakarParams p{*a.alpha, *a.beta, a.gamma.value_or(1.0), a.lambda.value_or(0.0)};
  return RelaxationModel::direct(p, *a.M);
}

struct GridArgs {
  std::optional<double> t_min, t_max;
  std::optional<int> points;
  std::string spacing = "geometric";
};

void add_grid_options(CLI::App* app, GridArgs& g) {
  app->add_option("--t-min", g.t_min, "first grid time (default 1e-2 t_char)");
  app->add_option("--t-max", g.t_max, "last grid time (default 1e2 t_char)");
  app->add_option("--points", g.points, "grid points (default 64)");
  app->add_option("--spacing", g.spacing, "geometric or linear")->check(CLI::IsMember({"geometric", "linear"}));
}

GridSpec build_grid_spec(const GridArgs& g, const RelaxationModel& m) {
  GridSpec spec = default_grid(m);
  if (g.t_min) spec.t_min = *g.t_min;
  if (g.t_max) spec.t_max = *g.t_max;
  if (g.points) spec.points = *g.points;
  spec.spacing = g.spacing == "linear" ? Spacing::linear : Spacing::geometric;
  if (spec.points < 2) throw UsageError("--points must be at least 2");
  if (!(spec.t_min > 0.0) || !(spec.t_max > spec.t_min)) throw UsageError("need 0 < --t-min < --t-max");
  return spec;
}

void print_eval(std::ostream& out, const SeriesEval& e) {
  out << "value=" << format_double(e.value) << '\n'
      << "terms_used=" << e.terms_used << '\n'
      << "error_estimate=" << format_double(e.error_estimate) << '\n'
      << "converged=" << (e.converged ? "true" : "false") << '\n';
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::string dispatch_summary(const Curve& c) {
  std::map<std::string_view, int> counts;
  for (Method m : c.methods) ++counts[to_string(m)];
  std::ostringstream os;
  os << "dispatch:";
  for (const auto& [name, n] : counts) os << ' ' << name << '=' << n;
  return os.str();
}

// The curve's interpolation error feeds straight into the residual, so it is
// held to half of the residual budget.
Check residual_check(const RelaxationModel& m, const Curve& c) {
  Check check;
  check.name = "residual";
  check.tolerance = kResidualPerM * m.strength();
  try {
    const double r = residual(m, c, 0.5 * kResidualPerM);
    check.passed = r <= check.tolerance;
    check.evidence = {r, m.strength()};
    check.detail = m.is_debye() ? "max |B (f - f(0)) + Lambda int f dt| over checkpoints"
                                : "max |int k f' dt + M f| over checkpoints";
  } catch (const InsufficientGrid& e) {
    check.passed = false;
    check.detail = e.what();
  }
  return check;
}

Curve read_curve_file(const std::string& path, std::optional<RelaxationModel>& embedded) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParameterViolation(std::string("malformed JSON curve: ") + e.what());
    }
    if (j.contains("model")) embedded = model_from_json(j.at("model"));
    return curve_from_json(j);
  }
  return curve_from_csv(text);
}

void emit_report(const DiagnosticsReport& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.to_json().dump(2) << '\n';
  } else {
    out << r.to_text();
  }
}

std::vector<double> sweep_values(double from, double to, int steps) {
  if (steps < 2) throw UsageError("--steps must be at least 2");
  if (!(to > from) || !std::isfinite(from) || !std::isfinite(to)) throw UsageError("sweep needs --from < --to");
  std::vector<double> v(static_cast<std::size_t>(steps));
  // Nominal values: rounding to 15 digits keeps 0.1 + 0.6 printing as 0.7.
  for (int i = 0; i < steps; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", from + (to - from) * i / (steps - 1));
    v[i] = std::strtod(buf, nullptr);
  }
  v.back() = to;
  return v;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prabhakar relaxation toolkit", "relax"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate special functions");
  eval->require_subcommand(1);
  struct {
    double alpha = 0, beta = 0, gamma = 0, x = 0, lambda = 0, t = 0, tol = kDefaultTol;
    int n = 1;
  } ev;
  auto* ml3 = eval->add_subcommand("ml3", "three-parameter Mittag-Leffler function (power series)");
  ml3->add_option("--alpha", ev.alpha)->required();
  ml3->add_option("--beta", ev.beta)->required();
  ml3->add_option("--gamma", ev.gamma)->required();
  ml3->add_option("--x", ev.x)->required();
  ml3->add_option("--tol", ev.tol);
  auto* kernel = eval->add_subcommand("kernel", "Prabhakar kernel t^(beta-1) E^gamma_{alpha,beta}(lambda t^alpha)");
  kernel->add_option("--alpha", ev.alpha)->required();
  kernel->add_option("--beta", ev.beta)->required();
  kernel->add_option("--gamma", ev.gamma)->required();
  kernel->add_option("--lambda", ev.lambda)->required();
  kernel->add_option("--t", ev.t)->required();
  kernel->add_option("--tol", ev.tol);
  auto* negint = eval->add_subcommand("neg-int", "E^{-n}_{alpha,beta}(x) as a finite polynomial");
  negint->add_option("--alpha", ev.alpha)->required();
  negint->add_option("--beta", ev.beta)->required();
  negint->add_option("--n", ev.n)->required();
  negint->add_option("--x", ev.x)->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve the relaxation equation on a time grid");
  ModelArgs solve_model;
  GridArgs solve_grid;
  double solve_tol = 1e-8;
  std::string solve_format = "csv";
  std::string solve_output;
  bool no_closed_form = false;
  add_model_options(solve, solve_model);
  add_grid_options(solve, solve_grid);
  solve->add_option("--tol", solve_tol, "per-point accuracy target");
  solve->add_option("--format", solve_format)->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--output", solve_output, "write the curve here instead of stdout");
  solve->add_flag("--no-closed-form", no_closed_form, "use series/inversion even when a closed form exists");

  // verify
  auto* verify = app.add_subcommand("verify", "run diagnostics; exit 4 if any check fails");
  verify->require_subcommand(1);
  std::string verify_format = "text";
  double verify_tol = 1e-6;
  auto* kochubei = verify->add_subcommand("kochubei", "asymptotic conditions on the kernel transform");
  PrabhakarParams kp{};
  kochubei->add_option("--alpha", kp.alpha)->required();
  kochubei->add_option("--beta", kp.beta)->required();
  kochubei->add_option("--gamma", kp.gamma);
  kochubei->add_option("--lambda", kp.lambda);
  auto* vmodel = verify->add_subcommand("model", "cross-validation, monotonicity and residual of a model");
  ModelArgs verify_model;
  GridArgs verify_grid;
  int dense_points = kDenseVerifyPoints;
  add_model_options(vmodel, verify_model);
  add_grid_options(vmodel, verify_grid);
  vmodel->add_option("--dense-points", dense_points, "grid size of the curve used for the residual");
  auto* vcurve = verify->add_subcommand("curve", "monotonicity and residual of a curve file");
  ModelArgs curve_model;
  std::string curve_path;
  add_model_options(vcurve, curve_model);
  vcurve->add_option("--input", curve_path, "CSV or JSON curve")->required();
  for (auto* sub : {kochubei, vmodel, vcurve}) {
    sub->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--tol", verify_tol, "agreement / interpolation tolerance");
  }

  // sweep
  auto* sweep = app.add_subcommand("sweep", "tau* and series coverage over a parameter range");
  std::string sweep_var;
  double sweep_from = 0, sweep_to = 0;
  int sweep_steps = 9;
  double sweep_alpha = 0.5, sweep_tau = 1.0, sweep_b = 1.0, sweep_tol = 1e-6;
  int sweep_points = 64;
  sweep->add_option("--var", sweep_var, "alpha, tau or b")->required()->check(CLI::IsMember({"alpha", "tau", "b"}));
  sweep->add_option("--from", sweep_from)->required();
  sweep->add_option("--to", sweep_to)->required();
  sweep->add_option("--steps", sweep_steps, "number of values, endpoints included");
  sweep->add_option("--alpha", sweep_alpha);
  sweep->add_option("--tau", sweep_tau);
  sweep->add_option("--b", sweep_b);
  sweep->add_option("--points", sweep_points, "grid points per coverage evaluation");
  sweep->add_option("--tol", sweep_tol);

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
    const int max_terms = max_terms_from_env();

    if (*ml3) {
      try {
        const SeriesEval e = sf::mittag_leffler_3p(ev.alpha, ev.beta, ev.gamma, ev.x, ev.tol, max_terms);
        print_eval(out, e);
        return e.converged ? kOk : kNonConvergence;
      } catch (const NonConvergence& e) {
        print_eval(out, e.partial());
        err << "error: NonConvergence: " << e.what() << '\n';
        return kNonConvergence;
      }
    }
    if (*kernel) {
      const PrabhakarParams p{ev.alpha, ev.beta, ev.gamma, ev.lambda};
      try {
        const SeriesEval e = sf::prabhakar_kernel(p, ev.t, ev.tol, max_terms);
        print_eval(out, e);
        return e.converged ? kOk : kNonConvergence;
      } catch (const NonConvergence& e) {
        print_eval(out, e.partial());
        err << "error: NonConvergence: " << e.what() << '\n';
        return kNonConvergence;
      }
    }
    if (*negint) {
      out << "value=" << format_double(sf::mittag_leffler_neg_int(ev.alpha, ev.beta, ev.n, ev.x)) << '\n';
      return kOk;
    }

    if (*solve) {
      const RelaxationModel m = build_model(solve_model);
      const std::vector<double> grid = make_grid(build_grid_spec(solve_grid, m));
      if (m.parameterization() == Parameterization::tau_form) {
        const double ts = tau_star(m.params().alpha, m.b());
        err << "tau*=" << format_double(ts) << " (tau=" << format_double(m.tau()) << ", "
            << (m.tau() < ts ? "large-time series regime" : "small-time series regime") << ")\n";
      }
      AutoOptions opts;
      opts.use_closed_form = !no_closed_form;
      opts.max_terms = max_terms;
      try {
        const Curve c = solve_auto(m, grid, solve_tol, opts);
        err << dispatch_summary(c) << '\n';
        write_output(solve_format == "json" ? curve_to_json(c, m).dump(2) + "\n" : curve_to_csv(c), solve_output,
                     out);
      } catch (const NoMethodConverged& e) {
        err << "error: NoMethodConverged: " << e.what() << '\n';
        return kNoMethod;
      }
      return kOk;
    }

    if (*verify) {
      DiagnosticsReport report;
      if (*kochubei) {
        report = laplace::check_kochubei_conditions(kp);
      } else if (*vmodel) {
        const RelaxationModel m = build_model(verify_model);
        const GridSpec spec = build_grid_spec(verify_grid, m);
        const std::vector<double> grid = make_grid(spec);
        report.merge(cross_validate(m, grid, verify_tol));
        const Curve c = solve_auto(m, grid);
        report.merge(complete_monotonicity_check(c, 4));
        GridSpec dense = spec;
        dense.points = std::max(dense_points, spec.points);
        dense.spacing = Spacing::geometric;
        const Curve dc = solve_auto(m, make_grid(dense));
        report.add(residual_check(m, dc));
      } else {
        std::optional<RelaxationModel> embedded;
        const Curve c = read_curve_file(curve_path, embedded);
        const bool flags_given = curve_model.alpha || curve_model.debye || curve_model.Lambda || curve_model.B ||
                                 curve_model.tau || curve_model.M;
        const RelaxationModel m = flags_given ? build_model(curve_model)
                                  : embedded  ? *embedded
                                              : throw UsageError("a CSV curve needs the model flags");
        report.merge(complete_monotonicity_check(c, 4));
        report.add(residual_check(m, c));
      }
      emit_report(report, verify_format, out);
      return report.overall() ? kOk : kVerificationFailed;
    }

    if (*sweep) {
      const std::vector<double> values = sweep_values(sweep_from, sweep_to, sweep_steps);
      std::ostringstream csv;
      csv << sweep_var << ",tau_star,small_coverage,large_coverage,union_coverage\n";
      for (double v : values) {
        double alpha = sweep_alpha, tau = sweep_tau, b = sweep_b;
        (sweep_var == "alpha" ? alpha : sweep_var == "tau" ? tau : b) = v;
        if (!(alpha > 0.0 && alpha < 1.0) || !(tau > 0.0) || !(b > 0.0)) {
          throw UsageError("sweep range leaves the domain 0 < alpha < 1, tau > 0, b > 0");
        }
        const RelaxationModel m = RelaxationModel::tau_form(alpha, tau, b);
        GridSpec spec = default_grid(m);
        spec.points = sweep_points;
        const CrossValidation cv = compare_methods(m, make_grid(spec), sweep_tol);
        csv << format_double(v) << ',' << format_double(tau_star(alpha, b)) << ',' << format_double(cv.small_coverage)
            << ',' << format_double(cv.large_coverage) << ',' << format_double(cv.union_coverage) << '\n';
      }
      out << csv.str();
      return kOk;
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterViolation& e) {
    err << "error: ParameterViolation: " << e.what() << '\n';
    return kUsage;
  } catch (const NoMethodConverged& e) {
    err << "error: NoMethodConverged: " << e.what() << '\n';
    return kNoMethod;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  }
  return kUsage;
}

}  // namespace relax::cli
