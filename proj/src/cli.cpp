#include "proxalt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "proxalt/diagnostics.hpp"
#include "proxalt/errors.hpp"
#include "proxalt/experiment.hpp"
#include "proxalt/kl.hpp"
#include "proxalt/numfmt.hpp"
#include "proxalt/solvers.hpp"

namespace proxalt {
namespace {

namespace fs = std::filesystem;

// Bad flag values found after parsing; reported with exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  if (!parse_double(text, v) || !std::isfinite(v)) throw UsageError(what + ": not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ProblemOptions {
  std::string lasso;
  std::optional<std::string> ionosphere;
  bool quadratic = false;
  int dim = 1;
  std::optional<double> lambda1;
  std::optional<double> half;
  bool intercept = false;
  double sparsity = 0.10;
  double noise = 0.001;
  std::uint64_t seed = 0;
};

void add_problem_options(CLI::App* app, ProblemOptions& o) {
  app->add_option("--lasso", o.lasso, "Synthetic lasso of shape MxN, e.g. 130x80");
  app->add_option("--ionosphere", o.ionosphere,
                  "Ionosphere CSV (UCI layout); without a value, $PROXALT_DATA/ionosphere.data")
      ->expected(0, 1);
  app->add_flag("--quadratic", o.quadratic, "Identity quadratic ||x||^2");
  app->add_option("--dim", o.dim, "Dimension of the identity quadratic")->check(CLI::PositiveNumber);
  app->add_option("--lambda1", o.lambda1, "l1 weight (lasso default: automatic support match; ionosphere: 0.1)");
  app->add_option("--half", o.half, "Use the half-norm regularizer with this weight instead of l1");
  app->add_flag("--intercept", o.intercept, "Append a constant column to the ionosphere features");
  app->add_option("--sparsity", o.sparsity, "Lasso: fraction of nonzeros in the planted vector");
  app->add_option("--noise", o.noise, "Lasso: standard deviation of the observation noise");
  app->add_option("--seed", o.seed, "Seed for problem generation and the starting point");
}

struct BuiltProblem {
  CompositeProblem problem;
  std::string description;
};

BuiltProblem build_problem(const ProblemOptions& o, std::ostream& err) {
  const int sources = (o.lasso.empty() ? 0 : 1) + (o.ionosphere ? 1 : 0) + (o.quadratic ? 1 : 0);
  if (sources != 1) throw UsageError("exactly one of --lasso, --ionosphere, --quadratic is required");

  if (o.quadratic) {
    if (o.lambda1 || o.half) throw UsageError("--quadratic takes no regularizer");
    return {identity_quadratic(o.dim), "identity quadratic, n=" + std::to_string(o.dim)};
  }
  if (o.lambda1 && o.half) throw UsageError("--lambda1 and --half are mutually exclusive");

  if (!o.lasso.empty()) {
    const auto x = o.lasso.find('x');
    if (x == std::string::npos) throw UsageError("--lasso expects MxN, got '" + o.lasso + "'");
    LassoSpec spec;
    spec.m = static_cast<Index>(parse_real(o.lasso.substr(0, x), "--lasso rows"));
    spec.n = static_cast<Index>(parse_real(o.lasso.substr(x + 1), "--lasso columns"));
    spec.sparsity = o.sparsity;
    spec.noise_std = o.noise;
    spec.seed = o.seed;
    if (o.half) {
      const LassoData d = gen_lasso_data(spec);
      return {CompositeProblem(SmoothLoss::least_squares(d.a, d.b), Regularizer::half_norm(*o.half)),
              "lasso " + o.lasso + " with half norm, lambda=" + format_double(*o.half)};
    }
    spec.lambda = o.lambda1;
    LassoInstance inst = gen_lasso(spec);
    return {std::move(inst.problem), "lasso " + o.lasso + ", lambda1=" + format_double(inst.lambda) +
                                         (o.lambda1 ? "" : " (auto)")};
  }

  const std::string path = o.ionosphere->empty() ? default_ionosphere_path() : *o.ionosphere;
  const DatasetRecord data = load_ionosphere(path, o.intercept);
  for (const std::string& w : data.warnings) err << "warning: " << w << '\n';
  const Regularizer g = o.half ? Regularizer::half_norm(*o.half) : Regularizer::l1(o.lambda1.value_or(0.1));
  return {logistic_problem(data, g), data.provenance + ", " + to_string(g.kind()) + " lambda=" + format_double(g.lambda())};
}

// Step-size policies: 1/L, 1/Lu, 1/2L, K/L, gmax, gmax/NU or a plain value.
struct GammaPolicy {
  enum class Kind { OverL, OverGmax, Value } kind = Kind::OverL;
  double k = 1.0;
};

GammaPolicy parse_gamma(const std::string& text) {
  GammaPolicy g;
  if (text.rfind("gmax", 0) == 0) {
    g.kind = GammaPolicy::Kind::OverGmax;
    const std::string rest = text.substr(4);
    if (rest.empty()) return g;
    if (rest[0] != '/') throw UsageError("--gamma: expected gmax/NU, got '" + text + "'");
    g.k = 1.0 / parse_real(rest.substr(1), "--gamma divisor");
    if (!(g.k > 0.0)) throw UsageError("--gamma: divisor must be positive");
    return g;
  }
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    g.kind = GammaPolicy::Kind::Value;
    g.k = parse_real(text, "--gamma");
    if (!(g.k > 0.0)) throw UsageError("--gamma must be positive");
    return g;
  }
  const double num = parse_real(text.substr(0, slash), "--gamma numerator");
  std::string den = text.substr(slash + 1);
  if (den.size() >= 2 && den.compare(den.size() - 2, 2, "Lu") == 0) {
    den.resize(den.size() - 2);
  } else if (!den.empty() && den.back() == 'L') {
    den.pop_back();
  } else {
    throw UsageError("--gamma: expected 1/L, 1/Lu, 1/2L, K/L, gmax/NU or a number, got '" + text + "'");
  }
  const double scale = den.empty() ? 1.0 : parse_real(den, "--gamma denominator");
  g.k = num / scale;
  if (!(g.k > 0.0)) throw UsageError("--gamma must be positive");
  return g;
}

struct RunOptions {
  ProblemOptions problem;
  std::string methods = "vanilla,fista,altinertia";
  std::string schedule;
  std::string gamma = "1/L";
  std::size_t budget = 1000;
  double tol = 0.0;
  std::string out = "proxalt_out";
  bool raw_alpha = false;
  std::size_t probe_iters = 1000;
  unsigned threads = 0;
};

InertiaSchedule schedule_for(Method m, const RunOptions& o, bool convex) {
  InertiaSchedule s = !o.schedule.empty() ? InertiaSchedule::parse(o.schedule)
                      : m == Method::AlternatedInertia ? InertiaSchedule::power(3.0, 0.8)
                                                       : InertiaSchedule::nesterov();
  if (o.raw_alpha) s.with_literal_ratio(true);
  // Alternated inertia keeps its descent guarantee on non-convex problems
  // only with α ≤ 1/2.
  if (!convex && m == Method::AlternatedInertia) s.with_cap(0.5);
  return s;
}

// Flat TOML with one key per option: the given value, else the default.
// Options without either are listed as comments so the file parses back.
void write_config_echo(std::ostream& s, const CLI::App& app) {
  for (const CLI::Option* opt : app.get_options()) {
    const std::string key = opt->get_single_name();
    if (key == "help" || key == "config") continue;
    if (opt->get_expected_max() == 0) {
      s << key << '=' << (opt->count() > 0 ? "true" : "false") << '\n';
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      const std::vector<std::string>& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
      if (results.empty()) value = "";
    } else {
      value = opt->get_default_str();
      if (value.empty()) {
        s << "# " << key << " unset\n";
        continue;
      }
    }
    s << key << "=\"" << value << "\"\n";
  }
}

std::string summary_header() {
  std::string h = "method,prox_evals,records,final_F,f_star,extra_function_evals";
  for (int e = 1; e <= 12; ++e) h += ",evals_to_1e-" + std::to_string(e);
  return h;
}

std::string summary_row(const SolverTrace& t, double f_star) {
  std::ostringstream row;
  const TraceRecord& last = t.records.back();
  row << to_string(t.method) << ',' << last.prox_evals << ',' << t.records.size() << ',' << format_double(last.F) << ','
      << format_double(f_star) << ',' << t.extra_function_evals;
  for (int e = 1; e <= 12; ++e) {
    const double target = std::pow(10.0, -e);
    row << ',';
    for (const TraceRecord& r : t.records) {
      if (r.F - f_star <= target) {
        row << r.prox_evals;
        break;
      }
    }
  }
  return row.str();
}

int cmd_run(CLI::App* app, const RunOptions& o, bool compare, std::ostream& out, std::ostream& err) {
  const BuiltProblem bp = build_problem(o.problem, err);
  const CompositeProblem& p = bp.problem;
  const Vector x0 = random_start(p.dim(), o.problem.seed);

  std::vector<Method> methods;
  for (const std::string& name : split_list(o.methods)) methods.push_back(parse_method(name));
  if (methods.empty()) throw UsageError("--methods: empty list");
  if (o.budget < 1) throw UsageError("--budget must be at least 1");

  const GammaPolicy policy = parse_gamma(o.gamma);
  double gamma = policy.k;
  std::optional<double> gmax;
  if (policy.kind == GammaPolicy::Kind::OverL) gamma = policy.k / p.lipschitz();
  if (policy.kind == GammaPolicy::Kind::OverGmax) {
    gmax = gamma_max_search(p, o.probe_iters, x0);
    gamma = policy.k * *gmax;
  }

  std::vector<SolverConfig> configs;
  for (Method m : methods) {
    SolverConfig c;
    c.method = m;
    c.gamma = gamma;
    c.schedule = schedule_for(m, o, p.convex());
    c.max_prox_evals = o.budget;
    c.stop_residual = o.tol;
    c.seed = o.problem.seed;
    configs.push_back(c);
  }

  // Methods run concurrently; files are written afterwards from this thread.
  std::vector<std::future<SolverTrace>> futures;
  const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  const auto policy_launch = threads > 1 ? std::launch::async : std::launch::deferred;
  for (const SolverConfig& c : configs) {
    futures.push_back(std::async(policy_launch, [&p, &x0, c] { return solve(p, c, x0); }));
  }
  std::vector<SolverTrace> traces;
  for (auto& f : futures) traces.push_back(f.get());

  double f_star = std::numeric_limits<double>::infinity();
  for (const SolverTrace& t : traces) {
    for (const TraceRecord& r : t.records) f_star = std::min(f_star, r.F);
  }
  try {
    f_star = std::min(f_star, compute_reference_optimum(p, {}, x0).value);
  } catch (const ConvergenceFailure& e) {
    err << "warning: " << e.what() << "; using the smallest F reached as F*\n";
  }

  fs::create_directories(o.out);
  for (const SolverTrace& t : traces) write_trace(t, (fs::path(o.out) / ("trace_" + to_string(t.method) + ".csv")).string());
  {
    const std::string path = (fs::path(o.out) / "summary.csv").string();
    std::ofstream s(path);
    if (!s) throw IoError(path, "cannot open for writing");
    s << summary_header() << '\n';
    for (const SolverTrace& t : traces) s << summary_row(t, f_star) << '\n';
  }
  {
    const std::string path = (fs::path(o.out) / "config.echo.toml").string();
    std::ofstream s(path);
    if (!s) throw IoError(path, "cannot open for writing");
    write_config_echo(s, *app);
    s << "# problem: " << bp.description << '\n';
    s << "# L = " << format_double(p.lipschitz()) << '\n';
    s << "# resolved gamma = " << format_double(gamma) << '\n';
    if (gmax) s << "# gamma_max = " << format_double(*gmax) << '\n';
    for (const SolverConfig& c : configs) {
      s << "# schedule[" << to_string(c.method) << "] = " << c.schedule.describe()
        << (c.schedule.cap() < 1.0 ? " capped at " + format_double(c.schedule.cap()) : "") << '\n';
    }
  }

  out << bp.description << '\n';
  out << "L = " << format_double(p.lipschitz()) << ", gamma = " << format_double(gamma) << ", F* ~ "
      << format_double(f_star) << '\n';
  if (compare) {
    out << summary_header() << '\n';
    for (const SolverTrace& t : traces) out << summary_row(t, f_star) << '\n';
  } else {
    for (const SolverTrace& t : traces) {
      out << to_string(t.method) << ": " << t.records.back().prox_evals << " prox evals, final F = "
          << format_double(t.records.back().F) << '\n';
    }
  }
  out << "wrote " << traces.size() << " traces to " << o.out << '\n';
  return kExitOk;
}

struct VerifyOptions {
  std::string suite = "all";
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::size_t samples = 10000;
  std::string gamma = "1/L";
  std::size_t budget = 1000;
  double inject_slack = 0.0;
  std::string ionosphere;
  std::string families;
  std::string out;
  unsigned threads = 0;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  SuiteOptions s;
  s.selector = o.suite;
  s.seeds = o.seeds;
  s.samples = o.samples;
  s.run_budget = o.budget;
  s.threads = o.threads;
  s.tol.inject = o.inject_slack;
  const GammaPolicy g = parse_gamma(o.gamma);
  if (g.kind != GammaPolicy::Kind::OverL) throw UsageError("verify --gamma must be of the form K/L");
  // Families carry their own step (1/L or 1/(2L)); K/L scales it by K.
  s.gamma_scale = g.k;

  std::vector<ProblemCase> families = default_families(o.ionosphere.empty() ? default_ionosphere_path() : o.ionosphere);
  if (!o.families.empty()) {
    const std::vector<std::string> keep = split_list(o.families);
    std::vector<ProblemCase> selected;
    for (const std::string& name : keep) {
      auto it = std::find_if(families.begin(), families.end(), [&](const ProblemCase& f) { return f.name == name; });
      if (it == families.end()) throw UsageError("unknown family '" + name + "'");
      selected.push_back(*it);
    }
    families = std::move(selected);
  }

  const std::vector<CheckReport> reports = run_suite(families, s);
  std::size_t violations = 0, unmet = 0;
  for (const CheckReport& r : reports) {
    violations += r.violations;
    unmet += r.hypothesis_met ? 0 : 1;
  }
  if (o.out.empty()) {
    write_reports_csv(out, reports);
  } else {
    fs::create_directories(o.out);
    const std::string path = (fs::path(o.out) / "checks.csv").string();
    std::ofstream f(path);
    if (!f) throw IoError(path, "cannot open for writing");
    write_reports_csv(f, reports);
    out << "wrote " << path << '\n';
  }
  out << reports.size() << " checks, " << violations << " violations, " << unmet << " with hypotheses unmet\n";
  return violations == 0 ? kExitOk : kExitVerifyFailed;
}

struct KlOptions {
  double theta = 0.5;
  double C = 1.0;
  std::string regime = "a";
  double a = 0.1;
  double d = 0.5;
  double r0 = 1.0;
  std::size_t steps = 100000;
  std::string out;
};

int cmd_klsim(const KlOptions& o, std::ostream& out) {
  KLRecurrence rec;
  rec.r0 = o.r0;
  rec.theta = o.theta;
  rec.C = o.C;
  switch (parse_regime(o.regime)) {
    case Regime::Constant:
      rec.a = CoefficientSequence::constant(o.a);
      break;
    case Regime::PowerDecay:
      rec.a = CoefficientSequence::power_decay(o.a, o.d);
      break;
    case Regime::Harmonic:
      rec.a = CoefficientSequence::harmonic(o.a);
      break;
  }
  const std::vector<double> seq = simulate_recurrence(rec, o.steps);
  const RateEnvelope env = envelope_for(rec, o.steps);
  out << "regime (" << to_string(rec.a.regime()) << "), theta " << format_double(o.theta) << " in "
      << to_string(env.theta_class) << ": bound O(" << env.formula << ")\n";

  if (!o.out.empty()) {
    fs::create_directories(o.out);
    const std::string path = (fs::path(o.out) / "klsim.csv").string();
    std::ofstream f(path);
    if (!f) throw IoError(path, "cannot open for writing");
    write_recurrence_csv(f, seq, env);
    out << "wrote " << path << '\n';
  }

  if (env.model == EnvelopeModel::FiniteTermination) {
    const auto theorem = theorem_termination_bound(rec, o.steps);
    const EnvelopeReport rep = check_envelope(seq, env);
    out << "first zero at k = " << format_double(rep.fitted) << ", predicted " << format_double(rep.expected);
    if (theorem) out << ", theorem index K = " << *theorem;
    out << (rep.pass ? "  PASS" : "  FAIL") << '\n';
    return rep.pass ? kExitOk : kExitVerifyFailed;
  }
  const EnvelopeReport rep = check_envelope(seq, env);
  const char* what = env.model == EnvelopeModel::Geometric      ? "rate factor"
                     : env.model == EnvelopeModel::StretchedExp ? "decay constant"
                                                                : "slope";
  out << what << ": fitted " << format_double(rep.fitted) << ", envelope " << format_double(rep.expected)
      << (env.tight ? " (two-sided 10%)" : " (one-sided)") << ", R2 " << format_double(rep.r_squared)
      << (rep.pass ? "  PASS" : "  FAIL") << '\n';
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_gammamax(const ProblemOptions& po, std::size_t probe_iters, std::ostream& out, std::ostream& err) {
  const BuiltProblem bp = build_problem(po, err);
  const Vector x0 = random_start(bp.problem.dim(), po.seed);
  const double gmax = gamma_max_search(bp.problem, probe_iters, x0);
  const double inv_l = 1.0 / bp.problem.lipschitz();
  out << bp.description << '\n';
  out << "1/L       = " << format_double(inv_l) << '\n';
  out << "gamma_max = " << format_double(gmax) << "  (" << format_double(gmax / inv_l) << " / L)\n";
  out << "nu,gamma\n";
  for (double nu : {8.0, 3.0, 1.5}) out << format_double(nu) << ',' << format_double(gmax / nu) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proximal gradient methods with alternated inertia: runs, checks and rate simulations", "proxalt"};
  app.require_subcommand(1);

  // CLI11 only reads config files attached to the top-level app, so each
  // subcommand loads its own after the command line has been parsed.
  std::map<CLI::App*, std::string> config_paths;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_paths[sub], "Flat TOML file with any of these options; flags override it");
    sub->allow_config_extras(CLI::config_extras_mode::error);
  };

  RunOptions run_opts;
  RunOptions compare_opts;
  compare_opts.methods = "vanilla,fista,mfista,altinertia,altextrap";
  auto add_run = [&](const char* name, const char* help, RunOptions& o) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->option_defaults()->always_capture_default();
    add_problem_options(sub, o.problem);
    sub->add_option("--methods,--method", o.methods, "Comma list of vanilla, fista, mfista, altinertia, altextrap");
    sub->add_option("--schedule", o.schedule, "fixed:A, nesterov, linear:A or power:A,D");
    sub->add_option("--gamma", o.gamma, "1/L, 1/Lu, 1/2L, K/L, gmax/NU or a value");
    sub->add_option("--budget", o.budget, "Prox-gradient evaluations per method");
    sub->add_option("--tol", o.tol, "Stop when the fixed-point residual drops to this value");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_flag("--raw-section5-alpha", o.raw_alpha, "Use the literal ratio t_{k+1}/(t_k - 1), clamped");
    sub->add_option("--probe-iters", o.probe_iters, "Vanilla steps per probe of the gamma_max search");
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    add_config(sub);
    return sub;
  };
  CLI::App* run = add_run("run", "Run methods on one problem and write traces", run_opts);
  CLI::App* compare = add_run("compare", "Like run, printing the summary table", compare_opts);

  VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "Run the inequality checks; exit 3 on any violation");
  verify->add_option("--suite", verify_opts.suite, "lemmas, theorems or all");
  verify->add_option("--seeds", verify_opts.seeds, "Seeds")->delimiter(',');
  verify->add_option("--samples", verify_opts.samples, "Samples per lemma check");
  verify->add_option("--gamma", verify_opts.gamma, "Step multiplier K/L applied to every family");
  verify->add_option("--budget", verify_opts.budget, "Prox evaluations of the runs behind theorem checks");
  verify->add_option("--inject-slack", verify_opts.inject_slack,
                     "Demand this much extra slack from every inequality (harness self-test)");
  verify->add_option("--ionosphere", verify_opts.ionosphere, "Ionosphere CSV path");
  verify->add_option("--families", verify_opts.families, "Comma list of family names to keep");
  verify->add_option("--out", verify_opts.out, "Directory for checks.csv (default: stdout)");
  verify->add_option("--threads", verify_opts.threads, "Worker threads (0: all cores)");
  add_config(verify);

  KlOptions kl_opts;
  CLI::App* klsim = app.add_subcommand("klsim", "Simulate the worst-case weak-descent recurrence");
  klsim->add_option("--theta", kl_opts.theta, "KL exponent in (0, 1]");
  klsim->add_option("--C", kl_opts.C, "KL constant");
  klsim->add_option("--regime", kl_opts.regime, "a (constant), b (c/k^d) or c (c/k)");
  klsim->add_option("--a", kl_opts.a, "Scale c of the coefficients a_k");
  klsim->add_option("--d", kl_opts.d, "Decay exponent of regime b");
  klsim->add_option("--r0", kl_opts.r0, "Initial gap");
  klsim->add_option("--steps", kl_opts.steps, "Horizon K");
  klsim->add_option("--out", kl_opts.out, "Directory for klsim.csv");
  add_config(klsim);

  ProblemOptions gm_problem;
  std::size_t gm_probe = 1000;
  CLI::App* gammamax = app.add_subcommand("gammamax", "Largest step before divergence, with the nu presets");
  add_problem_options(gammamax, gm_problem);
  gammamax->add_option("--probe-iters", gm_probe, "Vanilla steps per probe");
  add_config(gammamax);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (auto& [sub, path] : config_paths) {
      if (!sub->parsed() || path.empty()) continue;
      std::ifstream in(path);
      if (!in) throw CLI::FileError::Missing(path);
      sub->parse_from_stream(in);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run, run_opts, false, out, err);
    if (compare->parsed()) return cmd_run(compare, compare_opts, true, out, err);
    if (verify->parsed()) return cmd_verify(verify_opts, out);
    if (klsim->parsed()) return cmd_klsim(kl_opts, out);
    if (gammamax->parsed()) return cmd_gammamax(gm_problem, gm_probe, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace proxalt
