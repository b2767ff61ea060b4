#include "proxalt/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "proxalt/errors.hpp"
#include "proxalt/experiment.hpp"
#include "proxalt/numfmt.hpp"
#include "proxalt/prox.hpp"

namespace proxalt {
namespace {

constexpr double kRadii[] = {0.1, 1.0, 10.0};
constexpr double kHypothesisEps = 1e-12;

CheckReport make_report(std::string name, std::string problem, std::uint64_t seed) {
  CheckReport r;
  r.check_name = std::move(name);
  r.problem = std::move(problem);
  r.seed = seed;
  return r;
}

// Registers lhs ≤ rhs with the given slack scale.
void tally(CheckReport& r, double lhs, double rhs, double scale, const Tolerance& tol) {
  const double slack = rhs - lhs;
  ++r.samples;
  r.worst_slack = std::min(r.worst_slack, slack);
  if (!(slack >= tol.inject - tol.rel * scale)) ++r.violations;
}

void mark_unmet(CheckReport& r, std::string why) {
  r.hypothesis_met = false;
  r.note = std::move(why);
}

struct LemmaSelection {
  bool contraction = true;
  bool descent_convex = true;
  bool descent_nonconvex = true;
  bool subgrad = true;
};

std::vector<CheckReport> lemma_reports(const CompositeProblem& p, const std::string& problem, double gamma,
                                       std::size_t n_samples, std::uint64_t seed, const Tolerance& tol,
                                       const LemmaSelection& sel) {
  if (!(gamma > 0.0)) throw InvalidArgument("lemma checks: step size must be positive");
  const double L = p.lipschitz();
  const double gl = gamma * L;

  std::vector<CheckReport> out;
  CheckReport contraction = make_report("contraction", problem, seed);
  CheckReport descent = make_report("descent_lemma", problem, seed);
  CheckReport descent_nc = make_report("descent_lemma_nonconvex", problem, seed);
  CheckReport subgrad = make_report("subgrad_bound", problem, seed);

  bool do_contraction = sel.contraction;
  if (do_contraction && !p.convex()) {
    mark_unmet(contraction, "regularizer is not convex");
    do_contraction = false;
  } else if (do_contraction && !(gl < 2.0)) {
    mark_unmet(contraction, "gamma*L = " + format_double(gl) + " is not below 2");
    do_contraction = false;
  }
  bool do_descent = sel.descent_convex;
  if (do_descent && !p.convex()) {
    mark_unmet(descent, "regularizer is not convex");
    do_descent = false;
  }
  const bool do_descent_nc = sel.descent_nonconvex;
  const bool do_subgrad = sel.subgrad;

  const double nu = 2.0 / (1.0 + 2.0 * std::min(1.0, 1.0 / gl));
  const double averaged_weight = (1.0 - nu) / nu;
  const double bound_factor = (L * gamma + 1.0) / gamma;
  const double inv2g = 1.0 / (2.0 * gamma);

  const bool any = do_contraction || do_descent || do_descent_nc || do_subgrad;
  Rng rng(seed);
  for (std::size_t i = 0; any && i < n_samples; ++i) {
    const double radius = kRadii[i % 3];
    const Vector x = radius * rng.normal_vector(p.dim());
    const Vector y = radius * rng.normal_vector(p.dim());
    const Vector tx = prox_gradient_step(p, x, gamma).output;
    const double xy2 = (x - y).squaredNorm();
    const double res_x2 = (tx - x).squaredNorm();

    if (do_contraction) {
      const Vector ty = prox_gradient_step(p, y, gamma).output;
      const double lhs = (tx - ty).squaredNorm() + averaged_weight * ((x - tx) - (y - ty)).squaredNorm();
      tally(contraction, lhs, xy2, 1.0 + xy2, tol);
    }
    if (do_descent || do_descent_nc) {
      const double f_tx = p.value(tx);
      const double f_y = p.value(y);
      const double base = f_tx + (1.0 - gl) * inv2g * res_x2;
      const double rhs = f_y + inv2g * xy2;
      if (do_descent) {
        const double lhs = base + inv2g * (tx - y).squaredNorm();
        tally(descent, lhs, rhs, std::max({1.0, std::abs(lhs), std::abs(rhs)}), tol);
      }
      if (do_descent_nc) tally(descent_nc, base, rhs, std::max({1.0, std::abs(base), std::abs(rhs)}), tol);
    }
    if (do_subgrad) {
      const double lhs = p.dist_subgradient(tx);
      const double rhs = bound_factor * std::sqrt(res_x2);
      tally(subgrad, lhs, rhs, std::max(1.0, rhs), tol);
    }
  }

  if (sel.contraction) {
    if (contraction.hypothesis_met) contraction.note = "nu=" + format_double(nu);
    out.push_back(std::move(contraction));
  }
  if (sel.descent_convex) out.push_back(std::move(descent));
  if (sel.descent_nonconvex) out.push_back(std::move(descent_nc));
  if (sel.subgrad) out.push_back(std::move(subgrad));
  return out;
}

double max_alpha(const SolverTrace& t) {
  double m = 0.0;
  for (double a : t.alphas) m = std::max(m, a);
  return m;
}

double min_alpha(const SolverTrace& t) {
  double m = 0.0;
  for (double a : t.alphas) m = std::min(m, a);
  return m;
}

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double sse = 0.0;
};

Fit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.sse = std::max(0.0, syy - f.slope * sxy);
  f.r_squared = syy > 0.0 ? 1.0 - f.sse / syy : 1.0;
  return f;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

CheckReport check_contraction(const CompositeProblem& p, double gamma, std::size_t n_samples, std::uint64_t seed,
                              const Tolerance& tol) {
  return lemma_reports(p, "", gamma, n_samples, seed, tol, {true, false, false, false}).front();
}

CheckReport check_descent_lemma(const CompositeProblem& p, double gamma, std::size_t n_samples, std::uint64_t seed,
                                bool nonconvex, const Tolerance& tol) {
  return lemma_reports(p, "", gamma, n_samples, seed, tol, {false, !nonconvex, nonconvex, false}).front();
}

CheckReport check_subgrad_bound(const CompositeProblem& p, double gamma, std::size_t n_samples, std::uint64_t seed,
                                const Tolerance& tol) {
  return lemma_reports(p, "", gamma, n_samples, seed, tol, {false, false, false, true}).front();
}

std::vector<CheckReport> check_lemmas(const CompositeProblem& p, const std::string& problem_name, double gamma,
                                      std::size_t n_samples, std::uint64_t seed, const Tolerance& tol) {
  LemmaSelection sel;
  sel.contraction = p.convex();
  sel.descent_convex = p.convex();
  return lemma_reports(p, problem_name, gamma, n_samples, seed, tol, sel);
}

CheckReport check_alternated_descent(const SolverTrace& trace, bool nonconvex, const Tolerance& tol) {
  CheckReport rep = make_report(nonconvex ? "alternated_descent_nonconvex" : "alternated_descent", "", 0);
  if (trace.method != Method::AlternatedInertia) {
    throw InvalidArgument("check_alternated_descent: trace must come from run_alternated_inertia");
  }
  const double gamma = trace.gamma;
  const double gl = gamma * trace.lipschitz;
  const double c = nonconvex ? 1.0 : 2.0;
  const double gl_max = nonconvex ? 0.5 : 1.0;
  const double alpha_max = nonconvex ? 0.5 : 1.0;
  if (gl > gl_max + kHypothesisEps) {
    mark_unmet(rep, "gamma*L = " + format_double(gl) + " exceeds " + format_double(gl_max));
    return rep;
  }
  if (max_alpha(trace) > alpha_max + kHypothesisEps || min_alpha(trace) < 0.0) {
    mark_unmet(rep, "inertia outside [0, " + format_double(alpha_max) + "]");
    return rep;
  }

  const auto& r = trace.records;
  std::size_t blocks = 0;
  for (std::size_t b = 0; 2 * b + 2 < r.size() && b < trace.alphas.size(); ++b) {
    const double alpha = trace.alphas[b];
    const TraceRecord& y0 = r[2 * b];
    const TraceRecord& y1 = r[2 * b + 1];
    const TraceRecord& y2 = r[2 * b + 2];
    const double scale = std::max(1.0, std::abs(y0.F));
    const double coef = (c - alpha - gl) / (2.0 * gamma);
    tally(rep, y2.F, y0.F - coef * (y2.residual * y2.residual + y1.residual * y1.residual), scale, tol);
    const double a_k = (c - alpha - gl) * gamma / (2.0 * (1.0 + gl) * (1.0 + gl));
    tally(rep, y2.F, y0.F - a_k * y2.dist_exact * y2.dist_exact, scale, tol);
    ++blocks;
  }
  rep.note = std::to_string(blocks) + " blocks, both forms";
  return rep;
}

CheckReport check_fejer(const SolverTrace& trace, const Vector& x_star, const Tolerance& tol) {
  CheckReport rep = make_report("fejer", "", 0);
  if (trace.points.size() != trace.records.size()) {
    throw InvalidArgument("check_fejer: trace must be recorded with store_points");
  }
  const double gl = trace.gamma * trace.lipschitz;
  const double limit = std::min(1.0, 1.0 / gl) - 0.5;
  if (max_alpha(trace) > limit + kHypothesisEps) {
    mark_unmet(rep, "hypothesis unmet: max alpha " + format_double(max_alpha(trace)) + " > " + format_double(limit));
    return rep;
  }
  const std::vector<std::size_t> idx = trace.monotone_indices();
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    const double before = (trace.points[idx[i]] - x_star).norm();
    const double after = (trace.points[idx[i + 1]] - x_star).norm();
    tally(rep, after, before + 1e-10, 0.0, tol);
  }
  return rep;
}

CheckReport check_extrapolation_rate(const SolverTrace& trace, const Vector& x_star, double f_star,
                                     const Tolerance& tol) {
  CheckReport rep = make_report("extrapolation_rate", "", 0);
  if (trace.method != Method::AlternatedExtrapolation) {
    throw InvalidArgument("check_extrapolation_rate: trace must come from run_alternated_extrapolation");
  }
  if (trace.gamma * trace.lipschitz > 1.0 + kHypothesisEps) {
    mark_unmet(rep, "gamma*L exceeds 1");
    return rep;
  }
  const double d2 = (trace.initial_point - x_star).squaredNorm();
  for (std::size_t k = 3; k < trace.records.size(); k += 2) {
    const std::size_t j = k / 2;
    if (j >= trace.t_values.size()) break;
    const double t = trace.t_values[j];
    const double bound = d2 / (2.0 * trace.gamma * t * t);
    tally(rep, trace.records[k].F - f_star, bound + 1e-12, 0.0, tol);
  }
  return rep;
}

CheckReport check_extrapolation_partial_sums(const SolverTrace& trace, const Vector& x_star, double f_star,
                                             const Tolerance& tol) {
  CheckReport rep = make_report("extrapolation_partial_sums", "", 0);
  if (trace.method != Method::AlternatedExtrapolation) {
    throw InvalidArgument("check_extrapolation_partial_sums: trace must come from run_alternated_extrapolation");
  }
  if (trace.gamma * trace.lipschitz > 1.0 + kHypothesisEps) {
    mark_unmet(rep, "gamma*L exceeds 1");
    return rep;
  }
  const double inv2g = 1.0 / (2.0 * trace.gamma);
  const double rhs = (trace.initial_point - x_star).squaredNorm() * inv2g;
  double sum = 0.0;
  for (std::size_t j = 1; 2 * j < trace.records.size() && j < trace.t_values.size(); ++j) {
    const std::size_t l = j - 1;
    const double res = trace.records[2 * l + 1].residual;
    sum += trace.t_values[l] * trace.t_values[l] * res * res;
    const double t = trace.t_values[j];
    const double lhs = t * t * (trace.records[2 * j].F - f_star) + inv2g * sum;
    tally(rep, lhs, rhs, std::max(1.0, rhs), tol);
  }
  return rep;
}

ResilienceFit fit_tail(const SolverTrace& trace, double f_star, double floor) {
  std::vector<std::size_t> usable;
  for (std::size_t i : trace.monotone_indices()) {
    if (trace.records[i].prox_evals > 0 && trace.records[i].F - f_star >= floor) usable.push_back(i);
  }
  ResilienceFit out;
  const std::size_t first = usable.size() / 2;
  std::vector<double> k, logk, y;
  for (std::size_t i = first; i < usable.size(); ++i) {
    const TraceRecord& r = trace.records[usable[i]];
    const double kk = static_cast<double>(r.prox_evals);
    k.push_back(kk);
    logk.push_back(std::log(kk));
    y.push_back(std::log(r.F - f_star));
  }
  out.points = y.size();
  if (y.size() < 10) return out;
  const Fit e = least_squares_line(k, y);
  const Fit p = least_squares_line(logk, y);
  out.exp_r_squared = e.r_squared;
  out.power_r_squared = p.r_squared;
  out.exp_sse = e.sse;
  out.power_sse = p.sse;
  out.linear_factor = std::exp(e.slope);
  return out;
}

CheckReport check_strong_convexity_resilience(const SolverTrace& trace, double f_star, double floor) {
  CheckReport rep = make_report("strong_convexity_resilience", "", 0);
  const ResilienceFit f = fit_tail(trace, f_star, floor);
  rep.samples = f.points;
  if (f.points < 10) {
    rep.violations = 1;
    rep.note = "fewer than 10 tail records above the floor";
    return rep;
  }
  rep.worst_slack = f.exp_r_squared - 0.99;
  const bool pass = f.exp_r_squared >= 0.99 && f.exp_sse < f.power_sse;
  rep.violations = pass ? 0 : 1;
  rep.note = "exp R2=" + format_double(f.exp_r_squared) + " power R2=" + format_double(f.power_r_squared) +
             " factor=" + format_double(f.linear_factor);
  return rep;
}

std::vector<ProblemCase> default_families(const std::string& ionosphere_path) {
  std::vector<ProblemCase> out;
  auto add = [&](std::string name, CompositeProblem p) {
    const double gamma = p.convex() ? 1.0 / p.lipschitz() : 0.5 / p.lipschitz();
    out.push_back({std::move(name), std::move(p), gamma});
  };
  add("quadratic", random_quadratic(0));

  LassoSpec spec;
  spec.m = 130;
  add("lasso130x80", gen_lasso(spec).problem);
  spec.m = 85;
  add("lasso85x80", gen_lasso(spec).problem);

  const DatasetRecord iono = load_ionosphere(ionosphere_path);
  add("logistic-l1", logistic_problem(iono, Regularizer::l1(0.1)));
  add("logistic-half", logistic_problem(iono, Regularizer::half_norm(0.002)));

  spec.m = 130;
  const LassoData d = gen_lasso_data(spec);
  add("lasso-half", CompositeProblem(SmoothLoss::least_squares(d.a, d.b), Regularizer::half_norm(0.05)));
  return out;
}

std::vector<CheckReport> run_suite(const std::vector<ProblemCase>& families, const SuiteOptions& opts) {
  if (opts.selector != "lemmas" && opts.selector != "theorems" && opts.selector != "all") {
    throw InvalidArgument("unknown suite '" + opts.selector + "' (expected lemmas, theorems or all)");
  }
  const bool lemmas = opts.selector != "theorems";
  const bool theorems = opts.selector != "lemmas";

  // Phase 1: reference optima for the convex families used by Fejér and
  // extrapolation checks.
  std::vector<std::optional<CompositeProblem>> referenced(families.size());
  std::vector<std::function<std::vector<CheckReport>()>> tasks;
  auto run_tasks = [&](unsigned threads) {
    std::vector<std::vector<CheckReport>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    tasks.clear();
    return results;
  };
  const unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

  if (theorems) {
    for (std::size_t f = 0; f < families.size(); ++f) {
      if (!families[f].problem.convex()) continue;
      tasks.emplace_back([&, f] {
        referenced[f] = ensure_reference(families[f].problem);
        return std::vector<CheckReport>{};
      });
    }
    run_tasks(threads);
  }

  for (std::size_t f = 0; f < families.size(); ++f) {
    const ProblemCase& fam = families[f];
    const double gamma = fam.gamma * opts.gamma_scale;
    for (std::uint64_t seed : opts.seeds) {
      if (lemmas) {
        tasks.emplace_back([&, gamma, seed] {
          return check_lemmas(fam.problem, fam.name, gamma, opts.samples, seed, opts.tol);
        });
      }
      if (!theorems) continue;
      tasks.emplace_back([&, f, gamma, seed] {
        std::vector<CheckReport> out;
        const CompositeProblem& p = fam.problem;
        const Vector x0 = random_start(p.dim(), seed);
        auto finish = [&](CheckReport rep, const std::string& tag) {
          rep.check_name += "[" + tag + "]";
          rep.problem = fam.name;
          rep.seed = seed;
          out.push_back(std::move(rep));
        };
        SolverConfig c;
        c.gamma = gamma;
        c.max_prox_evals = opts.run_budget;

        if (!p.convex()) {
          c.method = Method::AlternatedInertia;
          for (const char* s : {"power:3,0.8", "fixed:0.5"}) {
            c.schedule = InertiaSchedule::parse(s).with_cap(0.5);
            if (gamma * p.lipschitz() > 0.5 + kHypothesisEps) {
              CheckReport rep = make_report("alternated_descent_nonconvex", "", 0);
              mark_unmet(rep, "gamma*L exceeds 0.5");
              finish(std::move(rep), s);
              continue;
            }
            finish(check_alternated_descent(run_alternated_inertia(p, c, x0), true, opts.tol), s);
          }
          return out;
        }

        const bool in_range = gamma * p.lipschitz() <= 1.0 + kHypothesisEps;
        c.method = Method::AlternatedInertia;
        for (const char* s : {"fixed:0", "fixed:0.5", "fixed:0.99", "nesterov", "power:3,0.8"}) {
          if (!in_range) {
            CheckReport rep = make_report("alternated_descent", "", 0);
            mark_unmet(rep, "gamma*L exceeds 1");
            finish(std::move(rep), s);
            continue;
          }
          c.schedule = InertiaSchedule::parse(s);
          finish(check_alternated_descent(run_alternated_inertia(p, c, x0), false, opts.tol), s);
        }

        const ReferenceOptimum& ref = *referenced[f]->reference();
        c.store_points = true;
        for (const char* s : {"fixed:0", "fixed:0.25", "fixed:0.5"}) {
          if (!in_range) {
            CheckReport rep = make_report("fejer", "", 0);
            mark_unmet(rep, "gamma*L exceeds 1");
            finish(std::move(rep), s);
            continue;
          }
          c.schedule = InertiaSchedule::parse(s);
          finish(check_fejer(run_alternated_inertia(p, c, x0), ref.point, opts.tol), s);
        }
        c.store_points = false;

        c.method = Method::AlternatedExtrapolation;
        c.schedule = InertiaSchedule::nesterov();
        if (!in_range) {
          CheckReport rep = make_report("extrapolation_rate", "", 0);
          mark_unmet(rep, "gamma*L exceeds 1");
          finish(std::move(rep), "nesterov");
          return out;
        }
        const SolverTrace t = run_alternated_extrapolation(p, c, x0);
        finish(check_extrapolation_rate(t, ref.point, ref.value, opts.tol), "nesterov");
        finish(check_extrapolation_partial_sums(t, ref.point, ref.value, opts.tol), "nesterov");
        return out;
      });
    }
  }

  std::vector<CheckReport> all;
  for (auto& chunk : run_tasks(threads)) {
    for (auto& r : chunk) all.push_back(std::move(r));
  }
  return all;
}

void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << "check,problem,seed,samples,violations,worst_slack,hypothesis_met,note\n";
  for (const CheckReport& r : reports) {
    out << csv_field(r.check_name) << ',' << csv_field(r.problem) << ',' << r.seed << ',' << r.samples << ','
        << r.violations << ',' << format_double(r.worst_slack) << ',' << (r.hypothesis_met ? "yes" : "no") << ','
        << csv_field(r.note) << '\n';
  }
}

}  // namespace proxalt
