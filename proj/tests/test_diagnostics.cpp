#include <doctest.h>

#include <cmath>
#include <sstream>

#include "proxalt/diagnostics.hpp"
#include "proxalt/experiment.hpp"

using namespace proxalt;

namespace {

const LassoInstance& lasso130() {
  static const LassoInstance inst = gen_lasso(LassoSpec{});
  return inst;
}

const ReferenceOptimum& lasso130_ref() {
  static const ReferenceOptimum ref = compute_reference_optimum(lasso130().problem);
  return ref;
}

const CompositeProblem& ionosphere_l1() {
  static const CompositeProblem p =
      logistic_problem(load_ionosphere(PROXALT_DATA_DIR "/ionosphere.data"), Regularizer::l1(0.1));
  return p;
}

SolverTrace run(const CompositeProblem& p, Method m, const char* schedule, double gamma, std::size_t budget,
                bool store = false) {
  SolverConfig c;
  c.method = m;
  c.gamma = gamma;
  c.schedule = InertiaSchedule::parse(schedule);
  c.max_prox_evals = budget;
  c.store_points = store;
  return solve(p, c, random_start(p.dim(), 0));
}

}  // namespace

TEST_CASE("lemma checks on a quadratic") {
  const CompositeProblem q = random_quadratic(0);
  const double g = 1.0 / q.lipschitz();
  for (const CheckReport& r : check_lemmas(q, "quadratic", g, 10000, 0)) {
    CHECK_MESSAGE(r.passed(), r.check_name);
    CHECK(r.hypothesis_met);
    CHECK(r.samples == 10000);
    CHECK(r.worst_slack > -1e-6);
  }
}

TEST_CASE("contraction at a large step uses the matching nu") {
  const CompositeProblem& p = lasso130().problem;
  const CheckReport r = check_contraction(p, 1.9 / p.lipschitz(), 2000, 1);
  CHECK(r.passed());
  CHECK(r.hypothesis_met);
  REQUIRE(r.note.rfind("nu=", 0) == 0);
  const double nu = std::stod(r.note.substr(3));
  CHECK(nu == doctest::Approx(2.0 / (1.0 + 2.0 / 1.9)).epsilon(1e-12));

  const CheckReport gated = check_contraction(p, 3.0 / p.lipschitz(), 100, 1);
  CHECK_FALSE(gated.hypothesis_met);
  CHECK(gated.samples == 0);
  CHECK(gated.passed());
}

TEST_CASE("descent and subgradient lemmas") {
  const CompositeProblem& p = lasso130().problem;
  CHECK(check_descent_lemma(p, 1.0 / p.lipschitz(), 2000, 2, false).passed());
  CHECK(check_subgrad_bound(p, 1.0 / p.lipschitz(), 2000, 2).passed());

  LassoSpec spec;
  const LassoData d = gen_lasso_data(spec);
  const CompositeProblem h(SmoothLoss::least_squares(d.a, d.b), Regularizer::half_norm(0.05));
  const CheckReport nc = check_descent_lemma(h, 0.5 / h.lipschitz(), 10000, 3, true);
  CHECK(nc.passed());
  CHECK(nc.hypothesis_met);
  // The convex form is not claimed for the half norm.
  CHECK_FALSE(check_descent_lemma(h, 0.5 / h.lipschitz(), 10, 3, false).hypothesis_met);
  CHECK(check_subgrad_bound(h, 0.5 / h.lipschitz(), 2000, 3).passed());
}

TEST_CASE("injected slack turns checks into failures") {
  const CompositeProblem& p = lasso130().problem;
  Tolerance strict;
  strict.inject = 1e3;
  CHECK_FALSE(check_descent_lemma(p, 1.0 / p.lipschitz(), 100, 0, false, strict).passed());
  CHECK_FALSE(check_alternated_descent(run(p, Method::AlternatedInertia, "fixed:0.5", 1.0 / p.lipschitz(), 40), false,
                                       strict)
                  .passed());
}

TEST_CASE("alternated descent along runs") {
  for (const CompositeProblem* p : {&lasso130().problem, &ionosphere_l1()}) {
    const double g = 1.0 / p->lipschitz();
    for (const char* s : {"fixed:0", "fixed:0.5", "fixed:0.99", "fixed:1", "nesterov", "power:3,0.8"}) {
      const CheckReport r = check_alternated_descent(run(*p, Method::AlternatedInertia, s, g, 1000));
      CHECK_MESSAGE(r.passed(), s);
      CHECK(r.hypothesis_met);
    }
  }
  const CompositeProblem& p = lasso130().problem;
  CHECK_FALSE(check_alternated_descent(run(p, Method::AlternatedInertia, "fixed:0.5", 1.5 / p.lipschitz(), 50))
                  .hypothesis_met);
}

TEST_CASE("Fejer monotonicity") {
  const CompositeProblem& p = lasso130().problem;
  const double g = 1.0 / p.lipschitz();
  for (const char* s : {"fixed:0", "fixed:0.25", "fixed:0.5"}) {
    const CheckReport r = check_fejer(run(p, Method::AlternatedInertia, s, g, 1000, true), lasso130_ref().point);
    CHECK_MESSAGE(r.passed(), s);
    CHECK(r.hypothesis_met);
  }
  const CheckReport gated = check_fejer(run(p, Method::AlternatedInertia, "fixed:0.9", g, 100, true), lasso130_ref().point);
  CHECK_FALSE(gated.hypothesis_met);
  CHECK_THROWS_AS(check_fejer(run(p, Method::AlternatedInertia, "fixed:0", g, 10), lasso130_ref().point), InvalidArgument);
}

TEST_CASE("alternated extrapolation rate") {
  const CompositeProblem q = random_quadratic(0);
  const ReferenceOptimum qref = compute_reference_optimum(q);
  const SolverTrace tq = run(q, Method::AlternatedExtrapolation, "nesterov", 1.0 / q.lipschitz(), 1000);
  CHECK(check_extrapolation_rate(tq, qref.point, qref.value).passed());
  CHECK(check_extrapolation_partial_sums(tq, qref.point, qref.value).passed());

  const CompositeProblem& p = lasso130().problem;
  const SolverTrace tl = run(p, Method::AlternatedExtrapolation, "nesterov", 1.0 / p.lipschitz(), 1000);
  CHECK(check_extrapolation_rate(tl, lasso130_ref().point, lasso130_ref().value).passed());
  CHECK(check_extrapolation_partial_sums(tl, lasso130_ref().point, lasso130_ref().value).passed());
}

TEST_CASE("strong convexity resilience") {
  const CompositeProblem& p = lasso130().problem;
  const SolverTrace t = run(p, Method::AlternatedInertia, "power:3,0.8", 1.0 / p.lipschitz(), 2000);
  const CheckReport r = check_strong_convexity_resilience(t, lasso130_ref().value);
  CHECK_MESSAGE(r.passed(), r.note);
  const ResilienceFit f = fit_tail(t, lasso130_ref().value);
  CHECK(f.exp_r_squared >= 0.99);
  CHECK(f.exp_sse < f.power_sse);
  CHECK(f.linear_factor < 1.0);
}

TEST_CASE("suite output is independent of the thread count") {
  std::vector<ProblemCase> fam = default_families(PROXALT_DATA_DIR "/ionosphere.data");
  fam.erase(fam.begin() + 2, fam.end());
  SuiteOptions o;
  o.seeds = {0, 1};
  o.samples = 200;
  o.run_budget = 200;
  o.threads = 1;
  std::ostringstream a, b;
  write_reports_csv(a, run_suite(fam, o));
  o.threads = 4;
  write_reports_csv(b, run_suite(fam, o));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("check,problem,seed,samples,violations,worst_slack,hypothesis_met,note\n", 0) == 0);
}
