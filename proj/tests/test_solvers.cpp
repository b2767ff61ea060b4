#include <doctest.h>

#include <cmath>

#include "proxalt/experiment.hpp"
#include "proxalt/prox.hpp"
#include "proxalt/solvers.hpp"

using namespace proxalt;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

SolverConfig config(Method m, double gamma, std::size_t budget, InertiaSchedule s = InertiaSchedule::nesterov()) {
  SolverConfig c;
  c.method = m;
  c.gamma = gamma;
  c.max_prox_evals = budget;
  c.schedule = s;
  return c;
}

// Same numbers, ignoring which sequence the records are tagged with.
void check_same_values(const SolverTrace& a, const SolverTrace& b) {
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].prox_evals == b.records[i].prox_evals);
    // Near the optimum F jitters by a few ulps and MFISTA keeps the smaller value.
    CHECK(a.records[i].F == doctest::Approx(b.records[i].F).epsilon(1e-14));
    CHECK(a.records[i].residual == b.records[i].residual);
    CHECK(a.records[i].dist_exact == b.records[i].dist_exact);
  }
}

const LassoInstance& lasso130() {
  static const LassoInstance inst = gen_lasso(LassoSpec{});
  return inst;
}

const CompositeProblem& ionosphere_l1() {
  static const CompositeProblem p =
      logistic_problem(load_ionosphere(PROXALT_DATA_DIR "/ionosphere.data"), Regularizer::l1(0.1));
  return p;
}

}  // namespace

TEST_CASE("vanilla on the identity quadratic converges in one step") {
  const SolverTrace t = run_vanilla(identity_quadratic(1), config(Method::Vanilla, 0.5, 5), vec({7}));
  REQUIRE(t.records.size() >= 2);
  CHECK(t.records[0].prox_evals == 0);
  CHECK(t.records[0].F == 49.0);
  CHECK(t.records[1].F == 0.0);
  CHECK(t.final_point == vec({0}));
}

TEST_CASE("trace layout") {
  const CompositeProblem& p = lasso130().problem;
  const Vector x0 = random_start(p.dim(), 0);
  for (Method m : {Method::Vanilla, Method::Inertial, Method::AlternatedInertia, Method::AlternatedExtrapolation,
                   Method::Mfista}) {
    const SolverTrace t = solve(p, config(m, 1.0 / p.lipschitz(), 37), x0);
    CHECK(t.records.size() == 38);
    CHECK(t.prox_calls == 37);
    for (std::size_t i = 0; i < t.records.size(); ++i) CHECK(t.records[i].prox_evals == i);
    CHECK(t.records[0].F == p.value(x0));
    const double factor = 2.0 * p.lipschitz();  // (Lγ + 1)/γ at γ = 1/L
    for (std::size_t i = 1; i < t.records.size(); ++i) {
      CHECK(t.records[i].dist_bound == doctest::Approx(factor * t.records[i].residual).epsilon(1e-12));
    }
  }
}

TEST_CASE("vanilla is monotone and converges on convex problems") {
  const CompositeProblem& p = lasso130().problem;
  SolverConfig c = config(Method::Vanilla, 1.0 / p.lipschitz(), 100000);
  c.stop_residual = 1e-12;
  const SolverTrace t = run_vanilla(p, c, Vector::Zero(p.dim()));
  for (std::size_t i = 1; i < t.records.size(); ++i) CHECK(t.records[i].F <= t.records[i - 1].F * (1.0 + 1e-14));
  CHECK(p.dist_subgradient(t.final_point) <= 1e-8);

  const CompositeProblem& q = ionosphere_l1();
  const SolverTrace u = run_vanilla(q, config(Method::Vanilla, 1.0 / q.lipschitz(), 2000), Vector::Zero(q.dim()));
  for (std::size_t i = 1; i < u.records.size(); ++i) CHECK(u.records[i].F <= u.records[i - 1].F * (1.0 + 1e-14));
}

TEST_CASE("zero inertia reduces to vanilla") {
  const CompositeProblem& p = lasso130().problem;
  const Vector x0 = random_start(p.dim(), 3);
  const double g = 1.0 / p.lipschitz();
  const SolverTrace v = run_vanilla(p, config(Method::Vanilla, g, 300), x0);
  check_same_values(v, run_inertial(p, config(Method::Inertial, g, 300, InertiaSchedule::fixed(0.0)), x0));
  check_same_values(v, run_alternated_inertia(p, config(Method::AlternatedInertia, g, 300, InertiaSchedule::fixed(0.0)), x0));
  check_same_values(v, run_mfista(p, config(Method::Mfista, g, 300, InertiaSchedule::fixed(0.0)), x0));
}

TEST_CASE("FISTA stays under the standard envelope on a convex quadratic") {
  const CompositeProblem p = random_quadratic(2);
  const ReferenceOptimum ref = compute_reference_optimum(p);
  const Vector x0 = random_start(p.dim(), 2);
  const double gamma = 1.0 / p.lipschitz();
  const SolverTrace t = run_inertial(p, config(Method::Inertial, gamma, 2000), x0);
  const double r0 = (x0 - ref.point).squaredNorm();
  for (std::size_t k = 1; k < t.records.size(); ++k) {
    const double k1 = static_cast<double>(k) + 1.0;
    CHECK(t.records[k].F - ref.value <= 2.0 * p.lipschitz() * r0 / (k1 * k1) + 1e-12);
  }
}

TEST_CASE("FISTA oscillates on ionosphere at gamma_max / 8") {
  const CompositeProblem& p = ionosphere_l1();
  const Vector x0 = random_start(p.dim(), 0);
  const double gmax = gamma_max_search(p, 1000, x0);
  CHECK(gmax > 1.0 / p.lipschitz());
  const SolverTrace t = run_inertial(p, config(Method::Inertial, gmax / 8.0, 1000), x0);
  std::size_t increases = 0;
  for (std::size_t i = 1; i < t.records.size(); ++i) increases += t.records[i].F > t.records[i - 1].F ? 1 : 0;
  CHECK(increases >= 1);
}

TEST_CASE("alternated inertia is monotone on the even subsequence") {
  for (const CompositeProblem* p : {&lasso130().problem, &ionosphere_l1()}) {
    const Vector x0 = random_start(p->dim(), 1);
    for (const char* s : {"fixed:0", "fixed:0.5", "fixed:1", "nesterov", "power:3,0.8"}) {
      const SolverTrace t = run_alternated_inertia(
          *p, config(Method::AlternatedInertia, 1.0 / p->lipschitz(), 1000, InertiaSchedule::parse(s)), x0);
      const std::vector<std::size_t> idx = t.monotone_indices();
      for (std::size_t i = 1; i < idx.size(); ++i) {
        CHECK(t.records[idx[i]].F <= t.records[idx[i - 1]].F + 1e-12 * std::abs(t.records[idx[i - 1]].F));
      }
    }
  }
}

TEST_CASE("alternated inertia consumes one coefficient per block") {
  const CompositeProblem& p = lasso130().problem;
  const SolverTrace t = run_alternated_inertia(
      p, config(Method::AlternatedInertia, 1.0 / p.lipschitz(), 10, InertiaSchedule::nesterov()), random_start(80, 0));
  CHECK(t.alphas.size() == 5);
  CHECK(t.alphas == alpha_sequence(InertiaSchedule::nesterov(), 5));
  CHECK(t.monotone_indices() == std::vector<std::size_t>{0, 2, 4, 6, 8, 10});
}

TEST_CASE("alternated extrapolation starts with a degenerate step") {
  const CompositeProblem& p = lasso130().problem;
  const Vector x0 = random_start(p.dim(), 0);
  const double g = 1.0 / p.lipschitz();
  SolverConfig c = config(Method::AlternatedExtrapolation, g, 4);
  c.store_points = true;
  const SolverTrace t = run_alternated_extrapolation(p, c, x0);
  // x₁ = y₀, so y₂ = T(y₀) = y₁.
  CHECK((t.points[2] - t.points[1]).norm() <= 1e-12 * t.points[1].norm());
  CHECK(t.points[1] == prox_gradient_step(p, x0, g).output);
  CHECK_THROWS_AS(run_alternated_extrapolation(p, config(Method::AlternatedExtrapolation, g, 4, InertiaSchedule::fixed(0.3)), x0),
                  InvalidArgument);
}

TEST_CASE("MFISTA") {
  const CompositeProblem& p = lasso130().problem;
  const Vector x0 = random_start(p.dim(), 0);
  const double g = 1.0 / p.lipschitz();
  const SolverTrace m = run_mfista(p, config(Method::Mfista, g, 500), x0);
  for (std::size_t i = 1; i < m.records.size(); ++i) CHECK(m.records[i].F <= m.records[i - 1].F);

  // Sanity band against the two methods it interpolates.
  const ReferenceOptimum ref = compute_reference_optimum(p);
  const double e_m = m.records.back().F - ref.value;
  const double e_v = run_vanilla(p, config(Method::Vanilla, g, 500), x0).records.back().F - ref.value;
  const SolverTrace fista = run_inertial(p, config(Method::Inertial, g, 500), x0);
  double best_fista = fista.records[0].F;
  for (const TraceRecord& r : fista.records) best_fista = std::min(best_fista, r.F);
  const double e_f = best_fista - ref.value;
  CHECK(e_m <= std::max(e_v, e_f) * (1.0 + 1e-9) + 1e-12);
  CHECK(e_m >= std::min(e_v, e_f) * (1.0 - 1e-9) - 1e-12);

  // As long as z improves, MFISTA and FISTA coincide.
  std::size_t monotone = 1;
  while (monotone < fista.records.size() && fista.records[monotone].F <= fista.records[monotone - 1].F) ++monotone;
  REQUIRE(monotone > 5);
  const SolverTrace prefix = run_mfista(p, config(Method::Mfista, g, monotone - 1), x0);
  for (std::size_t i = 0; i < prefix.records.size(); ++i) CHECK(prefix.records[i].F == fista.records[i].F);
  CHECK(prefix.extra_function_evals == 0);
}

TEST_CASE("divergence is reported") {
  const CompositeProblem q = identity_quadratic(3);
  try {
    run_vanilla(q, config(Method::Vanilla, 10.0, 100000), Vector::Ones(3));
    FAIL("expected DivergenceDetected");
  } catch (const DivergenceDetected& e) {
    CHECK(std::isfinite(e.last_finite().F));
    CHECK(e.prox_evals() > 10);
    CHECK(e.prox_evals() < 1000);
  }
}

TEST_CASE("stopping on the residual") {
  const CompositeProblem& p = lasso130().problem;
  SolverConfig c = config(Method::AlternatedInertia, 1.0 / p.lipschitz(), 100000, InertiaSchedule::power(3, 0.8));
  c.stop_residual = 1e-9;
  const SolverTrace t = run_alternated_inertia(p, c, Vector::Zero(p.dim()));
  CHECK(t.records.back().residual <= 1e-9);
  for (std::size_t i = 1; i + 1 < t.records.size(); ++i) CHECK(t.records[i].residual > 1e-9);
}

TEST_CASE("gamma_max_search") {
  const double g = gamma_max_search(identity_quadratic(1), 1000);
  CHECK(g == doctest::Approx(1.0).epsilon(0.02));

  LassoSpec spec;
  spec.m = 50;
  spec.n = 30;
  spec.lambda = 1.0;
  spec.seed = 9;
  const CompositeProblem p = gen_lasso(spec).problem;
  const Vector x0 = Vector::Ones(30);
  const double gmax = gamma_max_search(p, 1000, x0);
  CHECK(step_admissible(p, gmax, 1000, x0));
  CHECK_FALSE(step_admissible(p, 1.05 * gmax, 1000, x0));
  CHECK_THROWS_AS(gamma_max_search(p, 10), InvalidArgument);
}

TEST_CASE("reference optimum") {
  const CompositeProblem& p = lasso130().problem;
  const ReferenceOptimum ref = compute_reference_optimum(p);
  CHECK(p.dist_subgradient(ref.point) <= 1e-9);
  CHECK(residual(prox_gradient_step(p, ref.point, 1.0 / p.lipschitz())) <= 1e-13);
  const CompositeProblem with = ensure_reference(p);
  REQUIRE(with.reference().has_value());
  CHECK(with.reference()->value == ref.value);

  ReferenceOptions tiny;
  tiny.warm_start_evals = 0;
  tiny.max_prox_evals = 3;
  CHECK_THROWS_AS(compute_reference_optimum(p, tiny), ConvergenceFailure);
}

TEST_CASE("runs are deterministic") {
  const CompositeProblem& p = ionosphere_l1();
  const Vector x0 = random_start(p.dim(), 4);
  for (Method m : {Method::Vanilla, Method::Inertial, Method::AlternatedInertia, Method::AlternatedExtrapolation,
                   Method::Mfista}) {
    const SolverConfig c = config(m, 1.0 / p.lipschitz(), 200);
    CHECK(solve(p, c, x0) == solve(p, c, x0));
  }
}

TEST_CASE("configuration errors") {
  const CompositeProblem q = identity_quadratic(2);
  CHECK_THROWS_AS(run_vanilla(q, config(Method::Vanilla, 0.0, 10), Vector::Ones(2)), InvalidArgument);
  CHECK_THROWS_AS(run_vanilla(q, config(Method::Vanilla, 0.5, 0), Vector::Ones(2)), InvalidArgument);
  CHECK_THROWS_AS(run_vanilla(q, config(Method::Vanilla, 0.5, 10), Vector::Ones(3)), DimensionMismatch);
  CHECK(parse_method("pg") == Method::Vanilla);
  CHECK(parse_method("alternated-extrapolation") == Method::AlternatedExtrapolation);
  CHECK_THROWS_AS(parse_method("adam"), InvalidArgument);
}
