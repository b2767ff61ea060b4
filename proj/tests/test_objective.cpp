#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "proxalt/experiment.hpp"
#include "proxalt/objective.hpp"
#include "proxalt/solvers.hpp"

using namespace proxalt;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

SmoothLoss random_logistic(std::uint64_t seed, Index m, Index n) {
  Rng rng(seed);
  Matrix a = rng.normal_matrix(m, n);
  Vector y(m);
  for (Index i = 0; i < m; ++i) y(i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return SmoothLoss::logistic(a, y);
}

}  // namespace

TEST_CASE("loss values") {
  const SmoothLoss ls = SmoothLoss::least_squares(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(ls.value(vec({1, 1})) == 2.0);

  const SmoothLoss lg = random_logistic(3, 7, 4);
  CHECK(lg.value(Vector::Zero(4)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  Rng rng(11);
  const Matrix a = rng.normal_matrix(5, 3);
  const Vector b = rng.normal_vector(5);
  const Vector x = rng.normal_vector(3);
  const SmoothLoss r = SmoothLoss::least_squares(a, b);
  const double expect = oracle::least_squares_sum(a, b, x);
  CHECK(std::abs(r.value(x) - expect) <= 1e-12 * std::abs(expect));
}

TEST_CASE("logistic value is stable for large margins") {
  Matrix a(2, 1);
  a << 1.0, -1.0;
  const SmoothLoss lg = SmoothLoss::logistic(a, vec({1, 1}));
  const double v = lg.value(vec({800}));
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(400.0));
  CHECK(lg.gradient(vec({800})).allFinite());
}

TEST_CASE("loss gradients") {
  const SmoothLoss ls = SmoothLoss::least_squares(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(ls.gradient(vec({1, -1})) == vec({2, -2}));

  Rng rng(5);
  const Matrix a = rng.normal_matrix(9, 4);
  Vector y(9);
  for (Index i = 0; i < 9; ++i) y(i) = i % 3 == 0 ? 1.0 : -1.0;
  const SmoothLoss lg = SmoothLoss::logistic(a, y);
  Vector expect = Vector::Zero(4);
  for (Index i = 0; i < 9; ++i) expect -= y(i) * a.row(i).transpose();
  expect /= 2.0 * 9.0;
  CHECK((lg.gradient(Vector::Zero(4)) - expect).norm() <= 1e-15);

  // Central differences on both losses.
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = rng.normal_vector(4);
    const Vector fd = oracle::fd_gradient([&](const Vector& z) { return lg.value(z); }, x);
    CHECK((lg.gradient(x) - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
  }
}

TEST_CASE("lipschitz constants") {
  // L may exceed 2λmax by the power-iteration residual, capped at 1e-9 relative.
  const double li = SmoothLoss::least_squares(Matrix::Identity(3, 3), Vector::Zero(3)).lipschitz();
  CHECK(li >= 2.0 * (1.0 - 1e-15));
  CHECK(li <= 2.0 * (1.0 + 2e-9));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const double ld = SmoothLoss::least_squares(d, Vector::Zero(2)).lipschitz();
  CHECK(ld >= 8.0);
  CHECK(ld <= 8.0 * (1.0 + 2e-9));

  Rng rng(21);
  const Matrix a = rng.normal_matrix(20, 10);
  const double exact = 2.0 * oracle::gram_lambda_max(a);
  const double l = SmoothLoss::least_squares(a, Vector::Zero(20)).lipschitz();
  CHECK(std::abs(l - exact) <= 1e-8 * exact);
  CHECK(l >= exact * (1.0 - 1e-12));

  const SmoothLoss lg = SmoothLoss::logistic(a, Vector::Ones(20));
  const double exact_lg = oracle::gram_lambda_max(a) / (4.0 * 20.0);
  CHECK(std::abs(lg.lipschitz() - exact_lg) <= 1e-8 * exact_lg);
}

TEST_CASE("regularizer values") {
  CHECK(Regularizer::l1(0.1).value(vec({1, -2})) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(Regularizer::half_norm(1.0).value(vec({4})) == 2.0);
  CHECK(Regularizer::zero().value(vec({3, -7, 1e9})) == 0.0);
  CHECK_THROWS_AS(Regularizer::l1(-1.0), InvalidArgument);
  CHECK_THROWS_AS(Regularizer::half_norm(std::nan("")), InvalidArgument);
}

TEST_CASE("dist_subgradient") {
  const CompositeProblem q(SmoothLoss::least_squares(Matrix::Identity(2, 2), Vector::Zero(2)), Regularizer::zero());
  CHECK(q.dist_subgradient(vec({1, -1})) == doctest::Approx(std::sqrt(8.0)));

  // ∇f(0) = 2(0 − b) = 0.05 sits inside λ[−1, 1].
  Matrix one(1, 1);
  one << 1.0;
  const CompositeProblem p(SmoothLoss::least_squares(one, vec({-0.025})), Regularizer::l1(0.1));
  CHECK(p.dist_subgradient(vec({0})) == 0.0);

  const CompositeProblem h(SmoothLoss::least_squares(one, vec({5})), Regularizer::half_norm(1.0));
  CHECK(h.dist_subgradient(vec({0})) == 0.0);
  // At t = 4: 2(4 − 5) + 1/(2·2) = −1.75.
  CHECK(h.dist_subgradient(vec({4})) == doctest::Approx(1.75));
}

TEST_CASE("dist_subgradient vanishes at a converged lasso point") {
  LassoSpec spec;
  spec.m = 40;
  spec.n = 25;
  spec.lambda = 2.0;
  spec.seed = 4;
  const LassoInstance inst = gen_lasso(spec);
  SolverConfig c;
  c.gamma = 1.0 / inst.problem.lipschitz();
  c.max_prox_evals = 200000;
  c.stop_residual = 1e-12;
  const SolverTrace t = run_vanilla(inst.problem, c, Vector::Zero(25));
  CHECK(inst.problem.dist_subgradient(t.final_point) <= 1e-6);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(SmoothLoss::least_squares(Matrix::Identity(2, 2), Vector::Zero(3)), DimensionMismatch);
  CHECK_THROWS_AS(SmoothLoss::logistic(Matrix::Identity(2, 2), vec({1, 0.5})), InvalidArgument);
  const SmoothLoss ls = SmoothLoss::least_squares(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK_THROWS_AS(ls.value(Vector::Zero(3)), DimensionMismatch);
  const CompositeProblem p(ls, Regularizer::zero());
  CHECK_THROWS_AS(p.with_reference({Vector::Zero(2), 1.0}), InvalidArgument);
  CHECK(p.with_reference({Vector::Zero(2), 0.0}).reference().has_value());
}
