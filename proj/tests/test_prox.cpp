#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "proxalt/experiment.hpp"
#include "proxalt/prox.hpp"

using namespace proxalt;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double half_objective(double t, double x, double tau) { return tau * std::sqrt(std::abs(t)) + 0.5 * (t - x) * (t - x); }

}  // namespace

TEST_CASE("prox_l1") {
  CHECK(prox_l1(vec({3}), 1.0) == vec({2}));
  CHECK(prox_l1(vec({0.5, -0.5}), 1.0) == vec({0, 0}));
  const double expect = oracle::l1_oracle(0.4, 1e-6)(-2.7);
  CHECK(prox_l1(vec({-2.7}), 0.4)(0) == doctest::Approx(expect).epsilon(1e-9));
  CHECK(prox_l1(vec({-2.7}), 0.4)(0) == doctest::Approx(-2.3).epsilon(1e-15));
}

TEST_CASE("prox_half examples") {
  CHECK(prox_half(vec({0}), 1.0) == vec({0}));
  CHECK(std::abs(prox_half(vec({100}), 1e-9)(0) - 100.0) <= 1e-6);

  const double expect = oracle::half_oracle(1.0, 1e-6)(2.0);
  const double got = prox_half_scalar(2.0, 1.0);
  CHECK(std::abs(got - expect) <= 1e-9);
  CHECK(got > 1.5);
}

TEST_CASE("prox_half jump threshold") {
  // Above |x| = 1.5 τ^{2/3} the prox jumps from 0 to a value of modulus 2|x|/3.
  for (double tau : {1e-3, 0.37, 1.0, 25.0}) {
    const double thr = 1.5 * std::pow(tau, 2.0 / 3.0);
    CHECK(prox_half_scalar(thr * (1.0 - 1e-9), tau) == 0.0);
    const double above = prox_half_scalar(thr * (1.0 + 1e-9), tau);
    CHECK(above == doctest::Approx(thr * 2.0 / 3.0).epsilon(1e-4));
    CHECK(prox_half_scalar(-thr * (1.0 + 1e-9), tau) == doctest::Approx(-above));
    // Never worse than either candidate it chose between.
    for (double x : {thr * 0.999, thr * 1.001}) {
      const double t = prox_half_scalar(x, tau);
      CHECK(half_objective(t, x, tau) <= half_objective(0.0, x, tau));
    }
  }
}

TEST_CASE("prox_half matches the 1-D oracle on random pairs") {
  Rng rng(17);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const double x = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -3.0 + 6.0 * rng.uniform());
    const double tau = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
    const double got = prox_half_scalar(x, tau);
    const double expect = oracle::half_oracle(tau)(x);
    CHECK(std::abs(got - expect) <= 1e-6);
    ++checked;
  }
  CHECK(checked == 2000);
}

TEST_CASE("prox dispatch scales by lambda") {
  const Vector x = vec({3, -0.2, 1.1});
  CHECK(prox(Regularizer::l1(0.5), x, 2.0) == prox_l1(x, 1.0));
  CHECK(prox(Regularizer::half_norm(0.5), x, 2.0) == prox_half(x, 1.0));
  CHECK(prox(Regularizer::zero(), x, 2.0) == x);
}

TEST_CASE("prox_gradient_step") {
  const CompositeProblem q = identity_quadratic(1);
  const ProxResult r = prox_gradient_step(q, vec({5}), 0.5);
  CHECK(r.output == vec({0}));
  CHECK(r.input == vec({5}));
  CHECK(r.step == 0.5);
  CHECK(residual(r) == 5.0);

  // Fixed points of the lasso step are left alone.
  LassoSpec spec;
  spec.m = 30;
  spec.n = 12;
  spec.lambda = 1.0;
  spec.seed = 2;
  const LassoInstance inst = gen_lasso(spec);
  const CompositeProblem& p = inst.problem;
  const double gamma = 1.0 / p.lipschitz();
  Vector x = Vector::Zero(12);
  for (int k = 0; k < 20000; ++k) x = prox_gradient_step(p, x, gamma).output;
  CHECK(p.dist_subgradient(x) <= 1e-12);
  const ProxResult fixed = prox_gradient_step(p, x, gamma);
  CHECK((fixed.output - x).norm() <= 1e-13);

  // Straight-line reimplementation on random points.
  Rng rng(8);
  const Matrix& a = p.loss().matrix();
  const Vector& b = p.loss().rhs();
  for (int i = 0; i < 50; ++i) {
    const Vector z = rng.normal_vector(12) * 3.0;
    const Vector expect = oracle::lasso_step(a, b, inst.lambda, z, gamma);
    const ProxResult got = prox_gradient_step(p, z, gamma);
    CHECK((got.output - expect).norm() <= 1e-12 * std::max(1.0, expect.norm()));
    CHECK(residual(got) == doctest::Approx((z - expect).norm()).epsilon(1e-12));
  }
}

TEST_CASE("prox_gradient_step errors") {
  const CompositeProblem q = identity_quadratic(2);
  CHECK_THROWS_AS(prox_gradient_step(q, vec({1, 2}), 0.0), InvalidArgument);
  CHECK_THROWS_AS(prox_gradient_step(q, vec({1, 2}), -1.0), InvalidArgument);
  CHECK_THROWS_AS(prox_gradient_step(q, vec({1}), 0.5), DimensionMismatch);
  CHECK_THROWS_AS(prox_gradient_step(q, vec({1, std::numeric_limits<double>::infinity()}), 0.5), NonFiniteGradient);
}
