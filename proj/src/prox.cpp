#include "proxalt/prox.hpp"

#include <cmath>
#include <numbers>

#include "proxalt/errors.hpp"

namespace proxalt {
namespace {

void require_positive_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("prox: threshold must be positive and finite");
}

// Largest root of s³ − p s + q on [lo, hi] where h(lo) ≤ 0 < h(hi).
double bisect_cubic_root(double p, double q, double lo, double hi) {
  auto h = [&](double s) { return s * (s * s - p) + q; };
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Vector prox_l1(const Vector& x, double tau) {
  require_positive_tau(tau);
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i)) - tau;
    out(i) = a > 0.0 ? std::copysign(a, x(i)) : 0.0;
  }
  return out;
}

double prox_half_scalar(double x, double tau) {
  require_positive_tau(tau);
  const double p = std::abs(x);
  if (p == 0.0) return 0.0;
  const double q = 0.5 * tau;

  // h(s) = s³ − p s + q has its positive local minimum at s₀ = √(p/3).
  const double s0 = std::sqrt(p / 3.0);
  if (s0 * (s0 * s0 - p) + q > 0.0) return 0.0;  // no positive stationary point

  const double smax = std::sqrt(p);
  const double arg = -(3.0 * tau / (4.0 * p)) * std::sqrt(3.0 / p);
  double s;
  if (arg <= -1.0 + 1e-6) {
    // Near the double root the trigonometric form loses accuracy.
    s = bisect_cubic_root(p, q, s0, smax);
  } else {
    s = 2.0 * s0 * std::cos(std::acos(arg) / 3.0);
    // Newton polish, kept inside the bracket.
    for (int it = 0; it < 3; ++it) {
      const double h = s * (s * s - p) + q;
      const double dh = 3.0 * s * s - p;
      if (dh <= 0.0) break;
      const double next = s - h / dh;
      if (!(next >= s0 && next <= smax)) break;
      s = next;
    }
  }

  const double t = s * s;
  const double candidate = tau * s + 0.5 * (t - p) * (t - p);
  const double at_zero = 0.5 * p * p;
  return candidate < at_zero ? std::copysign(t, x) : 0.0;
}

Vector prox_half(const Vector& x, double tau) {
  require_positive_tau(tau);
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out(i) = prox_half_scalar(x(i), tau);
  return out;
}

Vector prox(const Regularizer& g, const Vector& x, double tau) {
  switch (g.kind()) {
    case Regularizer::Kind::Zero:
      return x;
    case Regularizer::Kind::L1:
      return prox_l1(x, tau * g.lambda());
    case Regularizer::Kind::HalfNorm:
      return prox_half(x, tau * g.lambda());
  }
  return x;
}

ProxResult prox_gradient_step(const CompositeProblem& p, const Vector& x, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("prox-gradient step: step size must be positive");
  if (x.size() != p.dim()) throw DimensionMismatch("prox-gradient step", p.dim(), x.size());
  const Vector grad = p.loss().gradient(x);
  if (!grad.allFinite()) throw NonFiniteGradient(x);
  Vector out = prox(p.regularizer(), x - gamma * grad, gamma);
  return {x, std::move(out), gamma};
}

double residual(const ProxResult& r) { return (r.input - r.output).norm(); }

}  // namespace proxalt
