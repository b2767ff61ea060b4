#pragma once

#include "proxalt/linalg.hpp"
#include "proxalt/objective.hpp"

namespace proxalt {

/// Soft thresholding: sign(xᵢ)·max(|xᵢ| − τ, 0).
Vector prox_l1(const Vector& x, double tau);

/// Global minimizer of t ↦ τ√|t| + ½(t − x)² for a scalar x.
///
/// Nonzero candidates solve s³ − |x|s + τ/2 = 0 with s = √|t|; the largest
/// root is the local minimizer. The candidate is kept only when its objective
/// is strictly below the value at t = 0, so the tie at the jump threshold
/// |x| = 1.5 τ^{2/3} resolves to zero.
double prox_half_scalar(double x, double tau);

/// Coordinatewise prox of τ Σ√|xᵢ|.
Vector prox_half(const Vector& x, double tau);

/// prox_{τg}(x) for the regularizer g = λh, i.e. the prox of h with threshold τλ.
Vector prox(const Regularizer& g, const Vector& x, double tau);

/// One application of T_γ(x) = prox_{γg}(x − γ∇f(x)).
struct ProxResult {
  Vector input;
  Vector output;
  double step = 0.0;
};

/// Throws NonFiniteGradient when ∇f(x) is not finite.
ProxResult prox_gradient_step(const CompositeProblem& p, const Vector& x, double gamma);

/// ‖input − output‖.
double residual(const ProxResult& r);

}  // namespace proxalt
