#pragma once

#include <optional>
#include <string>

#include "proxalt/linalg.hpp"

namespace proxalt {

/// Smooth convex data-fidelity term f with a cached gradient Lipschitz bound.
///
///   LeastSquares: f(x) = ‖Ax − b‖²,                 L = 2 λ_max(AᵀA)
///   Logistic:     f(x) = (1/m) Σ log(1 + e^{−yᵢ⟨aᵢ,x⟩}), L = λ_max(AᵀA) / (4m)
///
/// λ_max comes from power iteration. Unless the final vector is an exact
/// eigenvector it is raised by min(residual, 1e-9·λ) so the cached constant
/// stays an upper bound.
class SmoothLoss {
 public:
  enum class Kind { LeastSquares, Logistic };

  static SmoothLoss least_squares(Matrix a, Vector b);
  /// `labels` must be ±1.
  static SmoothLoss logistic(Matrix a, Vector labels);

  Kind kind() const { return kind_; }
  Index dim() const { return a_.cols(); }
  Index samples() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }
  const Vector& rhs() const { return rhs_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  double lipschitz() const { return lipschitz_; }

 private:
  SmoothLoss(Kind kind, Matrix a, Vector rhs);

  Kind kind_;
  Matrix a_;
  Vector rhs_;  // b for least squares, labels for logistic
  double lipschitz_ = 0.0;
};

/// Separable regularizer g = λ·h with h ∈ {0, ‖·‖₁, Σ√|xᵢ|}.
class Regularizer {
 public:
  enum class Kind { Zero, L1, HalfNorm };

  static Regularizer zero() { return Regularizer(Kind::Zero, 0.0); }
  static Regularizer l1(double lambda);
  static Regularizer half_norm(double lambda);

  Kind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  bool convex() const { return kind_ != Kind::HalfNorm; }

  double value(const Vector& x) const;

 private:
  Regularizer(Kind kind, double lambda) : kind_(kind), lambda_(lambda) {}

  Kind kind_;
  double lambda_;
};

struct ReferenceOptimum {
  Vector point;
  double value = 0.0;
};

/// F = f + g.
class CompositeProblem {
 public:
  CompositeProblem(SmoothLoss f, Regularizer g, std::optional<ReferenceOptimum> ref = std::nullopt);

  const SmoothLoss& loss() const { return f_; }
  const Regularizer& regularizer() const { return g_; }
  Index dim() const { return f_.dim(); }
  double lipschitz() const { return f_.lipschitz(); }
  bool convex() const { return g_.convex(); }

  double value(const Vector& x) const;

  /// dist(0, ∂F(x)) computed coordinatewise. For the half norm the limiting
  /// subdifferential at a zero coordinate is all of ℝ, so such coordinates
  /// contribute nothing.
  double dist_subgradient(const Vector& x) const;

  const std::optional<ReferenceOptimum>& reference() const { return ref_; }
  /// Copy of this problem carrying `ref`; F(ref.point) must match ref.value
  /// within 1e-12 relative.
  CompositeProblem with_reference(ReferenceOptimum ref) const;

 private:
  SmoothLoss f_;
  Regularizer g_;
  std::optional<ReferenceOptimum> ref_;
};

std::string to_string(SmoothLoss::Kind kind);
std::string to_string(Regularizer::Kind kind);

}  // namespace proxalt
