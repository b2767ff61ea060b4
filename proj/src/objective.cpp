#include "proxalt/objective.hpp"

#include <algorithm>
#include <cmath>

#include "proxalt/errors.hpp"

namespace proxalt {
namespace {

constexpr double kLipschitzInflation = 1e-9;

void check_dim(const char* what, Index expected, const Vector& x) {
  if (x.size() != expected) throw DimensionMismatch(what, expected, x.size());
}

// log(1 + e^z) without overflow.
double log1pexp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

// 1 / (1 + e^{-z})
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

SmoothLoss::SmoothLoss(Kind kind, Matrix a, Vector rhs) : kind_(kind), a_(std::move(a)), rhs_(std::move(rhs)) {
  if (a_.rows() == 0 || a_.cols() == 0) throw InvalidArgument("loss: empty data matrix");
  if (!a_.allFinite()) throw InvalidArgument("loss: non-finite data matrix entries");
  if (!rhs_.allFinite()) throw InvalidArgument("loss: non-finite right-hand side");
  if (rhs_.size() != a_.rows()) throw DimensionMismatch("loss: right-hand side", a_.rows(), rhs_.size());

  const PowerIterationResult eig = gram_max_eigenvalue(a_);
  const double lmax = eig.eigenvalue + std::min(eig.residual, kLipschitzInflation * eig.eigenvalue);
  switch (kind_) {
    case Kind::LeastSquares:
      lipschitz_ = 2.0 * lmax;
      break;
    case Kind::Logistic:
      lipschitz_ = lmax / (4.0 * static_cast<double>(a_.rows()));
      break;
  }
}

SmoothLoss SmoothLoss::least_squares(Matrix a, Vector b) {
  return SmoothLoss(Kind::LeastSquares, std::move(a), std::move(b));
}

SmoothLoss SmoothLoss::logistic(Matrix a, Vector labels) {
  for (Index i = 0; i < labels.size(); ++i) {
    if (labels(i) != 1.0 && labels(i) != -1.0) {
      throw InvalidArgument("logistic loss: labels must be +1 or -1 (row " + std::to_string(i) + ")");
    }
  }
  return SmoothLoss(Kind::Logistic, std::move(a), std::move(labels));
}

double SmoothLoss::value(const Vector& x) const {
  check_dim("loss value", dim(), x);
  switch (kind_) {
    case Kind::LeastSquares:
      return (a_ * x - rhs_).squaredNorm();
    case Kind::Logistic: {
      const Vector margins = (a_ * x).cwiseProduct(rhs_);
      double sum = 0.0;
      for (Index i = 0; i < margins.size(); ++i) sum += log1pexp(-margins(i));
      return sum / static_cast<double>(a_.rows());
    }
  }
  return 0.0;
}

Vector SmoothLoss::gradient(const Vector& x) const {
  check_dim("loss gradient", dim(), x);
  switch (kind_) {
    case Kind::LeastSquares:
      return 2.0 * (a_.transpose() * (a_ * x - rhs_));
    case Kind::Logistic: {
      const Vector margins = (a_ * x).cwiseProduct(rhs_);
      Vector weights(margins.size());
      for (Index i = 0; i < margins.size(); ++i) weights(i) = -rhs_(i) * sigmoid(-margins(i));
      return (a_.transpose() * weights) / static_cast<double>(a_.rows());
    }
  }
  return {};
}

Regularizer Regularizer::l1(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("l1 regularizer: lambda must be positive");
  return Regularizer(Kind::L1, lambda);
}

Regularizer Regularizer::half_norm(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("half-norm regularizer: lambda must be positive");
  return Regularizer(Kind::HalfNorm, lambda);
}

double Regularizer::value(const Vector& x) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::L1:
      return lambda_ * x.lpNorm<1>();
    case Kind::HalfNorm:
      return lambda_ * x.cwiseAbs().cwiseSqrt().sum();
  }
  return 0.0;
}

CompositeProblem::CompositeProblem(SmoothLoss f, Regularizer g, std::optional<ReferenceOptimum> ref)
    : f_(std::move(f)), g_(g) {
  if (ref) *this = with_reference(std::move(*ref));
}

double CompositeProblem::value(const Vector& x) const { return f_.value(x) + g_.value(x); }

double CompositeProblem::dist_subgradient(const Vector& x) const {
  const Vector grad = f_.gradient(x);
  const double lambda = g_.lambda();
  double sq = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double gi = grad(i);
    const double xi = x(i);
    double c = 0.0;
    switch (g_.kind()) {
      case Regularizer::Kind::Zero:
        c = gi;
        break;
      case Regularizer::Kind::L1:
        c = xi != 0.0 ? gi + lambda * sign(xi) : std::max(std::abs(gi) - lambda, 0.0);
        break;
      case Regularizer::Kind::HalfNorm:
        c = xi != 0.0 ? gi + lambda * sign(xi) / (2.0 * std::sqrt(std::abs(xi))) : 0.0;
        break;
    }
    sq += c * c;
  }
  return std::sqrt(sq);
}

CompositeProblem CompositeProblem::with_reference(ReferenceOptimum ref) const {
  if (ref.point.size() != dim()) throw DimensionMismatch("reference optimum", dim(), ref.point.size());
  const double fv = value(ref.point);
  if (std::abs(fv - ref.value) > 1e-12 * std::max(1.0, std::abs(fv))) {
    throw InvalidArgument("reference optimum: stored value does not match F at the stored point");
  }
  CompositeProblem copy(*this);
  copy.ref_ = std::move(ref);
  return copy;
}

std::string to_string(SmoothLoss::Kind kind) {
  return kind == SmoothLoss::Kind::LeastSquares ? "least_squares" : "logistic";
}

std::string to_string(Regularizer::Kind kind) {
  switch (kind) {
    case Regularizer::Kind::Zero:
      return "zero";
    case Regularizer::Kind::L1:
      return "l1";
    case Regularizer::Kind::HalfNorm:
      return "half";
  }
  return "?";
}

}  // namespace proxalt
