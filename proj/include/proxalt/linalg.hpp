#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace proxalt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

struct PowerIterationOptions {
  double rel_tol = 1e-10;
  std::size_t max_iters = 100000;
};

struct PowerIterationResult {
  double eigenvalue = 0.0;
  std::size_t iterations = 0;
  /// ‖AᵀA v − λ v‖ at the final unit vector v; zero for an exact eigenpair.
  double residual = 0.0;
};

/// Largest eigenvalue of AᵀA by power iteration on the Gram matrix.
///
/// The start vector is the normalized all-ones vector, so the result is
/// deterministic. Iteration stops when the Rayleigh quotient changes by less
/// than `rel_tol` relative. Throws ConvergenceFailure after `max_iters` and
/// InvalidArgument when A is zero or has non-finite entries.
PowerIterationResult gram_max_eigenvalue(const Matrix& a, const PowerIterationOptions& opts = {});

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

}  // namespace proxalt
