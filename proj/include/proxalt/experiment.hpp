#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "proxalt/linalg.hpp"
#include "proxalt/objective.hpp"
#include "proxalt/solvers.hpp"

namespace proxalt {

/// Seeded generator with portable draws: 64-bit Mersenne Twister output is
/// fixed by the standard, and every distribution below is written out by hand
/// rather than taken from <random>, whose algorithms are implementation
/// defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by the Box-Muller transform.
  double normal();
  /// Uniform on {0, …, n − 1} by rejection. n must be positive.
  std::uint64_t below(std::uint64_t n);

  Vector normal_vector(Index n);
  /// Filled row by row.
  Matrix normal_matrix(Index rows, Index cols);
  /// k distinct indices from {0, …, n − 1} in increasing order.
  std::vector<Index> choose(Index n, Index k);

  /// Generator for an independent stream, derived from this one's seed
  /// material through splitmix64.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Synthetic lasso: A standard normal, x_true with ⌈sparsity·n⌉ standard
/// normal entries at random positions, b = A·x_true + noise.
struct LassoSpec {
  Index m = 130;
  Index n = 80;
  double sparsity = 0.10;
  double noise_std = 0.001;
  /// Empty means "auto": choose λ₁ so the solution support has the size of
  /// x_true's support.
  std::optional<double> lambda;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LassoInstance {
  CompositeProblem problem;
  Vector x_true;
  double lambda = 0.0;
  /// Bisection steps used by the automatic λ₁ search (0 when λ₁ was given).
  int lambda_steps = 0;
};

/// Data generation only: A, x_true and b.
struct LassoData {
  Matrix a;
  Vector x_true;
  Vector b;
};
LassoData gen_lasso_data(const LassoSpec& spec);

/// Throws ConvergenceFailure when the automatic λ₁ search does not find a
/// matching support within 60 bisection steps; the message carries the last
/// bracket.
LassoInstance gen_lasso(const LassoSpec& spec);

/// Support size of the lasso solution for a given λ₁, solved to a fixed-point
/// residual of 1e-12.
Index lasso_support_size(const Matrix& a, const Vector& b, double lambda, Vector* warm = nullptr);

/// ‖Ix − 0‖² + 0 in dimension n: L = 2, minimizer 0.
CompositeProblem identity_quadratic(Index n = 1);

/// ‖Ax − b‖² with A (m×n) and b standard normal, no regularizer.
CompositeProblem random_quadratic(std::uint64_t seed, Index m = 60, Index n = 40);

struct DatasetRecord {
  Matrix a;
  Vector labels;
  std::string provenance;
  std::vector<std::string> warnings;
};

/// UCI ionosphere layout: 34 comma-separated numbers then a 'g' or 'b' label
/// per line, mapped to +1 and −1. Blank lines are skipped. With `intercept`
/// a constant column of ones is appended. Sizes other than 351×34 are
/// accepted with a warning.
DatasetRecord load_ionosphere(const std::string& path, bool intercept = false);

/// $PROXALT_DATA/ionosphere.data when the variable is set, else the copy in
/// the source tree.
std::string default_ionosphere_path();

/// ℓ1 logistic regression (or any regularizer) on a loaded dataset.
CompositeProblem logistic_problem(const DatasetRecord& data, const Regularizer& g);

/// Standard normal starting point, drawn from a stream separate from the one
/// used to generate problems with the same seed.
Vector random_start(Index n, std::uint64_t seed);

/// CSV with header prox_evals,F,residual,dist_bound,dist_exact,tag. Numbers
/// use the shortest round-trip decimal form, tags are x or y.
void write_trace(const SolverTrace& trace, std::ostream& out);
void write_trace(const SolverTrace& trace, const std::string& path);
SolverTrace read_trace(std::istream& in, const std::string& name = "<stream>");
SolverTrace read_trace(const std::string& path);

}  // namespace proxalt
