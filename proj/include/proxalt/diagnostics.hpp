#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "proxalt/objective.hpp"
#include "proxalt/solvers.hpp"

namespace proxalt {

struct CheckReport {
  std::string check_name;
  std::string problem;
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// Smallest rhs − lhs seen (positive means every inequality held strictly).
  double worst_slack = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  /// False when the inputs fall outside the hypotheses of the inequality; no
  /// sample is asserted then.
  bool hypothesis_met = true;
  std::string note;

  bool passed() const { return violations == 0; }
};

/// An inequality lhs ≤ rhs counts as violated when rhs − lhs < inject − rel·scale.
/// `inject` is zero in normal use; a positive value tightens every check and
/// exists to exercise the failure path.
struct Tolerance {
  double rel = 1e-9;
  double inject = 0.0;
};

/// Lemma checks sample standard normal pairs (x, y) scaled by radii cycling
/// through 0.1, 1 and 10.

/// ‖Tx − Ty‖² + ((1 − ν)/ν)‖(x − Tx) − (y − Ty)‖² ≤ ‖x − y‖² with
/// ν = 2/(1 + 2 min{1, 1/(γL)}). Slack scale 1 + ‖x − y‖². Requires convex g
/// and γ ∈ (0, 2/L).
CheckReport check_contraction(const CompositeProblem& p, double gamma, std::size_t n_samples, std::uint64_t seed,
                              const Tolerance& tol = {});

/// Convex form: F(Tx) + ((1−γL)/(2γ))‖Tx−x‖² + (1/(2γ))‖Tx−y‖² ≤ F(y) + (1/(2γ))‖x−y‖².
/// The non-convex form drops the ‖Tx − y‖² term and also holds for the half
/// norm. Slack scale max(1, |lhs|, |rhs|).
CheckReport check_descent_lemma(const CompositeProblem& p, double gamma, std::size_t n_samples, std::uint64_t seed,
                                bool nonconvex, const Tolerance& tol = {});

/// dist(0, ∂F(Tx)) ≤ ((Lγ + 1)/γ)‖x − Tx‖. Slack scale max(1, rhs).
CheckReport check_subgrad_bound(const CompositeProblem& p, double gamma, std::size_t n_samples, std::uint64_t seed,
                                const Tolerance& tol = {});

/// All applicable lemma checks on one shared set of samples: contraction and
/// the convex descent form when g is convex, the non-convex descent form and
/// the subgradient bound always.
std::vector<CheckReport> check_lemmas(const CompositeProblem& p, const std::string& problem_name, double gamma,
                                      std::size_t n_samples, std::uint64_t seed, const Tolerance& tol = {});

/// Both descent inequalities of an alternated-inertia run, for every block:
///   F(y_{k+2}) ≤ F(y_k) − ((c − α_k − γL)/(2γ))·[‖y_{k+2} − x_{k+1}‖² + ‖y_{k+1} − x_k‖²]
///   F(y_{k+2}) ≤ F(y_k) − ((c − α_k − γL)γ/(2(1 + γL)²))·dist(0, ∂F(y_{k+2}))²
/// with c = 2, or c = 1 for `nonconvex`. Slack scale max(1, |F(y_k)|).
/// Hypotheses: γ ≤ 1/L and α ∈ [0, 1]; with `nonconvex`, γ ≤ 1/(2L) and α ≤ 1/2.
CheckReport check_alternated_descent(const SolverTrace& trace, bool nonconvex = false, const Tolerance& tol = {});

/// ‖y_{2k+2} − x⋆‖ ≤ ‖y_{2k} − x⋆‖ + 1e-10 along the monotone subsequence.
/// Needs stored points. Hypothesis: every α ≤ min{1, 1/(γL)} − 1/2.
CheckReport check_fejer(const SolverTrace& trace, const Vector& x_star, const Tolerance& tol = {});

/// F(y_k) − F⋆ ≤ ‖x₀ − x⋆‖²/(2γ t²_{⌊k/2⌋}) + 1e-12 for odd k ≥ 3, on an
/// alternated-extrapolation trace.
CheckReport check_extrapolation_rate(const SolverTrace& trace, const Vector& x_star, double f_star,
                                     const Tolerance& tol = {});

/// t_J²(F(y_{2J}) − F⋆) + (1/(2γ)) Σ_{ℓ<J} t_ℓ²‖T(y_{2ℓ}) − y_{2ℓ}‖² ≤ ‖x₀ − x⋆‖²/(2γ)
/// for every J ≥ 1. Slack scale max(1, rhs).
CheckReport check_extrapolation_partial_sums(const SolverTrace& trace, const Vector& x_star, double f_star,
                                             const Tolerance& tol = {});

struct ResilienceFit {
  double exp_r_squared = 0.0;
  double power_r_squared = 0.0;
  double exp_sse = 0.0;
  double power_sse = 0.0;
  /// exp(slope) of log(F − F⋆) against the record index.
  double linear_factor = 0.0;
  std::size_t points = 0;
};

/// Fits log(F − F⋆) on the tail half of the monotone records with
/// F − F⋆ ≥ floor, once against k (exponential) and once against log k
/// (power law).
ResilienceFit fit_tail(const SolverTrace& trace, double f_star, double floor = 1e-12);

/// Passes when the exponential fit has R² ≥ 0.99 and a smaller residual than
/// the power-law fit.
CheckReport check_strong_convexity_resilience(const SolverTrace& trace, double f_star, double floor = 1e-12);

/// A problem with the step used for its checks.
struct ProblemCase {
  std::string name;
  CompositeProblem problem;
  double gamma = 0.0;
};

/// quadratic (60×40, g = 0), lasso130x80, lasso85x80, logistic-l1 (λ₁ = 0.1),
/// logistic-half (λ = 0.002), lasso-half (130×80, λ = 0.05). Convex cases use
/// γ = 1/L, half-norm cases γ = 1/(2L).
std::vector<ProblemCase> default_families(const std::string& ionosphere_path);

struct SuiteOptions {
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::size_t samples = 10000;
  /// "lemmas", "theorems" or "all".
  std::string selector = "all";
  /// Multiplies every family's step.
  double gamma_scale = 1.0;
  /// Prox-evaluation budget of the runs behind the theorem checks.
  std::size_t run_budget = 1000;
  unsigned threads = 0;  // 0: hardware concurrency
  Tolerance tol;
};

/// Runs the selected checks concurrently. The output order depends only on
/// the inputs.
std::vector<CheckReport> run_suite(const std::vector<ProblemCase>& families, const SuiteOptions& opts);

void write_reports_csv(std::ostream& out, const std::vector<CheckReport>& reports);

}  // namespace proxalt
