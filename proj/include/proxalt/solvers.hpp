#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proxalt/errors.hpp"
#include "proxalt/linalg.hpp"
#include "proxalt/objective.hpp"
#include "proxalt/schedule.hpp"

namespace proxalt {

enum class Method { Vanilla, Inertial, AlternatedInertia, AlternatedExtrapolation, Mfista };

/// Names used on the command line and in file names:
/// vanilla, fista, altinertia, altextrap, mfista.
std::string to_string(Method m);
/// Also accepts the aliases "inertial", "pg", "alternated-inertia" and
/// "alternated-extrapolation".
Method parse_method(std::string_view name);

struct SolverConfig {
  Method method = Method::Vanilla;
  double gamma = 0.0;
  InertiaSchedule schedule = InertiaSchedule::nesterov();
  std::size_t max_prox_evals = 1000;
  double stop_residual = 0.0;
  std::uint64_t seed = 0;
  /// Keep every recorded point in SolverTrace::points.
  bool store_points = false;
};

/// Which sequence a record's point belongs to.
enum class PointTag { X, Y };

struct TraceRecord {
  std::size_t prox_evals = 0;
  double F = 0.0;
  /// ‖input − output‖ of the prox-gradient step that produced this record.
  double residual = 0.0;
  /// ((Lγ + 1)/γ)·residual.
  double dist_bound = 0.0;
  /// dist(0, ∂F) at the output point of the step.
  double dist_exact = 0.0;
  PointTag tag = PointTag::X;

  bool operator==(const TraceRecord&) const = default;
};

/// One record per prox-gradient evaluation, preceded by the initial point at
/// prox_evals = 0.
///
/// Vanilla records x_k. The inertial and alternated methods record y_k, the
/// prox outputs. MFISTA records F(x_k) of the monotone sequence while the
/// residual and distance columns refer to the prox output z_k.
struct SolverTrace {
  std::vector<TraceRecord> records;
  Vector final_point;

  // Run metadata, not persisted by write_trace.
  Method method = Method::Vanilla;
  double gamma = 0.0;
  double lipschitz = 0.0;
  Vector initial_point;
  /// Inertia coefficient used per momentum step (per block for the
  /// alternated methods).
  std::vector<double> alphas;
  /// t-sequence values consumed by the run, t₀ first, when the schedule has one.
  std::vector<double> t_values;
  /// Present when SolverConfig::store_points was set; points[i] belongs to records[i].
  std::vector<Vector> points;
  std::size_t prox_calls = 0;
  /// Objective evaluations beyond one per record (MFISTA's descent tests).
  std::size_t extra_function_evals = 0;

  bool operator==(const SolverTrace& other) const { return records == other.records; }

  /// Indices of the records that form the monotone sequence: every other
  /// record (y_{2k}) for the alternated methods, all records otherwise.
  std::vector<std::size_t> monotone_indices() const;
};

/// A run produced a non-finite objective or gradient.
class DivergenceDetected : public Error {
 public:
  DivergenceDetected(TraceRecord last_finite, std::size_t prox_evals)
      : Error("divergence detected after " + std::to_string(prox_evals) + " prox-gradient evaluations"),
        last_(last_finite),
        prox_evals_(prox_evals) {}

  const TraceRecord& last_finite() const { return last_; }
  std::size_t prox_evals() const { return prox_evals_; }

 private:
  TraceRecord last_;
  std::size_t prox_evals_;
};

SolverTrace run_vanilla(const CompositeProblem& p, const SolverConfig& c, const Vector& x0);
SolverTrace run_inertial(const CompositeProblem& p, const SolverConfig& c, const Vector& x0);
SolverTrace run_alternated_inertia(const CompositeProblem& p, const SolverConfig& c, const Vector& x0);
/// Requires a schedule with a t-sequence.
SolverTrace run_alternated_extrapolation(const CompositeProblem& p, const SolverConfig& c, const Vector& x0);
SolverTrace run_mfista(const CompositeProblem& p, const SolverConfig& c, const Vector& x0);

/// Dispatches on c.method.
SolverTrace solve(const CompositeProblem& p, const SolverConfig& c, const Vector& x0);

/// True when `probe_iters` vanilla steps from x0 keep F finite and at most
/// 1e6·max(1, F(x0)).
bool step_admissible(const CompositeProblem& p, double gamma, std::size_t probe_iters, const Vector& x0);

/// Largest admissible step within 1% relative, found by doubling from 1/L and
/// then bisecting. x0 defaults to the all-ones vector, since zero is the
/// minimizer of the quadratic test problems and never diverges.
double gamma_max_search(const CompositeProblem& p, std::size_t probe_iters, std::optional<Vector> x0 = std::nullopt);

struct ReferenceOptions {
  double tol = 1e-13;
  std::size_t max_prox_evals = 1000000;
  /// Prox evaluations spent on an alternated-inertia warm start before the
  /// vanilla polish.
  std::size_t warm_start_evals = 20000;
};

/// Minimizer estimate: warm start with alternated inertia, then vanilla steps
/// with γ = 1/L (1/(2L) for a non-convex g) until the residual is at most
/// opts.tol. The returned value is F at the returned point. Throws
/// ConvergenceFailure when the budget runs out first.
ReferenceOptimum compute_reference_optimum(const CompositeProblem& p, const ReferenceOptions& opts = {},
                                           std::optional<Vector> x0 = std::nullopt);

/// `p` itself when it already has a reference optimum, otherwise a copy with
/// one computed on demand.
CompositeProblem ensure_reference(const CompositeProblem& p, const ReferenceOptions& opts = {});

}  // namespace proxalt
