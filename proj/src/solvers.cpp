#include "proxalt/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "proxalt/prox.hpp"

namespace proxalt {
namespace {

void validate(const CompositeProblem& p, const SolverConfig& c, const Vector& x0) {
  if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) throw InvalidArgument("solver: step size must be positive and finite");
  if (c.max_prox_evals < 1) throw InvalidArgument("solver: prox-evaluation budget must be at least 1");
  if (!(c.stop_residual >= 0.0)) throw InvalidArgument("solver: stopping residual must be nonnegative");
  if (x0.size() != p.dim()) throw DimensionMismatch("solver initial point", p.dim(), x0.size());
  if (!x0.allFinite()) throw InvalidArgument("solver: initial point has non-finite entries");
}

// Shared bookkeeping: prox calls, record emission, divergence and stopping.
class Run {
 public:
  Run(const CompositeProblem& p, const SolverConfig& c, const Vector& x0, PointTag tag)
      : p_(p), c_(c), tag_(tag), bound_factor_((p.lipschitz() * c.gamma + 1.0) / c.gamma) {
    validate(p, c, x0);
    trace_.method = c.method;
    trace_.gamma = c.gamma;
    trace_.lipschitz = p.lipschitz();
    trace_.initial_point = x0;
    const double f0 = p.value(x0);
    if (!std::isfinite(f0)) throw InvalidArgument("solver: objective is not finite at the initial point");
    const double d0 = p.dist_subgradient(x0);
    push({0, f0, 0.0, d0, d0, tag_}, x0);
  }

  ProxResult step(const Vector& x) {
    try {
      ProxResult r = prox_gradient_step(p_, x, c_.gamma);
      ++trace_.prox_calls;
      return r;
    } catch (const NonFiniteGradient&) {
      throw DivergenceDetected(trace_.records.back(), trace_.prox_calls);
    }
  }

  // Records the point produced by `r`, with its objective value `f`.
  void record(const ProxResult& r, const Vector& point, double f) {
    if (!std::isfinite(f) || !r.output.allFinite()) throw DivergenceDetected(trace_.records.back(), trace_.prox_calls);
    const double res = residual(r);
    last_residual_ = res;
    push({trace_.prox_calls, f, res, bound_factor_ * res, p_.dist_subgradient(r.output), tag_}, point);
  }

  void record(const ProxResult& r) { record(r, r.output, p_.value(r.output)); }

  bool done() const { return trace_.prox_calls >= c_.max_prox_evals || last_residual_ <= c_.stop_residual; }

  SolverTrace finish(Vector final_point) {
    trace_.final_point = std::move(final_point);
    return std::move(trace_);
  }

  SolverTrace& trace() { return trace_; }

 private:
  void push(const TraceRecord& rec, const Vector& point) {
    trace_.records.push_back(rec);
    if (c_.store_points) trace_.points.push_back(point);
  }

  const CompositeProblem& p_;
  const SolverConfig& c_;
  PointTag tag_;
  double bound_factor_;
  double last_residual_ = std::numeric_limits<double>::infinity();
  SolverTrace trace_;
};

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Vanilla:
      return "vanilla";
    case Method::Inertial:
      return "fista";
    case Method::AlternatedInertia:
      return "altinertia";
    case Method::AlternatedExtrapolation:
      return "altextrap";
    case Method::Mfista:
      return "mfista";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "vanilla" || name == "pg") return Method::Vanilla;
  if (name == "fista" || name == "inertial") return Method::Inertial;
  if (name == "altinertia" || name == "alternated-inertia") return Method::AlternatedInertia;
  if (name == "altextrap" || name == "alternated-extrapolation") return Method::AlternatedExtrapolation;
  if (name == "mfista") return Method::Mfista;
  throw InvalidArgument("unknown method '" + std::string(name) +
                        "' (expected vanilla, fista, altinertia, altextrap or mfista)");
}

std::vector<std::size_t> SolverTrace::monotone_indices() const {
  const bool alternated = method == Method::AlternatedInertia || method == Method::AlternatedExtrapolation;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); i += alternated ? 2 : 1) out.push_back(i);
  return out;
}

SolverTrace run_vanilla(const CompositeProblem& p, const SolverConfig& c, const Vector& x0) {
  Run run(p, c, x0, PointTag::X);
  Vector x = x0;
  while (!run.done()) {
    ProxResult r = run.step(x);
    run.record(r);
    x = std::move(r.output);
  }
  return run.finish(std::move(x));
}

SolverTrace run_inertial(const CompositeProblem& p, const SolverConfig& c, const Vector& x0) {
  Run run(p, c, x0, PointTag::Y);
  InertiaSchedule schedule = c.schedule;
  schedule.reset();
  if (schedule.has_t_sequence()) run.trace().t_values.push_back(0.0);

  Vector x = x0;
  Vector y_prev = x0;
  while (!run.done()) {
    ProxResult r = run.step(x);
    run.record(r);
    const double alpha = schedule.next_alpha();
    run.trace().alphas.push_back(alpha);
    if (schedule.has_t_sequence()) run.trace().t_values.push_back(schedule.current_t());
    x = r.output + alpha * (r.output - y_prev);
    y_prev = std::move(r.output);
  }
  return run.finish(std::move(y_prev));
}

SolverTrace run_alternated_inertia(const CompositeProblem& p, const SolverConfig& c, const Vector& x0) {
  Run run(p, c, x0, PointTag::Y);
  InertiaSchedule schedule = c.schedule;
  schedule.reset();
  if (schedule.has_t_sequence()) run.trace().t_values.push_back(0.0);

  Vector y = x0;  // y_k for even k, which equals x_k
  while (!run.done()) {
    // Inertial half of the block.
    ProxResult r1 = run.step(y);
    run.record(r1);
    const double alpha = schedule.next_alpha();
    run.trace().alphas.push_back(alpha);
    if (schedule.has_t_sequence()) run.trace().t_values.push_back(schedule.current_t());
    if (run.done()) return run.finish(std::move(r1.output));
    const Vector x_odd = r1.output + alpha * (r1.output - y);

    // Plain half of the block.
    ProxResult r2 = run.step(x_odd);
    run.record(r2);
    y = std::move(r2.output);
  }
  return run.finish(std::move(y));
}

SolverTrace run_alternated_extrapolation(const CompositeProblem& p, const SolverConfig& c, const Vector& x0) {
  if (!c.schedule.has_t_sequence()) {
    throw InvalidArgument("alternated extrapolation needs a schedule with a t-sequence (nesterov, linear or power)");
  }
  Run run(p, c, x0, PointTag::Y);
  InertiaSchedule schedule = c.schedule;
  schedule.reset();
  run.trace().t_values.push_back(0.0);

  Vector y = x0;       // y_k, k even
  Vector y_prev = x0;  // y_{k-1}
  while (!run.done()) {
    const double t_j = schedule.current_t();
    const double t_next = schedule.advance_t();
    run.trace().t_values.push_back(t_next);
    run.trace().alphas.push_back((t_j - 1.0) / t_next);

    ProxResult r1 = run.step(y);
    run.record(r1);
    if (run.done()) return run.finish(std::move(r1.output));
    const Vector& y1 = r1.output;
    const Vector x_odd = y1 - (1.0 / t_next) * (y1 - y) + ((t_j - 1.0) / t_next) * (y - y_prev);

    ProxResult r2 = run.step(x_odd);
    run.record(r2);
    y_prev = std::move(r1.output);
    y = std::move(r2.output);
  }
  return run.finish(std::move(y));
}

SolverTrace run_mfista(const CompositeProblem& p, const SolverConfig& c, const Vector& x0) {
  Run run(p, c, x0, PointTag::X);
  InertiaSchedule schedule = c.schedule;
  schedule.reset();
  if (schedule.has_t_sequence()) run.trace().t_values.push_back(0.0);

  Vector y = x0;
  Vector x_prev = x0;
  double f_prev = run.trace().records.front().F;
  while (!run.done()) {
    ProxResult r = run.step(y);
    const double f_z = p.value(r.output);
    const bool improved = f_z <= f_prev;
    const Vector& x = improved ? r.output : x_prev;
    const double f_x = improved ? f_z : f_prev;
    if (!improved) ++run.trace().extra_function_evals;
    run.record(r, x, f_x);

    const double alpha = schedule.next_alpha();
    run.trace().alphas.push_back(alpha);
    // Weight on z − x: t_k/t_{k+1} = α + 1/t_{k+1} for t-based schedules.
    double beta = 1.0;
    if (schedule.has_t_sequence()) {
      run.trace().t_values.push_back(schedule.current_t());
      beta = std::min(1.0, alpha + 1.0 / schedule.current_t());
    }
    y = x + beta * (r.output - x) + alpha * (x - x_prev);
    x_prev = x;
    f_prev = f_x;
  }
  return run.finish(std::move(x_prev));
}

SolverTrace solve(const CompositeProblem& p, const SolverConfig& c, const Vector& x0) {
  switch (c.method) {
    case Method::Vanilla:
      return run_vanilla(p, c, x0);
    case Method::Inertial:
      return run_inertial(p, c, x0);
    case Method::AlternatedInertia:
      return run_alternated_inertia(p, c, x0);
    case Method::AlternatedExtrapolation:
      return run_alternated_extrapolation(p, c, x0);
    case Method::Mfista:
      return run_mfista(p, c, x0);
  }
  throw InvalidArgument("solve: unknown method");
}

bool step_admissible(const CompositeProblem& p, double gamma, std::size_t probe_iters, const Vector& x0) {
  const double limit = 1e6 * std::max(1.0, p.value(x0));
  Vector x = x0;
  try {
    for (std::size_t k = 0; k < probe_iters; ++k) {
      x = prox_gradient_step(p, x, gamma).output;
      const double f = p.value(x);
      if (!std::isfinite(f) || f > limit) return false;
    }
  } catch (const NonFiniteGradient&) {
    return false;
  }
  return true;
}

double gamma_max_search(const CompositeProblem& p, std::size_t probe_iters, std::optional<Vector> x0) {
  if (probe_iters < 100) throw InvalidArgument("gamma_max_search: probe_iters must be at least 100");
  const Vector start = x0 ? *x0 : Vector::Ones(p.dim());
  if (start.size() != p.dim()) throw DimensionMismatch("gamma_max_search initial point", p.dim(), start.size());

  double lo = 1.0 / p.lipschitz();
  double hi = 2.0 * lo;
  // 2^60 / L is far beyond any useful step; stop doubling there.
  for (int doublings = 0; step_admissible(p, hi, probe_iters, start); ++doublings) {
    if (doublings >= 60) return hi;
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 0.01 * lo) {
    const double mid = 0.5 * (lo + hi);
    (step_admissible(p, mid, probe_iters, start) ? lo : hi) = mid;
  }
  return lo;
}

ReferenceOptimum compute_reference_optimum(const CompositeProblem& p, const ReferenceOptions& opts,
                                           std::optional<Vector> x0) {
  const bool convex = p.convex();
  const double gamma = convex ? 1.0 / p.lipschitz() : 0.5 / p.lipschitz();
  Vector x = x0 ? *x0 : Vector::Zero(p.dim());

  if (opts.warm_start_evals > 0) {
    SolverConfig warm;
    warm.method = Method::AlternatedInertia;
    warm.gamma = gamma;
    warm.schedule = InertiaSchedule::power(3.0, 0.8);
    if (!convex) warm.schedule.with_cap(0.5);
    warm.max_prox_evals = opts.warm_start_evals;
    warm.stop_residual = opts.tol;
    x = run_alternated_inertia(p, warm, x).final_point;
  }

  for (std::size_t k = 0; k < opts.max_prox_evals; ++k) {
    ProxResult r = prox_gradient_step(p, x, gamma);
    const double res = residual(r);
    x = std::move(r.output);
    if (res <= opts.tol) return {x, p.value(x)};
  }
  throw ConvergenceFailure("reference optimum: residual did not reach " + std::to_string(opts.tol) + " within " +
                           std::to_string(opts.max_prox_evals) + " prox-gradient evaluations");
}

CompositeProblem ensure_reference(const CompositeProblem& p, const ReferenceOptions& opts) {
  if (p.reference()) return p;
  return p.with_reference(compute_reference_optimum(p, opts));
}

}  // namespace proxalt
