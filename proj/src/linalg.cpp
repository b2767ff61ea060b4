#include "proxalt/linalg.hpp"

#include <cmath>

#include "proxalt/errors.hpp"

namespace proxalt {

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

PowerIterationResult gram_max_eigenvalue(const Matrix& a, const PowerIterationOptions& opts) {
  if (a.size() == 0) throw InvalidArgument("power iteration: empty matrix");
  if (!a.allFinite()) throw InvalidArgument("power iteration: non-finite matrix entries");
  if (a.cwiseAbs().maxCoeff() == 0.0) throw InvalidArgument("power iteration: zero matrix");

  const Matrix gram = a.transpose() * a;
  Vector v = Vector::Ones(gram.cols()) / std::sqrt(static_cast<double>(gram.cols()));
  Vector w = gram * v;
  double lambda = v.dot(w);

  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    const double norm = w.norm();
    if (norm == 0.0) {
      // The all-ones start is orthogonal to the range; restart on a unit axis.
      Index arg = 0;
      gram.diagonal().maxCoeff(&arg);
      v.setZero();
      v(arg) = 1.0;
      w = gram * v;
      lambda = v.dot(w);
      continue;
    }
    v = w / norm;
    w = gram * v;
    const double next = v.dot(w);
    if (std::abs(next - lambda) <= opts.rel_tol * std::abs(next)) {
      return {next, it, (w - next * v).norm()};
    }
    lambda = next;
  }
  throw ConvergenceFailure("power iteration did not converge in " +
                           std::to_string(opts.max_iters) + " iterations");
}

}  // namespace proxalt
