#include "proxalt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "proxalt/errors.hpp"
#include "proxalt/numfmt.hpp"

#ifndef PROXALT_DEFAULT_DATA_DIR
#define PROXALT_DEFAULT_DATA_DIR "data"
#endif

namespace proxalt {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const char* const kTraceHeader = "prox_evals,F,residual,dist_bound,dist_exact,tag";

}  // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below: n must be positive");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

Vector Rng::normal_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal();
  return v;
}

Matrix Rng::normal_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = normal();
  }
  return m;
}

std::vector<Index> Rng::choose(Index n, Index k) {
  if (k < 0 || k > n) throw InvalidArgument("Rng::choose: need 0 <= k <= n");
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates.
  for (Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Index>(below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  std::vector<Index> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
  return Rng(splitmix64(seed ^ splitmix64(stream_id)));
}

void LassoSpec::validate() const {
  if (m < 1 || n < 1) throw InvalidArgument("lasso spec: dimensions must be positive");
  if (!(sparsity > 0.0 && sparsity < 1.0)) throw InvalidArgument("lasso spec: sparsity must lie in (0, 1)");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) throw InvalidArgument("lasso spec: noise_std must be >= 0");
  if (lambda && (!(*lambda > 0.0) || !std::isfinite(*lambda))) {
    throw InvalidArgument("lasso spec: lambda must be positive");
  }
}

LassoData gen_lasso_data(const LassoSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  LassoData d;
  d.a = rng.normal_matrix(spec.m, spec.n);
  const auto k = static_cast<Index>(std::ceil(spec.sparsity * static_cast<double>(spec.n) - 1e-9));
  d.x_true = Vector::Zero(spec.n);
  for (Index i : rng.choose(spec.n, k)) d.x_true(i) = rng.normal();
  d.b = d.a * d.x_true;
  for (Index i = 0; i < spec.m; ++i) d.b(i) += spec.noise_std * rng.normal();
  return d;
}

Index lasso_support_size(const Matrix& a, const Vector& b, double lambda, Vector* warm) {
  const CompositeProblem p(SmoothLoss::least_squares(a, b), Regularizer::l1(lambda));
  SolverConfig c;
  c.method = Method::AlternatedInertia;
  c.gamma = 1.0 / p.lipschitz();
  c.schedule = InertiaSchedule::power(3.0, 0.8);
  c.max_prox_evals = 200000;
  c.stop_residual = 1e-12;
  const Vector start = warm && warm->size() == p.dim() ? *warm : Vector::Zero(p.dim());
  const SolverTrace t = run_alternated_inertia(p, c, start);
  if (warm) *warm = t.final_point;
  return static_cast<Index>((t.final_point.array() != 0.0).count());
}

LassoInstance gen_lasso(const LassoSpec& spec) {
  LassoData d = gen_lasso_data(spec);
  const Index target = static_cast<Index>((d.x_true.array() != 0.0).count());

  if (spec.lambda) {
    CompositeProblem p(SmoothLoss::least_squares(d.a, d.b), Regularizer::l1(*spec.lambda));
    return {std::move(p), std::move(d.x_true), *spec.lambda, 0};
  }

  // λ ≥ ‖∇f(0)‖∞ gives the zero solution, so the bracket starts there.
  const double lambda_max = 2.0 * (d.a.transpose() * d.b).cwiseAbs().maxCoeff();
  if (!(lambda_max > 0.0)) throw InvalidArgument("lasso: b is orthogonal to the range of A, auto lambda undefined");
  double lo = 1e-8 * lambda_max;
  double hi = lambda_max;
  Vector warm = Vector::Zero(spec.n);
  for (int step = 1; step <= 60; ++step) {
    const double mid = std::sqrt(lo * hi);
    const Index support = lasso_support_size(d.a, d.b, mid, &warm);
    if (support == target) {
      CompositeProblem p(SmoothLoss::least_squares(d.a, d.b), Regularizer::l1(mid));
      return {std::move(p), std::move(d.x_true), mid, step};
    }
    (support > target ? lo : hi) = mid;
  }
  throw ConvergenceFailure("lasso: automatic lambda search found no support of size " + std::to_string(target) +
                           " in 60 steps; last bracket [" + format_double(lo) + ", " + format_double(hi) + "]");
}

CompositeProblem identity_quadratic(Index n) {
  return CompositeProblem(SmoothLoss::least_squares(Matrix::Identity(n, n), Vector::Zero(n)), Regularizer::zero());
}

CompositeProblem random_quadratic(std::uint64_t seed, Index m, Index n) {
  Rng rng(seed);
  Matrix a = rng.normal_matrix(m, n);
  Vector b = rng.normal_vector(m);
  return CompositeProblem(SmoothLoss::least_squares(std::move(a), std::move(b)), Regularizer::zero());
}

DatasetRecord load_ionosphere(const std::string& path, bool intercept) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open file");

  constexpr std::size_t kFeatures = 34;
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != kFeatures + 1) {
      throw ParseError(path, line_no,
                       "expected " + std::to_string(kFeatures + 1) + " columns, found " + std::to_string(fields.size()));
    }
    std::vector<double> row(kFeatures);
    for (std::size_t j = 0; j < kFeatures; ++j) {
      const std::string f = trim(fields[j]);
      if (!parse_double(f, row[j]) || !std::isfinite(row[j])) {
        throw ParseError(path, line_no, "column " + std::to_string(j + 1) + ": not a finite number: '" + f + "'");
      }
    }
    const std::string label = trim(fields[kFeatures]);
    if (label == "g") {
      labels.push_back(1.0);
    } else if (label == "b") {
      labels.push_back(-1.0);
    } else {
      throw ParseError(path, line_no, "label must be 'g' or 'b', found '" + label + "'");
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError(path, "read error");
  if (rows.empty()) throw ParseError(path, line_no, "no data rows");

  DatasetRecord rec;
  const auto m = static_cast<Index>(rows.size());
  const auto n = static_cast<Index>(kFeatures + (intercept ? 1 : 0));
  rec.a.resize(m, n);
  rec.labels.resize(m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < static_cast<Index>(kFeatures); ++j) rec.a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (intercept) rec.a(i, n - 1) = 1.0;
    rec.labels(i) = labels[static_cast<std::size_t>(i)];
  }
  rec.provenance = "ionosphere (" + path + ")" + (intercept ? " with intercept column" : "");
  if (m != 351) {
    rec.warnings.push_back(path + ": expected 351 rows for the canonical ionosphere file, found " + std::to_string(m));
  }
  return rec;
}

std::string default_ionosphere_path() {
  if (const char* dir = std::getenv("PROXALT_DATA"); dir && *dir) return std::string(dir) + "/ionosphere.data";
  return std::string(PROXALT_DEFAULT_DATA_DIR) + "/ionosphere.data";
}

CompositeProblem logistic_problem(const DatasetRecord& data, const Regularizer& g) {
  return CompositeProblem(SmoothLoss::logistic(data.a, data.labels), g);
}

Vector random_start(Index n, std::uint64_t seed) { return Rng::stream(seed, 1).normal_vector(n); }

void write_trace(const SolverTrace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const TraceRecord& r : trace.records) {
    out << r.prox_evals << ',' << format_double(r.F) << ',' << format_double(r.residual) << ','
        << format_double(r.dist_bound) << ',' << format_double(r.dist_exact) << ','
        << (r.tag == PointTag::X ? 'x' : 'y') << '\n';
  }
}

void write_trace(const SolverTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  write_trace(trace, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

SolverTrace read_trace(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(name, 1, "missing header");
  if (trim(line) != kTraceHeader) throw ParseError(name, 1, "unexpected header '" + line + "'");

  SolverTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> f = split(trim(line), ',');
    if (f.size() != 6) throw ParseError(name, line_no, "expected 6 columns, found " + std::to_string(f.size()));
    TraceRecord r;
    std::size_t pos = 0;
    try {
      r.prox_evals = std::stoull(f[0], &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != f[0].size() || f[0].empty()) throw ParseError(name, line_no, "bad prox_evals '" + f[0] + "'");
    double* cols[] = {&r.F, &r.residual, &r.dist_bound, &r.dist_exact};
    for (std::size_t j = 0; j < 4; ++j) {
      if (!parse_double(f[j + 1], *cols[j])) throw ParseError(name, line_no, "bad number '" + f[j + 1] + "'");
    }
    if (f[5] == "x") {
      r.tag = PointTag::X;
    } else if (f[5] == "y") {
      r.tag = PointTag::Y;
    } else {
      throw ParseError(name, line_no, "tag must be x or y, found '" + f[5] + "'");
    }
    trace.records.push_back(r);
  }
  return trace;
}

SolverTrace read_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open file");
  return read_trace(in, path);
}

}  // namespace proxalt
