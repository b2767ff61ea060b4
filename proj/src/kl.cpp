#include "proxalt/kl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "proxalt/errors.hpp"
#include "proxalt/numfmt.hpp"

namespace proxalt {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

// Compensated running sum.
class KahanSum {
 public:
  void add(double v) {
    const double y = v - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Root of r + c·r^p = rk on (0, rk] for p ∈ (0, 2), p ≠ 1.
double solve_step(double rk, double c, double p) {
  auto h = [&](double u) { return std::exp(u) + c * std::exp(p * u) - rk; };
  double hi = std::min(std::log(rk), std::log(rk / c) / p);
  double lo = hi;
  for (double step = 1.0; h(lo) > 0.0; step *= 2.0) {
    lo = hi - step;
    if (lo < -800.0) return 0.0;  // root below the smallest subnormal
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  double r = std::exp(0.5 * (lo + hi));
  for (int it = 0; it < 2 && r > 0.0; ++it) {
    const double g = r + c * std::pow(r, p) - rk;
    const double dg = 1.0 + c * p * std::pow(r, p - 1.0);
    const double next = r - g / dg;
    if (!(next > 0.0 && next <= rk)) break;
    if (std::abs(next + c * std::pow(next, p) - rk) >= std::abs(g)) break;
    r = next;
  }
  return r;
}

double last_decade_average(const std::vector<double>& s, double (*denominator)(double, double), double param) {
  const std::size_t n = s.size();
  const std::size_t first = std::max<std::size_t>(2, n / 10);
  if (first >= n) throw InvalidArgument("rate constants: horizon too short to estimate lim inf");
  double sum = 0.0;
  for (std::size_t k = first; k < n; ++k) sum += s[k] / denominator(static_cast<double>(k), param);
  return sum / static_cast<double>(n - first);
}

double pow_denominator(double k, double one_minus_d) { return std::pow(k, one_minus_d); }
double log_denominator(double k, double) { return std::log(k); }

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Constant:
      return "a";
    case Regime::PowerDecay:
      return "b";
    case Regime::Harmonic:
      return "c";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "a" || text == "constant") return Regime::Constant;
  if (text == "b" || text == "power") return Regime::PowerDecay;
  if (text == "c" || text == "harmonic") return Regime::Harmonic;
  throw InvalidArgument("unknown regime '" + std::string(text) + "' (expected a, b or c)");
}

CoefficientSequence CoefficientSequence::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("coefficient sequence: scale must be positive");
  return CoefficientSequence(Regime::Constant, c, 0.0);
}

CoefficientSequence CoefficientSequence::power_decay(double c, double d) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("coefficient sequence: scale must be positive");
  if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("coefficient sequence: decay exponent must lie in (0, 1)");
  return CoefficientSequence(Regime::PowerDecay, c, d);
}

CoefficientSequence CoefficientSequence::harmonic(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("coefficient sequence: scale must be positive");
  return CoefficientSequence(Regime::Harmonic, c, 1.0);
}

double CoefficientSequence::operator()(std::size_t k) const {
  const double kk = static_cast<double>(k) + 1.0;
  switch (regime_) {
    case Regime::Constant:
      return c_;
    case Regime::PowerDecay:
      return c_ / std::pow(kk, d_);
    case Regime::Harmonic:
      return c_ / kk;
  }
  return 0.0;
}

void KLRecurrence::validate() const {
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw InvalidArgument("recurrence: r0 must be positive");
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("recurrence: theta must lie in (0, 1]");
  if (!(C > 0.0) || !std::isfinite(C)) throw InvalidArgument("recurrence: C must be positive");
  if (!a.sum_diverges()) throw InvalidArgument("recurrence: coefficients must have a divergent sum");
}

std::vector<double> simulate_recurrence(const KLRecurrence& rec, std::size_t steps) {
  rec.validate();
  if (steps < 1) throw InvalidArgument("simulate_recurrence: need at least one step");
  const double c2 = rec.C * rec.C;
  std::vector<double> r;
  r.reserve(steps + 1);
  r.push_back(rec.r0);

  if (rec.theta == 1.0) {
    KahanSum spent;
    for (std::size_t k = 0; k < steps; ++k) {
      spent.add(rec.a(k) / c2);
      r.push_back(std::max(rec.r0 - spent.value(), 0.0));
    }
    return r;
  }

  const double p = 2.0 - 2.0 * rec.theta;
  for (std::size_t k = 0; k < steps; ++k) {
    const double rk = r.back();
    const double c = rec.a(k) / c2;
    if (rk == 0.0) {
      r.push_back(0.0);
    } else if (p == 1.0) {
      r.push_back(rk / (1.0 + c));
    } else {
      r.push_back(solve_step(rk, c, p));
    }
  }
  return r;
}

std::vector<double> truncated_partial_sums(const CoefficientSequence& a, double C, std::size_t steps) {
  const double cap = 2.0 * C * C;
  std::vector<double> s;
  s.reserve(steps);
  KahanSum sum;
  for (std::size_t k = 0; k < steps; ++k) {
    sum.add(std::min(a(k), cap));
    s.push_back(sum.value());
  }
  return s;
}

ThetaClass theta_class(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in (0, 1]");
  if (theta < 0.5) return ThetaClass::Sublinear;
  if (theta < 1.0) return ThetaClass::Linear;
  return ThetaClass::Finite;
}

std::string to_string(ThetaClass c) {
  switch (c) {
    case ThetaClass::Sublinear:
      return "(0,0.5)";
    case ThetaClass::Linear:
      return "[0.5,1)";
    case ThetaClass::Finite:
      return "1";
  }
  return "?";
}

RateEnvelope envelope(Regime regime, double theta, const EnvelopeConstants& k) {
  RateEnvelope env;
  env.regime = regime;
  env.theta = theta;
  env.theta_class = theta_class(theta);
  if (!(k.C > 0.0)) throw InvalidArgument("envelope: C must be positive");
  if (regime == Regime::PowerDecay && !(k.d > 0.0 && k.d < 1.0)) {
    throw InvalidArgument("envelope: regime (b) needs d in (0, 1)");
  }
  const double c2 = k.C * k.C;

  switch (env.theta_class) {
    case ThetaClass::Sublinear: {
      const double q = 1.0 / (1.0 - 2.0 * theta);
      switch (regime) {
        case Regime::Constant:
          env.model = EnvelopeModel::PowerLaw;
          env.expected = -q;
          env.formula = "1/k^" + format_double(q);
          break;
        case Regime::PowerDecay:
          env.model = EnvelopeModel::PowerLaw;
          env.expected = -(1.0 + (2.0 * theta - k.d) * q);
          env.formula = "1/k^" + format_double(-env.expected);
          break;
        case Regime::Harmonic:
          env.model = EnvelopeModel::LogPower;
          env.expected = -q;
          env.formula = "1/log(k)^" + format_double(q);
          break;
      }
      break;
    }
    case ThetaClass::Linear:
      switch (regime) {
        case Regime::Constant:
          if (!(k.a > 0.0)) throw InvalidArgument("envelope: regime (a) needs a > 0");
          env.model = EnvelopeModel::Geometric;
          env.expected = c2 / (c2 + k.a);
          // The factor is attained only when the recurrence is linear.
          env.tight = theta == 0.5;
          env.formula = "(" + format_double(env.expected) + ")^k";
          break;
        case Regime::PowerDecay:
          if (!k.c_prime) throw InvalidArgument("envelope: regime (b) with theta in [0.5,1) needs C'");
          env.model = EnvelopeModel::StretchedExp;
          env.expected = *k.c_prime / (2.0 * c2);
          env.model_d = k.d;
          env.tight = false;
          env.formula = "exp(-" + format_double(env.expected) + "*k^" + format_double(1.0 - k.d) + ")";
          break;
        case Regime::Harmonic:
          if (!k.c_double_prime) throw InvalidArgument("envelope: regime (c) with theta in [0.5,1) needs C''");
          env.model = EnvelopeModel::PowerLaw;
          env.expected = -*k.c_double_prime / (2.0 * c2);
          env.tight = false;
          env.formula = "1/k^" + format_double(-env.expected);
          break;
      }
      break;
    case ThetaClass::Finite: {
      env.model = EnvelopeModel::FiniteTermination;
      const double budget = c2 * k.r0;
      const auto& s = k.a_partial_sums;
      const auto it = std::find_if(s.begin(), s.end(), [&](double v) { return v >= budget; });
      env.expected = it == s.end() ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(std::distance(s.begin(), it) + 1);
      env.formula = "finite";
      break;
    }
  }
  return env;
}

RateEnvelope envelope_for(const KLRecurrence& rec, std::size_t steps) {
  rec.validate();
  EnvelopeConstants k;
  k.C = rec.C;
  k.r0 = rec.r0;
  if (rec.a.regime() == Regime::Constant) k.a = rec.a.scale();
  if (rec.a.regime() == Regime::PowerDecay) k.d = rec.a.exponent();

  const ThetaClass tc = theta_class(rec.theta);
  if (tc == ThetaClass::Linear && rec.a.regime() != Regime::Constant) {
    const std::vector<double> s = truncated_partial_sums(rec.a, rec.C, steps);
    if (rec.a.regime() == Regime::PowerDecay) {
      k.c_prime = last_decade_average(s, pow_denominator, 1.0 - k.d);
    } else {
      k.c_double_prime = last_decade_average(s, log_denominator, 0.0);
    }
  }
  if (tc == ThetaClass::Finite) {
    KahanSum sum;
    k.a_partial_sums.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
      sum.add(rec.a(i));
      k.a_partial_sums.push_back(sum.value());
    }
  }
  return envelope(rec.a.regime(), rec.theta, k);
}

EnvelopeReport check_envelope(const std::vector<double>& seq, const RateEnvelope& env) {
  if (seq.size() < 100) throw InvalidArgument("check_envelope: need at least 100 entries");
  EnvelopeReport rep;
  rep.model = env.model;
  rep.expected = env.expected;

  if (env.model == EnvelopeModel::FiniteTermination) {
    const auto it = std::find(seq.begin(), seq.end(), 0.0);
    rep.fitted = it == seq.end() ? std::numeric_limits<double>::infinity()
                                 : static_cast<double>(std::distance(seq.begin(), it));
    rep.r_squared = 1.0;
    rep.pass = rep.fitted == rep.expected;
    return rep;
  }

  if (!(seq.front() > 0.0)) {
    throw InvalidArgument("check_envelope: sequence starts at 0, but the envelope " + env.formula +
                          " is not a finite-termination bound");
  }
  const std::size_t first = std::max<std::size_t>(seq.size() / 2, 3);
  if (std::find(seq.begin() + static_cast<std::ptrdiff_t>(first), seq.end(), 0.0) != seq.end()) {
    // Exact zeros in the window mean the decay outruns every envelope shape:
    // enough for a one-sided bound, a miss for a two-sided one.
    const double inf = std::numeric_limits<double>::infinity();
    rep.fitted = env.model == EnvelopeModel::Geometric ? 0.0 : (env.model == EnvelopeModel::StretchedExp ? inf : -inf);
    rep.r_squared = std::nan("");
    rep.pass = !env.tight;
    return rep;
  }
  std::vector<double> x, y;
  for (std::size_t k = first; k < seq.size(); ++k) {
    if (!(seq[k] > 0.0)) throw InvalidArgument("check_envelope: negative or NaN entry at k = " + std::to_string(k));
    const double kk = static_cast<double>(k);
    switch (env.model) {
      case EnvelopeModel::PowerLaw:
        x.push_back(std::log(kk));
        break;
      case EnvelopeModel::LogPower:
        x.push_back(std::log(std::log(kk)));
        break;
      case EnvelopeModel::Geometric:
        x.push_back(kk);
        break;
      case EnvelopeModel::StretchedExp:
        x.push_back(std::pow(kk, 1.0 - env.model_d));
        break;
      case EnvelopeModel::FiniteTermination:
        break;
    }
    y.push_back(std::log(seq[k]));
  }
  const LineFit f = fit_line(x, y);
  rep.r_squared = f.r_squared;

  // Compare decay magnitudes: −slope for the power models, −log(factor) for
  // the geometric one, the constant itself for the stretched exponential.
  double fitted_decay = 0.0, expected_decay = 0.0;
  switch (env.model) {
    case EnvelopeModel::PowerLaw:
    case EnvelopeModel::LogPower:
      rep.fitted = f.slope;
      fitted_decay = -f.slope;
      expected_decay = -env.expected;
      break;
    case EnvelopeModel::Geometric:
      rep.fitted = std::exp(f.slope);
      fitted_decay = -f.slope;
      expected_decay = -std::log(env.expected);
      break;
    case EnvelopeModel::StretchedExp:
      rep.fitted = -f.slope;
      fitted_decay = rep.fitted;
      expected_decay = env.expected;
      break;
    case EnvelopeModel::FiniteTermination:
      break;
  }
  if (env.tight) {
    if (env.model == EnvelopeModel::Geometric) {
      rep.pass = std::abs(rep.fitted - rep.expected) <= 0.1 * std::abs(rep.expected);
    } else {
      rep.pass = std::abs(fitted_decay - expected_decay) <= 0.1 * std::abs(expected_decay);
    }
  } else {
    rep.pass = fitted_decay >= 0.9 * expected_decay;
  }
  return rep;
}

std::optional<std::size_t> finite_termination_index(const KLRecurrence& rec, std::size_t horizon) {
  rec.validate();
  const double budget = rec.C * rec.C * rec.r0;
  KahanSum sum;
  for (std::size_t k = 0; k < horizon; ++k) {
    sum.add(rec.a(k));
    if (sum.value() >= budget) return k + 1;
  }
  return std::nullopt;
}

std::optional<std::size_t> theorem_termination_bound(const KLRecurrence& rec, std::size_t horizon) {
  rec.validate();
  const double budget = rec.C * rec.C * rec.r0;
  KahanSum sum;
  for (std::size_t k = 0; k < horizon; ++k) {
    sum.add(rec.a(k));
    if (sum.value() > budget) return k;
  }
  return std::nullopt;
}

KLEstimate kl_constant_estimate(const SolverTrace& trace, double f_star) {
  std::vector<double> x, y;
  for (const TraceRecord& r : trace.records) {
    const double gap = r.F - f_star;
    if (gap >= 1e-10 && gap <= 1e-2 && r.dist_exact > 0.0) {
      x.push_back(std::log(gap));
      y.push_back(std::log(r.dist_exact));
    }
  }
  if (x.size() < 10) {
    throw InvalidArgument("kl_constant_estimate: only " + std::to_string(x.size()) +
                          " records with F - F* in [1e-10, 1e-2], need 10");
  }
  const LineFit f = fit_line(x, y);
  return {1.0 - f.slope, std::exp(-f.intercept), f.r_squared, x.size()};
}

double kl_constant_bound(const std::vector<double>& gaps, const std::vector<double>& dists, double theta,
                         double min_gap) {
  if (gaps.size() != dists.size()) throw InvalidArgument("kl_constant_bound: length mismatch");
  double c = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(gaps[i] > min_gap)) continue;
    const double need = std::pow(gaps[i], 1.0 - theta) / dists[i];
    c = std::max(c, need);
  }
  return c;
}

std::vector<double> descent_coefficients(const std::vector<double>& alphas, double gamma, double lipschitz) {
  const double gl = gamma * lipschitz;
  const double denom = 2.0 * (1.0 + gl) * (1.0 + gl);
  std::vector<double> a;
  a.reserve(alphas.size());
  for (double alpha : alphas) a.push_back((2.0 - alpha - gl) * gamma / denom);
  return a;
}

RegimeFit classify_regime(const std::vector<double>& a, std::size_t first) {
  std::vector<double> x, y;
  for (std::size_t k = std::max<std::size_t>(first, 1); k < a.size(); ++k) {
    if (a[k] > 0.0) {
      x.push_back(std::log(static_cast<double>(k)));
      y.push_back(std::log(a[k]));
    }
  }
  if (x.size() < 10) throw InvalidArgument("classify_regime: need at least 10 positive coefficients past the start");
  RegimeFit fit;
  fit.slope = fit_line(x, y).slope;
  if (std::abs(fit.slope) < 0.1) {
    fit.regime = Regime::Constant;
  } else if (std::abs(fit.slope + 1.0) <= 0.1) {
    fit.regime = Regime::Harmonic;
  } else {
    fit.regime = Regime::PowerDecay;
  }
  return fit;
}

bool dominated_by(const std::vector<double>& r, const std::vector<double>& worst, double rel_tol, double abs_tol) {
  const std::size_t n = std::min(r.size(), worst.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (r[k] > worst[k] * (1.0 + rel_tol) + abs_tol) return false;
  }
  return true;
}

void write_recurrence_csv(std::ostream& out, const std::vector<double>& seq, const RateEnvelope& env) {
  out << "k,r_k,bound_k\n";
  if (seq.empty()) return;
  const std::size_t mid = std::max<std::size_t>(seq.size() / 2, 3);
  // log of the bound's shape at k, up to an additive constant.
  auto log_shape = [&](double k) {
    switch (env.model) {
      case EnvelopeModel::PowerLaw:
        return env.expected * std::log(k);
      case EnvelopeModel::LogPower:
        return env.expected * std::log(std::log(k));
      case EnvelopeModel::Geometric:
        return k * std::log(env.expected);
      case EnvelopeModel::StretchedExp:
        return -env.expected * std::pow(k, 1.0 - env.model_d);
      case EnvelopeModel::FiniteTermination:
        break;
    }
    return 0.0;
  };
  const bool anchored = env.model != EnvelopeModel::FiniteTermination && mid < seq.size() && seq[mid] > 0.0;
  const double offset = anchored ? std::log(seq[mid]) - log_shape(static_cast<double>(mid)) : 0.0;

  for (std::size_t k = 0; k < seq.size(); ++k) {
    const double kk = static_cast<double>(k);
    double bound;
    if (env.model == EnvelopeModel::FiniteTermination) {
      bound = kk < env.expected ? seq.front() : 0.0;
    } else if (!anchored || (env.model == EnvelopeModel::LogPower && k < 2) ||
               (env.model == EnvelopeModel::PowerLaw && k < 1)) {
      bound = std::nan("");
    } else {
      bound = std::exp(offset + log_shape(kk));
    }
    out << k << ',' << format_double(seq[k]) << ',' << format_double(bound) << '\n';
  }
}

}  // namespace proxalt
