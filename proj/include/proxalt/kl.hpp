#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxalt/solvers.hpp"

namespace proxalt {

/// Decay regime of the descent coefficients a_k: (a) bounded below,
/// (b) Ω(1/k^d) with d ∈ (0,1), (c) Ω(1/k).
enum class Regime { Constant, PowerDecay, Harmonic };

std::string to_string(Regime r);
/// Accepts "a", "b", "c" and the names "constant", "power", "harmonic".
Regime parse_regime(std::string_view text);

/// Generator for a_k, k = 0, 1, …:
///   Constant(c):      c
///   PowerDecay(c, d): c / (k + 1)^d
///   Harmonic(c):      c / (k + 1)
class CoefficientSequence {
 public:
  static CoefficientSequence constant(double c);
  static CoefficientSequence power_decay(double c, double d);
  static CoefficientSequence harmonic(double c);

  Regime regime() const { return regime_; }
  double scale() const { return c_; }
  double exponent() const { return d_; }

  double operator()(std::size_t k) const;

  /// Σ a_k = ∞. True for every generator kind with c > 0; kept as an explicit
  /// check because the rate statements depend on it.
  bool sum_diverges() const { return c_ > 0.0 && d_ <= 1.0; }

 private:
  CoefficientSequence(Regime regime, double c, double d) : regime_(regime), c_(c), d_(d) {}

  Regime regime_;
  double c_;
  double d_;
};

/// r_{k+1} + (a_k/C²)·r_{k+1}^{2−2θ} ≤ r_k.
struct KLRecurrence {
  double r0 = 1.0;
  double theta = 0.5;
  double C = 1.0;
  CoefficientSequence a = CoefficientSequence::constant(1.0);

  void validate() const;
};

/// r₀, …, r_K of the sequence meeting the recurrence with equality. Each step
/// is solved by bisection in log r to 1e-14 relative followed by a Newton
/// polish. θ = 1 uses compensated partial sums, r_k = max(r₀ − Σ a_ℓ/C², 0).
std::vector<double> simulate_recurrence(const KLRecurrence& rec, std::size_t steps);

/// s_k = Σ_{ℓ≤k} min(a_ℓ, 2C²) for k = 0, …, steps − 1.
std::vector<double> truncated_partial_sums(const CoefficientSequence& a, double C, std::size_t steps);

enum class ThetaClass { Sublinear, Linear, Finite };  // (0, 0.5), [0.5, 1), {1}
ThetaClass theta_class(double theta);
std::string to_string(ThetaClass c);

/// How a sequence is compared with its envelope.
enum class EnvelopeModel {
  PowerLaw,        // log r against log k; `expected` is the slope
  LogPower,        // log r against log log k; `expected` is the slope
  Geometric,       // log r against k; `expected` is the per-step factor
  StretchedExp,    // log r against k^{1−d}; `expected` is the decay constant
  FiniteTermination,  // `expected` is the first index with r_k = 0
};

struct EnvelopeConstants {
  double C = 1.0;
  /// Lower bound a of regime (a).
  double a = 0.0;
  /// Exponent d of regime (b).
  double d = 0.5;
  /// lim inf s_k / k^{1−d} for regime (b), lim inf s_k / log k for regime (c).
  /// Required for θ ∈ [0.5, 1) in those regimes.
  std::optional<double> c_prime;
  std::optional<double> c_double_prime;
  /// r₀ and the partial sums of a_k for the finite-termination index.
  double r0 = 1.0;
  std::vector<double> a_partial_sums;
};

struct RateEnvelope {
  Regime regime = Regime::Constant;
  double theta = 0.5;
  ThetaClass theta_class = ThetaClass::Linear;
  EnvelopeModel model = EnvelopeModel::Geometric;
  double expected = 0.0;
  /// Extra parameter of the model: d for StretchedExp.
  double model_d = 0.0;
  /// Whether the exponent is attained by the worst-case sequence. Loose
  /// envelopes only bound the decay from one side.
  bool tight = true;
  std::string formula;
};

/// The bound of the rate table for (regime, θ) with the given constants.
/// Throws InvalidArgument for θ ∉ (0, 1] or missing constants.
RateEnvelope envelope(Regime regime, double theta, const EnvelopeConstants& constants);

/// Envelope for a simulated recurrence, with C′ and C″ estimated from the
/// truncated partial sums averaged over the last decade of the horizon.
RateEnvelope envelope_for(const KLRecurrence& rec, std::size_t steps);

struct EnvelopeReport {
  EnvelopeModel model = EnvelopeModel::Geometric;
  /// Slope, rate factor, decay constant or termination index, as per the model.
  double fitted = 0.0;
  double expected = 0.0;
  double r_squared = 0.0;
  bool pass = false;
};

/// Fits the envelope model on the tail half of `seq` (indices ≥ size/2).
///
/// Tight envelopes pass when the fit is within 10% of the prediction. Loose
/// envelopes pass when the fitted decay is at least 90% of the predicted one.
/// FiniteTermination passes when the first zero equals the expected index.
/// A sequence that reaches exactly 0 inside the fitted window decays faster
/// than any non-finite envelope: it passes loose envelopes and fails tight
/// ones, with an infinite fitted decay. Throws InvalidArgument when seq has
/// fewer than 100 entries, or when a non-finite envelope meets a sequence
/// that starts at 0.
EnvelopeReport check_envelope(const std::vector<double>& seq, const RateEnvelope& env);

/// First k with r_k = 0 predicted by compensated partial sums: the least k
/// with Σ_{ℓ<k} a_ℓ ≥ C²r₀.
std::optional<std::size_t> finite_termination_index(const KLRecurrence& rec, std::size_t horizon);

/// inf{k : Σ_{ℓ≤k} a_ℓ > C²r₀}, the index in the rate theorem's θ = 1 case.
std::optional<std::size_t> theorem_termination_bound(const KLRecurrence& rec, std::size_t horizon);

struct KLEstimate {
  double theta = 0.0;
  double C = 0.0;
  double r_squared = 0.0;
  std::size_t used = 0;
};

/// Least-squares fit of log dist = (1 − θ)·log(F − F⋆) − log C over records
/// with F − F⋆ ∈ [1e-10, 1e-2] and dist > 0. Throws InvalidArgument with
/// fewer than 10 usable records.
KLEstimate kl_constant_estimate(const SolverTrace& trace, double f_star);

/// Smallest C with dist_i ≥ (1/C)·gap_i^{1−θ} for every pair with gap_i above
/// `min_gap`.
double kl_constant_bound(const std::vector<double>& gaps, const std::vector<double>& dists, double theta,
                         double min_gap = 0.0);

/// a_k = (2 − α_k − γL)γ / (2(1 + γL)²) for each block coefficient α_k.
std::vector<double> descent_coefficients(const std::vector<double>& alphas, double gamma, double lipschitz);

struct RegimeFit {
  Regime regime = Regime::Constant;
  double slope = 0.0;
};

/// Classifies a coefficient sequence by the log-log slope of a_k over
/// k ∈ [first, end): |slope| < 0.1 is (a), slope within 0.1 of −1 is (c),
/// anything else is (b) with d = −slope.
RegimeFit classify_regime(const std::vector<double>& a, std::size_t first = 100);

/// True when r_k ≤ w_k·(1 + rel_tol) + abs_tol for every k present in both.
bool dominated_by(const std::vector<double>& r, const std::vector<double>& worst, double rel_tol = 1e-9,
                  double abs_tol = 0.0);

/// Rows k, r_k, bound_k with the bound's free constant matched at the middle
/// of the sequence.
void write_recurrence_csv(std::ostream& out, const std::vector<double>& seq, const RateEnvelope& env);

}  // namespace proxalt
