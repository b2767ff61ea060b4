#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace proxalt {

/// Generator of inertia coefficients α built from a t-sequence with t₀ = 0:
///
///   Nesterov: t_{k+1} = (1 + √(1 + 4t_k²)) / 2
///   Linear:   t_{k+1} = (k + a) / a,        a > 2
///   Power:    t_{k+1} = ((k + a) / a)^d,    d ∈ (0, 1], a > max{1, (2d)^{1/d}}
///   Fixed:    constant α, no t-sequence
///
/// Each call to next_alpha() emits α_{k+1} = (t_k − 1)/t_{k+1} clamped to
/// [0, cap]. The first coefficient of a t-based schedule is forced to 0.
class InertiaSchedule {
 public:
  enum class Kind { Fixed, Nesterov, Linear, Power };

  static InertiaSchedule fixed(double alpha);
  static InertiaSchedule nesterov();
  static InertiaSchedule linear(double a);
  static InertiaSchedule power(double a, double d);

  /// Accepts "fixed:α", "nesterov", "linear:a", "power:a,d".
  static InertiaSchedule parse(std::string_view text);
  std::string describe() const;

  /// Upper clamp applied to every emitted α (default 1).
  InertiaSchedule& with_cap(double cap);
  /// Emit the literal ratio t_{k+1}/(t_k − 1) instead, clamped to [0, cap]
  /// and taken as 0 while t_k ≤ 1.
  InertiaSchedule& with_literal_ratio(bool on);

  Kind kind() const { return kind_; }
  bool has_t_sequence() const { return kind_ != Kind::Fixed; }
  double cap() const { return cap_; }
  bool literal_ratio() const { return literal_ratio_; }
  double param_a() const { return a_; }
  double param_d() const { return d_; }

  double next_alpha();

  /// Advances the t-sequence by one step and returns the new t_{k+1}.
  /// Throws InvalidArgument for Fixed schedules.
  double advance_t();
  /// t_k at the current index (0 on a fresh schedule).
  double current_t() const { return t_; }
  /// Number of advances performed so far.
  std::size_t index() const { return k_; }

  void reset();

 private:
  InertiaSchedule(Kind kind, double alpha, double a, double d);
  double t_after(std::size_t k, double t) const;

  Kind kind_;
  double alpha_ = 0.0;
  double a_ = 0.0;
  double d_ = 1.0;
  double cap_ = 1.0;
  bool literal_ratio_ = false;

  std::size_t k_ = 0;
  double t_ = 0.0;
};

/// The first K coefficients of a fresh copy of `s`.
std::vector<double> alpha_sequence(InertiaSchedule s, std::size_t count);

/// t₀, …, t_count of a fresh copy of `s`.
std::vector<double> t_sequence(InertiaSchedule s, std::size_t count);

}  // namespace proxalt
