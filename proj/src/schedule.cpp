#include "proxalt/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "proxalt/errors.hpp"
#include "proxalt/numfmt.hpp"

namespace proxalt {
namespace {

double parse_number(std::string_view text, std::string_view context) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument("schedule '" + std::string(context) + "': cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

InertiaSchedule::InertiaSchedule(Kind kind, double alpha, double a, double d) : kind_(kind), alpha_(alpha), a_(a), d_(d) {}

InertiaSchedule InertiaSchedule::fixed(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("fixed schedule: alpha must lie in [0, 1]");
  return InertiaSchedule(Kind::Fixed, alpha, 0.0, 1.0);
}

InertiaSchedule InertiaSchedule::nesterov() { return InertiaSchedule(Kind::Nesterov, 0.0, 0.0, 1.0); }

InertiaSchedule InertiaSchedule::linear(double a) {
  if (!(a > 2.0) || !std::isfinite(a)) throw InvalidArgument("linear schedule: a must exceed 2");
  return InertiaSchedule(Kind::Linear, 0.0, a, 1.0);
}

InertiaSchedule InertiaSchedule::power(double a, double d) {
  if (!(d > 0.0 && d <= 1.0)) throw InvalidArgument("power schedule: d must lie in (0, 1]");
  const double bound = std::max(1.0, std::pow(2.0 * d, 1.0 / d));
  if (!(a > bound) || !std::isfinite(a)) {
    throw InvalidArgument("power schedule: a must exceed max{1, (2d)^(1/d)} = " + std::to_string(bound));
  }
  return InertiaSchedule(Kind::Power, 0.0, a, d);
}

InertiaSchedule InertiaSchedule::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (name == "nesterov") {
    if (!args.empty()) throw InvalidArgument("schedule 'nesterov' takes no parameters");
    return nesterov();
  }
  if (name == "fixed") return fixed(parse_number(args, text));
  if (name == "linear") return linear(parse_number(args, text));
  if (name == "power") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw InvalidArgument("schedule 'power' expects power:a,d");
    return power(parse_number(args.substr(0, comma), text), parse_number(args.substr(comma + 1), text));
  }
  throw InvalidArgument("unknown schedule '" + std::string(text) + "' (expected fixed:A, nesterov, linear:A or power:A,D)");
}

std::string InertiaSchedule::describe() const {
  switch (kind_) {
    case Kind::Fixed:
      return "fixed:" + format_double(alpha_);
    case Kind::Nesterov:
      return "nesterov";
    case Kind::Linear:
      return "linear:" + format_double(a_);
    case Kind::Power:
      return "power:" + format_double(a_) + ',' + format_double(d_);
  }
  return "?";
}

InertiaSchedule& InertiaSchedule::with_cap(double cap) {
  if (!(cap >= 0.0 && cap <= 1.0)) throw InvalidArgument("schedule cap must lie in [0, 1]");
  cap_ = cap;
  return *this;
}

InertiaSchedule& InertiaSchedule::with_literal_ratio(bool on) {
  literal_ratio_ = on;
  return *this;
}

double InertiaSchedule::t_after(std::size_t k, double t) const {
  const double kk = static_cast<double>(k);
  switch (kind_) {
    case Kind::Nesterov:
      return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    case Kind::Linear:
      return (kk + a_) / a_;
    case Kind::Power:
      return std::pow((kk + a_) / a_, d_);
    case Kind::Fixed:
      break;
  }
  throw InvalidArgument("fixed schedule has no t-sequence");
}

double InertiaSchedule::advance_t() {
  t_ = t_after(k_, t_);
  ++k_;
  return t_;
}

double InertiaSchedule::next_alpha() {
  if (kind_ == Kind::Fixed) {
    ++k_;
    return std::min(alpha_, cap_);
  }
  const bool first = k_ == 0;
  const double prev = t_;
  const double next = advance_t();
  if (first) return 0.0;
  double alpha;
  if (literal_ratio_) {
    alpha = prev > 1.0 ? next / (prev - 1.0) : 0.0;
  } else {
    alpha = (prev - 1.0) / next;
  }
  return std::clamp(alpha, 0.0, cap_);
}

void InertiaSchedule::reset() {
  k_ = 0;
  t_ = 0.0;
}

std::vector<double> alpha_sequence(InertiaSchedule s, std::size_t count) {
  s.reset();
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.next_alpha());
  return out;
}

std::vector<double> t_sequence(InertiaSchedule s, std::size_t count) {
  s.reset();
  std::vector<double> out{0.0};
  out.reserve(count + 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.advance_t());
  return out;
}

}  // namespace proxalt
