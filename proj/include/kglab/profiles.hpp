#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace kg {

/// A real function of one variable bundled with its first derivative.
///
/// Profiles are evaluated in extended precision internally so that the
/// residual checks can push finite-difference stencils below double rounding.
/// The double overloads simply round the extended result.
class SmoothProfile {
 public:
  using Fn = std::function<long double(long double)>;

  SmoothProfile(std::string label, Fn value, Fn derivative);

  /// Builds a profile whose derivative is a Richardson-extrapolated centered
  /// difference (h = 1e-5). Second-class: prefer an analytic derivative.
  static SmoothProfile with_numeric_derivative(std::string label, Fn value);

  double value(double u) const { return static_cast<double>(value_(u)); }
  double derivative(double u) const { return static_cast<double>(derivative_(u)); }
  long double value(long double u) const { return value_(u); }
  long double derivative(long double u) const { return derivative_(u); }

  const std::string& label() const noexcept { return label_; }
  bool numeric_derivative() const noexcept { return numeric_derivative_; }

 private:
  std::string label_;
  Fn value_;
  Fn derivative_;
  bool numeric_derivative_ = false;
};

namespace profiles {

SmoothProfile zero();
SmoothProfile constant(double c);
/// slope * u + offset
SmoothProfile linear(double slope, double offset = 0.0);
/// amplitude * exp(-((u - center) / width)^2)
SmoothProfile gaussian(double amplitude = 1.0, double width = 1.0, double center = 0.0);
/// amplitude * sin(frequency * u + phase)
SmoothProfile sine(double amplitude = 1.0, double frequency = 1.0, double phase = 0.0);
/// 2 s / (s^2 + a) with s = u - shift; the switch-on ramp used for the scattering examples.
SmoothProfile rational_ramp(double a, double shift = 0.0);

}  // namespace profiles

/// Unit step with the convention theta(0) = 1.
inline double step_function(double x) { return x >= 0.0 ? 1.0 : 0.0; }

/// Time-dependent coupling lambda(t): a smooth profile gated on at `switch_on`.
///
/// lambda(t) = 0 for t < switch_on and profile(t) for t >= switch_on. A
/// switch-on of -infinity means the coupling is always active.
class LambdaProfile {
 public:
  LambdaProfile(SmoothProfile profile, double switch_on);

  /// Always-on coupling (switch_on = -inf).
  static LambdaProfile always_on(SmoothProfile profile);
  /// The switch-on ramp 2 s/(s^2 + a), s = t - switch_on, for t >= switch_on.
  static LambdaProfile ramp(double a, double switch_on = 0.0);
  static LambdaProfile off();

  double operator()(double t) const;
  /// Right derivative at the switch-on instant.
  double derivative(double t) const;

  double switch_on() const noexcept { return switch_on_; }
  bool has_finite_switch_on() const noexcept { return switch_on_ > -std::numeric_limits<double>::infinity(); }
  /// True when the gated profile joins zero continuously at switch-on.
  bool continuity_checked() const noexcept { return continuous_; }
  /// True when lambda vanishes identically.
  bool identically_zero() const noexcept { return zero_; }
  /// Parameter `a` when this is the ramp profile.
  std::optional<double> ramp_parameter() const noexcept { return ramp_a_; }
  const SmoothProfile& profile() const noexcept { return profile_; }

 private:
  SmoothProfile profile_;
  double switch_on_;
  bool continuous_ = false;
  bool zero_ = false;
  std::optional<double> ramp_a_;
};

}  // namespace kg
