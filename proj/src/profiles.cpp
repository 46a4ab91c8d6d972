#include "kglab/profiles.hpp"

#include <cmath>
#include <utility>

#include "kglab/errors.hpp"

namespace kg {

SmoothProfile::SmoothProfile(std::string label, Fn value, Fn derivative)
    : label_(std::move(label)), value_(std::move(value)), derivative_(std::move(derivative)) {
  if (!value_ || !derivative_) throw DomainError("profile '" + label_ + "' needs both value and derivative");
}

SmoothProfile SmoothProfile::with_numeric_derivative(std::string label, Fn value) {
  if (!value) throw DomainError("profile '" + label + "' has no value function");
  auto d = [f = value](long double u) {
    constexpr long double h = 1e-5L;
    const long double d1 = (f(u + h) - f(u - h)) / (2 * h);
    const long double d2 = (f(u + h / 2) - f(u - h / 2)) / h;
    return (4 * d2 - d1) / 3;
  };
  SmoothProfile out(std::move(label), std::move(value), d);
  out.numeric_derivative_ = true;
  return out;
}

namespace profiles {

SmoothProfile zero() {
  return {"zero", [](long double) { return 0.0L; }, [](long double) { return 0.0L; }};
}

SmoothProfile constant(double c) {
  const long double cl = c;
  return {"constant", [cl](long double) { return cl; }, [](long double) { return 0.0L; }};
}

SmoothProfile linear(double slope, double offset) {
  const long double s = slope, o = offset;
  return {"linear", [s, o](long double u) { return s * u + o; }, [s](long double) { return s; }};
}

SmoothProfile gaussian(double amplitude, double width, double center) {
  if (!(width > 0.0)) throw DomainError("gaussian width must be positive");
  const long double A = amplitude, w = width, c = center;
  return {"gaussian",
          [=](long double u) {
            const long double s = (u - c) / w;
            return A * std::exp(-s * s);
          },
          [=](long double u) {
            const long double s = (u - c) / w;
            return -2 * A * s / w * std::exp(-s * s);
          }};
}

SmoothProfile sine(double amplitude, double frequency, double phase) {
  const long double A = amplitude, f = frequency, ph = phase;
  return {"sine", [=](long double u) { return A * std::sin(f * u + ph); },
          [=](long double u) { return A * f * std::cos(f * u + ph); }};
}

SmoothProfile rational_ramp(double a, double shift) {
  if (!(a > 0.0)) throw DomainError("ramp parameter a must be positive");
  const long double al = a, sh = shift;
  return {"ramp",
          [=](long double u) {
            const long double s = u - sh;
            return 2 * s / (s * s + al);
          },
          [=](long double u) {
            const long double s = u - sh;
            const long double q = s * s + al;
            return 2 * (al - s * s) / (q * q);
          }};
}

}  // namespace profiles

LambdaProfile::LambdaProfile(SmoothProfile profile, double switch_on)
    : profile_(std::move(profile)), switch_on_(switch_on) {
  if (std::isnan(switch_on_) || switch_on_ == std::numeric_limits<double>::infinity())
    throw DomainError("lambda switch-on time must be finite or -inf");
  continuous_ = !has_finite_switch_on() || std::abs(profile_.value(switch_on_)) <= 1e-12;
}

LambdaProfile LambdaProfile::always_on(SmoothProfile profile) {
  return LambdaProfile(std::move(profile), -std::numeric_limits<double>::infinity());
}

LambdaProfile LambdaProfile::ramp(double a, double switch_on) {
  if (!(a > 0.0)) throw DomainError("ramp parameter a must be positive");
  if (!std::isfinite(switch_on)) throw DomainError("ramp switch-on must be finite");
  LambdaProfile out(profiles::rational_ramp(a, switch_on), switch_on);
  out.ramp_a_ = a;
  return out;
}

LambdaProfile LambdaProfile::off() {
  LambdaProfile out = always_on(profiles::zero());
  out.zero_ = true;
  return out;
}

double LambdaProfile::operator()(double t) const {
  if (zero_ || t < switch_on_) return 0.0;
  return profile_.value(t);
}

double LambdaProfile::derivative(double t) const {
  if (zero_ || t < switch_on_) return 0.0;
  return profile_.derivative(t);
}

}  // namespace kg
