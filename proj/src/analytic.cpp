#include "kglab/analytic.hpp"

#include <cmath>
#include <limits>

#include "kglab/errors.hpp"
#include "kglab/quadrature.hpp"

namespace kg {

namespace {

constexpr cplx I{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_wave_for_chi(const PlaneWaveParams& w) {
  if (!(w.m > 0.0)) throw DomainError("chi case requires mass m > 0");
  if (w.branch != 1 && w.branch != -1) throw DomainError("branch must be +1 or -1");
}

template <class T>
std::complex<T> chi_field_impl(const ChiCase& c, T x, T t) {
  const T E = c.wave.energy, p = c.wave.p;
  const T phase = E * t - p * x + c.chi1.value(x + t) / (2 * (E + p)) + c.chi2.value(x - t) / (2 * (E - p));
  return {std::cos(phase), std::sin(phase)};
}

template <class T>
T chi_potential_impl(const SmoothProfile& chi1, const SmoothProfile& chi2, double m, T x, T t) {
  if (!(m > 0.0)) throw DomainError("chi scalar potential requires m > 0");
  const T d1 = chi1.derivative(x + t);
  const T d2 = chi2.derivative(x - t);
  const T m2 = T(m) * T(m);
  return d1 - d2 - d1 * d2 / m2;
}

}  // namespace

PlaneWaveParams dispersion(double p, double m, int branch) {
  if (!(m >= 0.0)) throw DomainError("mass must be non-negative");
  if (branch != 1 && branch != -1) throw DomainError("branch must be +1 or -1");
  return {p, m, branch, branch * std::hypot(p, m)};
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::kPlusX: return "+x";
    case Direction::kMinusX: return "-x";
    case Direction::kEven: return "even";
    case Direction::kOdd: return "odd";
  }
  return "?";
}

void validate(const CaseSpec& spec) {
  std::visit(Overloaded{
                 [](const ChiCase& c) { require_wave_for_chi(c.wave); },
                 [](const DeltaCase& c) {
                   if (!std::isfinite(c.k) || c.k == 0.0) throw DomainError("k must be finite and non-zero");
                   if (!std::isfinite(c.t1)) throw DomainError("t1 must be finite");
                   if (!c.lam.continuity_checked()) throw DomainError("lambda must be continuous at switch-on");
                 },
                 [](const StepElectricCase& c) {
                   if (!std::isfinite(c.k) || c.k == 0.0) throw DomainError("k must be finite and non-zero");
                   if (!std::isfinite(c.t1)) throw DomainError("t1 must be finite");
                   if (!c.lam.continuity_checked()) throw DomainError("lambda must be continuous at switch-on");
                   if (!c.lam.identically_zero() && !c.lam.has_finite_switch_on())
                     throw DomainError("step electric case needs a finite lambda switch-on time");
                   if (c.direction != Direction::kPlusX && c.direction != Direction::kMinusX)
                     throw DomainError("step electric case supports directions +x and -x only");
                 },
             },
             spec);
}

std::string case_label(const CaseSpec& spec) {
  return std::visit(Overloaded{
                        [](const ChiCase&) { return std::string("A"); },
                        [](const DeltaCase&) { return std::string("B"); },
                        [](const StepElectricCase&) { return std::string("C"); },
                    },
                    spec);
}

double chi_scalar_potential(const SmoothProfile& chi1, const SmoothProfile& chi2, double m, double x, double t) {
  return static_cast<double>(chi_potential_impl<long double>(chi1, chi2, m, x, t));
}

long double chi_scalar_potential(const SmoothProfile& chi1, const SmoothProfile& chi2, double m, long double x,
                                 long double t) {
  return chi_potential_impl<long double>(chi1, chi2, m, x, t);
}

cplx chi_exact_field(const ChiCase& c, double x, double t) {
  require_wave_for_chi(c.wave);
  const auto v = chi_field_impl<long double>(c, x, t);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> chi_exact_field(const ChiCase& c, long double x, long double t) {
  require_wave_for_chi(c.wave);
  return chi_field_impl<long double>(c, x, t);
}

double ramp_lambda(double a, double t) {
  if (!(a > 0.0)) throw DomainError("ramp parameter a must be positive");
  return step_function(t) * (2.0 * t / (t * t + a));
}

cplx ramp_reflection_closed_form(double k, double a, double t) {
  if (k == 0.0) throw DomainError("closed-form reflection needs k != 0");
  if (!(a > 0.0)) throw DomainError("ramp parameter a must be positive");
  if (t < 0.0) return 0.0;
  // (1 - e^{-ikt})/k^2 - it/k, with 1 - cos written as 2 sin^2 to keep small t accurate
  const double s = std::sin(0.5 * k * t);
  const double re = 2.0 * s * s / (k * k);
  const double im = (std::sin(k * t) - k * t) / (k * k);
  return (-2.0 / (t * t + a)) * cplx(re, im);
}

cplx delta_case_field(const DeltaCase& c, const CoefficientFn& reflected, double x, double t) {
  const double k = c.k;
  switch (c.direction) {
    case Direction::kPlusX:
      if (x < 0.0) return std::exp(I * (k * (t - x))) + reflected(t + x) * std::exp(I * (k * (t + x)));
      return (1.0 + reflected(t - x)) * std::exp(I * (k * (t - x)));
    case Direction::kMinusX:
      if (x < 0.0) return (1.0 + reflected(t + x)) * std::exp(I * (k * (t + x)));
      return std::exp(I * (k * (t + x))) + reflected(t - x) * std::exp(I * (k * (t - x)));
    case Direction::kEven:
      return parity_fields(c, reflected, x, t).even;
    case Direction::kOdd:
      return parity_fields(c, reflected, x, t).odd;
  }
  return 0.0;
}

ParityPair parity_fields(const DeltaCase& c, const CoefficientFn& reflected, double x, double t) {
  const double k = c.k;
  const cplx carrier = std::exp(I * (k * t));
  const cplx even = x < 0.0 ? std::cos(k * x) + reflected(t + x) * std::exp(I * (k * x))
                            : std::cos(k * x) + reflected(t - x) * std::exp(-I * (k * x));
  return {carrier * even, carrier * std::sin(k * x)};
}

double electric_phase(const LambdaProfile& lam, double t) {
  if (lam.identically_zero()) return 0.0;
  if (!lam.has_finite_switch_on()) throw DomainError("electric phase needs a finite switch-on time");
  const double t_on = lam.switch_on();
  if (t <= t_on) return 0.0;
  return 2.0 * quad::adaptive_simpson([&lam](double s) { return lam(s); }, t_on, t);
}

cplx step_electric_field(const StepElectricCase& c, const CoefficientFn& reflected, const PhaseFn& phase, double x,
                         double t) {
  const double k = c.k;
  switch (c.direction) {
    case Direction::kPlusX:
      if (x < 0.0) return std::exp(I * (k * (t - x))) + reflected(t + x) * std::exp(I * (k * (t + x)));
      {
        // transmitted amplitude (1 + D(u)) e^{-i Lambda(u)} at u = t - x, gauge phase e^{i Lambda(t)}
        const double u = t - x;
        return (1.0 + reflected(u)) * std::exp(I * (k * u + phase(t) - phase(u)));
      }
    case Direction::kMinusX:
      if (x < 0.0) {
        const double u = t + x;
        return (1.0 + reflected(u)) * std::exp(I * (k * u + phase(u)));
      }
      return (std::exp(I * (k * (t + x))) + reflected(t - x) * std::exp(I * (k * (t - x)))) * std::exp(I * phase(t));
    default:
      throw DomainError("step electric field supports directions +x and -x only");
  }
}

}  // namespace kg
