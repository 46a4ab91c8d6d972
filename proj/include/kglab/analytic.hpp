#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>

#include "kglab/profiles.hpp"

// Closed-form solutions of the 1+1D Klein-Gordon equation
//
//   (d/dt - i Ve)^2 phi - phi_xx + (m^2 + Vs) phi = 0
//
// for three time-dependent potentials: a scalar potential built from two
// light-cone profiles (ChiCase), a massless delta-function scalar potential
// (DeltaCase) and a massless step electric potential (StepElectricCase).
namespace kg {

using cplx = std::complex<double>;

/// Free-mode quantum numbers; `energy` obeys E = branch * sqrt(p^2 + m^2).
struct PlaneWaveParams {
  double p = 0.0;
  double m = 0.0;
  int branch = +1;
  double energy = 0.0;
};

PlaneWaveParams dispersion(double p, double m, int branch = +1);

/// Which scattering solution to evaluate. Even/odd are only meaningful for the
/// delta potential.
enum class Direction { kPlusX, kMinusX, kEven, kOdd };

std::string to_string(Direction d);

struct ChiCase {
  SmoothProfile chi1;  // travels along x + t
  SmoothProfile chi2;  // travels along x - t
  PlaneWaveParams wave;
};

struct DeltaCase {
  double k = 1.0;
  LambdaProfile lam = LambdaProfile::off();
  cplx initial = 0.0;  // reflection coefficient at t1
  double t1 = 0.0;
  Direction direction = Direction::kPlusX;
};

struct StepElectricCase {
  double k = 1.0;
  LambdaProfile lam = LambdaProfile::off();
  cplx initial = 0.0;  // reflection coefficient at t1
  double t1 = 0.0;
  Direction direction = Direction::kPlusX;
};

using CaseSpec = std::variant<ChiCase, DeltaCase, StepElectricCase>;

/// Throws DomainError when a case violates its preconditions.
void validate(const CaseSpec& spec);
std::string case_label(const CaseSpec& spec);

/// chi1'(x+t) - chi2'(x-t) - chi1'(x+t) chi2'(x-t) / m^2. Requires m > 0.
double chi_scalar_potential(const SmoothProfile& chi1, const SmoothProfile& chi2, double m, double x, double t);
long double chi_scalar_potential(const SmoothProfile& chi1, const SmoothProfile& chi2, double m, long double x,
                                 long double t);

/// Plane wave e^{i(Et - px)} dressed by the phases chi1/(2(E+p)) and chi2/(2(E-p)).
cplx chi_exact_field(const ChiCase& c, double x, double t);
std::complex<long double> chi_exact_field(const ChiCase& c, long double x, long double t);

/// The ramp coupling 2t/(t^2 + a) theta(t).
double ramp_lambda(double a, double t);

/// Reflection coefficient for the ramp coupling with zero initial reflection at
/// t = 0, in closed form. Requires k != 0 and a > 0; zero for t < 0.
cplx ramp_reflection_closed_form(double k, double a, double t);

/// Coefficient of a reflected wave as a function of its light-cone argument.
using CoefficientFn = std::function<cplx(double)>;
/// Accumulated electric phase 2 * integral of lambda, as a function of time.
using PhaseFn = std::function<double(double)>;

/// Scattering solution for the delta potential, direction +x or -x. The
/// transmitted coefficient is 1 + reflected, and both directions share the
/// same coefficient function.
cplx delta_case_field(const DeltaCase& c, const CoefficientFn& reflected, double x, double t);

struct ParityPair {
  cplx even;
  cplx odd;
};

/// Even and odd combinations of the two scattering solutions in closed form.
ParityPair parity_fields(const DeltaCase& c, const CoefficientFn& reflected, double x, double t);

/// 2 * integral_{t_on}^{t} lambda by adaptive quadrature (abs tol 1e-12).
/// Requires a finite switch-on unless lambda vanishes identically.
double electric_phase(const LambdaProfile& lam, double t);

/// Scattering solution for the step electric potential 2 lambda(t) theta(x).
/// `reflected` is the reflection coefficient for the chosen direction (the two
/// directions obey different coefficient equations).
cplx step_electric_field(const StepElectricCase& c, const CoefficientFn& reflected, const PhaseFn& phase, double x,
                         double t);

}  // namespace kg
