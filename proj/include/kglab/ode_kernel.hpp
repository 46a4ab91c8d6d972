#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kglab/profiles.hpp"

namespace kg {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(double)>;

/// dy/dt + coeff(t) y = source(t), y(t1) = y1.
///
/// `t0` is the lower limit of the accumulated coefficient integral; the
/// solution does not depend on it. `breakpoints` lists times where coeff or
/// source lose smoothness (for example a switch-on instant).
struct LinearFirstOrderOde {
  ComplexFn coeff;
  ComplexFn source;
  double t1 = 0.0;
  cplx y1 = 0.0;
  double t0 = 0.0;
  std::vector<double> breakpoints;
};

/// Which reflection-coefficient equation to build.
enum class CoefficientMode {
  kDeltaReflection,  // c = ik + lambda,    s = -lambda
  kElectricPlus,     // c = i(k - lambda),  s = i lambda     (incident from the left)
  kElectricMinus,    // c = i(k + lambda),  s = -i lambda    (incident from the right)
};

/// Integral of `integrand` from t0 to t by adaptive Simpson (abs tol 1e-12).
cplx accumulate(const ComplexFn& integrand, double t0, double t);

/// Builds the coefficient equation for a real coupling. Initial data default
/// to y1 = 0 at the switch-on time; pass `t1` for an always-on coupling.
LinearFirstOrderOde build_coefficient_ode(CoefficientMode mode, double k, const LambdaProfile& lam, cplx y1 = 0.0);
LinearFirstOrderOde build_coefficient_ode(CoefficientMode mode, double k, const LambdaProfile& lam, double t1,
                                          cplx y1);

/// Same, for a complex-valued coupling function. This is the form in which the
/// substitutions lambda -> -i lambda and lambda -> -lambda are expressed.
LinearFirstOrderOde build_coefficient_ode(CoefficientMode mode, double k, ComplexFn lam, double t1, cplx y1,
                                          std::vector<double> breakpoints = {});

/// Tabulated integrating-factor solution on [t1, t_end].
///
///   y(t) = e^{-C(t)} [ y1 e^{C(t1)} + int_{t1}^{t} s(t') e^{C(t')} dt' ],  C(t) = int_{t0}^{t} c.
///
/// Cumulative values of both integrals are stored at checkpoints (adaptive
/// Simpson per segment). Between checkpoints the remainder is a 16-point
/// Gauss-Legendre panel, nested for the inner exponent, so y is a smooth
/// function of t. Immutable after construction.
class IntegratingFactorSolution {
 public:
  static constexpr std::size_t kDefaultCheckpoints = 512;

  IntegratingFactorSolution(LinearFirstOrderOde ode, double t_end, std::size_t checkpoints = kDefaultCheckpoints);

  cplx operator()(double t) const;
  double t_begin() const noexcept { return knots_.front(); }
  double t_end() const noexcept { return knots_.back(); }
  const LinearFirstOrderOde& ode() const noexcept { return ode_; }

 private:
  std::size_t segment_of(double t) const;
  cplx exponent_at(std::size_t seg, double t) const;

  LinearFirstOrderOde ode_;
  cplx offset_;                     // C(t1) = int_{t0}^{t1} c
  std::vector<double> knots_;       // checkpoints, breakpoints included
  std::vector<cplx> exponent_;      // C at knots
  std::vector<cplx> inner_;         // int_{t1}^{knot} s e^{C}
};

/// y(t) for t >= t1. Builds a table spanning [t1, t].
cplx solve_integrating_factor(const LinearFirstOrderOde& ode, double t);

/// Classical RK4 from (t1, y1) to t with step h; the last step is shortened to
/// land exactly on t.
cplx solve_rk4_oracle(const LinearFirstOrderOde& ode, double t, double h);

/// RK4 march through ascending `times` (each >= t1) in one pass, landing
/// exactly on every requested time.
std::vector<cplx> solve_rk4_oracle(const LinearFirstOrderOde& ode, std::span<const double> times, double h);

}  // namespace kg
