#pragma once

#include <complex>
#include <memory>
#include <optional>

#include "kglab/analytic.hpp"
#include "kglab/ode_kernel.hpp"

namespace kg {

/// How the reflection coefficient of cases B and C is obtained.
enum class CoefficientSource {
  kAuto,        // closed form when one exists, otherwise the integrating-factor kernel
  kClosedForm,  // ramp coupling with zero initial reflection at switch-on only
  kOdeKernel,
};

/// Space-time window over which an exact solution will be queried.
struct Window {
  double x_min = -1.0;
  double x_max = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;
};

/// A CaseSpec bound to its coefficient and phase functions, ready to be
/// sampled anywhere inside the declared window. Cheap to copy; the tables are
/// shared and immutable, so concurrent evaluation is safe.
class ExactSolution {
 public:
  ExactSolution(CaseSpec spec, const Window& window, CoefficientSource source = CoefficientSource::kAuto);

  cplx operator()(double x, double t) const;
  /// Extended-precision evaluation. Only the chi case is computed natively in
  /// long double; the others are promoted from double.
  std::complex<long double> eval_ext(long double x, long double t) const;

  /// Reflection coefficient at light-cone argument u (cases B and C).
  cplx reflection(double u) const;
  /// Coefficient of the reflected wave present at (x, t); zero where the
  /// chosen solution has no reflected piece.
  cplx reflected_coefficient_at(double x, double t) const;
  /// Accumulated electric phase 2 * integral lambda (case C; zero otherwise).
  double phase(double t) const;

  const CaseSpec& spec() const noexcept { return spec_; }
  const Window& window() const noexcept { return window_; }
  bool uses_closed_form() const noexcept { return closed_form_a_.has_value(); }
  /// Coupling of cases B and C, nullptr for case A.
  const LambdaProfile* lambda() const noexcept;

 private:
  class PhaseTable;

  CaseSpec spec_;
  Window window_;
  std::optional<double> closed_form_a_;
  std::shared_ptr<const IntegratingFactorSolution> kernel_;
  std::shared_ptr<const PhaseTable> phase_;
};

}  // namespace kg
