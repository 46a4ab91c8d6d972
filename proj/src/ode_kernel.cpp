#include "kglab/ode_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kglab/errors.hpp"
#include "kglab/quadrature.hpp"

namespace kg {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kMaxRk4Steps = 1e8;

cplx rk4_step(const LinearFirstOrderOde& ode, double t, cplx y, double h) {
  auto f = [&ode](double s, cplx v) { return ode.source(s) - ode.coeff(s) * v; };
  const cplx k1 = f(t, y);
  const cplx k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
  const cplx k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
  const cplx k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Marches from (t, y) to `target` with nominal step h.
cplx rk4_march(const LinearFirstOrderOde& ode, double t, cplx y, double target, double h) {
  const double span = target - t;
  if (span <= 0.0) return y;
  const double ratio = span / h;
  if (!(ratio <= kMaxRk4Steps)) throw NumericFailure("RK4 step count exceeds 1e8");
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9)));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double ti = t + static_cast<double>(i) * h;
    y = rk4_step(ode, ti, y, h);
  }
  const double t_last = t + static_cast<double>(n - 1) * h;
  return rk4_step(ode, t_last, y, target - t_last);
}

}  // namespace

cplx accumulate(const ComplexFn& integrand, double t0, double t) {
  return quad::adaptive_simpson(integrand, t0, t);
}

LinearFirstOrderOde build_coefficient_ode(CoefficientMode mode, double k, ComplexFn lam, double t1, cplx y1,
                                          std::vector<double> breakpoints) {
  LinearFirstOrderOde ode;
  ode.t1 = t1;
  ode.t0 = t1;
  ode.y1 = y1;
  ode.breakpoints = std::move(breakpoints);
  switch (mode) {
    case CoefficientMode::kDeltaReflection:
      ode.coeff = [k, lam](double t) { return I * k + lam(t); };
      ode.source = [lam](double t) { return -lam(t); };
      break;
    case CoefficientMode::kElectricPlus:
      ode.coeff = [k, lam](double t) { return I * (k - lam(t)); };
      ode.source = [lam](double t) { return I * lam(t); };
      break;
    case CoefficientMode::kElectricMinus:
      ode.coeff = [k, lam](double t) { return I * (k + lam(t)); };
      ode.source = [lam](double t) { return -I * lam(t); };
      break;
  }
  return ode;
}

LinearFirstOrderOde build_coefficient_ode(CoefficientMode mode, double k, const LambdaProfile& lam, double t1,
                                          cplx y1) {
  if (!lam.continuity_checked()) throw DomainError("coefficient equation requires a continuous lambda");
  if (!std::isfinite(t1)) throw DomainError("initial time must be finite");
  std::vector<double> breaks;
  if (lam.has_finite_switch_on()) breaks.push_back(lam.switch_on());
  return build_coefficient_ode(
      mode, k, [lam](double t) { return cplx(lam(t)); }, t1, y1, std::move(breaks));
}

LinearFirstOrderOde build_coefficient_ode(CoefficientMode mode, double k, const LambdaProfile& lam, cplx y1) {
  if (!lam.has_finite_switch_on()) throw DomainError("always-on coupling needs an explicit initial time");
  return build_coefficient_ode(mode, k, lam, lam.switch_on(), y1);
}

IntegratingFactorSolution::IntegratingFactorSolution(LinearFirstOrderOde ode, double t_end, std::size_t checkpoints)
    : ode_(std::move(ode)) {
  if (!ode_.coeff || !ode_.source) throw DomainError("ODE needs coefficient and source functions");
  const double t1 = ode_.t1;
  if (!std::isfinite(t1) || !std::isfinite(t_end)) throw DomainError("ODE interval must be finite");
  if (t_end < t1) throw DomainError("backward solving is not supported (t < t1)");
  if (checkpoints == 0) throw DomainError("need at least one checkpoint segment");

  const double span = t_end - t1;
  knots_.reserve(checkpoints + 1 + ode_.breakpoints.size());
  knots_.push_back(t1);
  if (span > 0.0) {
    for (std::size_t j = 1; j < checkpoints; ++j)
      knots_.push_back(t1 + span * static_cast<double>(j) / static_cast<double>(checkpoints));
    for (double b : ode_.breakpoints)
      if (b > t1 && b < t_end) knots_.push_back(b);
    knots_.push_back(t_end);
    std::sort(knots_.begin(), knots_.end());
    const double min_gap = 1e-12 * span;
    knots_.erase(std::unique(knots_.begin(), knots_.end(),
                             [min_gap](double a, double b) { return b - a < min_gap; }),
                 knots_.end());
    knots_.back() = t_end;
  }

  offset_ = accumulate(ode_.coeff, ode_.t0, t1);
  exponent_.assign(knots_.size(), offset_);
  inner_.assign(knots_.size(), cplx{});
  for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
    const double a = knots_[j], b = knots_[j + 1];
    const double tol = quad::kDefaultTolerance * std::max((b - a) / span, 1e-3);
    exponent_[j + 1] = exponent_[j] + quad::adaptive_simpson(ode_.coeff, a, b, tol);
    auto integrand = [this, j](double s) { return ode_.source(s) * std::exp(exponent_at(j, s)); };
    inner_[j + 1] = inner_[j] + quad::adaptive_simpson(integrand, a, b, tol);
  }
}

std::size_t IntegratingFactorSolution::segment_of(double t) const {
  if (knots_.size() < 2) return 0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - knots_.begin() - 1, 0));
  return std::min(idx, knots_.size() - 2);
}

cplx IntegratingFactorSolution::exponent_at(std::size_t seg, double t) const {
  if (t == knots_[seg]) return exponent_[seg];
  return exponent_[seg] + quad::gauss_legendre(ode_.coeff, knots_[seg], t);
}

cplx IntegratingFactorSolution::operator()(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end() - t_begin()));
  if (t < t_begin() - slack || t > t_end() + slack)
    throw DomainError("time " + std::to_string(t) + " outside tabulated interval [" + std::to_string(t_begin()) +
                      ", " + std::to_string(t_end()) + "]");
  if (knots_.size() < 2) return ode_.y1;
  const std::size_t seg = segment_of(t);
  const double a = knots_[seg];
  cplx inner = inner_[seg];
  if (t != a)
    inner += quad::gauss_legendre([this, seg](double s) { return ode_.source(s) * std::exp(exponent_at(seg, s)); },
                                  a, t);
  return std::exp(-exponent_at(seg, t)) * (ode_.y1 * std::exp(offset_) + inner);
}

cplx solve_integrating_factor(const LinearFirstOrderOde& ode, double t) {
  if (t < ode.t1) throw DomainError("backward solving is not supported (t < t1)");
  return IntegratingFactorSolution(ode, t)(t);
}

cplx solve_rk4_oracle(const LinearFirstOrderOde& ode, double t, double h) {
  if (!(h > 0.0)) throw DomainError("RK4 step must be positive");
  if (t < ode.t1) throw DomainError("backward solving is not supported (t < t1)");
  return rk4_march(ode, ode.t1, ode.y1, t, h);
}

std::vector<cplx> solve_rk4_oracle(const LinearFirstOrderOde& ode, std::span<const double> times, double h) {
  if (!(h > 0.0)) throw DomainError("RK4 step must be positive");
  std::vector<cplx> out;
  out.reserve(times.size());
  double t = ode.t1;
  cplx y = ode.y1;
  for (double target : times) {
    if (target < t) throw DomainError("RK4 batch times must be ascending and >= t1");
    y = rk4_march(ode, t, y, target, h);
    t = target;
    out.push_back(y);
  }
  return out;
}

}  // namespace kg
