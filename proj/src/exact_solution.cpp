#include "kglab/exact_solution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kglab/errors.hpp"
#include "kglab/quadrature.hpp"

namespace kg {

/// Cumulative 2 * integral of lambda from switch-on, tabulated like the
/// integrating-factor kernel so that it is smooth in t.
class ExactSolution::PhaseTable {
 public:
  PhaseTable(const LambdaProfile& lam, double t_end, std::size_t segments = 512)
      : lam_(lam), t_on_(lam.identically_zero() ? std::numeric_limits<double>::infinity() : lam.switch_on()) {
    if (t_end <= t_on_) {
      knots_ = {t_on_};
      values_ = {0.0};
      return;
    }
    const double span = t_end - t_on_;
    knots_.resize(segments + 1);
    values_.assign(segments + 1, 0.0);
    for (std::size_t j = 0; j <= segments; ++j)
      knots_[j] = t_on_ + span * static_cast<double>(j) / static_cast<double>(segments);
    knots_.back() = t_end;
    auto f = [this](double s) { return lam_(s); };
    for (std::size_t j = 0; j < segments; ++j)
      values_[j + 1] = values_[j] + 2.0 * quad::adaptive_simpson(f, knots_[j], knots_[j + 1],
                                                                 quad::kDefaultTolerance / segments);
  }

  double operator()(double t) const {
    if (t <= t_on_) return 0.0;
    if (knots_.size() < 2 || t > knots_.back() + 1e-12 * std::max(1.0, std::abs(knots_.back())))
      throw DomainError("electric phase requested outside the tabulated window");
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t seg = std::min<std::size_t>(static_cast<std::size_t>(it - knots_.begin()) - 1, knots_.size() - 2);
    return values_[seg] + 2.0 * quad::gauss_legendre([this](double s) { return lam_(s); }, knots_[seg], t);
  }

 private:
  LambdaProfile lam_;
  double t_on_;
  std::vector<double> knots_;
  std::vector<double> values_;
};

namespace {

struct ScatteringView {
  double k;
  const LambdaProfile* lam;
  cplx initial;
  double t1;
  Direction direction;
};

std::optional<ScatteringView> scattering_view(const CaseSpec& spec) {
  if (const auto* b = std::get_if<DeltaCase>(&spec)) return ScatteringView{b->k, &b->lam, b->initial, b->t1, b->direction};
  if (const auto* c = std::get_if<StepElectricCase>(&spec))
    return ScatteringView{c->k, &c->lam, c->initial, c->t1, c->direction};
  return std::nullopt;
}

}  // namespace

ExactSolution::ExactSolution(CaseSpec spec, const Window& window, CoefficientSource source)
    : spec_(std::move(spec)), window_(window) {
  validate(spec_);
  if (!(window_.x_max >= window_.x_min) || !(window_.t_max >= window_.t_min))
    throw DomainError("exact-solution window is empty");
  const auto view = scattering_view(spec_);
  if (!view) return;

  const double reach = std::max(std::abs(window_.x_min), std::abs(window_.x_max));
  const double u_max = window_.t_max + reach;
  const LambdaProfile& lam = *view->lam;
  const bool is_delta = std::holds_alternative<DeltaCase>(spec_);

  const bool closed_ok = is_delta && lam.ramp_parameter() && view->initial == cplx{} && view->t1 == lam.switch_on();
  if (source == CoefficientSource::kClosedForm && !closed_ok)
    throw DomainError("no closed-form reflection coefficient for this case");
  if (closed_ok && source != CoefficientSource::kOdeKernel) {
    closed_form_a_ = *lam.ramp_parameter();
  } else {
    CoefficientMode mode = CoefficientMode::kDeltaReflection;
    if (!is_delta)
      mode = view->direction == Direction::kMinusX ? CoefficientMode::kElectricMinus : CoefficientMode::kElectricPlus;
    auto ode = build_coefficient_ode(mode, view->k, lam, view->t1, view->initial);
    kernel_ = std::make_shared<const IntegratingFactorSolution>(std::move(ode), std::max(u_max, view->t1));
  }
  if (!is_delta) phase_ = std::make_shared<const PhaseTable>(lam, u_max);
}

const LambdaProfile* ExactSolution::lambda() const noexcept {
  const auto view = scattering_view(spec_);
  return view ? view->lam : nullptr;
}

cplx ExactSolution::reflection(double u) const {
  const auto view = scattering_view(spec_);
  if (!view) throw DomainError("case A has no reflection coefficient");
  if (closed_form_a_) return ramp_reflection_closed_form(view->k, *closed_form_a_, u - view->lam->switch_on());
  if (u >= view->t1) return (*kernel_)(u);
  // Before t1 the coefficient can only be continued where the coupling is off.
  const LambdaProfile& lam = *view->lam;
  if (lam.identically_zero() || (lam.has_finite_switch_on() && view->t1 <= lam.switch_on()))
    return view->initial * std::exp(cplx(0.0, -view->k * (u - view->t1)));
  throw DomainError("reflection coefficient requested before t1 while the coupling is active");
}

double ExactSolution::phase(double t) const { return phase_ ? (*phase_)(t) : 0.0; }

cplx ExactSolution::operator()(double x, double t) const {
  const auto refl = [this](double u) { return reflection(u); };
  if (const auto* a = std::get_if<ChiCase>(&spec_)) return chi_exact_field(*a, x, t);
  if (const auto* b = std::get_if<DeltaCase>(&spec_)) return delta_case_field(*b, refl, x, t);
  const auto& c = std::get<StepElectricCase>(spec_);
  return step_electric_field(
      c, refl, [this](double s) { return phase(s); }, x, t);
}

std::complex<long double> ExactSolution::eval_ext(long double x, long double t) const {
  if (const auto* a = std::get_if<ChiCase>(&spec_)) return chi_exact_field(*a, x, t);
  const cplx v = (*this)(static_cast<double>(x), static_cast<double>(t));
  return {v.real(), v.imag()};
}

cplx ExactSolution::reflected_coefficient_at(double x, double t) const {
  const auto view = scattering_view(spec_);
  if (!view) return 0.0;
  switch (view->direction) {
    case Direction::kPlusX: return x < 0.0 ? reflection(t + x) : cplx{};
    case Direction::kMinusX: return x < 0.0 ? cplx{} : reflection(t - x);
    case Direction::kEven: return x < 0.0 ? reflection(t + x) : reflection(t - x);
    case Direction::kOdd: return 0.0;
  }
  return 0.0;
}

}  // namespace kg
