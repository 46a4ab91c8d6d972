#include "kglab/pde_solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "kglab/errors.hpp"
#include "leapfrog_kernels.hpp"

namespace kg {

std::optional<std::size_t> Grid1D::origin_index() const noexcept {
  if (!(x_min < 0.0 && x_max > 0.0) || nx == 0) return std::nullopt;
  const double r = -x_min / dx();
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, r)) return std::nullopt;
  return static_cast<std::size_t>(n);
}

double Grid1D::x(std::size_t j) const noexcept {
  if (const auto j0 = origin_index())
    return (static_cast<double>(j) - static_cast<double>(*j0)) * dx();
  return x_min + static_cast<double>(j) * dx();
}

Grid1D Grid1D::with_courant(double x_min, double x_max, std::size_t nx, double courant) {
  Grid1D g{x_min, x_max, nx, 0.0};
  g.dt = courant * g.dx();
  return g;
}

Grid1D Grid1D::fitted(double x_min, double x_max, std::size_t nx, double duration, double max_courant) {
  Grid1D g{x_min, x_max, nx, 0.0};
  if (!(duration > 0.0)) throw DomainError("fitted grid needs a positive duration");
  const double steps = std::ceil(duration / (max_courant * g.dx()) - 1e-9);
  g.dt = duration / std::max(1.0, steps);
  return g;
}

void validate(const Grid1D& grid, double max_courant) {
  if (!(grid.x_max > grid.x_min)) throw DomainError("grid needs x_max > x_min");
  if (grid.nx < 2) throw DomainError("grid needs at least 2 intervals");
  if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) throw DomainError("grid needs a positive time step");
  if (grid.courant() > max_courant * (1.0 + 1e-12))
    throw DomainError("courant number " + std::to_string(grid.courant()) + " exceeds " + std::to_string(max_courant));
}

LeapfrogSolver::LeapfrogSolver(ExactSolution exact, Grid1D grid, SolverOptions options)
    : exact_(std::move(exact)), grid_(grid), options_(options) {
  if (options_.max_courant > 1.0) throw DomainError("max courant above 1 is unstable");
  validate(grid_, options_.max_courant);
  xs_.resize(grid_.size());
  for (std::size_t j = 0; j < xs_.size(); ++j) xs_[j] = grid_.x(j);

  weights_.assign(grid_.size(), 0.0);
  const auto j0 = grid_.origin_index();
  const CaseSpec& spec = exact_.spec();
  if (std::holds_alternative<DeltaCase>(spec)) {
    if (!j0) throw DomainError("delta potential needs a grid node at x = 0");
    if (*j0 < 1 || *j0 + 1 >= grid_.size()) throw DomainError("x = 0 must be an interior node");
    if (options_.delta == DeltaStencil::kCellIntegrated) {
      weights_[*j0] = 1.0 / grid_.dx();
    } else {
      const double w = 2.0 * grid_.dx();
      double mass = 0.0;
      for (std::size_t j = 0; j < xs_.size(); ++j) {
        weights_[j] = std::exp(-(xs_[j] * xs_[j]) / (w * w));
        mass += weights_[j] * grid_.dx();
      }
      for (double& v : weights_) v /= mass;
    }
  } else if (std::holds_alternative<StepElectricCase>(spec)) {
    for (std::size_t j = 0; j < xs_.size(); ++j) weights_[j] = step_function(xs_[j]);
    if (j0 && options_.step_node == StepNodeCoupling::kCellAverage) weights_[*j0] = 0.5;
  }
}

FieldFrame LeapfrogSolver::sample_exact(double t) const {
  FieldFrame f{t, std::vector<cplx>(xs_.size())};
  for (std::size_t j = 0; j < xs_.size(); ++j) f.values[j] = exact_(xs_[j], t);
  return f;
}

LeapfrogState LeapfrogSolver::init_from_exact(double t_start) const {
  return {sample_exact(t_start - grid_.dt), sample_exact(t_start), 0, t_start};
}

void LeapfrogSolver::advance(LeapfrogState& state) const {
  const std::size_t n = xs_.size();
  if (state.curr.values.size() != n || state.prev.values.size() != n)
    throw DomainError("frame length does not match the grid");

  const double t_now = state.t_start + static_cast<double>(state.step) * grid_.dt;
  const double t_next = state.t_start + static_cast<double>(state.step + 1) * grid_.dt;
  std::vector<cplx> next(n);
  const kernels::Stencil stencil{state.prev.values, state.curr.values, next, grid_.dt,
                                 1.0 / (grid_.dx() * grid_.dx())};
  const bool parallel = options_.execution == Execution::kParallel;
  auto sweep = [&](auto&& update) {
    if (parallel)
      kernels::sweep_parallel(1, n - 1, update);
    else
      kernels::sweep_serial(1, n - 1, update);
  };

  const CaseSpec& spec = exact_.spec();
  if (const auto* a = std::get_if<ChiCase>(&spec)) {
    const double m2 = a->wave.m * a->wave.m;
    sweep(kernels::ScalarPotentialUpdate{stencil, [&](std::size_t j) {
                                           return m2 + chi_scalar_potential(a->chi1, a->chi2, a->wave.m, xs_[j], t_now);
                                         }});
  } else if (const auto* b = std::get_if<DeltaCase>(&spec)) {
    const double strength = 2.0 * b->lam(t_now);
    const std::span<const double> w = weights_;
    sweep(kernels::ScalarPotentialUpdate{stencil, [strength, w](std::size_t j) { return strength * w[j]; }});
  } else {
    const auto& c = std::get<StepElectricCase>(spec);
    const double dt = grid_.dt;
    // Hat-weighted mean of dV/dt over [t - dt, t + dt], i.e. the second
    // difference of the accumulated phase. Stays second order across the
    // kink of lambda at switch-on.
    const double v_rate =
        options_.electric_rate == ElectricRate::kPhaseSecondDifference
            ? (exact_.phase(t_now + dt) - 2.0 * exact_.phase(t_now) + exact_.phase(t_now - dt)) / (dt * dt)
            : 2.0 * c.lam.derivative(t_now);
    sweep(kernels::ElectricUpdate{stencil, weights_, 2.0 * c.lam(t_now), v_rate});
  }

  next.front() = exact_(xs_.front(), t_next);
  next.back() = exact_(xs_.back(), t_next);
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(next[j].real()) || !std::isfinite(next[j].imag()))
      throw InstabilityError(state.step + 1, "non-finite field value at node " + std::to_string(j));
  }

  state.prev = std::move(state.curr);
  state.curr = FieldFrame{t_next, std::move(next)};
  ++state.step;
}

LeapfrogState LeapfrogSolver::step(LeapfrogState state) const {
  advance(state);
  return state;
}

std::vector<FieldFrame> LeapfrogSolver::run(double t_start, double t_end, std::size_t sample_every) const {
  if (sample_every == 0) throw DomainError("sample_every must be at least 1");
  const double span = t_end - t_start;
  if (span < 0.0) throw DomainError("run needs t_end >= t_start");
  const double ratio = span / grid_.dt;
  if (ratio > 1e7) throw DomainError("run exceeds 1e7 steps");
  const double steps = std::round(ratio);
  if (std::abs(steps - ratio) > 1e-6) throw DomainError("run length must be an integer number of time steps");
  const auto n_steps = static_cast<std::size_t>(steps);

  LeapfrogState state = init_from_exact(t_start);
  std::vector<FieldFrame> frames{state.curr};
  for (std::size_t i = 1; i <= n_steps; ++i) {
    advance(state);
    if (i % sample_every == 0 || i == n_steps) frames.push_back(state.curr);
  }
  return frames;
}

}  // namespace kg
