#pragma once

// Node-update kernels for the leapfrog scheme. Every update reads prev/curr
// and writes only next[j], so a sweep is data parallel. The OpenMP sweep and
// the serial reference call the same node functor, which keeps their results
// bit-identical.

#include <complex>
#include <cstddef>
#include <span>

namespace kg::kernels {

using cplx = std::complex<double>;

template <class NodeUpdate>
void sweep_serial(std::size_t first, std::size_t last, NodeUpdate&& update) {
  for (std::size_t j = first; j < last; ++j) update(j);
}

template <class NodeUpdate>
void sweep_parallel(std::size_t first, std::size_t last, NodeUpdate&& update) {
  const auto lo = static_cast<std::ptrdiff_t>(first), hi = static_cast<std::ptrdiff_t>(last);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = lo; j < hi; ++j) update(static_cast<std::size_t>(j));
}

struct Stencil {
  std::span<const cplx> prev;
  std::span<const cplx> curr;
  std::span<cplx> next;
  double dt;
  double inv_dx2;

  cplx laplacian(std::size_t j) const { return (curr[j + 1] - 2.0 * curr[j] + curr[j - 1]) * inv_dx2; }
};

/// phi_tt - phi_xx + potential(j) phi = 0 with a real node potential.
template <class Potential>
struct ScalarPotentialUpdate {
  Stencil s;
  Potential potential;

  void operator()(std::size_t j) const {
    const double dt2 = s.dt * s.dt;
    s.next[j] = 2.0 * s.curr[j] - s.prev[j] + dt2 * (s.laplacian(j) - potential(j) * s.curr[j]);
  }
};

template <class Potential>
ScalarPotentialUpdate(Stencil, Potential) -> ScalarPotentialUpdate<Potential>;

/// phi_tt - phi_xx - w (2i V phi_t + i V' phi + V^2 phi) = 0 with phi_t
/// centered, solved pointwise for the new level. `weight[j]` is the fraction
/// of node j's control volume where the potential V is on.
struct ElectricUpdate {
  Stencil s;
  std::span<const double> weight;
  double v;        // potential on the right of the step
  double v_rate;   // its time derivative

  void operator()(std::size_t j) const {
    const double w = weight[j];
    const double dt = s.dt;
    if (w == 0.0) {
      s.next[j] = 2.0 * s.curr[j] - s.prev[j] + (dt * dt) * s.laplacian(j);
      return;
    }
    constexpr cplx I{0.0, 1.0};
    const double inv_dt2 = 1.0 / (dt * dt);
    const cplx rhs = (2.0 * s.curr[j] - s.prev[j]) * inv_dt2 - I * (w * v / dt) * s.prev[j] + s.laplacian(j) +
                     w * (I * v_rate + v * v) * s.curr[j];
    s.next[j] = rhs / (inv_dt2 - I * (w * v / dt));
  }
};

}  // namespace kg::kernels
