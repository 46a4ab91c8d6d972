#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "kglab/exact_solution.hpp"

namespace kg {

/// Uniform grid of nx intervals on [x_min, x_max] with time step dt.
struct Grid1D {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t nx = 100;
  double dt = 0.0;

  double dx() const noexcept { return (x_max - x_min) / static_cast<double>(nx); }
  double courant() const noexcept { return dt / dx(); }
  std::size_t size() const noexcept { return nx + 1; }
  /// Index of the node at x = 0 when x_min / dx is a negative integer.
  std::optional<std::size_t> origin_index() const noexcept;
  /// Node coordinate. Measured from the origin node when there is one, so
  /// that x = 0 is exact and the grid is symmetric about it.
  double x(std::size_t j) const noexcept;

  static Grid1D with_courant(double x_min, double x_max, std::size_t nx, double courant = 0.9);
  /// dt = duration / N with the smallest N keeping dt / dx <= max_courant.
  static Grid1D fitted(double x_min, double x_max, std::size_t nx, double duration, double max_courant = 0.9);
};

/// Complex field samples at one time level.
struct FieldFrame {
  double t = 0.0;
  std::vector<cplx> values;
};

/// Two consecutive time levels; times are t_start + n dt.
struct LeapfrogState {
  FieldFrame prev;
  FieldFrame curr;
  std::size_t step = 0;
  double t_start = 0.0;
};

enum class Execution { kSerial, kParallel };

enum class DeltaStencil {
  kCellIntegrated,       // derivative jump folded into the x = 0 node
  kRegularizedGaussian,  // cross-check only: Gaussian of width 2 dx, unit discrete mass
};

/// Coupling weight of the step potential at the x = 0 node.
enum class StepNodeCoupling {
  kCellAverage,  // node control volume half inside the step: weight 1/2
  kPointValue,   // theta(0) = 1 applied pointwise
};

/// Time derivative of the step potential used in the electric update.
enum class ElectricRate {
  kPhaseSecondDifference,  // (Lambda(t+dt) - 2 Lambda(t) + Lambda(t-dt)) / dt^2
  kAnalyticDerivative,     // 2 lambda'(t), right derivative at switch-on
};

struct SolverOptions {
  Execution execution = Execution::kParallel;
  DeltaStencil delta = DeltaStencil::kCellIntegrated;
  StepNodeCoupling step_node = StepNodeCoupling::kCellAverage;
  ElectricRate electric_rate = ElectricRate::kPhaseSecondDifference;
  double max_courant = 0.9;
};

/// Explicit second-order (leapfrog) evolution of the complex Klein-Gordon
/// field for all three potentials, with Dirichlet injection of the exact
/// solution at both ends.
class LeapfrogSolver {
 public:
  LeapfrogSolver(ExactSolution exact, Grid1D grid, SolverOptions options = {});

  /// prev and curr sampled from the exact solution at t_start - dt and t_start.
  LeapfrogState init_from_exact(double t_start) const;
  /// Advances `state` by dt in place. Throws InstabilityError on non-finite values.
  void advance(LeapfrogState& state) const;
  LeapfrogState step(LeapfrogState state) const;
  /// Evolves from t_start to t_end (an integer number of steps) and returns
  /// the first frame, every `sample_every`-th frame and the last one.
  std::vector<FieldFrame> run(double t_start, double t_end, std::size_t sample_every = 1) const;

  FieldFrame sample_exact(double t) const;

  const Grid1D& grid() const noexcept { return grid_; }
  const ExactSolution& exact() const noexcept { return exact_; }
  const SolverOptions& options() const noexcept { return options_; }
  /// Per-node weight of the localized potential (delta or step), by node.
  const std::vector<double>& interface_weights() const noexcept { return weights_; }

 private:
  ExactSolution exact_;
  Grid1D grid_;
  SolverOptions options_;
  std::vector<double> xs_;
  std::vector<double> weights_;
};

/// Throws DomainError for a degenerate grid or a Courant number above `max_courant`.
void validate(const Grid1D& grid, double max_courant = 0.9);

}  // namespace kg
