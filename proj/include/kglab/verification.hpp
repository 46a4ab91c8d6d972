#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kglab/exact_solution.hpp"
#include "kglab/pde_solver.hpp"

namespace kg {

struct GridSummary {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t nx = 0;
  double dx = 0.0;
  double dt = 0.0;
};

GridSummary summarize(const Grid1D& grid);

/// Discrete L2 (trapezoid weights) and max norms of sim - exact at one time.
struct ErrorReport {
  double l2 = 0.0;
  double linf = 0.0;
  GridSummary grid;
  double t = 0.0;
  std::string label;
};

ErrorReport error_norms(const FieldFrame& sim, const Grid1D& grid, const ExactSolution& exact);

/// Accepted interval for a measured convergence order.
struct OrderBand {
  double lo = 1.7;
  double hi = 2.3;
};

/// [1.7, 2.3] for cases A and C; [0.9, 2.3] for the delta case, whose
/// interface stencil is only first-order accurate locally.
OrderBand default_band(const CaseSpec& spec);
std::string band_note(const CaseSpec& spec);

struct ConvergenceReport {
  std::vector<ErrorReport> resolutions;
  std::vector<double> orders;  // log2(e_i / e_{i+1}) of the max-norm error
  OrderBand band;
  bool pass = false;
  std::string note;
};

/// Requires >= 3 reports, each with half the dx and dt of the previous one.
ConvergenceReport convergence_order(std::span<const ErrorReport> reports, OrderBand band);

/// Rectangular (x, t) sample set for residual checks.
struct SampleBox {
  double x_lo = -1.0;
  double x_hi = 1.0;
  double t_lo = 0.5;
  double t_hi = 1.5;
  std::size_t nx = 50;
  std::size_t nt = 50;
};

/// Max |discrete Klein-Gordon operator applied to the exact field| over the
/// box, with fourth-order central differences of spacing h in t and x.
/// `vs_perturbation` is added to the scalar potential (fault injection).
/// For cases B and C, points within 2h of x = 0, of the switch-on light cones
/// |x| = t - t_on, and of t = t_on are skipped: the exact field has
/// discontinuous derivatives there by construction.
double residual_norm(const ExactSolution& exact, const SampleBox& box, double h, double vs_perturbation = 0.0);

/// Residual at spacings h and h/2 with the observed decay order.
struct ResidualStudy {
  double h = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
  double order = 0.0;
  double floor = 0.0;  // rounding floor of the stencil at h/2
  bool pass = false;
};

/// Passes when the decay order is >= min_order, or when the fine residual is
/// already at the rounding floor of the stencil (c * eps * max|phi| / h^2),
/// where no order can be observed.
ResidualStudy residual_study(const ExactSolution& exact, const SampleBox& box, double h = 1e-2,
                             double vs_perturbation = 0.0, double min_order = 3.5);

/// |phi_x(0+) - phi_x(0-) - 2 lambda(t) phi(0, t)| from one-sided differences
/// of width 1 (first order) or 2 (second order).
double jump_check(const FieldFrame& field, const Grid1D& grid, const LambdaProfile& lam, int stencil_width);

/// Discrete charge balance audit on five consecutive frames f0..f4:
/// |(Q(t3) - Q(t1)) / (2 dt) - (j(x_min) - j(x_max))(t2)| with
/// rho = -2 Im(phi* phi_t) + 2 V |phi|^2 and j = 2 Im(phi* phi_x).
double charge_balance_defect(const LeapfrogSolver& solver, std::span<const FieldFrame> frames);

}  // namespace kg
