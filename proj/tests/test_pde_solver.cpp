#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "kglab/errors.hpp"
#include "kglab/pde_solver.hpp"
#include "kglab/verification.hpp"

namespace kg {
namespace {

constexpr cplx I{0.0, 1.0};

ExactSolution free_wave(double k = 1.0, Window w = {-1.0, 1.0, -1.0, 100.0}) {
  DeltaCase c;
  c.k = k;
  return ExactSolution(c, w);
}

ExactSolution case_a(Window w = {-2.0, 2.0, -0.5, 2.5}) {
  return ExactSolution(ChiCase{profiles::gaussian(), profiles::sine(), dispersion(1.0, 1.0)}, w);
}

ExactSolution case_b(Direction d = Direction::kPlusX, Window w = {-2.0, 2.0, -0.5, 2.5}) {
  DeltaCase c;
  c.lam = LambdaProfile::ramp(1.0);
  c.direction = d;
  return ExactSolution(c, w);
}

ExactSolution case_c(Window w = {-2.0, 2.0, -0.5, 2.5}) {
  StepElectricCase c;
  c.lam = LambdaProfile::ramp(1.0);
  return ExactSolution(c, w);
}

double max_error(const FieldFrame& f, const LeapfrogSolver& s) {
  const FieldFrame ref = s.sample_exact(f.t);
  double e = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) e = std::max(e, std::abs(f.values[j] - ref.values[j]));
  return e;
}

TEST(Grid1D, OriginAndCoordinates) {
  const Grid1D g = Grid1D::with_courant(-2.0, 2.0, 400);
  ASSERT_TRUE(g.origin_index().has_value());
  EXPECT_EQ(*g.origin_index(), 200u);
  EXPECT_EQ(g.x(200), 0.0);
  EXPECT_EQ(g.x(0), -g.x(400));
  EXPECT_DOUBLE_EQ(g.courant(), 0.9);
  EXPECT_FALSE(Grid1D::with_courant(-1.0, 2.0, 10).origin_index().has_value());
  EXPECT_FALSE(Grid1D::with_courant(0.5, 2.0, 10).origin_index().has_value());
}

TEST(Grid1D, FittedStepDividesDuration) {
  const Grid1D g = Grid1D::fitted(-2.0, 2.0, 200, 2.0, 0.9);
  const double n = 2.0 / g.dt;
  EXPECT_NEAR(n, std::round(n), 1e-9);
  EXPECT_LE(g.courant(), 0.9);
  EXPECT_GT(Grid1D::fitted(-2.0, 2.0, 200, 2.0 - 1e-3, 0.9).courant(), 0.85);
  EXPECT_THROW(Grid1D::fitted(-2.0, 2.0, 200, 0.0), DomainError);
}

TEST(Grid1D, Validation) {
  EXPECT_THROW(validate(Grid1D::with_courant(-1.0, 1.0, 100, 1.1), 1.0), DomainError);
  EXPECT_THROW(validate(Grid1D{1.0, -1.0, 10, 0.01}), DomainError);
  EXPECT_THROW(validate(Grid1D{-1.0, 1.0, 1, 0.01}), DomainError);
  EXPECT_THROW(validate(Grid1D{-1.0, 1.0, 10, 0.0}), DomainError);
  EXPECT_NO_THROW(validate(Grid1D::with_courant(-1.0, 1.0, 100, 1.0), 1.0));
  SolverOptions o;
  o.max_courant = 1.5;
  EXPECT_THROW(LeapfrogSolver(free_wave(), Grid1D::with_courant(-1.0, 1.0, 100), o), DomainError);
}

TEST(LeapfrogSolver, DeltaNeedsOriginNode) {
  EXPECT_THROW(LeapfrogSolver(case_b(), Grid1D::with_courant(-2.0, 2.0, 401)), DomainError);
}

TEST(LeapfrogSolver, InitSamplesExactFrames) {
  const ExactSolution ex = free_wave(1.0);
  const LeapfrogSolver s(ex, Grid1D::with_courant(-1.0, 1.0, 50));
  const LeapfrogState st = s.init_from_exact(0.3);
  for (std::size_t j = 0; j < st.curr.values.size(); ++j) {
    const double x = s.grid().x(j);
    EXPECT_EQ(st.curr.values[j], ex(x, 0.3));
    EXPECT_LT(std::abs(st.prev.values[j] - std::exp(I * (0.3 - s.grid().dt - x))), 1e-15);
  }
}

TEST(LeapfrogSolver, ZeroLengthRunReturnsInitialFrame) {
  const LeapfrogSolver s(case_a(), Grid1D::with_courant(-2.0, 2.0, 100));
  const auto frames = s.run(0.5, 0.5);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].values, s.sample_exact(0.5).values);
  EXPECT_THROW(s.run(0.5, 0.5 + 0.37 * s.grid().dt), DomainError);
  EXPECT_THROW(s.run(1.0, 0.5), DomainError);
  EXPECT_THROW(s.run(0.0, 1.0, 0), DomainError);
}

TEST(LeapfrogSolver, SamplingKeepsFirstEveryNthAndLast) {
  const LeapfrogSolver s(case_a(), Grid1D::fitted(-2.0, 2.0, 100, 1.0));
  const auto n = static_cast<std::size_t>(std::round(1.0 / s.grid().dt));
  const auto frames = s.run(0.0, 1.0, 7);
  EXPECT_EQ(frames.size(), 1 + n / 7 + (n % 7 ? 1 : 0));
  EXPECT_DOUBLE_EQ(frames.back().t, 1.0);
}

TEST(LeapfrogSolver, FreeWaveReturnsAfterOnePeriod) {
  // k = pi: period 2; error at one period shrinks by ~4 per halving.
  double prev = 0.0;
  for (std::size_t nx : {100u, 200u}) {
    const LeapfrogSolver s(free_wave(std::numbers::pi), Grid1D::fitted(-1.0, 1.0, nx, 2.0));
    const auto frames = s.run(0.0, 2.0, 1000000);
    double e = 0.0;
    for (std::size_t j = 0; j < frames.back().values.size(); ++j)
      e = std::max(e, std::abs(frames.back().values[j] - frames.front().values[j]));
    if (prev > 0.0) EXPECT_NEAR(prev / e, 4.0, 0.4);
    prev = e;
  }
}

TEST(LeapfrogSolver, StableForTenThousandStepsAtCourantPointNine) {
  const LeapfrogSolver s(free_wave(3.0, {-1.0, 1.0, -1.0, 200.0}), Grid1D::with_courant(-1.0, 1.0, 100, 0.9));
  LeapfrogState st = s.init_from_exact(0.0);
  double peak = 0.0;
  for (int n = 0; n < 10000; ++n) {
    s.advance(st);
    for (const cplx& v : st.curr.values) peak = std::max(peak, std::abs(v));
  }
  EXPECT_LE(peak, 1.01);
}

TEST(LeapfrogSolver, SerialAndParallelAreBitIdentical) {
  for (const ExactSolution& ex : {case_a(), case_b(), case_c()}) {
    SolverOptions serial, parallel;
    serial.execution = Execution::kSerial;
    parallel.execution = Execution::kParallel;
    const Grid1D g = Grid1D::fitted(-2.0, 2.0, 200, 1.0);
    const auto a = LeapfrogSolver(ex, g, serial).run(0.0, 1.0, 10);
    const auto b = LeapfrogSolver(ex, g, parallel).run(0.0, 1.0, 10);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t f = 0; f < a.size(); ++f) EXPECT_EQ(a[f].values, b[f].values) << case_label(ex.spec());
  }
}

TEST(LeapfrogSolver, RunsAreDeterministic) {
  const Grid1D g = Grid1D::fitted(-2.0, 2.0, 200, 1.0);
  const auto a = LeapfrogSolver(case_c(), g).run(0.0, 1.0, 5);
  const auto b = LeapfrogSolver(case_c(), g).run(0.0, 1.0, 5);
  for (std::size_t f = 0; f < a.size(); ++f) EXPECT_EQ(a[f].values, b[f].values);
}

TEST(LeapfrogSolver, OddModeIgnoresDelta) {
  DeltaCase off;
  off.direction = Direction::kOdd;
  const Window w{-2.0, 2.0, -0.5, 2.5};
  const Grid1D g = Grid1D::fitted(-2.0, 2.0, 400, 2.0);
  const LeapfrogSolver with(case_b(Direction::kOdd), g), without(ExactSolution(off, w), g);
  const auto a = with.run(0.0, 2.0, 1000000), b = without.run(0.0, 2.0, 1000000);
  const double free_error = max_error(b.back(), without);
  double diff = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) diff = std::max(diff, std::abs(a.back().values[j] - b.back().values[j]));
  EXPECT_LE(diff, 5.0 * free_error);
}

TEST(LeapfrogSolver, RegularizedDeltaCrossCheck) {
  const Grid1D g = Grid1D::fitted(-2.0, 2.0, 400, 2.0);
  SolverOptions gauss;
  gauss.delta = DeltaStencil::kRegularizedGaussian;
  const LeapfrogSolver cell(case_b(), g), reg(case_b(), g, gauss);
  double mass = 0.0;
  for (double w : reg.interface_weights()) mass += w * g.dx();
  EXPECT_NEAR(mass, 1.0, 1e-12);
  const double e_cell = max_error(cell.run(0.0, 2.0, 1000000).back(), cell);
  const double e_reg = max_error(reg.run(0.0, 2.0, 1000000).back(), reg);
  EXPECT_LT(e_cell, 1e-3);
  EXPECT_LT(e_reg, 2e-2);
}

TEST(LeapfrogSolver, StepCouplingWeights) {
  const Grid1D g = Grid1D::with_courant(-1.0, 1.0, 10);
  const Window w{-1.0, 1.0, 0.0, 1.0};
  const LeapfrogSolver avg(case_c(w), g);
  EXPECT_EQ(avg.interface_weights()[5], 0.5);
  EXPECT_EQ(avg.interface_weights()[4], 0.0);
  EXPECT_EQ(avg.interface_weights()[6], 1.0);
  SolverOptions point;
  point.step_node = StepNodeCoupling::kPointValue;
  EXPECT_EQ(LeapfrogSolver(case_c(w), g, point).interface_weights()[5], 1.0);
}

TEST(LeapfrogSolver, InstabilityReportsStep) {
  // Boundary data turns non-finite once x + t > 1.2 at the right edge.
  SmoothProfile poisoned(
      "poisoned", [](long double u) { return u > 1.2L ? std::numeric_limits<long double>::quiet_NaN() : 0.0L; },
      [](long double) { return 0.0L; });
  const ExactSolution ex(ChiCase{poisoned, profiles::zero(), dispersion(1.0, 1.0)}, Window{-1.0, 1.0, 0.0, 1.0});
  const LeapfrogSolver s(ex, Grid1D::fitted(-1.0, 1.0, 20, 1.0));
  try {
    s.run(0.0, 1.0);
    FAIL() << "expected an instability";
  } catch (const InstabilityError& e) {
    EXPECT_GT(e.step(), 0u);
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(LeapfrogSolver, StepElectricChargeBalanceIsSecondOrder) {
  double prev = 0.0;
  for (std::size_t nx : {200u, 400u, 800u}) {
    const LeapfrogSolver s(case_c(), Grid1D::fitted(-2.0, 2.0, nx, 2.0));
    const auto frames = s.run(0.0, 2.0, 1);
    const std::size_t mid = frames.size() / 2;
    const std::span<const FieldFrame> five(frames.data() + mid - 2, 5);
    const double d = charge_balance_defect(s, five);
    if (prev > 0.0) EXPECT_GE(std::log2(prev / d), 1.7) << nx;
    prev = d;
  }
}

}  // namespace
}  // namespace kg
