// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Oracles here are written independently of the library where the criterion
// allows it (Romberg for the ramp integral, hand-built substituted equations).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "kglab/analytic.hpp"
#include "kglab/commands.hpp"
#include "kglab/config.hpp"
#include "kglab/exact_solution.hpp"
#include "kglab/ode_kernel.hpp"
#include "kglab/pde_solver.hpp"
#include "kglab/profiles.hpp"
#include "kglab/verification.hpp"

#ifndef KGLAB_CONFIG_DIR
#error "KGLAB_CONFIG_DIR must point at the preset directory"
#endif

using namespace kg;

namespace {

const cplx I{0.0, 1.0};
int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("criterion %2d %s  %-28s %s\n", id, pass ? "PASS" : "FAIL", title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

RunConfig preset(const std::string& name) { return load_config(std::filesystem::path(KGLAB_CONFIG_DIR) / (name + ".json")); }

// Romberg on [0, t] for a smooth integrand, to relative-ish tolerance.
cplx romberg(const std::function<cplx(double)>& f, double a, double b, double tol = 1e-14) {
  if (a == b) return 0.0;
  std::vector<cplx> prev{0.5 * (b - a) * (f(a) + f(b))};
  for (int level = 1; level <= 24; ++level) {
    const long n = 1L << level;
    const double h = (b - a) / static_cast<double>(n);
    cplx mids = 0.0;
    for (long i = 1; i < n; i += 2) mids += f(a + h * static_cast<double>(i));
    std::vector<cplx> cur{0.5 * prev[0] + h * mids};
    double pow4 = 1.0;
    for (int j = 1; j <= level; ++j) {
      pow4 *= 4.0;
      cur.push_back(cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (pow4 - 1.0));
    }
    if (level >= 4 && std::abs(cur.back() - prev.back()) <= tol * std::max(1.0, std::abs(cur.back()))) return cur.back();
    prev = std::move(cur);
  }
  return prev.back();
}

void residual_identity() {
  ChiCase a{profiles::gaussian(), profiles::sine(), dispersion(1.0, 1.0)};
  const ExactSolution exact(a, Window{-1.5, 1.5, -0.5, 2.5});
  const SampleBox box{-1.0, 1.0, 0.5, 1.5, 50, 50};
  const ResidualStudy r = residual_study(exact, box, 1e-2);

  ChiCase free{profiles::zero(), profiles::zero(), dispersion(1.0, 1.0)};
  const double free_res = residual_norm(ExactSolution(free, Window{-1.5, 1.5, -0.5, 2.5}), box, 1e-3);
  report(1, "residual identity", r.order >= 3.5 && free_res <= 1e-10,
         fmt("order %.2f (%.2e -> %.2e), chi=0 residual %.2e", r.order, r.coarse, r.fine, free_res));
}

void closed_form_vs_quadrature() {
  const double k = 1.0, a = 1.0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = 10.0 * i / 999.0;
    const cplx integral = romberg([k](double s) { return 2.0 * s * std::exp(I * (k * s)); }, 0.0, t);
    const cplx quadrature = -std::exp(-I * (k * t)) / (t * t + a) * integral;
    worst = std::max(worst, std::abs(ramp_reflection_closed_form(k, a, t) - quadrature));
  }
  report(2, "closed form vs quadrature", worst <= 1e-9, fmt("max diff %.2e over 1000 points", worst));
}

void formula_vs_rk4() {
  const LambdaProfile ramp = LambdaProfile::ramp(1.0);
  std::vector<double> times;
  for (int i = 1; i <= 200; ++i) times.push_back(10.0 * i / 200.0);
  double worst = 0.0;
  for (CoefficientMode mode :
       {CoefficientMode::kDeltaReflection, CoefficientMode::kElectricPlus, CoefficientMode::kElectricMinus}) {
    for (double k : {0.5, 1.0, 2.0}) {
      const LinearFirstOrderOde ode = build_coefficient_ode(mode, k, ramp);
      const IntegratingFactorSolution table(ode, 10.0);
      const auto rk4 = solve_rk4_oracle(ode, times, 1e-4);
      for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, std::abs(table(times[i]) - rk4[i]));
      worst = std::max(worst, std::abs(solve_integrating_factor(ode, 10.0) - rk4.back()));
    }
  }
  report(3, "integrating factor vs RK4", worst <= 1e-7, fmt("max diff %.2e (3 modes x 3 k, t in [0,10])", worst));
}

void reference_time_invariance() {
  const LambdaProfile ramp = LambdaProfile::ramp(1.0);
  double worst = 0.0;
  for (double k : {0.5, 1.0, 2.0}) {
    LinearFirstOrderOde p = build_coefficient_ode(CoefficientMode::kDeltaReflection, k, ramp);
    LinearFirstOrderOde q = p;
    p.t0 = -3.7;
    q.t0 = 6.25;
    const IntegratingFactorSolution yp(p, 10.0), yq(q, 10.0);
    for (int i = 0; i <= 100; ++i) worst = std::max(worst, std::abs(yp(0.1 * i) - yq(0.1 * i)));
  }
  report(4, "reference-time invariance", worst <= 1e-12, fmt("max diff %.2e between t0=-3.7 and t0=6.25", worst));
}

void substitution_symmetries() {
  const LambdaProfile ramp = LambdaProfile::ramp(1.0);
  const std::function<double(double)> lam = [ramp](double t) { return ramp(t); };
  const std::vector<double> breaks{0.0};
  double d1_worst = 0.0, d2_worst = 0.0;
  for (double k : {0.5, 1.0, 2.0}) {
    const IntegratingFactorSolution d1(build_coefficient_ode(CoefficientMode::kElectricPlus, k, ramp), 10.0);
    const IntegratingFactorSolution d2(build_coefficient_ode(CoefficientMode::kElectricMinus, k, ramp), 10.0);
    // Delta equation with lambda -> -i lambda, and the D1 equation with lambda -> -lambda.
    const IntegratingFactorSolution b1_sub(
        build_coefficient_ode(CoefficientMode::kDeltaReflection, k, [lam](double t) { return -I * lam(t); }, 0.0, 0.0,
                              breaks),
        10.0);
    const IntegratingFactorSolution d1_sub(
        build_coefficient_ode(CoefficientMode::kElectricPlus, k, [lam](double t) { return cplx(-lam(t)); }, 0.0, 0.0,
                              breaks),
        10.0);
    for (int i = 0; i <= 200; ++i) {
      const double t = 0.05 * i;
      d1_worst = std::max(d1_worst, std::abs(d1(t) - b1_sub(t)));
      d2_worst = std::max(d2_worst, std::abs(d2(t) - d1_sub(t)));
    }
  }
  report(5, "substitution symmetries", std::max(d1_worst, d2_worst) <= 1e-12,
         fmt("D1 vs B1(-i lambda) %.2e, D2 vs D1(-lambda) %.2e", d1_worst, d2_worst));
}

void parity_identities() {
  DeltaCase b;
  b.k = 1.0;
  b.lam = LambdaProfile::ramp(1.0);
  const auto refl = [&b](double u) { return ramp_reflection_closed_form(b.k, 1.0, u); };
  DeltaCase plus = b, minus = b;
  plus.direction = Direction::kPlusX;
  minus.direction = Direction::kMinusX;
  double worst = 0.0, origin = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double t = -0.5 + 3.0 * n / 99.0;
    for (int i = 0; i < 100; ++i) {
      const double x = -2.0 + 4.0 * i / 99.0;
      const ParityPair p = parity_fields(b, refl, x, t);
      const cplx f1 = delta_case_field(plus, refl, x, t), f2 = delta_case_field(minus, refl, x, t);
      worst = std::max({worst, std::abs(p.even - 0.5 * (f1 + f2)), std::abs(p.odd - 0.5 * I * (f1 - f2))});
    }
    origin = std::max(origin, std::abs(parity_fields(b, refl, 0.0, t).odd));
  }
  report(6, "parity identities", worst <= 1e-12 && origin == 0.0,
         fmt("max diff %.2e on 100x100, max |odd(0,t)| %.1g", worst, origin));
}

// Level l of a refinement study: nx from the list, dt halved each level.
Grid1D level_grid(const RunConfig& cfg, std::size_t l) {
  Grid1D g = make_grid(cfg.grid, cfg.time, cfg.levels.front());
  g.dt /= static_cast<double>(std::size_t{1} << l);
  g.nx = cfg.levels[l];
  return g;
}

ExactSolution preset_exact(const RunConfig& cfg) {
  return ExactSolution(cfg.case_spec,
                       Window{cfg.grid.x_min - 0.1, cfg.grid.x_max + 0.1, cfg.time.t_start - 0.1, cfg.time.t_end + 0.1});
}

void pde_convergence() {
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : {"caseA_gaussian", "caseB_ramp", "caseC_step"}) {
    RunConfig cfg = preset(name);
    cfg.levels = {200, 400, 800};
    cfg.time.t_end = 2.0;
    cfg.grid.courant = 0.9;
    const ExactSolution exact = preset_exact(cfg);
    std::vector<ErrorReport> reports;
    for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
      const Grid1D g = level_grid(cfg, l);
      const LeapfrogSolver solver(exact, g);
      const auto frames = solver.run(cfg.time.t_start, cfg.time.t_end, std::numeric_limits<std::size_t>::max());
      reports.push_back(error_norms(frames.back(), g, exact));
    }
    const ConvergenceReport rep = convergence_order(reports, default_band(cfg.case_spec));
    pass = pass && rep.pass;
    detail << case_label(cfg.case_spec) << " " << fmt("%.2f/%.2f", rep.orders[0], rep.orders[1]) << " in ["
           << rep.band.lo << "," << rep.band.hi << "]  ";
  }
  report(7, "PDE convergence", pass, detail.str());
}

void jump_condition() {
  RunConfig cfg = preset("caseB_ramp");
  const ExactSolution exact = preset_exact(cfg);
  const auto& lam = std::get<DeltaCase>(cfg.case_spec).lam;
  std::vector<double> defects;
  for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
    const Grid1D g = level_grid(cfg, l);
    double worst = 0.0;
    for (const auto& f : LeapfrogSolver(exact, g).run(cfg.time.t_start, cfg.time.t_end, 1))
      worst = std::max(worst, jump_check(f, g, lam, 2));
    defects.push_back(worst);
  }
  double order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < defects.size(); ++i) order = std::min(order, std::log2(defects[i] / defects[i + 1]));
  report(8, "jump condition", order >= 0.9,
         fmt("max defect %.2e -> %.2e -> %.2e, min order %.2f", defects[0], defects[1], defects[2], order));
}

void odd_mode_immunity() {
  DeltaCase on;
  on.k = 1.0;
  on.lam = LambdaProfile::ramp(1.0);
  on.direction = Direction::kOdd;
  DeltaCase off = on;
  off.lam = LambdaProfile::off();
  const Window w{-2.1, 2.1, -0.1, 2.1};
  const ExactSolution with(on, w), without(off, w);
  const Grid1D g = Grid1D::fitted(-2.0, 2.0, 400, 2.0);
  const auto a = LeapfrogSolver(with, g).run(0.0, 2.0, 1);
  const auto b = LeapfrogSolver(without, g).run(0.0, 2.0, 1);
  double diff = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f)
    for (std::size_t j = 0; j < a[f].values.size(); ++j) diff = std::max(diff, std::abs(a[f].values[j] - b[f].values[j]));
  const double free_error = error_norms(b.back(), g, without).linf;
  report(9, "odd-mode immunity", diff <= 5.0 * free_error,
         fmt("max |on - off| %.2e, free-run error %.2e", diff, free_error));
}

void fault_detection() {
  const auto out = std::filesystem::temp_directory_path() / "kglab_acceptance";
  std::ostringstream sink;
  int worst = 0;
  for (const char* name : {"caseA_gaussian", "caseB_ramp", "caseC_step"}) {
    RunConfig cfg = preset(name);
    cfg.suites = std::vector<std::string>{"residual"};
    const int clean = cmd_verify(cfg, CliOptions{out, true, 0.0}, sink);
    const int perturbed = cmd_verify(cfg, CliOptions{out, true, 1e-3}, sink);
    if (clean != kExitOk || perturbed != kExitVerification) worst = std::max(worst, 1);
  }
  report(10, "fault detection", worst == 0, "residual suite: clean exit 0, --perturb-vs 1e-3 exit 2 (all presets)");
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{residual_identity, closed_form_vs_quadrature, formula_vs_rk4,
                                         reference_time_invariance, substitution_symmetries, parity_identities,
                                         pde_convergence, jump_condition, odd_mode_immunity, fault_detection};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
