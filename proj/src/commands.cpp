#include "kglab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "kglab/errors.hpp"
#include "kglab/exact_solution.hpp"
#include "kglab/output.hpp"
#include "kglab/pde_solver.hpp"
#include "kglab/verification.hpp"

namespace kg {

namespace {

constexpr double kOracleStep = 1e-4;
constexpr double kOracleTolerance = 1e-7;
constexpr double kParityTolerance = 1e-12;
constexpr double kJumpMinOrder = 0.9;
constexpr double kWindowSlack = 0.1;

std::filesystem::path output_path(const CliOptions& opt, const std::string& configured, const std::string& fallback) {
  std::filesystem::create_directories(opt.out_dir);
  const std::filesystem::path p = configured.empty() ? fallback : configured;
  return p.is_absolute() ? p : opt.out_dir / p;
}

// Exact solution valid over the run, with slack for residual stencils.
ExactSolution make_exact(const RunConfig& cfg, double t_lo, double t_hi) {
  return ExactSolution(cfg.case_spec, Window{cfg.grid.x_min - kWindowSlack, cfg.grid.x_max + kWindowSlack,
                                             t_lo - kWindowSlack, t_hi + kWindowSlack});
}

ExactSolution make_exact(const RunConfig& cfg) {
  double lo = cfg.time.t_start, hi = cfg.time.t_end;
  for (double t : cfg.exact_times) lo = std::min(lo, t), hi = std::max(hi, t);
  return make_exact(cfg, lo, hi);
}

SolverOptions cli_solver_options() {
  SolverOptions o;
  o.max_courant = 1.0;
  return o;
}

struct SuiteResult {
  std::string name;
  bool pass = true;
  bool skipped = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

SuiteResult residual_suite(const RunConfig& cfg, const ExactSolution& exact, double perturb) {
  SampleBox box;
  if (cfg.residual_box) {
    box = *cfg.residual_box;
  } else {
    box.x_lo = cfg.grid.x_min, box.x_hi = cfg.grid.x_max;
    box.t_lo = cfg.time.t_start, box.t_hi = cfg.time.t_end;
  }
  const ResidualStudy r = residual_study(exact, box, 1e-2, perturb);
  std::ostringstream d;
  d << "h=1e-2: " << std::setprecision(3) << r.coarse << ", h=5e-3: " << r.fine << ", order " << std::fixed
    << std::setprecision(2) << r.order << (r.fine <= r.floor ? " (at rounding floor)" : "");
  return {"residual", r.pass, false, r.order, 3.5, d.str()};
}

SuiteResult oracle_suite(const RunConfig& cfg, const ExactSolution& exact) {
  const CaseSpec& spec = cfg.case_spec;
  if (std::holds_alternative<ChiCase>(spec)) return {"oracle", true, true, 0.0, kOracleTolerance, "no coefficient equation in case A"};

  const auto* b = std::get_if<DeltaCase>(&spec);
  const auto* c = std::get_if<StepElectricCase>(&spec);
  const double k = b ? b->k : c->k;
  const LambdaProfile& lam = b ? b->lam : c->lam;
  const double t1 = b ? b->t1 : c->t1;
  const cplx y1 = b ? b->initial : c->initial;
  CoefficientMode mode = CoefficientMode::kDeltaReflection;
  if (c) mode = c->direction == Direction::kMinusX ? CoefficientMode::kElectricMinus : CoefficientMode::kElectricPlus;

  const double reach = std::max(std::abs(cfg.grid.x_min), std::abs(cfg.grid.x_max));
  const double u_end = cfg.time.t_end + reach;
  if (u_end <= t1) return {"oracle", true, true, 0.0, kOracleTolerance, "window ends before t1"};
  const LinearFirstOrderOde ode = build_coefficient_ode(mode, k, lam, t1, y1);
  std::vector<double> times;
  for (int i = 1; i <= 200; ++i) times.push_back(t1 + (u_end - t1) * i / 200.0);
  const auto rk4 = solve_rk4_oracle(ode, times, kOracleStep);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, std::abs(exact.reflection(times[i]) - rk4[i]));
  std::ostringstream d;
  d << (exact.uses_closed_form() ? "closed form" : "integrating factor") << " vs RK4(h=1e-4), max diff "
    << std::setprecision(3) << worst;
  return {"oracle", worst <= kOracleTolerance, false, worst, kOracleTolerance, d.str()};
}

SuiteResult jump_suite(const RunConfig& cfg, const ExactSolution& exact) {
  const auto* b = std::get_if<DeltaCase>(&cfg.case_spec);
  if (!b) return {"jump", true, true, 0.0, kJumpMinOrder, "delta case only"};
  if (cfg.levels.size() < 2) return {"jump", false, false, 0.0, kJumpMinOrder, "needs two resolutions"};
  if (!(cfg.time.t_end > cfg.time.t_start)) return {"jump", false, false, 0.0, kJumpMinOrder, "needs t_end > t_start"};

  const Grid1D base = make_grid(cfg.grid, cfg.time, cfg.levels.front());
  std::vector<double> defects;
  for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
    Grid1D g = base;
    g.nx = cfg.levels[l];
    g.dt = base.dt / static_cast<double>(std::size_t{1} << l);
    const LeapfrogSolver solver(exact, g, cli_solver_options());
    // The defect oscillates in time, so a single frame can sit near a zero.
    double worst = 0.0;
    for (const auto& f : solver.run(cfg.time.t_start, cfg.time.t_end, 1))
      worst = std::max(worst, jump_check(f, g, b->lam, 2));
    defects.push_back(worst);
  }
  double order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < defects.size(); ++i) order = std::min(order, std::log2(defects[i] / defects[i + 1]));
  std::ostringstream d;
  d << "max one-sided jump defect " << std::setprecision(3) << defects.front() << " -> " << defects.back()
    << ", min order " << std::fixed << std::setprecision(2) << order;
  return {"jump", order >= kJumpMinOrder, false, order, kJumpMinOrder, d.str()};
}

SuiteResult parity_suite(const RunConfig& cfg, const ExactSolution& exact) {
  const auto* b = std::get_if<DeltaCase>(&cfg.case_spec);
  if (!b) return {"parity", true, true, 0.0, kParityTolerance, "delta case only"};
  DeltaCase plus = *b, minus = *b;
  plus.direction = Direction::kPlusX;
  minus.direction = Direction::kMinusX;
  const auto refl = [&exact](double u) { return exact.reflection(u); };
  const cplx I{0.0, 1.0};
  double worst = 0.0, origin = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double t = cfg.time.t_start + (cfg.time.t_end - cfg.time.t_start) * n / 99.0;
    for (int i = 0; i < 100; ++i) {
      const double x = cfg.grid.x_min + (cfg.grid.x_max - cfg.grid.x_min) * i / 99.0;
      const ParityPair p = parity_fields(*b, refl, x, t);
      const cplx f1 = delta_case_field(plus, refl, x, t), f2 = delta_case_field(minus, refl, x, t);
      worst = std::max({worst, std::abs(p.even - 0.5 * (f1 + f2)), std::abs(p.odd - 0.5 * I * (f1 - f2))});
    }
    origin = std::max(origin, std::abs(parity_fields(*b, refl, 0.0, t).odd));
  }
  std::ostringstream d;
  d << "max |closed form - combination| " << std::setprecision(3) << worst << ", max |odd(0,t)| " << origin;
  return {"parity", worst <= kParityTolerance && origin == 0.0, false, worst, kParityTolerance, d.str()};
}

}  // namespace

int cmd_exact(const RunConfig& cfg, const CliOptions& opt, std::ostream& log) {
  const ExactSolution exact = make_exact(cfg);
  const Grid1D grid = make_grid(cfg.grid, cfg.time, cfg.grid.nx);
  const bool scattering = exact.lambda() != nullptr;

  std::vector<std::string> header{"t", "x", "re", "im", "abs"};
  if (scattering) header.insert(header.end(), {"refl_re", "refl_im"});
  const auto csv_path = output_path(opt, cfg.csv, "exact.csv");
  CsvWriter csv(csv_path, header);
  std::vector<Series> plot;
  for (double t : cfg.exact_times) {
    Series re{"Re t=" + format_number(t), {}, {}}, im{"Im t=" + format_number(t), {}, {}},
        ab{"|phi| t=" + format_number(t), {}, {}};
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double x = grid.x(j);
      const cplx v = exact(x, t);
      std::vector<double> row{t, x, v.real(), v.imag(), std::abs(v)};
      if (scattering) {
        const cplx r = exact.reflected_coefficient_at(x, t);
        row.insert(row.end(), {r.real(), r.imag()});
      }
      csv.row(row);
      for (Series* s : {&re, &im, &ab}) s->x.push_back(x);
      re.y.push_back(v.real()), im.y.push_back(v.imag()), ab.y.push_back(std::abs(v));
    }
    plot.insert(plot.end(), {re, im, ab});
  }
  const auto svg_path = output_path(opt, cfg.svg, "exact.svg");
  write_text(svg_path, render_svg(plot, {"exact field, case " + case_label(cfg.case_spec), "x", "phi"}));
  if (!opt.quiet)
    log << "exact: case " << case_label(cfg.case_spec) << ", " << cfg.exact_times.size() << " time(s) x "
        << grid.size() << " nodes -> " << csv_path.string() << ", " << svg_path.string() << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const CliOptions& opt, std::ostream& log) {
  const ExactSolution exact = make_exact(cfg);
  const Grid1D grid = make_grid(cfg.grid, cfg.time, cfg.grid.nx);
  const LeapfrogSolver solver(exact, grid, cli_solver_options());
  const auto frames = solver.run(cfg.time.t_start, cfg.time.t_end, cfg.time.sample_every);

  const auto csv_path = output_path(opt, cfg.csv, "trajectory.csv");
  CsvWriter csv(csv_path, {"frame", "t", "x", "re", "im"});
  for (std::size_t f = 0; f < frames.size(); ++f)
    for (std::size_t j = 0; j < grid.size(); ++j)
      csv.row({static_cast<double>(f), frames[f].t, grid.x(j), frames[f].values[j].real(),
               frames[f].values[j].imag()});

  const FieldFrame& last = frames.back();
  const FieldFrame ref = solver.sample_exact(last.t);
  Series sim{"Re simulated", {}, {}}, ex{"Re exact", {}, {}}, ab{"|phi| simulated", {}, {}};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (Series* s : {&sim, &ex, &ab}) s->x.push_back(grid.x(j));
    sim.y.push_back(last.values[j].real());
    ex.y.push_back(ref.values[j].real());
    ab.y.push_back(std::abs(last.values[j]));
  }
  const auto svg_path = output_path(opt, cfg.svg, "trajectory.svg");
  write_text(svg_path, render_svg({sim, ex, ab}, {"final frame t=" + format_number(last.t), "x", "phi"}));

  const ErrorReport err = error_norms(last, grid, exact);
  if (!opt.quiet)
    log << "simulate: case " << case_label(cfg.case_spec) << ", nx=" << grid.nx << ", dt=" << format_number(grid.dt)
        << ", " << frames.size() << " frames; final error linf=" << std::setprecision(6) << err.linf
        << " l2=" << err.l2 << " -> " << csv_path.string() << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const CliOptions& opt, std::ostream& log) {
  const std::vector<std::string> suites = cfg.suites.value_or(std::vector<std::string>{"residual", "oracle", "jump", "parity"});
  if (suites.empty()) throw ConfigError("verify.suites", "no suite selected");

  const ExactSolution exact = make_exact(cfg);
  std::vector<SuiteResult> results;
  for (const auto& s : suites) {
    if (s == "residual") results.push_back(residual_suite(cfg, exact, opt.perturb_vs));
    if (s == "oracle") results.push_back(oracle_suite(cfg, exact));
    if (s == "jump") results.push_back(jump_suite(cfg, exact));
    if (s == "parity") results.push_back(parity_suite(cfg, exact));
  }

  const auto csv_path = output_path(opt, cfg.csv, "verify.csv");
  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot write '" + csv_path.string() + "'");
  csv << "suite,status,value,threshold\n";
  bool all = true;
  for (const auto& r : results) {
    const char* status = r.skipped ? "skip" : (r.pass ? "pass" : "fail");
    csv << r.name << ',' << status << ',' << format_number(r.value) << ',' << format_number(r.threshold) << '\n';
    all = all && r.pass;
    if (!opt.quiet) log << std::left << std::setw(10) << r.name << std::setw(6) << status << r.detail << '\n';
  }
  if (!opt.quiet) log << (all ? "verify: all suites pass" : "verify: FAILED") << '\n';
  return all ? kExitOk : kExitVerification;
}

int cmd_convergence(const RunConfig& cfg, const CliOptions& opt, std::ostream& log) {
  if (cfg.levels.size() < 3) throw ConfigError("convergence.levels", "needs at least 3 resolutions");
  if (!(cfg.time.t_end > cfg.time.t_start)) throw ConfigError("time.t_end", "convergence needs t_end > t_start");

  const ExactSolution exact = make_exact(cfg);
  const Grid1D base = make_grid(cfg.grid, cfg.time, cfg.levels.front());
  std::vector<ErrorReport> reports;
  for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
    Grid1D g = base;
    g.nx = cfg.levels[l];
    g.dt = base.dt / static_cast<double>(std::size_t{1} << l);
    const LeapfrogSolver solver(exact, g, cli_solver_options());
    const auto frames = solver.run(cfg.time.t_start, cfg.time.t_end, std::numeric_limits<std::size_t>::max());
    reports.push_back(error_norms(frames.back(), g, exact));
  }
  ConvergenceReport rep = convergence_order(reports, cfg.band.value_or(default_band(cfg.case_spec)));
  rep.note = band_note(cfg.case_spec);

  const auto csv_path = output_path(opt, cfg.csv, "convergence.csv");
  CsvWriter csv(csv_path, {"dx", "dt", "l2", "linf", "order"});
  Series linf{"linf error", {}, {}}, l2{"l2 error", {}, {}}, slope{"slope 2", {}, {}};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    csv.row({r.grid.dx, r.grid.dt, r.l2, r.linf, i == 0 ? std::numeric_limits<double>::quiet_NaN() : rep.orders[i - 1]});
    linf.x.push_back(r.grid.dx), linf.y.push_back(r.linf);
    l2.x.push_back(r.grid.dx), l2.y.push_back(r.l2);
    slope.x.push_back(r.grid.dx);
    const double scale = r.grid.dx / reports.front().grid.dx;
    slope.y.push_back(reports.front().linf * scale * scale);
  }
  const auto svg_path = output_path(opt, cfg.svg, "convergence.svg");
  ChartOptions chart{"convergence, case " + case_label(cfg.case_spec), "dx", "error at t_end"};
  chart.log_log = true;
  write_text(svg_path, render_svg({linf, l2, slope}, chart));

  if (!opt.quiet) {
    log << "convergence: case " << case_label(cfg.case_spec) << ", band [" << rep.band.lo << ", " << rep.band.hi
        << "]\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      log << "  nx=" << std::setw(6) << reports[i].grid.nx << "  linf=" << std::scientific << std::setprecision(4)
          << reports[i].linf << std::defaultfloat;
      if (i > 0) log << "  order=" << std::fixed << std::setprecision(3) << rep.orders[i - 1] << std::defaultfloat;
      log << '\n';
    }
    if (!rep.note.empty()) log << "  note: " << rep.note << '\n';
    log << "  verdict: " << (rep.pass ? "pass" : "FAIL") << '\n';
  }
  return rep.pass ? kExitOk : kExitVerification;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact solutions and finite-difference verification for the 1+1D Klein-Gordon equation"};
  app.require_subcommand(1);
  std::string config_path;
  CliOptions opt;
  app.add_option("--config", config_path, "run configuration (JSON)")->required();
  app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  app.add_flag("--quiet", opt.quiet, "suppress the summary on stdout");
  app.add_option("--perturb-vs", opt.perturb_vs, "test hook: add eps to the scalar potential in residual checks");
  app.fallthrough();

  auto* exact = app.add_subcommand("exact", "sample the exact solution");
  auto* simulate = app.add_subcommand("simulate", "run the leapfrog solver");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* convergence = app.add_subcommand("convergence", "grid-refinement study");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    if (exact->parsed()) return cmd_exact(cfg, opt, std::cout);
    if (simulate->parsed()) return cmd_simulate(cfg, opt, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, opt, std::cout);
    if (convergence->parsed()) return cmd_convergence(cfg, opt, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InstabilityError& e) {
    std::cerr << "instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const DomainError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace kg
