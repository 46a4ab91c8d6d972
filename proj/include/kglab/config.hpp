#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kglab/analytic.hpp"
#include "kglab/verification.hpp"

namespace kg {

struct GridConfig {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t nx = 200;
  double courant = 0.9;
};

struct TimeConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  std::size_t sample_every = 1;
};

/// Declarative run description, loaded from a JSON file. See configs/README.md
/// for the schema.
struct RunConfig {
  CaseSpec case_spec = DeltaCase{};
  GridConfig grid;
  TimeConfig time;
  std::vector<double> exact_times;               // evaluation times for `exact`
  std::optional<std::vector<std::string>> suites;  // verify suites; absent = all
  std::optional<SampleBox> residual_box;
  std::vector<std::size_t> levels{200, 400, 800};  // convergence resolutions
  std::optional<OrderBand> band;
  std::string csv;
  std::string svg;
};

/// Parses and validates a configuration. Throws ConfigError naming the
/// offending key (dotted path) or, for syntax errors, the line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Grid implied by the config: dt fitted so that the run spans an integer
/// number of steps with dt / dx <= courant.
Grid1D make_grid(const GridConfig& grid, const TimeConfig& time, std::size_t nx);

}  // namespace kg
