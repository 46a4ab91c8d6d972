#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace kg {

/// %.17g, so that doubles round-trip exactly.
std::string format_number(double v);

/// Comma-separated table with a header row. Numbers use format_number.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_log = false;
  int width = 720;
  int height = 450;
};

/// Static line chart: one polyline per series, axes with tick labels, legend.
std::string render_svg(const std::vector<Series>& series, const ChartOptions& options);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace kg
