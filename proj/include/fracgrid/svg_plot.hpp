#pragma once

#include <string>
#include <vector>

namespace fracgrid {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

/// Standalone SVG 1.1 line chart: one polyline per series, axes with tick
/// labels, axis labels and a legend. Output depends only on the inputs.
///
/// Throws ConfigError naming the series when it is empty, when x and y differ
/// in length, when a value is non-finite, or when a log axis sees a value <= 0.
std::string render_svg_lineplot(const std::vector<PlotSeries>& series, const PlotOptions& options);

void emit_svg_lineplot(const std::vector<PlotSeries>& series, const PlotOptions& options,
                       const std::string& path);

}  // namespace fracgrid
