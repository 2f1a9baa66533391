#pragma once

#include <string>
#include <vector>

namespace gslab::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // points instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;  // plots |y|, dropping zeros
  bool zero_line = false;
};

// Self-contained SVG document with axes, ticks, a legend and one polyline or
// marker set per series. Non-finite points (and non-positive ones on log
// axes) are skipped.
std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace gslab::cli
