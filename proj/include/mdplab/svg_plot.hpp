#pragma once

#include <string>
#include <vector>

namespace mdplab {

// One curve: y values over steps t = 1..n, with an optional confidence band.
struct SvgSeries {
  std::string label;
  std::vector<double> y;
  std::vector<double> band_low;   // empty = no band
  std::vector<double> band_high;
};

struct SvgOptions {
  int width = 840;
  int height = 520;
  std::string title;
  std::string x_label = "t";
  std::string y_label;
  bool log_x = false;
};

// Minimal deterministic SVG 1.1 line chart; long series are thinned for
// rendering only.
std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgOptions& options);

}  // namespace mdplab
