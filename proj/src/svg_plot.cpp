#include "mdplab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "mdplab/errors.hpp"

namespace mdplab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;
constexpr int kMaxPointsPerSeries = 2000;

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct Frame {
  double left, right, top, bottom;  // pixel box
  double x_min, x_max;              // data range (already log10 if log axis)
  double y_min, y_max;

  double px(double x) const {
    return left + (x - x_min) / (x_max - x_min) * (right - left);
  }
  double py(double y) const {
    return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
  }
};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_chart(const std::vector<SvgSeries>& series,
                              const SvgOptions& options) {
  if (series.empty()) throw ValidationError("svg chart: no series");
  std::size_t n = 0;
  for (const auto& s : series) n = std::max(n, s.y.size());
  if (n == 0) throw ValidationError("svg chart: empty series");

  const auto x_value = [&](std::size_t i) {
    const double t = static_cast<double>(i + 1);
    return options.log_x ? std::log10(t) : t;
  };

  Frame f;
  f.left = 64.0;
  f.right = options.width - 20.0;
  f.top = 42.0;
  f.bottom = options.height - 48.0;
  f.x_min = x_value(0);
  f.x_max = x_value(n - 1);
  if (f.x_max <= f.x_min) f.x_max = f.x_min + 1.0;
  f.y_min = 0.0;
  f.y_max = 1e-9;
  for (const auto& s : series) {
    for (double y : s.y) f.y_max = std::max(f.y_max, y);
    for (double y : s.band_high) f.y_max = std::max(f.y_max, y);
    for (double y : s.y) f.y_min = std::min(f.y_min, y);
    for (double y : s.band_low) f.y_min = std::min(f.y_min, y);
  }
  f.y_max *= 1.05;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" viewBox=\"0 0 " +
         std::to_string(options.width) + " " + std::to_string(options.height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg += "<text x=\"" + fmt(0.5 * options.width) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" +
           escape(options.title) + "</text>\n";
  }

  // Axes and ticks.
  svg += "<line x1=\"" + fmt(f.left) + "\" y1=\"" + fmt(f.bottom) + "\" x2=\"" +
         fmt(f.right) + "\" y2=\"" + fmt(f.bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt(f.left) + "\" y1=\"" + fmt(f.top) + "\" x2=\"" +
         fmt(f.left) + "\" y2=\"" + fmt(f.bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double xv = f.x_min + (f.x_max - f.x_min) * i / ticks;
    const double x_data = options.log_x ? std::pow(10.0, xv) : xv;
    const double px = f.px(xv);
    svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(f.bottom) + "\" x2=\"" +
           fmt(px) + "\" y2=\"" + fmt(f.bottom + 4.0) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(f.bottom + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           fmt(x_data, "%.6g") + "</text>\n";

    const double yv = f.y_min + (f.y_max - f.y_min) * i / ticks;
    const double py = f.py(yv);
    svg += "<line x1=\"" + fmt(f.left - 4.0) + "\" y1=\"" + fmt(py) +
           "\" x2=\"" + fmt(f.left) + "\" y2=\"" + fmt(py) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(f.left - 8.0) + "\" y=\"" + fmt(py + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           fmt(yv, "%.6g") + "</text>\n";
  }
  svg += "<text x=\"" + fmt(0.5 * (f.left + f.right)) + "\" y=\"" +
         fmt(options.height - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         escape(options.x_label) + (options.log_x ? " (log scale)" : "") +
         "</text>\n";
  if (!options.y_label.empty()) {
    svg += "<text x=\"16\" y=\"" + fmt(0.5 * (f.top + f.bottom)) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt(0.5 * (f.top + f.bottom)) + ")\">" + escape(options.y_label) +
           "</text>\n";
  }

  const std::size_t stride = std::max<std::size_t>(1, n / kMaxPointsPerSeries);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPaletteSize];

    if (s.band_low.size() == s.y.size() && s.band_high.size() == s.y.size()) {
      std::string pts;
      for (std::size_t i = 0; i < s.y.size(); i += stride) {
        pts += fmt(f.px(x_value(i))) + "," + fmt(f.py(s.band_high[i])) + " ";
      }
      for (std::size_t i = s.y.size(); i-- > 0;) {
        if (i % stride != 0) continue;
        pts += fmt(f.px(x_value(i))) + "," + fmt(f.py(s.band_low[i])) + " ";
      }
      svg += "<polygon points=\"" + pts + "\" fill=\"" + std::string(color) +
             "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }

    std::string pts;
    for (std::size_t i = 0; i < s.y.size(); i += stride) {
      pts += fmt(f.px(x_value(i))) + "," + fmt(f.py(s.y[i])) + " ";
    }
    if ((s.y.size() - 1) % stride != 0) {
      const std::size_t i = s.y.size() - 1;
      pts += fmt(f.px(x_value(i))) + "," + fmt(f.py(s.y[i])) + " ";
    }
    svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
           std::string(color) + "\" stroke-width=\"1.5\"/>\n";

    // Legend entry.
    const double ly = f.top + 16.0 * static_cast<double>(k);
    svg += "<line x1=\"" + fmt(f.left + 10.0) + "\" y1=\"" + fmt(ly) +
           "\" x2=\"" + fmt(f.left + 34.0) + "\" y2=\"" + fmt(ly) +
           "\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(f.left + 40.0) + "\" y=\"" + fmt(ly + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace mdplab
