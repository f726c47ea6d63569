#include "fracgrid/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fracgrid/csv_writer.hpp"
#include "fracgrid/errors.hpp"

namespace fracgrid {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Tick {
  double position;  // in axis (possibly log10) coordinates
  std::string label;
};

struct Axis {
  double lo;
  double hi;
  std::vector<Tick> ticks;
};

Axis linear_axis(double lo, double hi) {
  if (lo == hi) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / 6.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    if (f * magnitude >= raw) {
      step = f * magnitude;
      break;
    }
  }
  Axis axis{std::floor(lo / step) * step, std::ceil(hi / step) * step, {}};
  const long first = std::lround(axis.lo / step);
  const long last = std::lround(axis.hi / step);
  for (long i = first; i <= last; ++i) {
    double v = static_cast<double>(i) * step;
    if (std::abs(v) < step * 1e-9) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    axis.ticks.push_back({v, buf});
  }
  return axis;
}

// Input bounds are already log10 values; ticks sit on whole decades.
Axis log_axis(double lo, double hi) {
  double first = std::floor(lo);
  double last = std::ceil(hi);
  if (first == last) last += 1.0;
  Axis axis{first, last, {}};
  const long stride = std::max<long>(1, std::lround((last - first) / 8.0));
  for (long e = std::lround(first); e <= std::lround(last); e += stride) {
    axis.ticks.push_back({static_cast<double>(e), "1e" + std::to_string(e)});
  }
  return axis;
}

void check_series(const PlotSeries& s, const PlotOptions& options) {
  if (s.x.empty() || s.x.size() != s.y.size()) {
    throw ConfigError("series '" + s.name + "' must be nonempty with matching x and y lengths",
                      s.name);
  }
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
      throw ConfigError("series '" + s.name + "' has a non-finite value at point " +
                            std::to_string(i),
                        s.name);
    }
    if ((options.log_x && s.x[i] <= 0.0) || (options.log_y && s.y[i] <= 0.0)) {
      throw ConfigError("series '" + s.name + "' has a non-positive value on a log axis",
                        s.name);
    }
  }
}

}  // namespace

std::string render_svg_lineplot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  if (series.empty()) throw ConfigError("nothing to plot", "series");
  for (const auto& s : series) check_series(s, options);

  auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return options.log_y ? std::log10(y) : y; };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  }
  const Axis xa = options.log_x ? log_axis(xmin, xmax) : linear_axis(xmin, xmax);
  const Axis ya = options.log_y ? log_axis(ymin, ymax) : linear_axis(ymin, ymax);

  const double left = 70, right = 20, top = options.title.empty() ? 20 : 40, bottom = 55;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;
  auto px = [&](double v) { return left + (v - xa.lo) / (xa.hi - xa.lo) * plot_w; };
  auto py = [&](double v) { return top + plot_h - (v - ya.lo) / (ya.hi - ya.lo) * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(options.width) + "\" height=\"" + std::to_string(options.height) +
         "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
         std::to_string(options.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg += "<text x=\"" + fixed(options.width / 2.0) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape(options.title) + "</text>\n";
  }

  // axes
  svg += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top + plot_h) + "\" x2=\"" +
         fixed(left + plot_w) + "\" y2=\"" + fixed(top + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) +
         "\" y2=\"" + fixed(top + plot_h) + "\"/>\n";
  svg += "</g>\n";

  svg += "<g class=\"x-ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (const auto& t : xa.ticks) {
    const double x = px(t.position);
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(top + plot_h) + "\" x2=\"" + fixed(x) +
           "\" y2=\"" + fixed(top + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text class=\"tick-label\" x=\"" + fixed(x) + "\" y=\"" + fixed(top + plot_h + 18) +
           "\" text-anchor=\"middle\">" + t.label + "</text>\n";
  }
  svg += "</g>\n";
  svg += "<g class=\"y-ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (const auto& t : ya.ticks) {
    const double y = py(t.position);
    svg += "<line x1=\"" + fixed(left - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(left) +
           "\" y2=\"" + fixed(y) + "\" stroke=\"black\"/>\n";
    svg += "<text class=\"tick-label\" x=\"" + fixed(left - 8) + "\" y=\"" + fixed(y + 4) +
           "\" text-anchor=\"end\">" + t.label + "</text>\n";
  }
  svg += "</g>\n";

  svg += "<text class=\"axis-label\" x=\"" + fixed(left + plot_w / 2) + "\" y=\"" +
         fixed(options.height - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(options.x_label) + "</text>\n";
  svg += "<text class=\"axis-label\" x=\"16\" y=\"" + fixed(top + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " +
         fixed(top + plot_h / 2) + ")\">" + escape(options.y_label) + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (i > 0) svg += ' ';
      svg += fixed(px(tx(series[s].x[i]))) + ',' + fixed(py(ty(series[s].y[i])));
    }
    svg += "\"/>\n";
  }

  svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = top + 14 + 16.0 * static_cast<double>(s);
    const double x = left + plot_w - 120;
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(y - 4) + "\" x2=\"" + fixed(x + 20) +
           "\" y2=\"" + fixed(y - 4) + "\" stroke=\"" + kPalette[s % std::size(kPalette)] +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text class=\"legend-entry\" x=\"" + fixed(x + 26) + "\" y=\"" + fixed(y) + "\">" +
           escape(series[s].name) + "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void emit_svg_lineplot(const std::vector<PlotSeries>& series, const PlotOptions& options,
                       const std::string& path) {
  write_text_file(path, render_svg_lineplot(series, options));
}

}  // namespace fracgrid
