#include "chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace astute::cli {

namespace {

constexpr double kLeft = 64, kRight = 150, kTop = 40, kBottom = 56;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  if (v == std::floor(v) && std::abs(v) < 1e9) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%g", v);
  }
  return buf;
}

}  // namespace

void ChartSpec::validate() const {
  if (series.empty()) throw std::invalid_argument("chart: no series");
  if (!(y_max > y_min)) throw std::invalid_argument("chart: y_max must exceed y_min");
  for (const ChartSeries& s : series) {
    if (s.x.empty() || s.x.size() != s.mean.size() ||
        (!s.stddev.empty() && s.stddev.size() != s.x.size())) {
      throw std::invalid_argument("chart: series '" + s.label + "' has inconsistent lengths");
    }
    if (log_x && std::any_of(s.x.begin(), s.x.end(), [](double v) { return !(v > 0.0); })) {
      throw std::invalid_argument("chart: log axis needs positive x");
    }
  }
}

std::string render_svg(const ChartSpec& spec) {
  spec.validate();
  const double plot_w = spec.width - kLeft - kRight;
  const double plot_h = spec.height - kTop - kBottom;
  auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };

  double x_lo = tx(spec.series.front().x.front());
  double x_hi = x_lo;
  for (const ChartSeries& s : spec.series) {
    for (double v : s.x) {
      x_lo = std::min(x_lo, tx(v));
      x_hi = std::max(x_hi, tx(v));
    }
  }
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  auto px = [&](double v) { return kLeft + (tx(v) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) {
    const double c = std::clamp(v, spec.y_min, spec.y_max);
    return kTop + (spec.y_max - c) / (spec.y_max - spec.y_min) * plot_h;
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(spec.title) + "</text>\n";
  }

  // Axes and y grid.
  svg += "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = spec.y_min + (spec.y_max - spec.y_min) * i / 5.0;
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(py(v)) + "\" x2=\"" + fmt(kLeft + plot_w) +
           "\" y2=\"" + fmt(py(v)) + "\"/>\n";
  }
  svg += "</g>\n";
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" + fmt(kLeft + plot_w) +
         "\" y2=\"" + fmt(kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) + "\" y2=\"" +
         fmt(kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";

  svg += "<g text-anchor=\"end\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = spec.y_min + (spec.y_max - spec.y_min) * i / 5.0;
    svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(v) + 4) + "\">" + tick_label(v) + "</text>\n";
  }
  svg += "</g>\n";

  // x ticks at the data positions of the first series.
  svg += "<g text-anchor=\"middle\">\n";
  for (double v : spec.series.front().x) {
    svg += "<text x=\"" + fmt(px(v)) + "\" y=\"" + fmt(kTop + plot_h + 16) + "\">" + tick_label(v) +
           "</text>\n";
  }
  svg += "</g>\n";
  svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(spec.height - 12.0) +
         "\" text-anchor=\"middle\">" + escape(spec.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt(kTop + plot_h / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const ChartSeries& s = spec.series[si];
    const std::string color = escape(s.color);
    svg += "<g class=\"series\" stroke=\"" + color + "\" fill=\"" + color + "\">\n";
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) points += ' ';
      points += fmt(px(s.x[i])) + "," + fmt(py(s.mean[i]));
    }
    svg += "<polyline fill=\"none\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = px(s.x[i]);
      if (!s.stddev.empty() && s.stddev[i] > 0.0) {
        const double y0 = py(s.mean[i] - s.stddev[i]);
        const double y1 = py(s.mean[i] + s.stddev[i]);
        svg += "<line class=\"errorbar\" stroke-width=\"1\" x1=\"" + fmt(x) + "\" y1=\"" + fmt(y0) + "\" x2=\"" +
               fmt(x) + "\" y2=\"" + fmt(y1) + "\"/>\n";
        svg += "<line stroke-width=\"1\" x1=\"" + fmt(x - 4) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x + 4) +
               "\" y2=\"" + fmt(y0) + "\"/>\n";
        svg += "<line stroke-width=\"1\" x1=\"" + fmt(x - 4) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x + 4) +
               "\" y2=\"" + fmt(y1) + "\"/>\n";
      }
      svg += "<circle class=\"marker\" cx=\"" + fmt(x) + "\" cy=\"" + fmt(py(s.mean[i])) + "\" r=\"3.5\"/>\n";
    }
    svg += "</g>\n";

    const double ly = kTop + 14 + 20.0 * static_cast<double>(si);
    const double lx = kLeft + plot_w + 16;
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(lx + 20) + "\" y2=\"" +
           fmt(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(lx + 26) + "\" y=\"" + fmt(ly) + "\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_chart(const ChartSpec& spec, const std::filesystem::path& path) {
  const std::string svg = render_svg(spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write chart to '" + path.string() + "'");
  out << svg;
  if (!out) throw std::runtime_error("failed writing chart to '" + path.string() + "'");
}

ChartSpec sweep_chart(std::span<const SweepRow> rows, std::string title) {
  ChartSpec spec;
  spec.title = std::move(title);
  ChartSeries acc{"accuracy", kAccuracyColor, {}, {}, {}};
  ChartSeries ast{"astuteness", kAstutenessColor, {}, {}, {}};
  for (const SweepRow& r : rows) {
    const auto n = static_cast<double>(r.n);
    acc.x.push_back(n);
    acc.mean.push_back(r.accuracy_mean);
    acc.stddev.push_back(r.accuracy_std);
    ast.x.push_back(n);
    ast.mean.push_back(r.astuteness_mean);
    ast.stddev.push_back(r.astuteness_std);
  }
  spec.series = {std::move(acc), std::move(ast)};
  return spec;
}

}  // namespace astute::cli
