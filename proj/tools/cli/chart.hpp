#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "astute/evaluation.hpp"

namespace astute::cli {

inline constexpr const char* kAccuracyColor = "#2ca02c";    // green
inline constexpr const char* kAstutenessColor = "#7b3294";  // purple

struct ChartSeries {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> stddev;  // empty for no error bars
};

struct ChartSpec {
  std::string title;
  std::string x_label = "training set size";
  std::string y_label = "fraction";
  bool log_x = true;
  double y_min = 0.0;
  double y_max = 1.0;
  int width = 640;
  int height = 420;
  std::vector<ChartSeries> series;

  /// Throws std::invalid_argument on inconsistent series lengths, an empty
  /// chart, or non-positive x on a log axis.
  void validate() const;
};

/// Line chart with markers and error bars. Byte-identical output for equal specs.
std::string render_svg(const ChartSpec& spec);

/// Writes render_svg(spec); throws std::runtime_error if the file cannot be written.
void emit_chart(const ChartSpec& spec, const std::filesystem::path& path);

/// Accuracy (green) and astuteness (purple) against training size.
ChartSpec sweep_chart(std::span<const SweepRow> rows, std::string title);

}  // namespace astute::cli
