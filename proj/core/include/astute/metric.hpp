#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace astute {

enum class Metric { L2, Linf };

/// Distance between two points of equal dimension. Throws std::invalid_argument
/// on a dimension mismatch.
double distance(Metric metric, std::span<const double> a, std::span<const double> b);

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;

namespace detail {

// Hot-loop variant; callers guarantee equal sizes.
inline double distance_unchecked(Metric metric, const double* a, const double* b,
                                 std::size_t dim) noexcept {
  if (metric == Metric::Linf) {
    double m = 0.0;
    for (std::size_t j = 0; j < dim; ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
  }
  double s = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace detail
}  // namespace astute
