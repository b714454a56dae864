#include "astute/metric.hpp"

#include <stdexcept>
#include <string>

namespace astute {

double distance(Metric metric, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  return detail::distance_unchecked(metric, a.data(), b.data(), a.size());
}

std::string_view to_string(Metric metric) noexcept {
  return metric == Metric::L2 ? "l2" : "linf";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  if (name == "l2" || name == "L2") return Metric::L2;
  if (name == "linf" || name == "Linf" || name == "LINF") return Metric::Linf;
  return std::nullopt;
}

}  // namespace astute
