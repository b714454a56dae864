#include "astute/rules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace astute {

std::size_t SizeRule::operator()(std::size_t n) const {
  std::size_t k = 1;
  switch (kind) {
    case Kind::Constant:
      k = value;
      break;
    case Kind::CeilSqrt: {
      k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      // Guard against sqrt rounding on perfect squares.
      while (k > 1 && (k - 1) * (k - 1) >= n) --k;
      break;
    }
  }
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(n, 1));
}

std::string SizeRule::describe() const {
  return kind == Kind::CeilSqrt ? "sqrt" : std::to_string(value);
}

double BandwidthRule::operator()(std::size_t n, std::size_t dim) const {
  double h = scale;
  if (kind == Kind::PowerLaw) {
    h = scale * std::pow(static_cast<double>(std::max<std::size_t>(n, 1)),
                         -1.0 / (static_cast<double>(dim) + 2.0));
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("bandwidth: must be > 0");
  return h;
}

}  // namespace astute
