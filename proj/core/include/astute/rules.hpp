#pragma once

#include <cstddef>
#include <string>

namespace astute {

/// Maps a training-set size n to a count in [1, n] (k for k-NN, the split
/// threshold for histograms).
struct SizeRule {
  enum class Kind { Constant, CeilSqrt };

  Kind kind = Kind::Constant;
  std::size_t value = 1;

  static SizeRule constant(std::size_t k) { return {Kind::Constant, k}; }
  static SizeRule ceil_sqrt() { return {Kind::CeilSqrt, 0}; }

  /// Result is clamped to [1, max(n, 1)].
  std::size_t operator()(std::size_t n) const;
  std::string describe() const;

  bool operator==(const SizeRule&) const = default;
};

/// Kernel bandwidth h_n. PowerLaw gives scale * n^(-1/(d+2)).
struct BandwidthRule {
  enum class Kind { PowerLaw, Constant };

  Kind kind = Kind::PowerLaw;
  double scale = 1.0;

  static BandwidthRule power_law(double scale = 1.0) { return {Kind::PowerLaw, scale}; }
  static BandwidthRule constant(double h) { return {Kind::Constant, h}; }

  double operator()(std::size_t n, std::size_t dim) const;

  bool operator==(const BandwidthRule&) const = default;
};

}  // namespace astute
