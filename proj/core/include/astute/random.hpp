#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace astute {

/// Counter-based random stream. The i-th output is a pure function of
/// (seed, stream id, i), so workers can draw from disjoint streams without
/// coordination and results do not depend on the schedule.
///
/// Distributions are implemented here rather than through <random> so that
/// sequences are identical across standard library implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal() noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Independent stream keyed by this stream's identity and `child`.
  RandomStream derive(std::uint64_t child) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t position() const noexcept { return counter_; }

  bool operator==(const RandomStream&) const = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Combines several integers into a single stream id.
std::uint64_t stream_id(std::initializer_list<std::uint64_t> parts) noexcept;

}  // namespace astute
