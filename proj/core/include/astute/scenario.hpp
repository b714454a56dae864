#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "astute/dataset.hpp"
#include "astute/geometry.hpp"
#include "astute/random.hpp"

namespace astute {

/// Synthetic distributions:
///  - HalfMoons: +1 on the arc (cos t, sin t), -1 on (1 - cos t, 0.5 - sin t),
///    t ~ U[0, pi], label by fair coin, N(0, sigma^2) noise per coordinate.
///  - Example1: x ~ U[0, 1], P(y = +1 | x) = clamp(1/2 + sin(4 pi x / r), 0, 1).
///  - Example2: +1 uniform on [0, 0.25), -1 uniform on (0.5, 1], equal mass.
///  - Example3: point masses (-1, -1) with probability 0.1 and (+1, +1) with 0.9.
enum class ScenarioKind { HalfMoons, Example1, Example2, Example3 };

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::HalfMoons;
  std::size_t n = 0;
  double sigma = 0.0;  // HalfMoons only
  double r = 0.1;      // Example1 only

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

Dataset generate(const ScenarioSpec& spec, RandomStream& rng);

std::size_t scenario_dimension(ScenarioKind kind) noexcept;

/// Bounded input space of the scenario, or nullopt for all of R^d.
std::optional<Box> input_space(ScenarioKind kind);

/// Clamped Example 1 posterior P(y = +1 | x).
double example1_posterior(double x, double r) noexcept;

std::string_view to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> parse_scenario(std::string_view name) noexcept;

}  // namespace astute
