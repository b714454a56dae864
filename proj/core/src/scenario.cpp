#include "astute/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace astute {

void ScenarioSpec::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma: must be a finite value >= 0");
  }
  if (kind == ScenarioKind::Example1 && !(r > 0.0)) {
    throw std::invalid_argument("r: must be > 0");
  }
}

double example1_posterior(double x, double r) noexcept {
  return std::clamp(0.5 + std::sin(4.0 * std::numbers::pi * x / r), 0.0, 1.0);
}

Dataset generate(const ScenarioSpec& spec, RandomStream& rng) {
  spec.validate();
  Dataset ds(scenario_dimension(spec.kind));
  ds.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    switch (spec.kind) {
      case ScenarioKind::HalfMoons: {
        const bool positive = rng.bernoulli(0.5);
        const double t = rng.uniform(0.0, std::numbers::pi);
        const double nx = rng.normal();
        const double ny = rng.normal();
        double x = positive ? std::cos(t) : 1.0 - std::cos(t);
        double y = positive ? std::sin(t) : 0.5 - std::sin(t);
        if (spec.sigma > 0.0) {
          x += spec.sigma * nx;
          y += spec.sigma * ny;
        }
        ds.add(Point{x, y}, positive ? Label::Positive : Label::Negative);
        break;
      }
      case ScenarioKind::Example1: {
        const double x = rng.uniform();
        const bool positive = rng.bernoulli(example1_posterior(x, spec.r));
        ds.add(Point{x}, positive ? Label::Positive : Label::Negative);
        break;
      }
      case ScenarioKind::Example2: {
        const bool positive = rng.bernoulli(0.5);
        const double u = rng.uniform();
        if (positive) {
          ds.add(Point{0.25 * u}, Label::Positive);
        } else {
          ds.add(Point{1.0 - 0.5 * u}, Label::Negative);
        }
        break;
      }
      case ScenarioKind::Example3: {
        if (rng.bernoulli(0.1)) {
          ds.add(Point{-1.0}, Label::Negative);
        } else {
          ds.add(Point{1.0}, Label::Positive);
        }
        break;
      }
    }
  }
  return ds;
}

std::size_t scenario_dimension(ScenarioKind kind) noexcept {
  return kind == ScenarioKind::HalfMoons ? 2 : 1;
}

std::optional<Box> input_space(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::HalfMoons:
      return std::nullopt;
    case ScenarioKind::Example1:
    case ScenarioKind::Example2:
      return Box{Point{0.0}, Point{1.0}};
    case ScenarioKind::Example3:
      return Box{Point{-1.0}, Point{1.0}};
  }
  return std::nullopt;
}

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::HalfMoons:
      return "half_moons";
    case ScenarioKind::Example1:
      return "example1";
    case ScenarioKind::Example2:
      return "example2";
    case ScenarioKind::Example3:
      return "example3";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario(std::string_view name) noexcept {
  if (name == "half_moons" || name == "halfmoons") return ScenarioKind::HalfMoons;
  if (name == "example1") return ScenarioKind::Example1;
  if (name == "example2") return ScenarioKind::Example2;
  if (name == "example3") return ScenarioKind::Example3;
  return std::nullopt;
}

}  // namespace astute
