#pragma once

#include <optional>
#include <string_view>

namespace astute {

enum class Label : int { Negative = -1, Positive = 1 };

constexpr int to_int(Label y) noexcept { return static_cast<int>(y); }

constexpr Label opposite(Label y) noexcept {
  return y == Label::Positive ? Label::Negative : Label::Positive;
}

/// Weighted-vote decision: strictly positive votes give +1, everything else -1.
constexpr Label label_from_vote(double vote) noexcept {
  return vote > 0.0 ? Label::Positive : Label::Negative;
}

constexpr std::string_view to_string(Label y) noexcept {
  return y == Label::Positive ? "+1" : "-1";
}

/// Accepts exactly "+1" or "-1".
constexpr std::optional<Label> parse_label(std::string_view token) noexcept {
  if (token == "+1") return Label::Positive;
  if (token == "-1") return Label::Negative;
  return std::nullopt;
}

}  // namespace astute
