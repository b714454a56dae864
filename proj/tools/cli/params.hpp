#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace astute::cli {

/// Invalid or unknown configuration entry. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Flat `key = value` file: one entry per line, `#` starts a comment, blank
/// lines ignored. Duplicate keys and lines without `=` are errors.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);
std::map<std::string, std::string> parse_config(std::string_view text);

/// Typed, validated access to merged config-file and flag values. Every
/// accessor throws ConfigError naming the key on a malformed value.
class Params {
 public:
  Params() = default;
  explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.contains(key); }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  /// Strictly positive real.
  double positive(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::uint64_t seed(const std::string& key, std::uint64_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> fallback) const;
  std::vector<double> reals(const std::string& key) const;

 private:
  const std::string* find(const std::string& key) const;
  std::map<std::string, std::string> values_;
};

}  // namespace astute::cli
