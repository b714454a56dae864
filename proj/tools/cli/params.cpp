#include "params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "astute/csv.hpp"

namespace astute::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view token) {
  token = trim(token);
  std::uint64_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw ConfigError(key, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error("key '" + key + "': " + message), key_(std::move(key)) {}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, value).second) {
      throw ConfigError(key, "line " + std::to_string(line_no) + ": duplicate key");
    }
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

const std::string* Params::find(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::string Params::text(const std::string& key, const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

double Params::real(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  try {
    const double x = parse_real(trim(*v));
    if (!std::isfinite(x)) throw std::invalid_argument("not finite");
    return x;
  } catch (const std::invalid_argument&) {
    throw ConfigError(key, "expected a real number, got '" + *v + "'");
  }
}

double Params::positive(const std::string& key, double fallback) const {
  const double x = real(key, fallback);
  if (!(x > 0.0)) throw ConfigError(key, "must be > 0");
  return x;
}

std::size_t Params::count(const std::string& key, std::size_t fallback) const {
  const std::string* v = find(key);
  return v ? static_cast<std::size_t>(parse_unsigned(key, *v)) : fallback;
}

std::uint64_t Params::seed(const std::string& key, std::uint64_t fallback) const {
  const std::string* v = find(key);
  return v ? parse_unsigned(key, *v) : fallback;
}

bool Params::flag(const std::string& key, bool fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  const std::string_view s = trim(*v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + *v + "'");
}

std::vector<std::size_t> Params::counts(const std::string& key,
                                        std::vector<std::size_t> fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  std::vector<std::size_t> out;
  for (std::string_view field : split_fields(*v)) {
    out.push_back(static_cast<std::size_t>(parse_unsigned(key, field)));
  }
  return out;
}

std::vector<double> Params::reals(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) return {};
  std::vector<double> out;
  for (std::string_view field : split_fields(*v)) {
    try {
      out.push_back(parse_real(trim(field)));
    } catch (const std::invalid_argument&) {
      throw ConfigError(key, "expected comma-separated reals, got '" + *v + "'");
    }
  }
  return out;
}

}  // namespace astute::cli
