#include "astute/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

namespace astute {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view token) {
  // from_chars rejects a leading '+', which is a legal way to write a real.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("not a real number: '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

Dataset read_csv(std::istream& in) {
  std::optional<Dataset> ds;
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> coords;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2) throw ParseError(lineno, "expected coordinates followed by a label");
    const auto label = parse_label(fields.back());
    if (!label) {
      throw ParseError(lineno, "unknown label token '" + std::string(fields.back()) + "'");
    }
    coords.clear();
    for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
      try {
        coords.push_back(parse_real(fields[j]));
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
      if (!std::isfinite(coords.back())) throw ParseError(lineno, "non-finite coordinate");
    }
    if (!ds) ds.emplace(coords.size());
    if (coords.size() != ds->dim()) {
      throw ParseError(lineno, "inconsistent dimension: expected " + std::to_string(ds->dim()) +
                                   ", got " + std::to_string(coords.size()));
    }
    ds->add(coords, *label);
  }
  if (!ds) throw ParseError(lineno, "empty dataset");
  return std::move(*ds);
}

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

void write_csv(const Dataset& ds, std::ostream& out) {
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.point(i)) out << format_real(v) << ',';
    out << to_string(ds.label(i)) << '\n';
  }
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(ds, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace astute
