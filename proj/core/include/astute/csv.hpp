#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "astute/dataset.hpp"

namespace astute {

/// Malformed input; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Dataset rows: d coordinates followed by "+1" or "-1", comma separated,
/// no header. Reals are written with 17 significant digits so a write/read
/// cycle is exact.
Dataset read_csv(std::istream& in);
Dataset read_csv(const std::filesystem::path& path);
void write_csv(const Dataset& ds, std::ostream& out);
void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// 17-significant-digit rendering; parses back to the same double.
std::string format_real(double v);
/// Strict parse of the whole token; throws std::invalid_argument.
double parse_real(std::string_view token);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

}  // namespace astute
