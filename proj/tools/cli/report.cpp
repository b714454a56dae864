#include "report.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "astute/csv.hpp"
#include "astute/parallel.hpp"

namespace astute::cli {

std::vector<ReportRow> attack_report(const Model& model, const Dataset& test,
                                     const AttackBudget& budget, const AttackSettings& settings) {
  budget.validate();
  std::vector<ReportRow> rows(test.size());
  parallel_for(test.size(), [&](std::size_t i) {
    ReportRow& row = rows[i];
    const auto x = test.point(i);
    row.index = i;
    row.label = test.label(i);
    row.predicted = predict(model, x);
    if (row.predicted != row.label) return;
    const AttackResult res = attack(model, x, row.label, budget, settings);
    row.astute = res.outcome != AttackOutcome::Found;
    row.radius = res.radius;
    row.witness = res.witness;
  });
  return rows;
}

void write_report_csv(std::span<const ReportRow> rows, std::size_t dim, std::ostream& out) {
  out << "index,label,predicted,astute,radius";
  for (std::size_t j = 0; j < dim; ++j) out << ",w" << j;
  out << '\n';
  for (const ReportRow& r : rows) {
    out << r.index << ',' << to_string(r.label) << ',' << to_string(r.predicted) << ','
        << (r.astute ? 1 : 0) << ',';
    if (r.radius) out << format_real(*r.radius);
    for (std::size_t j = 0; j < dim; ++j) {
      out << ',';
      if (r.witness) out << format_real((*r.witness)[j]);
    }
    out << '\n';
  }
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "report: missing header");
  const auto header = split_fields(line);
  if (header.size() < 5 || header[0] != "index" || header[4] != "radius") {
    throw ParseError(1, "report: unexpected header '" + line + "'");
  }
  const std::size_t dim = header.size() - 5;
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != header.size()) throw ParseError(line_no, "report: wrong field count");
    auto real = [&](std::string_view token) {
      try {
        return parse_real(token);
      } catch (const std::invalid_argument&) {
        throw ParseError(line_no, "report: bad number '" + std::string(token) + "'");
      }
    };
    ReportRow r;
    const auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), r.index);
    if (f[0].empty() || ec != std::errc() || ptr != f[0].data() + f[0].size()) {
      throw ParseError(line_no, "report: bad index");
    }
    const auto y = parse_label(f[1]);
    const auto p = parse_label(f[2]);
    if (!y || !p) throw ParseError(line_no, "report: bad label");
    r.label = *y;
    r.predicted = *p;
    if (f[3] != "0" && f[3] != "1") throw ParseError(line_no, "report: bad astute flag");
    r.astute = f[3] == "1";
    if (!f[4].empty()) r.radius = real(f[4]);
    if (dim > 0 && !f[5].empty()) {
      Point w(dim);
      for (std::size_t j = 0; j < dim; ++j) w[j] = real(f[5 + j]);
      r.witness = std::move(w);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace astute::cli
