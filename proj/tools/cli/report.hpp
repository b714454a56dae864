#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "astute/attacks.hpp"
#include "astute/dataset.hpp"
#include "astute/model.hpp"

namespace astute::cli {

/// One attacked test point. `radius` and `witness` are set iff the attack found
/// an adversarial example; a misclassified point is non-astute with both blank.
struct ReportRow {
  std::size_t index = 0;
  Label label = Label::Positive;
  Label predicted = Label::Positive;
  bool astute = false;
  std::optional<double> radius;
  std::optional<Point> witness;
  bool operator==(const ReportRow&) const = default;
};

std::vector<ReportRow> attack_report(const Model& model, const Dataset& test,
                                     const AttackBudget& budget, const AttackSettings& settings);

/// Header: index,label,predicted,astute,radius,w0..w{d-1}.
void write_report_csv(std::span<const ReportRow> rows, std::size_t dim, std::ostream& out);
/// Throws ParseError on a malformed report.
std::vector<ReportRow> read_report_csv(std::istream& in);

}  // namespace astute::cli
