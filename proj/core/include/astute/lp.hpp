#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace astute::lp {

enum class Status { Optimal, Infeasible, Unbounded };

/// Rows of `A x <= b` over a fixed number of variables.
struct Constraints {
  explicit Constraints(std::size_t num_vars) : num_vars(num_vars) {}

  void add(std::span<const double> coeffs, double rhs);
  std::size_t size() const noexcept { return rhs.size(); }

  std::size_t num_vars;
  std::vector<double> coeffs;  // row-major, size() x num_vars
  std::vector<double> rhs;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

/// Dense two-phase simplex with Bland's rule: maximize c.x subject to
/// A x <= b and x >= 0. Meant for small problems (tens of rows, a handful
/// of columns).
Solution maximize(std::span<const double> c, const Constraints& constraints);

/// minimize c.x subject to A x <= b and lo <= x <= hi (finite bounds).
Solution minimize_in_box(std::span<const double> c, const Constraints& constraints,
                         std::span<const double> lo, std::span<const double> hi);

}  // namespace astute::lp
