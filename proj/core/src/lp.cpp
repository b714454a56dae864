#include "astute/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace astute::lp {

void Constraints::add(std::span<const double> row, double b) {
  if (row.size() != num_vars) throw std::invalid_argument("lp: constraint width mismatch");
  coeffs.insert(coeffs.end(), row.begin(), row.end());
  rhs.push_back(b);
}

namespace {

constexpr double kEps = 1e-10;

// Tableau in dictionary form. Column n is the phase-one artificial variable,
// column n + 1 the right-hand side; row m is the objective, row m + 1 the
// phase-one objective. Basic/non-basic labels are variable ids, -1 for the
// artificial variable.
class Tableau {
 public:
  Tableau(std::span<const double> c, const Constraints& cons)
      : m_(cons.size()),
        n_(cons.num_vars),
        cols_(n_ + 2),
        d_((m_ + 2) * cols_, 0.0),
        basic_(m_),
        nonbasic_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = cons.coeffs[i * n_ + j];
      at(i, n_) = -1.0;
      at(i, n_ + 1) = cons.rhs[i];
      basic_[i] = static_cast<long>(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      at(m_, j) = -c[j];
    }
    nonbasic_[n_] = -1;
    at(m_ + 1, n_) = 1.0;
  }

  Solution solve() {
    Solution out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && at(r, n_ + 1) < -kEps) {
      pivot(r, n_);
      if (!run(1) || at(m_ + 1, n_ + 1) < -kEps) {
        out.status = Status::Infeasible;
        return out;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        std::size_t s = 0;
        for (std::size_t j = 1; j <= n_; ++j) {
          if (at(i, j) < at(i, s) || (at(i, j) == at(i, s) && nonbasic_[j] < nonbasic_[s])) s = j;
        }
        pivot(i, s);
      }
    }
    if (!run(2)) {
      out.status = Status::Unbounded;
      return out;
    }
    out.status = Status::Optimal;
    out.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) {
        out.x[static_cast<std::size_t>(basic_[i])] = at(i, n_ + 1);
      }
    }
    out.objective = at(m_, n_ + 1);
    return out;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / at(r, s);
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = at(i, s) * inv;
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j != s) at(i, j) -= at(r, j) * f;
      }
      at(i, s) = -f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) at(r, j) *= inv;
    }
    at(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Bland's rule: lowest-labelled improving column, lowest-labelled row on
  // ratio ties. Guarantees termination on degenerate problems.
  bool run(int phase) {
    const std::size_t obj = phase == 1 ? m_ + 1 : m_;
    while (true) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (at(obj, j) < -kEps && (s > n_ || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s > n_) return true;
      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, s) <= kEps) continue;
        if (r == m_) {
          r = i;
          continue;
        }
        const double lhs = at(i, n_ + 1) / at(i, s);
        const double best = at(r, n_ + 1) / at(r, s);
        if (lhs < best || (lhs == best && basic_[i] < basic_[r])) r = i;
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_;
  std::vector<double> d_;
  std::vector<long> basic_;
  std::vector<long> nonbasic_;
};

}  // namespace

Solution maximize(std::span<const double> c, const Constraints& constraints) {
  if (c.size() != constraints.num_vars) throw std::invalid_argument("lp: objective width mismatch");
  return Tableau(c, constraints).solve();
}

Solution minimize_in_box(std::span<const double> c, const Constraints& constraints,
                         std::span<const double> lo, std::span<const double> hi) {
  const std::size_t n = constraints.num_vars;
  if (c.size() != n || lo.size() != n || hi.size() != n) {
    throw std::invalid_argument("lp: bound width mismatch");
  }
  // Shift x = lo + w with w >= 0 and w <= hi - lo.
  Constraints shifted(n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    double b = constraints.rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = constraints.coeffs[i * n + j];
      b -= row[j] * lo[j];
    }
    shifted.add(row, b);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(hi[j] >= lo[j])) {
      return Solution{Status::Infeasible, {}, 0.0};
    }
    std::fill(row.begin(), row.end(), 0.0);
    row[j] = 1.0;
    shifted.add(row, hi[j] - lo[j]);
  }
  std::vector<double> neg(n);
  double offset = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    neg[j] = -c[j];
    offset += c[j] * lo[j];
  }
  Solution s = maximize(neg, shifted);
  if (s.status != Status::Optimal) return s;
  for (std::size_t j = 0; j < n; ++j) s.x[j] += lo[j];
  s.objective = offset - s.objective;
  return s;
}

}  // namespace astute::lp
