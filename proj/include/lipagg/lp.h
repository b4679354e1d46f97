// Copyright 2026 The lipagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense two-phase simplex for the small linear programs of the solver.
//
//   maximize    c·x
//   subject to  A_le x <= b_le   (b_le >= 0)
//               A_eq x  = b_eq
//               x >= 0
//
// Pivoting follows Bland's rule, which terminates on the highly degenerate
// programs the channel polytopes produce.

#ifndef LIPAGG_LP_H_
#define LIPAGG_LP_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace lipagg {

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> le_rows;
  std::vector<double> le_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
};

namespace internal {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs z_j − c_j; its rhs is the objective.
  double& cost(std::size_t c) { return at(rows_, c); }
  std::vector<std::size_t>& basis() { return basis_; }

  void Pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Runs Bland pivots over columns [0, allowed). Returns false when the
  // program is unbounded or the iteration cap is hit.
  bool Optimize(std::size_t allowed, double tol) {
    const std::size_t cap = 50000;
    for (std::size_t it = 0; it < cap; ++it) {
      std::size_t enter = allowed;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (cost(c) < -tol) {
          enter = c;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = rows_;
      double best = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double v = at(r, enter);
        if (v <= tol) continue;
        const double ratio = rhs(r) / v;
        if (leave == rows_ || ratio < best - 1e-12 ||
            (std::abs(ratio - best) <= 1e-12 && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      Pivot(leave, enter);
    }
    return false;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace internal

inline absl::StatusOr<LpSolution> SolveLinearProgram(const LinearProgram& lp,
                                                     double tol = 1e-10) {
  const std::size_t n = lp.num_vars;
  const std::size_t n_le = lp.le_rows.size();
  const std::size_t n_eq = lp.eq_rows.size();
  if (lp.objective.size() != n || lp.le_rhs.size() != n_le ||
      lp.eq_rhs.size() != n_eq) {
    return absl::InvalidArgumentError("linear program: inconsistent sizes");
  }
  const std::size_t rows = n_le + n_eq;
  const std::size_t slack0 = n;
  const std::size_t art0 = n + n_le;
  const std::size_t cols = art0 + n_eq;
  internal::Tableau t(rows, cols);

  for (std::size_t i = 0; i < n_le; ++i) {
    if (lp.le_rows[i].size() != n || lp.le_rhs[i] < 0.0) {
      return absl::InvalidArgumentError(
          "linear program: bad inequality row or negative right-hand side");
    }
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = lp.le_rows[i][j];
    t.at(i, slack0 + i) = 1.0;
    t.rhs(i) = lp.le_rhs[i];
    t.basis()[i] = slack0 + i;
  }
  for (std::size_t i = 0; i < n_eq; ++i) {
    if (lp.eq_rows[i].size() != n) {
      return absl::InvalidArgumentError("linear program: bad equality row");
    }
    const std::size_t r = n_le + i;
    const double sign = lp.eq_rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = sign * lp.eq_rows[i][j];
    t.at(r, art0 + i) = 1.0;
    t.rhs(r) = sign * lp.eq_rhs[i];
    t.basis()[r] = art0 + i;
  }

  // Phase 1: maximize −Σ artificials.
  if (n_eq > 0) {
    for (std::size_t i = 0; i < n_eq; ++i) t.cost(art0 + i) = 1.0;
    for (std::size_t i = 0; i < n_eq; ++i) {
      const std::size_t r = n_le + i;
      for (std::size_t c = 0; c <= cols; ++c) t.at(rows, c) -= t.at(r, c);
    }
    if (!t.Optimize(cols, tol)) {
      return absl::InternalError("linear program: phase one failed");
    }
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t.basis()[r] >= art0) infeasibility += t.rhs(r);
    }
    if (infeasibility > 1e-8) {
      return absl::FailedPreconditionError("linear program is infeasible");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (t.basis()[r] < art0) continue;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(t.at(r, c)) > 1e-9) {
          t.Pivot(r, c);
          break;
        }
      }
    }
  }

  // Phase 2 over original and slack columns.
  for (std::size_t c = 0; c <= cols; ++c) t.cost(c) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = -lp.objective[j];
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t b = t.basis()[r];
    const double cb = b < n ? lp.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.cost(c) += cb * t.at(r, c);
  }
  if (!t.Optimize(art0, tol)) {
    return absl::InternalError("linear program: unbounded or stalled");
  }

  LpSolution sol;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (t.basis()[r] < n) sol.x[t.basis()[r]] = std::max(t.rhs(r), 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace lipagg

#endif  // LIPAGG_LP_H_
