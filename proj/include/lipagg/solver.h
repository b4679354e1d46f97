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

// Numeric channel design for the latent-variable and bounded-prior models.
//
// Both models constrain every output column y of q by linear inequalities
// r·q[·][y] <= 0, one per constraint vector r. The objective
// Var(X̂) = Σ_k x_k^2/λ_k − μ^2, with x_k = Σ_m a_m P_m q_mk and
// λ_k = Σ_m P_m q_mk, is convex in q. The solver therefore climbs by
// sequential linear programming: each step maximizes the linearization over
// the polytope and jumps to the resulting vertex, which can only raise the
// objective. Several starts guard against poor local vertices.

#ifndef LIPAGG_SOLVER_H_
#define LIPAGG_SOLVER_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lipagg/audit.h"
#include "lipagg/core.h"
#include "lipagg/estimators.h"
#include "lipagg/lp.h"
#include "lipagg/random.h"

namespace lipagg {

struct SolverOptions {
  int restarts = 16;
  int max_iters = 200;
  double step_tolerance = 1e-10;
  double constraint_tolerance = 1e-8;
  std::uint64_t seed = 0;
};

struct SolverResult {
  Mechanism mechanism;
  // Var(X̂) under the design prior (the worst-case prior for bounded sets).
  double objective = 0.0;
  bool feasible = false;
  int iterations = 0;
  // Bounded-prior solver only: MSE at the worst prior and that prior.
  double worst_case_mse = 0.0;
  std::optional<Prior> worst_prior;
};

inline absl::Status ValidateOptions(const SolverOptions& opts) {
  if (opts.restarts < 1 || opts.max_iters < 1 || opts.step_tolerance <= 0.0 ||
      opts.constraint_tolerance <= 0.0) {
    return absl::InvalidArgumentError(
        "solver options: restarts, iterations and tolerances must be positive");
  }
  return absl::OkStatus();
}

namespace internal {

using ColumnConstraints = std::vector<std::vector<double>>;

// Pr(G=g|Y=y)/Pr(G=g) within [e^-eps, e^eps] for every g in the support.
inline ColumnConstraints LatentConstraints(const LatentModel& latent,
                                           double e) {
  ColumnConstraints out;
  const auto& p = latent.x_prior().probs();
  for (std::size_t g = 0; g < latent.latent_size(); ++g) {
    if (latent.g_prior()[g] == 0.0) continue;
    std::vector<double> upper(p.size());
    std::vector<double> lower(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
      upper[x] = latent.cond()(g, x) - e * p[x];
      lower[x] = p[x] / e - latent.cond()(g, x);
    }
    out.push_back(std::move(upper));
    out.push_back(std::move(lower));
  }
  return out;
}

// q_mk within [λ_k(θ)/e, e λ_k(θ)] at every extreme prior θ. For a box the
// constraint is linear in θ, so holding at the vertices covers the set.
inline ColumnConstraints BoundedPriorConstraints(const PriorSet& set,
                                                 double e) {
  ColumnConstraints out;
  const std::size_t d = set.size();
  for (const Prior& theta : set.extreme_priors()) {
    for (std::size_t m = 0; m < d; ++m) {
      const bool active =
          set.is_box() ? set.MaxCoordinate(m) > 0.0 : theta[m] > 0.0;
      if (!active) continue;
      std::vector<double> upper(d);
      std::vector<double> lower(d);
      for (std::size_t x = 0; x < d; ++x) {
        upper[x] = (x == m ? 1.0 : 0.0) - e * theta[x];
        lower[x] = theta[x] - (x == m ? e : 0.0);
      }
      out.push_back(std::move(upper));
      out.push_back(std::move(lower));
    }
  }
  return out;
}

// Row-stochastic d x d channels obeying `cons` column by column.
inline LinearProgram ChannelPolytope(std::size_t d,
                                     const ColumnConstraints& cons) {
  LinearProgram lp;
  lp.num_vars = d * d;
  lp.objective.assign(d * d, 0.0);
  for (std::size_t m = 0; m < d; ++m) {
    std::vector<double> row(d * d, 0.0);
    for (std::size_t k = 0; k < d; ++k) row[m * d + k] = 1.0;
    lp.eq_rows.push_back(std::move(row));
    lp.eq_rhs.push_back(1.0);
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (const auto& r : cons) {
      std::vector<double> row(d * d, 0.0);
      bool nonzero = false;
      for (std::size_t m = 0; m < d; ++m) {
        row[m * d + k] = r[m];
        nonzero |= r[m] != 0.0;
      }
      if (!nonzero) continue;
      lp.le_rows.push_back(std::move(row));
      lp.le_rhs.push_back(0.0);
    }
  }
  return lp;
}

inline double MaxViolation(const Matrix& q, const ColumnConstraints& cons) {
  double worst = 0.0;
  for (std::size_t k = 0; k < q.cols(); ++k) {
    for (const auto& r : cons) {
      double s = 0.0;
      for (std::size_t m = 0; m < q.rows(); ++m) s += r[m] * q(m, k);
      worst = std::max(worst, s);
    }
  }
  return worst;
}

inline Matrix FromFlat(const std::vector<double>& x, std::size_t d) {
  Matrix q(d, d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t k = 0; k < d; ++k) q(m, k) = x[m * d + k];
  }
  return q;
}

// Drops round-off mass and restores exact row sums.
inline Matrix Clean(Matrix q) {
  for (std::size_t m = 0; m < q.rows(); ++m) {
    double sum = 0.0;
    for (double& v : q.row(m)) {
      if (v < 1e-13) v = 0.0;
      sum += v;
    }
    for (double& v : q.row(m)) v /= sum;
  }
  return q;
}

// ∂Var(X̂)/∂q_mk = P_m (2 a_m r_k − r_k^2) with r_k = E[X | Y = k]; zero on
// unreachable columns.
inline std::vector<double> Gradient(const std::vector<double>& p,
                                    const std::vector<double>& a,
                                    const Matrix& q) {
  const std::size_t d = q.rows();
  const std::size_t f = q.cols();
  std::vector<double> grad(d * f, 0.0);
  for (std::size_t k = 0; k < f; ++k) {
    double lambda = 0.0;
    double x = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
      lambda += p[m] * q(m, k);
      x += a[m] * p[m] * q(m, k);
    }
    if (lambda < kReachableCutoff) continue;
    const double r = x / lambda;
    for (std::size_t m = 0; m < d; ++m) {
      grad[m * f + k] = p[m] * (2.0 * a[m] * r - r * r);
    }
  }
  return grad;
}

struct Ascent {
  Matrix q;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline absl::StatusOr<Ascent> Climb(const std::vector<double>& p,
                                    const std::vector<double>& a,
                                    LinearProgram lp, Matrix q,
                                    const SolverOptions& opts) {
  Ascent out{std::move(q), 0.0, 0, false};
  out.value = EstimatorVariance(p, a, out.q);
  const std::size_t d = out.q.rows();
  for (; out.iterations < opts.max_iters; ++out.iterations) {
    lp.objective = Gradient(p, a, out.q);
    auto sol = SolveLinearProgram(lp);
    if (!sol.ok()) return sol.status();
    Matrix next = Clean(FromFlat(sol->x, d));
    const double value = EstimatorVariance(p, a, next);
    if (value <= out.value + opts.step_tolerance * std::max(1.0, out.value)) {
      out.converged = true;
      break;
    }
    out.q = std::move(next);
    out.value = value;
  }
  return out;
}

// Relabels outputs to maximize the weight on the diagonal over rows with
// positive prior, then routes zero-prior rows to their own symbol.
inline Matrix Canonicalize(const Matrix& q, const std::vector<double>& p) {
  const std::size_t d = q.rows();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best = perm;
  if (d <= 8) {
    double best_trace = -1.0;
    do {
      double trace = 0.0;
      for (std::size_t m = 0; m < d; ++m) {
        if (p[m] > 0.0) trace += q(m, perm[m]);
      }
      if (trace > best_trace + 1e-12) {
        best_trace = trace;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // best[k] is the source column placed at position k.
  Matrix out(d, d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t k = 0; k < d; ++k) out(m, k) = q(m, best[k]);
  }
  for (std::size_t m = 0; m < d; ++m) {
    if (p[m] > 0.0) continue;
    for (std::size_t k = 0; k < d; ++k) out(m, k) = k == m ? 1.0 : 0.0;
  }
  return out;
}

// Best vertex ascent over restarts for prior p and values a.
inline absl::StatusOr<Ascent> MultiStart(const std::vector<double>& p,
                                         const std::vector<double>& a,
                                         const LinearProgram& polytope,
                                         const SolverOptions& opts) {
  const std::size_t d = p.size();
  std::optional<Ascent> best;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Matrix start(d, d);
    if (restart == 1) {
      // Every row equal to P: always feasible, output independent of input.
      for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t k = 0; k < d; ++k) start(m, k) = p[k];
      }
    } else {
      LinearProgram lp = polytope;
      if (restart == 0) {
        for (std::size_t m = 0; m < d; ++m) lp.objective[m * d + m] = 1.0;
      } else {
        Stream stream(opts.seed, static_cast<std::uint64_t>(restart));
        for (double& c : lp.objective) c = stream.Normal();
      }
      auto sol = SolveLinearProgram(lp);
      if (!sol.ok()) return sol.status();
      start = Clean(FromFlat(sol->x, d));
    }
    auto run = Climb(p, a, polytope, std::move(start), opts);
    if (!run.ok()) return run.status();
    if (!best.has_value() ||
        run->value > best->value + 1e-12 * std::max(1.0, best->value)) {
      best = *std::move(run);
    }
  }
  return *std::move(best);
}

}  // namespace internal

// Maximizes Var(X̂) subject to LIP on the latent attribute G.
inline absl::StatusOr<SolverResult> SolveLatentMimo(
    const LatentModel& latent, const PrivacyBudget& eps,
    const SolverOptions& opts = {}) {
  if (absl::Status s = ValidateOptions(opts); !s.ok()) return s;
  const auto& p = latent.x_prior().probs();
  const auto& a = latent.alphabet().values();
  const std::size_t d = p.size();
  if (eps.is_infinite()) {
    Mechanism id = Mechanism::Identity(d);
    return SolverResult{id, internal::Variance(p, a), true, 0};
  }
  const auto cons = internal::LatentConstraints(latent, eps.exp());
  const LinearProgram polytope = internal::ChannelPolytope(d, cons);
  auto best = internal::MultiStart(p, a, polytope, opts);
  if (!best.ok()) return best.status();
  Matrix q = internal::Canonicalize(best->q, p);
  auto mech = Mechanism::Create(q);
  if (!mech.ok()) return mech.status();
  SolverResult result{*mech, internal::EstimatorVariance(p, a, q), false,
                      best->iterations};
  result.feasible =
      internal::MaxViolation(q, cons) <= opts.constraint_tolerance &&
      LatentLipEpsilon(latent, *mech) <=
          eps.epsilon() + opts.constraint_tolerance;
  return result;
}

// Opt-LIP solved numerically: the latent model with G = X.
inline absl::StatusOr<SolverResult> SolveLipMimo(
    const Prior& prior, const Alphabet& alphabet, const PrivacyBudget& eps,
    const SolverOptions& opts = {}) {
  if (prior.size() != alphabet.size()) {
    return absl::InvalidArgumentError("prior and alphabet sizes differ");
  }
  return SolveLatentMimo(LatentModel::FromPrior(prior, alphabet), eps, opts);
}

namespace internal {

// MSE(θ) = Σ_m θ_m a_m^2 − Σ_k x_k(θ)^2/λ_k(θ); concave in θ.
inline double MseAt(const std::vector<double>& theta,
                    const std::vector<double>& a, const Matrix& q) {
  return Variance(theta, a) - EstimatorVariance(theta, a, q);
}

// ∂MSE/∂θ_m = Σ_k q_mk (a_m − r_k)^2.
inline std::vector<double> MseGradient(const std::vector<double>& theta,
                                       const std::vector<double>& a,
                                       const Matrix& q) {
  const std::size_t d = q.rows();
  std::vector<double> grad(d, 0.0);
  for (std::size_t k = 0; k < q.cols(); ++k) {
    double lambda = 0.0;
    double x = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
      lambda += theta[m] * q(m, k);
      x += a[m] * theta[m] * q(m, k);
    }
    const double r = lambda < kReachableCutoff ? 0.0 : x / lambda;
    for (std::size_t m = 0; m < d; ++m) {
      grad[m] += q(m, k) * (a[m] - r) * (a[m] - r);
    }
  }
  return grad;
}

// Prior in the set with the largest MSE for channel q. Lists are
// enumerated; boxes use Frank-Wolfe over the vertices with a golden-section
// line search, exact up to tolerance since the MSE is concave in θ.
inline std::vector<double> WorstPrior(const PriorSet& set,
                                      const std::vector<double>& a,
                                      const Matrix& q) {
  const auto& verts = set.extreme_priors();
  std::vector<double> theta = verts[0].probs();
  double best = MseAt(theta, a, q);
  for (const Prior& v : verts) {
    const double mse = MseAt(v.probs(), a, q);
    if (mse > best) {
      best = mse;
      theta = v.probs();
    }
  }
  if (!set.is_box() || verts.size() == 1) return theta;
  const std::size_t d = theta.size();
  for (int it = 0; it < 500; ++it) {
    const auto grad = MseGradient(theta, a, q);
    std::size_t s = 0;
    double s_score = -kInfinity;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      double score = 0.0;
      for (std::size_t m = 0; m < d; ++m) score += grad[m] * verts[i][m];
      if (score > s_score) {
        s_score = score;
        s = i;
      }
    }
    double gap = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
      gap += grad[m] * (verts[s][m] - theta[m]);
    }
    if (gap <= 1e-13) break;
    auto at = [&](double t) {
      std::vector<double> th(d);
      for (std::size_t m = 0; m < d; ++m) {
        th[m] = theta[m] + t * (verts[s][m] - theta[m]);
      }
      return th;
    };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0;
    double hi = 1.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = MseAt(at(x1), a, q);
    double f2 = MseAt(at(x2), a, q);
    for (int k = 0; k < 80; ++k) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = MseAt(at(x2), a, q);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = MseAt(at(x1), a, q);
      }
    }
    const double t = 0.5 * (lo + hi);
    const auto next = at(t);
    const double value = MseAt(next, a, q);
    if (value <= best + 1e-15) break;
    best = value;
    theta = next;
  }
  return theta;
}

inline double WorstCaseMse(const PriorSet& set, const std::vector<double>& a,
                           const Matrix& q, std::vector<double>* theta) {
  *theta = WorstPrior(set, a, q);
  return MseAt(*theta, a, q);
}

}  // namespace internal

// Minimax channel for a bounded prior family: alternately picks the prior
// with the largest MSE for the current channel and re-optimizes the channel
// for that prior under LIP at every extreme prior of the family. Returns the
// channel with the smallest worst-case MSE seen.
inline absl::StatusOr<SolverResult> SolveBpLipMimo(
    const PriorSet& set, const Alphabet& values, const PrivacyBudget& eps,
    const SolverOptions& opts = {}) {
  if (absl::Status s = ValidateOptions(opts); !s.ok()) return s;
  const std::size_t d = set.size();
  if (values.size() != d) {
    return absl::InvalidArgumentError("prior set and alphabet sizes differ");
  }
  const auto& a = values.values();
  if (eps.is_infinite()) {
    Matrix id = Matrix::Identity(d);
    std::vector<double> theta;
    const double mse = internal::WorstCaseMse(set, a, id, &theta);
    SolverResult r{Mechanism::Identity(d), internal::Variance(theta, a), true,
                   0};
    r.worst_case_mse = mse;
    r.worst_prior = *Prior::Create(theta);
    return r;
  }
  const auto cons = internal::BoundedPriorConstraints(set, eps.exp());
  const LinearProgram polytope = internal::ChannelPolytope(d, cons);

  // Start from the prior that is hardest for an uninformative channel.
  std::vector<double> uniform_row(d, 1.0 / static_cast<double>(d));
  std::vector<double> theta =
      internal::WorstPrior(set, a, Mechanism::Constant(d, uniform_row).matrix());

  std::optional<Matrix> best_q;
  std::vector<double> best_theta;
  double best_mse = kInfinity;
  int iterations = 0;
  for (int round = 0; round < 100; ++round) {
    auto run = internal::MultiStart(theta, a, polytope, opts);
    if (!run.ok()) return run.status();
    iterations += run->iterations;
    std::vector<double> worst;
    const double mse = internal::WorstCaseMse(set, a, run->q, &worst);
    const bool improved = mse < best_mse - 1e-10;
    if (mse < best_mse) {
      best_mse = mse;
      best_q = run->q;
      best_theta = worst;
    }
    if (!improved && round > 0) break;
    theta = worst;
  }
  Matrix q = internal::Canonicalize(*best_q, std::vector<double>(d, 1.0));
  // Canonical relabeling permutes outputs only, so the worst case is kept.
  auto mech = Mechanism::Create(q);
  if (!mech.ok()) return mech.status();
  SolverResult result{*mech, internal::EstimatorVariance(best_theta, a, q),
                      false, iterations};
  result.worst_case_mse = best_mse;
  result.worst_prior = *Prior::Create(best_theta);
  result.feasible =
      internal::MaxViolation(q, cons) <= opts.constraint_tolerance;
  return result;
}

// Exhaustive search over channels whose entries are multiples of
// 1/(resolution − 1), keeping the feasible one with the largest Var(X̂).
// The last row is maximized exactly over its feasible grid points: the
// objective is a sum of convex functions of that row's entries, so some
// optimum has at most one entry strictly inside its grid bounds.
inline absl::StatusOr<SolverResult> GridOracle(const LatentModel& latent,
                                               const PrivacyBudget& eps,
                                               int resolution,
                                               std::size_t outputs = 0) {
  const std::size_t d = latent.size();
  const std::size_t f = outputs == 0 ? d : outputs;
  if (d > 3 || f > 4 || f < 2) {
    return absl::InvalidArgumentError("grid oracle: dimensionality too large");
  }
  if (resolution < 2 || resolution > 101) {
    return absl::InvalidArgumentError("grid oracle: resolution must be 2..101");
  }
  const int r = resolution - 1;
  const double h = 1.0 / r;
  const auto& p = latent.x_prior().probs();
  const auto& a = latent.alphabet().values();

  // Constraint vectors written directly from the posterior-ratio bound:
  // Σ_x q_xy T_gx <= e Σ_x q_xy P_x and Σ_x q_xy T_gx >= Σ_x q_xy P_x / e.
  std::vector<std::vector<double>> cons;
  if (!eps.is_infinite()) {
    const double e = eps.exp();
    for (std::size_t g = 0; g < latent.latent_size(); ++g) {
      if (latent.g_prior()[g] == 0.0) continue;
      std::vector<double> up(d);
      std::vector<double> down(d);
      for (std::size_t x = 0; x < d; ++x) {
        up[x] = latent.cond()(g, x) - e * p[x];
        down[x] = p[x] / e - latent.cond()(g, x);
      }
      cons.push_back(up);
      cons.push_back(down);
    }
  }
  const std::size_t nc = cons.size();

  // Integer compositions of r into f parts.
  std::vector<std::vector<int>> points;
  {
    std::vector<int> cur(f, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (i + 1 == f) {
        cur[i] = left;
        points.push_back(cur);
        return;
      }
      for (int v = left; v >= 0; --v) {
        cur[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, r);
  }

  const std::size_t last = d - 1;
  const double pl = p[last];
  double best_value = -1.0;
  std::vector<std::vector<int>> best_rows;
  std::vector<std::size_t> idx(last, 0);
  long long evaluated = 0;

  // Per-column partial sums over the enumerated rows.
  std::vector<double> lam(f);
  std::vector<double> xs(f);
  std::vector<double> cs(nc * f);
  std::vector<int> lo(f);
  std::vector<int> hi(f);
  std::vector<int> t(f);
  std::vector<int> best_t(f);

  auto column_value = [&](std::size_t y, int ty) {
    const double l = lam[y] + pl * ty * h;
    if (l < kReachableCutoff) return 0.0;
    const double x = xs[y] + a[last] * pl * ty * h;
    return x * x / l;
  };

  auto solve_last = [&]() -> std::optional<double> {
    for (std::size_t y = 0; y < f; ++y) {
      double lb = 0.0;
      double ub = 1.0;
      for (std::size_t c = 0; c < nc; ++c) {
        const double w = cons[c][last];
        const double s = cs[c * f + y];
        if (w > 0.0) {
          ub = std::min(ub, -s / w);
        } else if (w < 0.0) {
          lb = std::max(lb, -s / w);
        } else if (s > 1e-12) {
          return std::nullopt;
        }
      }
      lo[y] = std::max(0, static_cast<int>(std::ceil(lb * r - 1e-9)));
      hi[y] = std::min(r, static_cast<int>(std::floor(ub * r + 1e-9)));
      if (lo[y] > hi[y]) return std::nullopt;
    }
    int lo_sum = 0;
    int hi_sum = 0;
    for (std::size_t y = 0; y < f; ++y) {
      lo_sum += lo[y];
      hi_sum += hi[y];
    }
    if (lo_sum > r || hi_sum < r) return std::nullopt;
    std::optional<double> best;
    for (std::size_t free = 0; free < f; ++free) {
      for (unsigned mask = 0; mask < (1u << (f - 1)); ++mask) {
        int sum = 0;
        unsigned bit = 0;
        for (std::size_t y = 0; y < f; ++y) {
          if (y == free) continue;
          t[y] = (mask >> bit++) & 1u ? hi[y] : lo[y];
          sum += t[y];
        }
        t[free] = r - sum;
        if (t[free] < lo[free] || t[free] > hi[free]) continue;
        double v = 0.0;
        for (std::size_t y = 0; y < f; ++y) v += column_value(y, t[y]);
        ++evaluated;
        if (!best.has_value() || v > *best) {
          best = v;
          best_t = t;
        }
      }
    }
    return best;
  };

  // Odometer over the first d − 1 rows.
  while (true) {
    std::fill(lam.begin(), lam.end(), 0.0);
    std::fill(xs.begin(), xs.end(), 0.0);
    std::fill(cs.begin(), cs.end(), 0.0);
    for (std::size_t m = 0; m < last; ++m) {
      const auto& row = points[idx[m]];
      for (std::size_t y = 0; y < f; ++y) {
        const double q = row[y] * h;
        lam[y] += p[m] * q;
        xs[y] += a[m] * p[m] * q;
        for (std::size_t c = 0; c < nc; ++c) cs[c * f + y] += cons[c][m] * q;
      }
    }
    if (auto v = solve_last(); v.has_value() && *v > best_value) {
      best_value = *v;
      best_rows.clear();
      for (std::size_t m = 0; m < last; ++m) best_rows.push_back(points[idx[m]]);
      best_rows.push_back(best_t);
    }
    std::size_t m = 0;
    while (m < last && ++idx[m] == points.size()) idx[m++] = 0;
    if (m == last) break;
  }
  if (best_rows.empty()) {
    return absl::NotFoundError("grid oracle: no feasible grid point");
  }
  Matrix q(d, f);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t y = 0; y < f; ++y) q(m, y) = best_rows[m][y] * h;
  }
  auto mech = Mechanism::Create(q);
  if (!mech.ok()) return mech.status();
  SolverResult result{*mech, internal::EstimatorVariance(p, a, q), true,
                      static_cast<int>(std::min<long long>(evaluated, 1 << 30))};
  return result;
}

inline absl::StatusOr<SolverResult> GridOracle(const Prior& prior,
                                               const Alphabet& alphabet,
                                               const PrivacyBudget& eps,
                                               int resolution,
                                               std::size_t outputs = 0) {
  if (prior.size() != alphabet.size()) {
    return absl::InvalidArgumentError("prior and alphabet sizes differ");
  }
  return GridOracle(LatentModel::FromPrior(prior, alphabet), eps, resolution,
                    outputs);
}

}  // namespace lipagg

#endif  // LIPAGG_SOLVER_H_
