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

// Validated probability objects and the Bayes helpers shared by every other
// header: alphabets, priors, channels, latent models, prior sets and budgets.

#ifndef LIPAGG_CORE_H_
#define LIPAGG_CORE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace lipagg {

// Absolute tolerance for every stochasticity check.
inline constexpr double kProbTolerance = 1e-9;
// Outputs whose marginal falls below this are unreachable.
inline constexpr double kReachableCutoff = 1e-15;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Dense row-major matrix.
template <typename T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static BasicMatrix FromRows(const std::vector<std::vector<T>>& rows) {
    BasicMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < m.cols_ && j < rows[i].size(); ++j) {
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  static BasicMatrix Identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) {
    return std::span<T>(data_.data() + i * cols_, cols_);
  }
  std::span<const T> row(std::size_t i) const {
    return std::span<const T>(data_.data() + i * cols_, cols_);
  }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const BasicMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;

namespace internal {

// Checks a probability vector and returns a copy renormalized when the
// deviation is within tolerance.
inline absl::StatusOr<std::vector<double>> NormalizeProbabilities(
    std::span<const double> p, const char* what) {
  if (p.empty()) {
    return absl::InvalidArgumentError(std::string(what) + ": empty vector");
  }
  double sum = 0.0;
  std::vector<double> out(p.begin(), p.end());
  for (double& v : out) {
    if (!std::isfinite(v) || v < -kProbTolerance || v > 1.0 + kProbTolerance) {
      return absl::InvalidArgumentError(std::string(what) +
                                        ": entry outside [0,1]");
    }
    v = std::clamp(v, 0.0, 1.0);
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbTolerance) {
    return absl::InvalidArgumentError(std::string(what) +
                                      ": entries do not sum to 1");
  }
  for (double& v : out) v /= sum;
  return out;
}

}  // namespace internal

// Ordered value set a_1..a_d. Labels identify symbols; values enter sums.
class Alphabet {
 public:
  static absl::StatusOr<Alphabet> Create(std::vector<std::string> labels,
                                         std::vector<double> values) {
    if (labels.size() < 2) {
      return absl::InvalidArgumentError("alphabet needs at least 2 symbols");
    }
    if (labels.size() != values.size()) {
      return absl::InvalidArgumentError("labels and values differ in size");
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
      return absl::InvalidArgumentError("alphabet labels must be distinct");
    }
    for (double v : values) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError("alphabet values must be finite");
      }
    }
    return Alphabet(std::move(labels), std::move(values));
  }

  // Labels "0".."d-1" with values 0..d-1.
  static Alphabet Range(std::size_t d) {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (std::size_t i = 0; i < d; ++i) {
      labels.push_back(std::to_string(i));
      values.push_back(static_cast<double>(i));
    }
    return Alphabet(std::move(labels), std::move(values));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  // Index of `label`, or -1.
  int IndexOf(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
  }

  bool operator==(const Alphabet&) const = default;

 private:
  Alphabet(std::vector<std::string> labels, std::vector<double> values)
      : labels_(std::move(labels)), values_(std::move(values)) {}

  std::vector<std::string> labels_;
  std::vector<double> values_;
};

class Prior {
 public:
  static absl::StatusOr<Prior> Create(std::span<const double> probs) {
    auto normalized = internal::NormalizeProbabilities(probs, "prior");
    if (!normalized.ok()) return normalized.status();
    return Prior(*std::move(normalized));
  }
  static absl::StatusOr<Prior> Create(const std::vector<double>& probs) {
    return Create(std::span<const double>(probs));
  }

  static Prior Uniform(std::size_t d) {
    return Prior(std::vector<double>(d, 1.0 / static_cast<double>(d)));
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const Prior&) const = default;

 private:
  explicit Prior(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Row-stochastic channel; entry (m, k) is Pr(Y = a_k | X = a_m).
class Mechanism {
 public:
  static absl::StatusOr<Mechanism> Create(const Matrix& matrix) {
    if (matrix.rows() == 0 || matrix.cols() == 0) {
      return absl::InvalidArgumentError("mechanism: empty matrix");
    }
    Matrix q(matrix.rows(), matrix.cols());
    for (std::size_t m = 0; m < matrix.rows(); ++m) {
      auto row = internal::NormalizeProbabilities(matrix.row(m), "mechanism");
      if (!row.ok()) {
        return absl::InvalidArgumentError(std::string(row.status().message()) +
                                          " (row " + std::to_string(m) + ")");
      }
      std::copy(row->begin(), row->end(), q.row(m).begin());
    }
    return Mechanism(std::move(q));
  }
  static absl::StatusOr<Mechanism> Create(
      const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return absl::InvalidArgumentError("mechanism: no rows");
    for (const auto& r : rows) {
      if (r.size() != rows[0].size()) {
        return absl::InvalidArgumentError("mechanism: ragged rows");
      }
    }
    return Create(Matrix::FromRows(rows));
  }

  static Mechanism Identity(std::size_t d) {
    return Mechanism(Matrix::Identity(d));
  }

  // Every row equal to `row`; output carries no information about the input.
  static Mechanism Constant(std::size_t d_in, std::span<const double> row) {
    Matrix q(d_in, row.size());
    for (std::size_t m = 0; m < d_in; ++m) {
      std::copy(row.begin(), row.end(), q.row(m).begin());
    }
    return Mechanism(std::move(q));
  }

  std::size_t inputs() const { return q_.rows(); }
  std::size_t outputs() const { return q_.cols(); }
  double operator()(std::size_t m, std::size_t k) const { return q_(m, k); }
  std::span<const double> row(std::size_t m) const { return q_.row(m); }
  const Matrix& matrix() const { return q_; }

  bool operator==(const Mechanism&) const = default;

 private:
  explicit Mechanism(Matrix q) : q_(std::move(q)) {}

  Matrix q_;
};

// Privacy level in nats. Infinity stands for "no constraint".
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double epsilon) {
    if (std::isnan(epsilon) || epsilon < 0.0) {
      return absl::InvalidArgumentError("epsilon must be non-negative");
    }
    return PrivacyBudget(epsilon);
  }
  static PrivacyBudget Infinite() { return PrivacyBudget(kInfinity); }

  double epsilon() const { return epsilon_; }
  bool is_infinite() const { return std::isinf(epsilon_); }
  double exp() const { return std::exp(epsilon_); }

 private:
  explicit PrivacyBudget(double epsilon) : epsilon_(epsilon) {}

  double epsilon_;
};

// Latent attribute G with Pr(X = x | G = g) = cond(g, x).
class LatentModel {
 public:
  static absl::StatusOr<LatentModel> Create(std::span<const double> g_prior,
                                            const Matrix& cond,
                                            Alphabet alphabet) {
    auto gp = internal::NormalizeProbabilities(g_prior, "latent prior");
    if (!gp.ok()) return gp.status();
    if (cond.rows() != gp->size()) {
      return absl::InvalidArgumentError(
          "conditional matrix needs one row per latent value");
    }
    if (cond.cols() != alphabet.size()) {
      return absl::InvalidArgumentError(
          "conditional matrix width must match the alphabet");
    }
    Matrix t(cond.rows(), cond.cols());
    for (std::size_t g = 0; g < cond.rows(); ++g) {
      auto row = internal::NormalizeProbabilities(cond.row(g), "conditional");
      if (!row.ok()) return row.status();
      std::copy(row->begin(), row->end(), t.row(g).begin());
    }
    std::vector<double> px(cond.cols(), 0.0);
    for (std::size_t g = 0; g < t.rows(); ++g) {
      for (std::size_t x = 0; x < t.cols(); ++x) px[x] += (*gp)[g] * t(g, x);
    }
    auto x_prior = Prior::Create(px);
    if (!x_prior.ok()) return x_prior.status();
    return LatentModel(*std::move(gp), std::move(t), std::move(alphabet),
                       *std::move(x_prior));
  }
  static absl::StatusOr<LatentModel> Create(const std::vector<double>& g_prior,
                                            const Matrix& cond,
                                            Alphabet alphabet) {
    return Create(std::span<const double>(g_prior), cond, std::move(alphabet));
  }

  // The degenerate model G = X.
  static LatentModel FromPrior(const Prior& prior, Alphabet alphabet) {
    return LatentModel(prior.probs(), Matrix::Identity(prior.size()),
                       std::move(alphabet), prior);
  }

  std::size_t latent_size() const { return g_prior_.size(); }
  std::size_t size() const { return cond_.cols(); }
  const std::vector<double>& g_prior() const { return g_prior_; }
  const Matrix& cond() const { return cond_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const Prior& x_prior() const { return x_prior_; }

 private:
  LatentModel(std::vector<double> g_prior, Matrix cond, Alphabet alphabet,
              Prior x_prior)
      : g_prior_(std::move(g_prior)),
        cond_(std::move(cond)),
        alphabet_(std::move(alphabet)),
        x_prior_(std::move(x_prior)) {}

  std::vector<double> g_prior_;
  Matrix cond_;
  Alphabet alphabet_;
  Prior x_prior_;
};

// Bounded family of priors: a per-coordinate box or an explicit list.
class PriorSet {
 public:
  static absl::StatusOr<PriorSet> Box(std::vector<double> low,
                                      std::vector<double> high) {
    if (low.size() != high.size() || low.size() < 2) {
      return absl::InvalidArgumentError("box bounds must have equal size >= 2");
    }
    double lo_sum = 0.0;
    double hi_sum = 0.0;
    for (std::size_t i = 0; i < low.size(); ++i) {
      if (!(low[i] >= 0.0 && high[i] <= 1.0 && low[i] <= high[i])) {
        return absl::InvalidArgumentError(
            "box intervals must satisfy 0 <= low <= high <= 1");
      }
      lo_sum += low[i];
      hi_sum += high[i];
    }
    if (lo_sum > 1.0 + kProbTolerance || hi_sum < 1.0 - kProbTolerance) {
      return absl::InvalidArgumentError("box contains no normalized prior");
    }
    PriorSet set;
    set.low_ = std::move(low);
    set.high_ = std::move(high);
    set.priors_ = set.BoxVertices();
    return set;
  }

  static absl::StatusOr<PriorSet> List(std::vector<Prior> priors) {
    if (priors.empty()) {
      return absl::InvalidArgumentError("prior list is empty");
    }
    for (const Prior& p : priors) {
      if (p.size() != priors[0].size()) {
        return absl::InvalidArgumentError("prior list sizes differ");
      }
    }
    PriorSet set;
    set.priors_ = std::move(priors);
    return set;
  }

  bool is_box() const { return !low_.empty(); }
  std::size_t size() const { return priors_[0].size(); }
  const std::vector<double>& low() const { return low_; }
  const std::vector<double>& high() const { return high_; }

  // Vertices of box ∩ simplex, or the listed priors.
  const std::vector<Prior>& extreme_priors() const { return priors_; }

  // Largest value coordinate m takes over the set.
  double MaxCoordinate(std::size_t m) const {
    double best = 0.0;
    for (const Prior& p : priors_) best = std::max(best, p[m]);
    return best;
  }

 private:
  PriorSet() = default;

  // A vertex has every coordinate but one at a bound; the remaining one is
  // fixed by normalization.
  std::vector<Prior> BoxVertices() const {
    const std::size_t d = low_.size();
    std::vector<Prior> out;
    auto seen = [&](const std::vector<double>& v) {
      for (const Prior& p : out) {
        bool same = true;
        for (std::size_t i = 0; i < d && same; ++i) {
          same = std::abs(p[i] - v[i]) <= 1e-12;
        }
        if (same) return true;
      }
      return false;
    };
    for (std::size_t free = 0; free < d; ++free) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << (d - 1)); ++mask) {
        std::vector<double> v(d);
        double sum = 0.0;
        std::size_t bit = 0;
        for (std::size_t i = 0; i < d; ++i) {
          if (i == free) continue;
          v[i] = (mask >> bit++) & 1 ? high_[i] : low_[i];
          sum += v[i];
        }
        v[free] = 1.0 - sum;
        if (v[free] < low_[free] - kProbTolerance ||
            v[free] > high_[free] + kProbTolerance) {
          continue;
        }
        v[free] = std::clamp(v[free], low_[free], high_[free]);
        auto p = Prior::Create(v);
        if (p.ok() && !seen(p->probs())) out.push_back(*std::move(p));
      }
    }
    return out;
  }

  std::vector<double> low_;
  std::vector<double> high_;
  std::vector<Prior> priors_;
};

// λ_k = Σ_m P_m q[m][k].
inline absl::StatusOr<Prior> OutputMarginal(const Prior& prior,
                                            const Mechanism& mech) {
  if (prior.size() != mech.inputs()) {
    return absl::InvalidArgumentError(
        "prior dimension does not match mechanism rows");
  }
  std::vector<double> lambda(mech.outputs(), 0.0);
  for (std::size_t m = 0; m < mech.inputs(); ++m) {
    if (prior[m] == 0.0) continue;
    for (std::size_t k = 0; k < mech.outputs(); ++k) {
      lambda[k] += prior[m] * mech(m, k);
    }
  }
  return Prior::Create(lambda);
}

// Pr(X = a_m | Y = a_y).
inline absl::StatusOr<Prior> Posterior(const Prior& prior,
                                       const Mechanism& mech,
                                       std::size_t y_index) {
  if (prior.size() != mech.inputs()) {
    return absl::InvalidArgumentError(
        "prior dimension does not match mechanism rows");
  }
  if (y_index >= mech.outputs()) {
    return absl::OutOfRangeError("output index out of range");
  }
  double lambda = 0.0;
  for (std::size_t m = 0; m < mech.inputs(); ++m) {
    lambda += prior[m] * mech(m, y_index);
  }
  if (lambda < kReachableCutoff) {
    return absl::InvalidArgumentError("unreachable output");
  }
  std::vector<double> post(mech.inputs());
  for (std::size_t m = 0; m < mech.inputs(); ++m) {
    post[m] = prior[m] * mech(m, y_index) / lambda;
  }
  return Prior::Create(post);
}

}  // namespace lipagg

#endif  // LIPAGG_CORE_H_
