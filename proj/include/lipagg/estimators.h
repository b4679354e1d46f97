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

// MMSE estimators for perturbed reports and their analytic errors.

#ifndef LIPAGG_ESTIMATORS_H_
#define LIPAGG_ESTIMATORS_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lipagg/core.h"

namespace lipagg {

// One user's view: prior, channel, alphabet, and the weight c and offset b
// of the user's term c·X + b in a weighted sum.
struct UserConfig {
  Prior prior;
  Mechanism mech;
  Alphabet alphabet;
  double c = 1.0;
  double b = 0.0;
};

inline absl::Status ValidateUser(const UserConfig& user) {
  if (user.prior.size() != user.mech.inputs() ||
      user.alphabet.size() != user.prior.size()) {
    return absl::InvalidArgumentError(
        "user prior, mechanism and alphabet sizes differ");
  }
  if (!std::isfinite(user.c) || !std::isfinite(user.b)) {
    return absl::InvalidArgumentError("weight and offset must be finite");
  }
  return absl::OkStatus();
}

namespace internal {

// Var(E[X|Y]) = Σ_k (Σ_m a_m P_m q_mk)^2 / λ_k − (E X)^2 over reachable k.
inline double EstimatorVariance(const std::vector<double>& p,
                                const std::vector<double>& a,
                                const Matrix& q) {
  double mean = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) mean += a[m] * p[m];
  double total = 0.0;
  for (std::size_t k = 0; k < q.cols(); ++k) {
    double lambda = 0.0;
    double x = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
      lambda += p[m] * q(m, k);
      x += a[m] * p[m] * q(m, k);
    }
    if (lambda < kReachableCutoff) continue;
    total += x * x / lambda;
  }
  return std::max(total - mean * mean, 0.0);
}

inline double Variance(const std::vector<double>& p,
                       const std::vector<double>& a) {
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    mean += a[m] * p[m];
    second += a[m] * a[m] * p[m];
  }
  return std::max(second - mean * mean, 0.0);
}

}  // namespace internal

inline double PriorVariance(const Prior& prior, const Alphabet& alphabet) {
  return internal::Variance(prior.probs(), alphabet.values());
}

// E[X | Y = a_y].
inline absl::StatusOr<double> LocalMmse(const UserConfig& user,
                                        std::size_t y_index) {
  auto post = Posterior(user.prior, user.mech, y_index);
  if (!post.ok()) return post.status();
  double est = 0.0;
  for (std::size_t m = 0; m < post->size(); ++m) {
    est += user.alphabet.values()[m] * (*post)[m];
  }
  return est;
}

inline double EstimatorVariance(const UserConfig& user) {
  return internal::EstimatorVariance(user.prior.probs(),
                                     user.alphabet.values(),
                                     user.mech.matrix());
}

// E[(cX + b − (c·X̂ + b))^2] = c^2 (Var X − Var X̂), summed as
// c^2 Σ_k λ_k Var(X | Y = k) so it stays non-negative and exact for
// deterministic channels.
inline double MseAnalytic(const UserConfig& user) {
  const std::vector<double>& p = user.prior.probs();
  const std::vector<double>& a = user.alphabet.values();
  const Matrix& q = user.mech.matrix();
  double mse = 0.0;
  for (std::size_t k = 0; k < q.cols(); ++k) {
    double lambda = 0.0;
    double x = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
      lambda += p[m] * q(m, k);
      x += a[m] * p[m] * q(m, k);
    }
    if (lambda < kReachableCutoff) continue;
    const double est = x / lambda;
    for (std::size_t m = 0; m < p.size(); ++m) {
      const double err = a[m] - est;
      mse += p[m] * q(m, k) * err * err;
    }
  }
  return user.c * user.c * mse;
}

// Sum of per-user terms; users are independent.
inline double WeightedSumMseAnalytic(const std::vector<UserConfig>& users) {
  double total = 0.0;
  for (const UserConfig& u : users) total += MseAnalytic(u);
  return total;
}

// Binary MSE of the prior-aware LIP channel.
inline double BinaryMseLip(double p1, const PrivacyBudget& eps) {
  if (eps.is_infinite()) return 0.0;
  const double inv = std::exp(-eps.epsilon());
  return p1 * (1.0 - p1) * (2.0 * inv - inv * inv);
}

// Binary MSE of symmetric randomized response.
inline double BinaryMseLdp(double p1, const PrivacyBudget& eps) {
  if (eps.is_infinite()) return 0.0;
  const double e = eps.exp();
  const double var = p1 * (1.0 - p1);
  const double num = var * (1.0 - e);
  return var - num * num / ((1.0 - p1 + p1 * e) * (e - p1 * e + p1));
}

// Debiased count (y_sum − n p)/(1 − 2p) for binary randomized response with
// flip probability p = 1/(e^eps + 1).
inline absl::StatusOr<double> PriorFreeEstimate(double y_sum, int n,
                                                const PrivacyBudget& eps,
                                                int d = 2) {
  if (d != 2) {
    return absl::InvalidArgumentError("prior-free estimator is binary only");
  }
  if (n < 0 || y_sum < 0.0 || y_sum > static_cast<double>(n)) {
    return absl::InvalidArgumentError("y_sum must lie in [0, n]");
  }
  const double p = eps.is_infinite() ? 0.0 : 1.0 / (eps.exp() + 1.0);
  const double scale = 1.0 - 2.0 * p;
  if (scale <= 0.0) {
    return absl::InvalidArgumentError("estimator undefined");
  }
  return (y_sum - static_cast<double>(n) * p) / scale;
}

// n (d − 2 + e^eps) / (e^eps − 1)^2.
inline absl::StatusOr<double> PriorFreeMse(int n, int d,
                                           const PrivacyBudget& eps) {
  if (eps.epsilon() == 0.0) {
    return absl::InvalidArgumentError("estimator undefined at eps = 0");
  }
  if (eps.is_infinite()) return 0.0;
  const double e = eps.exp();
  return static_cast<double>(n) * (static_cast<double>(d) - 2.0 + e) /
         ((e - 1.0) * (e - 1.0));
}

namespace internal {

inline absl::Status CheckBatch(const std::vector<UserConfig>& users,
                               const std::vector<std::size_t>& ys) {
  if (users.size() != ys.size()) {
    return absl::InvalidArgumentError("users and reports differ in length");
  }
  if (users.empty()) return absl::InvalidArgumentError("no users");
  for (const UserConfig& u : users) {
    if (absl::Status s = ValidateUser(u); !s.ok()) return s;
    if (u.alphabet.size() != users[0].alphabet.size()) {
      return absl::InvalidArgumentError("users must share an alphabet");
    }
  }
  return absl::OkStatus();
}

}  // namespace internal

// Entry m is Σ_i Pr(X_i = a_m | Y_i = y_i).
inline absl::StatusOr<std::vector<double>> HistogramEstimate(
    const std::vector<UserConfig>& users, const std::vector<std::size_t>& ys) {
  if (absl::Status s = internal::CheckBatch(users, ys); !s.ok()) return s;
  std::vector<double> hist(users[0].alphabet.size(), 0.0);
  for (std::size_t i = 0; i < users.size(); ++i) {
    auto post = Posterior(users[i].prior, users[i].mech, ys[i]);
    if (!post.ok()) {
      return absl::InvalidArgumentError("user " + std::to_string(i) + ": " +
                                        std::string(post.status().message()));
    }
    for (std::size_t m = 0; m < hist.size(); ++m) hist[m] += (*post)[m];
  }
  return hist;
}

// Σ_i (c_i E[X_i | y_i] + b_i).
inline absl::StatusOr<double> WeightedSumEstimate(
    const std::vector<UserConfig>& users, const std::vector<std::size_t>& ys) {
  if (absl::Status s = internal::CheckBatch(users, ys); !s.ok()) return s;
  double total = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    auto est = LocalMmse(users[i], ys[i]);
    if (!est.ok()) {
      return absl::InvalidArgumentError("user " + std::to_string(i) + ": " +
                                        std::string(est.status().message()));
    }
    total += users[i].c * *est + users[i].b;
  }
  return total;
}

// Σ_i Σ_m (P_m − P_m^2 Σ_k q_mk^2 / λ_k): the summed squared error of the
// posterior histogram.
inline double HistogramMseAnalytic(const std::vector<UserConfig>& users) {
  double total = 0.0;
  for (const UserConfig& u : users) {
    const Matrix& q = u.mech.matrix();
    std::vector<double> lambda(q.cols(), 0.0);
    for (std::size_t m = 0; m < q.rows(); ++m) {
      for (std::size_t k = 0; k < q.cols(); ++k) {
        lambda[k] += u.prior[m] * q(m, k);
      }
    }
    for (std::size_t m = 0; m < q.rows(); ++m) {
      const double p = u.prior[m];
      if (p == 0.0) continue;
      double s = 0.0;
      for (std::size_t k = 0; k < q.cols(); ++k) {
        if (lambda[k] >= kReachableCutoff) s += q(m, k) * q(m, k) / lambda[k];
      }
      total += std::max(p - p * p * s, 0.0);
    }
  }
  return total;
}

}  // namespace lipagg

#endif  // LIPAGG_ESTIMATORS_H_
