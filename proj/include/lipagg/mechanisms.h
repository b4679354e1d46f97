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

// Closed-form randomized response channels.

#ifndef LIPAGG_MECHANISMS_H_
#define LIPAGG_MECHANISMS_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lipagg/core.h"

namespace lipagg {

// Prior-aware LIP channel: q[m][m] = 1 - (1 - P_m)/e^eps and
// q[m][k] = P_k/e^eps. The output marginal equals the prior. Symbols with
// zero prior are passed through and never emitted by other rows.
inline Mechanism OptimalLip(const Prior& prior, const PrivacyBudget& eps) {
  const std::size_t d = prior.size();
  if (eps.is_infinite()) return Mechanism::Identity(d);
  const double e = eps.exp();
  Matrix q(d, d);
  for (std::size_t m = 0; m < d; ++m) {
    if (prior[m] == 0.0) {
      q(m, m) = 1.0;
      continue;
    }
    for (std::size_t k = 0; k < d; ++k) {
      q(m, k) = k == m ? 1.0 - (1.0 - prior[m]) / e : prior[k] / e;
    }
  }
  return *Mechanism::Create(q);
}

// True when OptimalLip(prior, eps) is ε-LIP under `prior`. The diagonal
// posterior ratio stays within e^eps only if every positive P_m is at least
// 1/(1 + e^eps); below that the closed form overshoots the budget.
inline bool ClosedFormLipIsExact(const Prior& prior, const PrivacyBudget& eps) {
  if (eps.is_infinite() || eps.epsilon() == 0.0) return true;
  const double threshold = 1.0 / (1.0 + eps.exp());
  for (double p : prior.probs()) {
    if (p > 0.0 && p < threshold * (1.0 - 1e-12)) return false;
  }
  return true;
}

// Symmetric d-ary randomized response.
inline Mechanism OptimalLdp(std::size_t d, const PrivacyBudget& eps) {
  if (eps.is_infinite()) return Mechanism::Identity(d);
  const double e = eps.exp();
  const double denom = e + static_cast<double>(d) - 1.0;
  Matrix q(d, d, 1.0 / denom);
  for (std::size_t m = 0; m < d; ++m) q(m, m) = e / denom;
  return *Mechanism::Create(q);
}

// LIP against every prior; coincides with the LDP channel.
inline Mechanism WcLip(std::size_t d, const PrivacyBudget& eps) {
  return OptimalLdp(d, eps);
}

// Binary channel for priors with P1 in [a, b]:
// q01 = b/(b - a + e^eps), q10 = (1 - a)/(b - a + e^eps).
inline absl::StatusOr<Mechanism> OptimalBpLipBinary(double a, double b,
                                                    const PrivacyBudget& eps) {
  if (!(a >= 0.0 && b <= 1.0)) {
    return absl::InvalidArgumentError("prior interval must lie in [0,1]");
  }
  if (a > b) return absl::InvalidArgumentError("interval requires a <= b");
  if (eps.is_infinite()) return Mechanism::Identity(2);
  const double denom = b - a + eps.exp();
  const double q01 = b / denom;
  const double q10 = (1.0 - a) / denom;
  return Mechanism::Create({{1.0 - q01, q01}, {q10, 1.0 - q10}});
}

namespace internal {

struct BinaryLatentParams {
  double p1;
  double t_upper;
  double t_lower;
};

inline BinaryLatentParams LatentBinaryParams(const LatentModel& latent) {
  BinaryLatentParams out{latent.x_prior()[1], 0.0, 1.0};
  for (std::size_t g = 0; g < latent.latent_size(); ++g) {
    if (latent.g_prior()[g] == 0.0) continue;
    out.t_upper = std::max(out.t_upper, latent.cond()(g, 1));
    out.t_lower = std::min(out.t_lower, latent.cond()(g, 1));
  }
  return out;
}

}  // namespace internal

// Binary X with latent G. q0 = Pr(Y=1|X=0), q1 = Pr(Y=0|X=1), each the
// largest of 0 and the two boundary candidates built from the extreme
// conditionals T^u = max_g T[g][1], T^l = min_g T[g][1]. A candidate with a
// (near-)zero denominator is dropped.
inline absl::StatusOr<Mechanism> OptimalLatentBinary(
    const LatentModel& latent, const PrivacyBudget& eps) {
  if (latent.size() != 2) {
    return absl::InvalidArgumentError("closed form requires binary X");
  }
  if (eps.is_infinite()) return Mechanism::Identity(2);
  const auto [p1, tu, tl] = internal::LatentBinaryParams(latent);
  const double e = eps.exp();
  double q0 = 0.0;
  double q1 = 0.0;
  if (tu - p1 > 1e-12) {
    q0 = std::max(q0, (tu - p1 * e) / ((e + 1.0) * (tu - p1)));
    q1 = std::max(q1, (1.0 + tu * e - e - p1) / ((e + 1.0) * (tu - p1)));
  }
  if (p1 - tl > 1e-12) {
    q0 = std::max(q0, (p1 - tl * e) / ((e + 1.0) * (p1 - tl)));
    q1 = std::max(q1, (1.0 + p1 * e - e - tl) / ((e + 1.0) * (p1 - tl)));
  }
  return Mechanism::Create({{1.0 - q0, q0}, {q1, 1.0 - q1}});
}

// Values whose extreme likelihood ratios max_g T[g][a]/P_a and
// P_a/min_g T[g][a] both stay within e^eps. Such values can be released
// unperturbed.
inline std::vector<std::size_t> DirectReleaseValues(const LatentModel& latent,
                                                    const PrivacyBudget& eps) {
  std::vector<std::size_t> out;
  const double e = eps.exp();
  for (std::size_t a = 0; a < latent.size(); ++a) {
    const double pa = latent.x_prior()[a];
    if (eps.is_infinite() || pa == 0.0) {
      out.push_back(a);
      continue;
    }
    double t_max = 0.0;
    double t_min = kInfinity;
    for (std::size_t g = 0; g < latent.latent_size(); ++g) {
      if (latent.g_prior()[g] == 0.0) continue;
      t_max = std::max(t_max, latent.cond()(g, a));
      t_min = std::min(t_min, latent.cond()(g, a));
    }
    const double up = t_max / pa;
    const double down = t_min > 0.0 ? pa / t_min : kInfinity;
    if (std::max(up, down) <= e * (1.0 + 1e-12)) out.push_back(a);
  }
  return out;
}

}  // namespace lipagg

#endif  // LIPAGG_MECHANISMS_H_
