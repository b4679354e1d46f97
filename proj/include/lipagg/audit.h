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

// Effective privacy level of a channel under each notion, in nats.
//
// An output y is reachable when its marginal is at least kReachableCutoff.
// A reachable output that rules out an input of positive prior yields +inf.

#ifndef LIPAGG_AUDIT_H_
#define LIPAGG_AUDIT_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "lipagg/core.h"

namespace lipagg {

namespace internal {

inline std::vector<double> Marginal(const std::vector<double>& p,
                                    const Mechanism& mech) {
  std::vector<double> lambda(mech.outputs(), 0.0);
  for (std::size_t m = 0; m < mech.inputs(); ++m) {
    if (p[m] == 0.0) continue;
    for (std::size_t k = 0; k < mech.outputs(); ++k) {
      lambda[k] += p[m] * mech(m, k);
    }
  }
  return lambda;
}

// |log(a/b)| with a zero on either side mapping to +inf.
inline double AbsLogRatio(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return kInfinity;
  return std::abs(std::log(a) - std::log(b));
}

}  // namespace internal

// Smallest eps with e^-eps <= P(x)/P(x|y) <= e^eps over the support.
inline double LipEpsilon(const Prior& prior, const Mechanism& mech) {
  const auto lambda = internal::Marginal(prior.probs(), mech);
  double eps = 0.0;
  for (std::size_t y = 0; y < mech.outputs(); ++y) {
    if (lambda[y] < kReachableCutoff) continue;
    for (std::size_t x = 0; x < mech.inputs(); ++x) {
      if (prior[x] == 0.0) continue;
      // P(x)/P(x|y) = lambda_y / q[x][y].
      eps = std::max(eps, internal::AbsLogRatio(lambda[y], mech(x, y)));
    }
  }
  return eps;
}

// max over y, x, x' of log(q[x][y]/q[x'][y]).
inline double LdpEpsilon(const Mechanism& mech) {
  double eps = 0.0;
  for (std::size_t y = 0; y < mech.outputs(); ++y) {
    double hi = 0.0;
    double lo = kInfinity;
    for (std::size_t x = 0; x < mech.inputs(); ++x) {
      hi = std::max(hi, mech(x, y));
      lo = std::min(lo, mech(x, y));
    }
    if (hi == 0.0) continue;
    eps = std::max(eps, lo == 0.0 ? kInfinity : std::log(hi / lo));
  }
  return eps;
}

// LIP measured on the latent attribute G.
inline double LatentLipEpsilon(const LatentModel& latent,
                               const Mechanism& mech) {
  const auto lambda = internal::Marginal(latent.x_prior().probs(), mech);
  double eps = 0.0;
  for (std::size_t y = 0; y < mech.outputs(); ++y) {
    if (lambda[y] < kReachableCutoff) continue;
    for (std::size_t g = 0; g < latent.latent_size(); ++g) {
      if (latent.g_prior()[g] == 0.0) continue;
      double given_g = 0.0;  // Pr(Y = y | G = g)
      for (std::size_t x = 0; x < latent.size(); ++x) {
        given_g += latent.cond()(g, x) * mech(x, y);
      }
      // Pr(G=g|Y=y)/Pr(G=g) = Pr(Y=y|G=g)/Pr(Y=y).
      eps = std::max(eps, internal::AbsLogRatio(lambda[y], given_g));
    }
  }
  return eps;
}

inline double MutualInformation(const Prior& prior, const Mechanism& mech) {
  const auto lambda = internal::Marginal(prior.probs(), mech);
  double mi = 0.0;
  for (std::size_t x = 0; x < mech.inputs(); ++x) {
    for (std::size_t y = 0; y < mech.outputs(); ++y) {
      const double joint = prior[x] * mech(x, y);
      if (joint <= 0.0) continue;
      mi += joint * std::log(mech(x, y) / lambda[y]);
    }
  }
  return std::max(mi, 0.0);
}

// log Σ_y max_x q[x][y] over inputs in the support.
inline double MaxLeakage(const Prior& prior, const Mechanism& mech) {
  double total = 0.0;
  for (std::size_t y = 0; y < mech.outputs(); ++y) {
    double best = 0.0;
    for (std::size_t x = 0; x < mech.inputs(); ++x) {
      if (prior[x] > 0.0) best = std::max(best, mech(x, y));
    }
    total += best;
  }
  return std::log(total);
}

// max over reachable y and x, x' in the support of log(P(x|y)/P(x'|y)).
inline double DiEpsilon(const Prior& prior, const Mechanism& mech) {
  const auto lambda = internal::Marginal(prior.probs(), mech);
  double eps = 0.0;
  for (std::size_t y = 0; y < mech.outputs(); ++y) {
    if (lambda[y] < kReachableCutoff) continue;
    double hi = 0.0;
    double lo = kInfinity;
    for (std::size_t x = 0; x < mech.inputs(); ++x) {
      if (prior[x] == 0.0) continue;
      const double post = prior[x] * mech(x, y) / lambda[y];
      hi = std::max(hi, post);
      lo = std::min(lo, post);
    }
    eps = std::max(eps, internal::AbsLogRatio(hi, lo));
  }
  return eps;
}

// Largest log-ratio between two positive prior entries.
inline double DInfinity(const Prior& prior) {
  double hi = 0.0;
  double lo = kInfinity;
  for (double p : prior.probs()) {
    if (p == 0.0) continue;
    hi = std::max(hi, p);
    lo = std::min(lo, p);
  }
  return std::log(hi / lo);
}

struct AuditReport {
  double lip_eps = 0.0;
  double ldp_eps = 0.0;
  double di_eps = 0.0;
  double latent_lip_eps = 0.0;
  double mutual_info = 0.0;
  double max_leakage = 0.0;
  double d_infinity = 0.0;
};

// Full report. Without a latent model, latent_lip_eps is measured on G = X.
inline AuditReport Audit(const Prior& prior, const Mechanism& mech,
                         const std::optional<LatentModel>& latent =
                             std::nullopt) {
  AuditReport r;
  r.lip_eps = LipEpsilon(prior, mech);
  r.ldp_eps = LdpEpsilon(mech);
  r.di_eps = DiEpsilon(prior, mech);
  r.latent_lip_eps =
      latent.has_value() ? LatentLipEpsilon(*latent, mech) : r.lip_eps;
  r.mutual_info = MutualInformation(prior, mech);
  r.max_leakage = MaxLeakage(prior, mech);
  r.d_infinity = DInfinity(prior);
  return r;
}

}  // namespace lipagg

#endif  // LIPAGG_AUDIT_H_
