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

// Seeded Monte Carlo aggregation and utility-privacy curves.
//
// User i in trial t draws from Stream(seed, i, t): first X from the prior,
// then Y from the channel row. The same (seed, i, t) yields the same X for
// every budget and family, so curves share their randomness.

#ifndef LIPAGG_SIMULATION_H_
#define LIPAGG_SIMULATION_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lipagg/core.h"
#include "lipagg/estimators.h"
#include "lipagg/mechanisms.h"
#include "lipagg/random.h"
#include "lipagg/solver.h"

namespace lipagg {

enum class Application { kWeightedSum, kHistogram };

enum class MechanismFamily {
  kLip,
  kLdp,
  kBpLip,
  kWcLip,
  kLatentBinary,
  kLatentMimo,
  kPriorFreeLdp,
};

inline absl::StatusOr<MechanismFamily> ParseFamily(const std::string& name) {
  static const std::map<std::string, MechanismFamily> kNames = {
      {"lip", MechanismFamily::kLip},
      {"ldp", MechanismFamily::kLdp},
      {"bp_lip", MechanismFamily::kBpLip},
      {"wc_lip", MechanismFamily::kWcLip},
      {"latent_binary", MechanismFamily::kLatentBinary},
      {"latent_mimo", MechanismFamily::kLatentMimo},
      {"prior_free_ldp", MechanismFamily::kPriorFreeLdp},
  };
  auto it = kNames.find(name);
  if (it == kNames.end()) {
    return absl::InvalidArgumentError("unknown mechanism family: " + name);
  }
  return it->second;
}

inline absl::StatusOr<Application> ParseApplication(const std::string& name) {
  if (name == "weighted_sum") return Application::kWeightedSum;
  if (name == "histogram") return Application::kHistogram;
  return absl::InvalidArgumentError("unknown application: " + name);
}

// A simulated user. Latent and prior-set fields feed the families that need
// them.
struct SimUser {
  Prior prior;
  Alphabet alphabet;
  double c = 1.0;
  double b = 0.0;
  std::optional<LatentModel> latent;
  std::optional<PriorSet> prior_set;
};

struct SimConfig {
  std::vector<SimUser> users;
  Application application = Application::kWeightedSum;
  MechanismFamily family = MechanismFamily::kLip;
  // Budgets in nats; +inf is allowed.
  std::vector<double> epsilon_grid;
  int trials = 10000;
  std::uint64_t seed = 0;
  SolverOptions solver;
};

struct TradeoffPoint {
  double epsilon = 0.0;
  double analytic_mse = 0.0;
  double empirical_mse = 0.0;
  double root_avg_mse = 0.0;
  int trials = 0;
};

// N users with Dirichlet(alpha) priors over values 0..d-1.
inline std::vector<SimUser> RandomUsers(std::size_t n, std::size_t d,
                                        std::uint64_t seed,
                                        double alpha = 1.0) {
  std::vector<SimUser> users;
  users.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Stream stream(seed, i, 0xfeedULL);
    users.push_back(SimUser{RandomPrior(d, stream, alpha), Alphabet::Range(d)});
  }
  return users;
}

// Channel the family assigns to `user` at budget `eps`.
inline absl::StatusOr<Mechanism> BuildMechanism(const SimUser& user,
                                                MechanismFamily family,
                                                const PrivacyBudget& eps,
                                                const SolverOptions& opts = {}) {
  const std::size_t d = user.prior.size();
  switch (family) {
    case MechanismFamily::kLip:
      return OptimalLip(user.prior, eps);
    case MechanismFamily::kLdp:
    case MechanismFamily::kPriorFreeLdp:
      return OptimalLdp(d, eps);
    case MechanismFamily::kWcLip:
      return WcLip(d, eps);
    case MechanismFamily::kBpLip: {
      if (!user.prior_set.has_value()) {
        return absl::InvalidArgumentError("bp_lip family needs a prior set");
      }
      const PriorSet& set = *user.prior_set;
      if (d == 2 && set.is_box()) {
        return OptimalBpLipBinary(set.low()[1], set.high()[1], eps);
      }
      auto r = SolveBpLipMimo(set, user.alphabet, eps, opts);
      if (!r.ok()) return r.status();
      return r->mechanism;
    }
    case MechanismFamily::kLatentBinary:
    case MechanismFamily::kLatentMimo: {
      if (!user.latent.has_value()) {
        return absl::InvalidArgumentError(
            "latent families need a latent model per user");
      }
      if (family == MechanismFamily::kLatentBinary) {
        return OptimalLatentBinary(*user.latent, eps);
      }
      auto r = SolveLatentMimo(*user.latent, eps, opts);
      if (!r.ok()) return r.status();
      return r->mechanism;
    }
  }
  return absl::InvalidArgumentError("unknown mechanism family");
}

namespace internal {

// Pairwise summation.
inline double PairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return PairwiseSum(v.first(half)) + PairwiseSum(v.subspan(half));
}

// Memo key for channels that depend only on the user's model.
inline std::vector<double> ModelKey(const SimUser& u) {
  std::vector<double> key = u.prior.probs();
  key.insert(key.end(), u.alphabet.values().begin(), u.alphabet.values().end());
  if (u.latent.has_value()) {
    key.push_back(-1.0);
    key.insert(key.end(), u.latent->g_prior().begin(),
               u.latent->g_prior().end());
    key.insert(key.end(), u.latent->cond().data().begin(),
               u.latent->cond().data().end());
  }
  if (u.prior_set.has_value()) {
    key.push_back(-2.0);
    for (const Prior& p : u.prior_set->extreme_priors()) {
      key.insert(key.end(), p.probs().begin(), p.probs().end());
    }
  }
  return key;
}

struct PreparedUser {
  std::vector<double> prior_cdf;
  Matrix row_cdf;
  std::vector<double> est;  // c·E[X|y] + b, weighted sum
  Matrix post;              // Pr(X = m | y), histogram
  std::vector<double> values;
  double c = 1.0;
  double b = 0.0;
};

inline std::size_t DrawFromCdf(std::span<const double> cdf, double u) {
  for (std::size_t k = 0; k + 1 < cdf.size(); ++k) {
    if (u < cdf[k]) return k;
  }
  return cdf.size() - 1;
}

inline std::vector<double> Cdf(std::span<const double> p) {
  std::vector<double> cdf(p.size());
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    s += p[k];
    cdf[k] = p[k] > 0.0 ? s : (k == 0 ? -1.0 : cdf[k - 1]);
  }
  // Trailing zero-probability symbols are never selected.
  for (std::size_t k = p.size(); k-- > 0;) {
    if (p[k] > 0.0) {
      for (std::size_t j = k; j < p.size(); ++j) cdf[j] = 2.0;
      break;
    }
  }
  return cdf;
}

}  // namespace internal

inline absl::StatusOr<std::vector<TradeoffPoint>> RunSimulation(
    const SimConfig& config) {
  if (config.users.empty()) return absl::InvalidArgumentError("no users");
  if (config.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (config.epsilon_grid.empty()) {
    return absl::InvalidArgumentError("epsilon grid is empty");
  }
  const std::size_t n = config.users.size();
  const std::size_t d = config.users[0].prior.size();
  for (const SimUser& u : config.users) {
    if (u.prior.size() != d || u.alphabet.size() != d) {
      return absl::InvalidArgumentError("users must share the alphabet size");
    }
  }
  const bool prior_free = config.family == MechanismFamily::kPriorFreeLdp;
  if (prior_free) {
    if (d != 2 || config.application != Application::kWeightedSum) {
      return absl::InvalidArgumentError(
          "prior_free_ldp supports binary counting only");
    }
  }

  std::vector<TradeoffPoint> points;
  for (double eps_value : config.epsilon_grid) {
    auto eps = PrivacyBudget::Create(eps_value);
    if (!eps.ok() || eps_value == 0.0) {
      return absl::InvalidArgumentError("epsilon grid must be positive");
    }

    std::map<std::vector<double>, Mechanism> cache;
    std::vector<UserConfig> configs;
    configs.reserve(n);
    for (const SimUser& u : config.users) {
      auto key = internal::ModelKey(u);
      auto it = cache.find(key);
      if (it == cache.end()) {
        auto mech = BuildMechanism(u, config.family, *eps, config.solver);
        if (!mech.ok()) return mech.status();
        it = cache.emplace(std::move(key), *std::move(mech)).first;
      }
      configs.push_back(UserConfig{u.prior, it->second, u.alphabet, u.c, u.b});
    }

    TradeoffPoint point;
    point.epsilon = eps_value;
    point.trials = config.trials;
    if (prior_free) {
      auto mse = PriorFreeMse(static_cast<int>(n), 2, *eps);
      if (!mse.ok()) return mse.status();
      point.analytic_mse = *mse;
    } else if (config.application == Application::kWeightedSum) {
      point.analytic_mse = WeightedSumMseAnalytic(configs);
    } else {
      point.analytic_mse = HistogramMseAnalytic(configs);
    }
    point.root_avg_mse = std::sqrt(point.analytic_mse / static_cast<double>(n));

    std::vector<internal::PreparedUser> prepared(n);
    for (std::size_t i = 0; i < n; ++i) {
      const UserConfig& u = configs[i];
      auto& pu = prepared[i];
      pu.prior_cdf = internal::Cdf(u.prior.probs());
      const std::size_t f = u.mech.outputs();
      pu.row_cdf = Matrix(d, f);
      for (std::size_t m = 0; m < d; ++m) {
        auto cdf = internal::Cdf(u.mech.row(m));
        std::copy(cdf.begin(), cdf.end(), pu.row_cdf.row(m).begin());
      }
      pu.est.assign(f, 0.0);
      pu.post = Matrix(f, d);
      for (std::size_t y = 0; y < f; ++y) {
        auto post = Posterior(u.prior, u.mech, y);
        if (!post.ok()) continue;  // unreachable, never drawn
        double e = 0.0;
        for (std::size_t m = 0; m < d; ++m) {
          e += u.alphabet.values()[m] * (*post)[m];
          pu.post(y, m) = (*post)[m];
        }
        pu.est[y] = u.c * e + u.b;
      }
      pu.values = u.alphabet.values();
      pu.c = u.c;
      pu.b = u.b;
    }

    std::vector<double> errors(config.trials);
    std::vector<double> truth_hist(d);
    std::vector<double> est_hist(d);
    for (int t = 0; t < config.trials; ++t) {
      double truth = 0.0;
      double estimate = 0.0;
      std::fill(truth_hist.begin(), truth_hist.end(), 0.0);
      std::fill(est_hist.begin(), est_hist.end(), 0.0);
      double y_sum = 0.0;
      double x_count = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& pu = prepared[i];
        Stream stream(config.seed, i, static_cast<std::uint64_t>(t));
        const std::size_t x = internal::DrawFromCdf(pu.prior_cdf, stream.Uniform());
        const std::size_t y =
            internal::DrawFromCdf(pu.row_cdf.row(x), stream.Uniform());
        if (config.application == Application::kWeightedSum) {
          truth += pu.c * pu.values[x] + pu.b;
          estimate += pu.est[y];
          y_sum += static_cast<double>(y);
          x_count += static_cast<double>(x);
        } else {
          truth_hist[x] += 1.0;
          for (std::size_t m = 0; m < d; ++m) est_hist[m] += pu.post(y, m);
        }
      }
      double err = 0.0;
      if (prior_free) {
        // Counts of ones, true and debiased.
        auto c_hat = PriorFreeEstimate(y_sum, static_cast<int>(n), *eps);
        if (!c_hat.ok()) return c_hat.status();
        err = (x_count - *c_hat) * (x_count - *c_hat);
      } else if (config.application == Application::kWeightedSum) {
        err = (truth - estimate) * (truth - estimate);
      } else {
        for (std::size_t m = 0; m < d; ++m) {
          err += (truth_hist[m] - est_hist[m]) * (truth_hist[m] - est_hist[m]);
        }
      }
      errors[t] = err;
    }
    point.empirical_mse =
        internal::PairwiseSum(errors) / static_cast<double>(config.trials);
    points.push_back(point);
  }
  return points;
}

struct DecompositionReport {
  double enumerated_mse = 0.0;
  double decomposed_mse = 0.0;
  double deviation = 0.0;
};

// Exact global weighted-sum MSE by enumerating every (X̄, Ȳ) tuple, compared
// with the sum of per-user terms c_i^2 · MSE_i.
inline absl::StatusOr<DecompositionReport> DecompositionCheck(
    const std::vector<UserConfig>& users) {
  if (users.empty() || users.size() > 3) {
    return absl::InvalidArgumentError("decomposition check needs 1..3 users");
  }
  for (const UserConfig& u : users) {
    if (absl::Status s = ValidateUser(u); !s.ok()) return s;
    if (u.prior.size() > 3 || u.mech.outputs() > 3) {
      return absl::InvalidArgumentError("instance too large for enumeration");
    }
  }
  const std::size_t n = users.size();
  std::vector<std::vector<double>> est(n);
  for (std::size_t i = 0; i < n; ++i) {
    est[i].assign(users[i].mech.outputs(), 0.0);
    for (std::size_t y = 0; y < users[i].mech.outputs(); ++y) {
      auto e = LocalMmse(users[i], y);
      if (e.ok()) est[i][y] = *e;
    }
  }
  std::vector<std::size_t> xs(n, 0);
  std::vector<std::size_t> ys(n, 0);
  double total = 0.0;
  auto advance = [](std::vector<std::size_t>& v, auto size_of) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (++v[i] < size_of(i)) return true;
      v[i] = 0;
    }
    return false;
  };
  do {
    do {
      double prob = 1.0;
      double s = 0.0;
      double s_hat = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const UserConfig& u = users[i];
        prob *= u.prior[xs[i]] * u.mech(xs[i], ys[i]);
        s += u.c * u.alphabet.values()[xs[i]] + u.b;
        s_hat += u.c * est[i][ys[i]] + u.b;
      }
      if (prob > 0.0) total += prob * (s - s_hat) * (s - s_hat);
    } while (advance(ys, [&](std::size_t i) { return users[i].mech.outputs(); }));
  } while (advance(xs, [&](std::size_t i) { return users[i].prior.size(); }));

  DecompositionReport report;
  report.enumerated_mse = total;
  report.decomposed_mse = WeightedSumMseAnalytic(users);
  report.deviation = std::abs(report.enumerated_mse - report.decomposed_mse);
  return report;
}

struct DomainSweepRow {
  std::size_t d = 0;
  double lip = 0.0;       // root-average MSE, lip at eps
  double lip_half = 0.0;  // lip at eps/2
  double ldp = 0.0;       // ldp at eps
};

// Analytic root-average MSE of a weighted count (values 0..d-1) across
// alphabet sizes, for n users with Dirichlet(1) priors.
inline std::vector<DomainSweepRow> DomainSizeSweep(
    const std::vector<std::size_t>& d_grid, double eps, std::size_t n,
    std::uint64_t seed) {
  std::vector<DomainSweepRow> rows;
  const PrivacyBudget full = *PrivacyBudget::Create(eps);
  const PrivacyBudget half = *PrivacyBudget::Create(eps / 2.0);
  for (std::size_t d : d_grid) {
    auto users = RandomUsers(n, d, seed);
    double lip = 0.0;
    double lip_half = 0.0;
    double ldp = 0.0;
    const Mechanism ldp_mech = OptimalLdp(d, full);
    for (const SimUser& u : users) {
      lip += MseAnalytic({u.prior, OptimalLip(u.prior, full), u.alphabet});
      lip_half += MseAnalytic({u.prior, OptimalLip(u.prior, half), u.alphabet});
      ldp += MseAnalytic({u.prior, ldp_mech, u.alphabet});
    }
    const double scale = static_cast<double>(n);
    rows.push_back({d, std::sqrt(lip / scale), std::sqrt(lip_half / scale),
                    std::sqrt(ldp / scale)});
  }
  return rows;
}

}  // namespace lipagg

#endif  // LIPAGG_SIMULATION_H_
