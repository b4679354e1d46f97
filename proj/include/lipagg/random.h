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

// Deterministic, splittable random streams. A stream is keyed by
// (seed, a, b), e.g. (seed, user, trial), so draws do not depend on the
// order in which streams are consumed.

#ifndef LIPAGG_RANDOM_H_
#define LIPAGG_RANDOM_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "lipagg/core.h"

namespace lipagg {

// SplitMix64 output function.
inline std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed, std::uint64_t a = 0,
                  std::uint64_t b = 0)
      : state_(Mix64(Mix64(Mix64(seed) ^ a) ^ (b * 0xd1342543de82ef95ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Standard normal by Box-Muller.
  double Normal() {
    double u = Uniform();
    while (u <= 0.0) u = Uniform();
    const double v = Uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }

  // Child stream keyed by `key`.
  Stream Split(std::uint64_t key) { return Stream((*this)(), key, 0); }

 private:
  std::uint64_t state_;
};

// Index drawn from `probs` by inverse CDF on the running sums.
inline std::size_t SampleIndex(std::span<const double> probs, double u) {
  double cum = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    cum += probs[k];
    last = k;
    if (u < cum) return k;
  }
  return last;
}

// One report from row `x_index` of `mech`.
inline std::size_t Perturb(const Mechanism& mech, std::size_t x_index,
                           Stream& stream) {
  return SampleIndex(mech.row(x_index), stream.Uniform());
}

// Dirichlet(alpha, ..., alpha) draw.
inline Prior RandomPrior(std::size_t d, Stream& stream, double alpha = 1.0) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> p(d);
  double sum = 0.0;
  for (double& v : p) {
    v = gamma(stream);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return *Prior::Create(p);
}

}  // namespace lipagg

#endif  // LIPAGG_RANDOM_H_
