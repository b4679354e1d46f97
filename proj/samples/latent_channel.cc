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

// Designs a channel that hides a binary latent G behind a ternary X.

#include <cstdio>

#include "lipagg/lipagg.h"

int main() {
  auto latent = lipagg::LatentModel::Create(
      std::vector<double>{0.4, 0.6},
      lipagg::Matrix::FromRows({{0.6, 0.3, 0.1}, {0.1, 0.3, 0.6}}),
      lipagg::Alphabet::Range(3));
  if (!latent.ok()) return 1;
  const auto eps = *lipagg::PrivacyBudget::Create(0.5);
  auto result = lipagg::SolveLatentMimo(*latent, eps);
  if (!result.ok()) {
    std::fprintf(stderr, "%s\n", result.status().ToString().c_str());
    return 1;
  }
  const lipagg::Matrix& q = result->mechanism.matrix();
  for (std::size_t m = 0; m < q.rows(); ++m) {
    for (std::size_t k = 0; k < q.cols(); ++k) std::printf("%8.4f", q(m, k));
    std::printf("\n");
  }
  std::printf("var(estimate) %.6f  latent leakage %.6f\n", result->objective,
              lipagg::LatentLipEpsilon(*latent, result->mechanism));
  return 0;
}
