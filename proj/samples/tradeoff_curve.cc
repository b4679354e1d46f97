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

// Prints lip vs ldp weighted-count accuracy for 1000 users over a budget grid.

#include <cstdio>

#include "lipagg/lipagg.h"

int main() {
  lipagg::SimConfig config;
  config.users = lipagg::RandomUsers(1000, 4, /*seed=*/11);
  config.epsilon_grid = {0.5, 1.0, 2.0, 4.0};
  config.trials = 500;
  config.seed = 11;
  std::printf("family,%s\n", lipagg::kTradeoffHeader);
  for (const char* name : {"lip", "ldp"}) {
    config.family = *lipagg::ParseFamily(name);
    auto points = lipagg::RunSimulation(config);
    if (!points.ok()) {
      std::fprintf(stderr, "%s\n", points.status().ToString().c_str());
      return 1;
    }
    for (const auto& p : *points) {
      std::printf("%s,%s\n", name, lipagg::TradeoffCsvRow(p).c_str());
    }
  }
  return 0;
}
