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

#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lipagg/lp.h"

namespace lipagg {
namespace {

using ::testing::DoubleNear;
using ::testing::Pointwise;

TEST(LinearProgramTest, TwoVariableVertex) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1.0, 1.0};
  lp.le_rows = {{1.0, 2.0}, {3.0, 1.0}};
  lp.le_rhs = {4.0, 6.0};
  auto sol = SolveLinearProgram(lp);
  ASSERT_TRUE(sol.ok()) << sol.status();
  EXPECT_THAT(sol->x, Pointwise(DoubleNear(1e-12), std::vector<double>{1.6, 1.2}));
  EXPECT_NEAR(sol->objective, 2.8, 1e-12);
}

TEST(LinearProgramTest, SimplexWithEquality) {
  LinearProgram lp;
  lp.num_vars = 3;
  lp.objective = {2.0, 3.0, 1.0};
  lp.eq_rows = {{1.0, 1.0, 1.0}};
  lp.eq_rhs = {1.0};
  auto sol = SolveLinearProgram(lp);
  ASSERT_TRUE(sol.ok());
  EXPECT_THAT(sol->x, Pointwise(DoubleNear(1e-12), std::vector<double>{0, 1, 0}));
}

TEST(LinearProgramTest, DegenerateZeroRightHandSides) {
  // max x0 + x1 + x2 with x0 <= x1, x1 <= x2, x0 + x1 + x2 = 3.
  LinearProgram lp;
  lp.num_vars = 3;
  lp.objective = {1.0, 0.0, 0.0};
  lp.le_rows = {{1.0, -1.0, 0.0}, {0.0, 1.0, -1.0}, {1.0, 0.0, -1.0}};
  lp.le_rhs = {0.0, 0.0, 0.0};
  lp.eq_rows = {{1.0, 1.0, 1.0}};
  lp.eq_rhs = {3.0};
  auto sol = SolveLinearProgram(lp);
  ASSERT_TRUE(sol.ok());
  EXPECT_THAT(sol->x, Pointwise(DoubleNear(1e-12), std::vector<double>{1, 1, 1}));
}

TEST(LinearProgramTest, Infeasible) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1.0, 0.0};
  lp.eq_rows = {{1.0, 1.0}, {1.0, 1.0}};
  lp.eq_rhs = {1.0, 2.0};
  EXPECT_FALSE(SolveLinearProgram(lp).ok());
}

TEST(LinearProgramTest, RedundantEqualities) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {0.0, 1.0};
  lp.eq_rows = {{1.0, 1.0}, {2.0, 2.0}};
  lp.eq_rhs = {1.0, 2.0};
  auto sol = SolveLinearProgram(lp);
  ASSERT_TRUE(sol.ok()) << sol.status();
  EXPECT_NEAR(sol->x[1], 1.0, 1e-12);
}

TEST(LinearProgramTest, RejectsBadShapes) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1.0};
  EXPECT_FALSE(SolveLinearProgram(lp).ok());
  lp.objective = {1.0, 1.0};
  lp.le_rows = {{1.0, 1.0}};
  lp.le_rhs = {-1.0};
  EXPECT_FALSE(SolveLinearProgram(lp).ok());
}

}  // namespace
}  // namespace lipagg
