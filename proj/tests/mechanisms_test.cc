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

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lipagg/lipagg.h"
#include "oracles.h"

namespace lipagg {
namespace {

using ::lipagg::testing::Eps;
using ::lipagg::testing::MakePrior;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

void ExpectMatrixNear(const Matrix& got,
                      const std::vector<std::vector<double>>& want,
                      double tol) {
  ASSERT_EQ(got.rows(), want.size());
  for (std::size_t m = 0; m < want.size(); ++m) {
    ASSERT_EQ(got.cols(), want[m].size());
    for (std::size_t k = 0; k < want[m].size(); ++k) {
      EXPECT_NEAR(got(m, k), want[m][k], tol) << "entry " << m << "," << k;
    }
  }
}

LatentModel Binary(std::vector<double> g_prior, std::vector<double> t1) {
  std::vector<std::vector<double>> rows;
  for (double t : t1) rows.push_back({1.0 - t, t});
  return *LatentModel::Create(g_prior, Matrix::FromRows(rows),
                              Alphabet::Range(2));
}

TEST(OptimalLipTest, WorkedExampleAtLn2) {
  const Prior p = MakePrior({0.1, 0.2, 0.7});
  ExpectMatrixNear(OptimalLip(p, Eps(std::log(2.0))).matrix(),
                   {{0.55, 0.10, 0.35}, {0.05, 0.60, 0.35}, {0.05, 0.10, 0.85}},
                   1e-12);
}

TEST(OptimalLipTest, SymbolicEntries) {
  const Prior p = MakePrior({0.1, 0.2, 0.7});
  for (double eps : {0.3, 1.0, 2.5}) {
    const double e = std::exp(eps);
    const Mechanism q = OptimalLip(p, Eps(eps));
    EXPECT_NEAR(q(0, 0), 1.0 - 0.9 / e, 1e-12);
    EXPECT_NEAR(q(1, 0), 0.1 / e, 1e-12);
    EXPECT_NEAR(q(2, 0), 0.1 / e, 1e-12);
    EXPECT_NEAR(q(0, 2), 0.7 / e, 1e-12);
    EXPECT_NEAR(q(1, 2), 0.7 / e, 1e-12);
  }
}

TEST(OptimalLipTest, Limits) {
  const Prior p = MakePrior({0.25, 0.15, 0.6});
  EXPECT_EQ(OptimalLip(p, PrivacyBudget::Infinite()), Mechanism::Identity(3));
  const Mechanism flat = OptimalLip(p, Eps(0.0));
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(flat(m, k), p[k], 1e-15);
  }
}

TEST(OptimalLipTest, ZeroPriorSymbol) {
  const Mechanism q = OptimalLip(MakePrior({0.5, 0.0, 0.5}), Eps(1.0));
  EXPECT_THAT(std::vector<double>(q.row(1).begin(), q.row(1).end()),
              ElementsAre(0.0, 1.0, 0.0));
  EXPECT_EQ(q(0, 1), 0.0);
  EXPECT_EQ(q(2, 1), 0.0);
}

TEST(OptimalLipTest, MonotoneInBudget) {
  const Prior p = MakePrior({0.1, 0.3, 0.6});
  Mechanism prev = OptimalLip(p, Eps(0.05));
  for (double eps = 0.1; eps < 6.0; eps += 0.05) {
    const Mechanism cur = OptimalLip(p, Eps(eps));
    for (std::size_t m = 0; m < 3; ++m) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (m == k) {
          EXPECT_GE(cur(m, k), prev(m, k) - 1e-15);
        } else {
          EXPECT_LE(cur(m, k), prev(m, k) + 1e-15);
        }
      }
    }
    prev = cur;
  }
}

TEST(OptimalLipTest, AuditTightExactlyOnValidDomain) {
  Stream stream(3);
  int valid = 0;
  int invalid = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t d = 2 + i % 5;
    const Prior p = RandomPrior(d, stream);
    const double eps = 0.1 + 4.9 * stream.Uniform();
    const double audited = testing::BruteLip(p.probs(),
                                             OptimalLip(p, Eps(eps)).matrix());
    if (ClosedFormLipIsExact(p, Eps(eps))) {
      ++valid;
      EXPECT_NEAR(audited, eps, 1e-9);
    } else {
      ++invalid;
      EXPECT_GT(audited, eps + 1e-9);
    }
  }
  EXPECT_GT(valid, 0);
  EXPECT_GT(invalid, 0);
}

TEST(OptimalLipTest, LeaksWhenSomePriorIsSmall) {
  // Output 0 has marginal 0.1 but q00 = 1 - 0.9/e, so the posterior of x=0
  // after y=0 exceeds e times its prior.
  const Prior p = MakePrior({0.1, 0.2, 0.7});
  EXPECT_FALSE(ClosedFormLipIsExact(p, Eps(1.0)));
  EXPECT_NEAR(LipEpsilon(p, OptimalLip(p, Eps(1.0))),
              std::log((1.0 - 0.9 / std::exp(1.0)) / 0.1), 1e-12);
  EXPECT_TRUE(ClosedFormLipIsExact(MakePrior({0.3, 0.3, 0.4}), Eps(1.0)));
}

TEST(OptimalLdpTest, Examples) {
  ExpectMatrixNear(OptimalLdp(3, Eps(std::log(2.0))).matrix(),
                   {{0.5, 0.25, 0.25}, {0.25, 0.5, 0.25}, {0.25, 0.25, 0.5}},
                   1e-15);
  EXPECT_NEAR(OptimalLdp(2, Eps(0.6))(0, 1), 1.0 / (1.0 + std::exp(0.6)),
              1e-15);
  EXPECT_NEAR(OptimalLdp(2, Eps(0.6))(0, 1), 0.354, 5e-4);
  const Mechanism flat = OptimalLdp(4, Eps(0.0));
  for (double v : flat.matrix().data()) EXPECT_NEAR(v, 0.25, 1e-15);
  EXPECT_EQ(OptimalLdp(3, PrivacyBudget::Infinite()), Mechanism::Identity(3));
}

TEST(WcLipTest, SameAsLdp) {
  for (double eps : {0.0, std::log(2.0), 0.6, 3.0}) {
    for (std::size_t d : {2u, 3u, 7u}) {
      EXPECT_EQ(WcLip(d, Eps(eps)), OptimalLdp(d, Eps(eps)));
    }
  }
}

TEST(OptimalBpLipBinaryTest, PointIntervalIsOptimalLip) {
  for (double p1 : {0.3, 0.5, 0.8}) {
    const double e = 2.0;
    const Mechanism q = *OptimalBpLipBinary(p1, p1, Eps(std::log(e)));
    EXPECT_NEAR(q(0, 1), p1 / e, 1e-15);
    EXPECT_NEAR(q(1, 0), (1.0 - p1) / e, 1e-15);
    EXPECT_EQ(q, OptimalLip(MakePrior({1.0 - p1, p1}), Eps(std::log(e))));
  }
}

TEST(OptimalBpLipBinaryTest, FullIntervalIsLdp) {
  for (double eps : {0.2, 1.0, 3.0}) {
    const Mechanism q = *OptimalBpLipBinary(0.0, 1.0, Eps(eps));
    EXPECT_NEAR(q(0, 1), 1.0 / (1.0 + std::exp(eps)), 1e-15);
    EXPECT_NEAR(q(1, 0), 1.0 / (1.0 + std::exp(eps)), 1e-15);
  }
}

TEST(OptimalBpLipBinaryTest, HalfIntervalAtLn2) {
  const Mechanism q = *OptimalBpLipBinary(0.5, 1.0, Eps(std::log(2.0)));
  EXPECT_NEAR(q(0, 1), 0.4, 1e-15);
  EXPECT_NEAR(q(1, 0), 0.2, 1e-15);
}

TEST(OptimalBpLipBinaryTest, RejectsBadInterval) {
  EXPECT_FALSE(OptimalBpLipBinary(0.6, 0.4, Eps(1.0)).ok());
  EXPECT_FALSE(OptimalBpLipBinary(-0.1, 0.4, Eps(1.0)).ok());
  EXPECT_FALSE(OptimalBpLipBinary(0.1, 1.4, Eps(1.0)).ok());
}

// Only the lower posterior bound is enforced by the closed form. On [0.5, 1]
// at ln 2 the upper bound breaks once P1 > 0.75.
TEST(OptimalBpLipBinaryTest, AuditOverInterval) {
  const Mechanism q = *OptimalBpLipBinary(0.5, 1.0, Eps(std::log(2.0)));
  for (int i = 0; i <= 100; ++i) {
    const double p1 = 0.5 + 0.5 * i / 100.0;
    const double lip = LipEpsilon(MakePrior({1.0 - p1, p1}), q);
    if (p1 <= 0.75 + 1e-12) {
      EXPECT_LE(lip, std::log(2.0) + 1e-9) << "p1=" << p1;
    } else if (p1 < 1.0) {
      EXPECT_GT(lip, std::log(2.0)) << "p1=" << p1;
    }
  }
  EXPECT_NEAR(LipEpsilon(MakePrior({0.1, 0.9}), q), std::log(2.5), 1e-12);
}

TEST(OptimalLatentBinaryTest, SymmetricExample) {
  const LatentModel latent = Binary({0.5, 0.5}, {0.2, 0.8});
  const Mechanism q = *OptimalLatentBinary(latent, Eps(std::log(2.0)));
  EXPECT_NEAR(q(0, 1), 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(q(1, 0), 1.0 / 9.0, 1e-12);
  EXPECT_LE(testing::BruteLatentLip(latent, q.matrix()),
            std::log(2.0) + 1e-9);
}

TEST(OptimalLatentBinaryTest, IndependentLatentReleasesIdentity) {
  const LatentModel latent = Binary({0.3, 0.7}, {0.4, 0.4});
  EXPECT_EQ(*OptimalLatentBinary(latent, Eps(0.5)), Mechanism::Identity(2));
}

// With G = X the closed form stays feasible but is not the Opt-LIP channel:
// q0 = max{(1 - P1 e)/((e+1)(1-P1)), 1/(e+1)}.
TEST(OptimalLatentBinaryTest, DegenerateLatentIsFeasibleButLoose) {
  for (double p1 : {0.3, 0.5, 0.7}) {
    const Prior p = MakePrior({1.0 - p1, p1});
    const LatentModel latent = LatentModel::FromPrior(p, Alphabet::Range(2));
    const double e = 2.0;
    const Mechanism q = *OptimalLatentBinary(latent, Eps(std::log(e)));
    const double want = std::max((1.0 - p1 * e) / ((e + 1.0) * (1.0 - p1)),
                                 1.0 / (e + 1.0));
    EXPECT_NEAR(q(0, 1), want, 1e-12);
    EXPECT_LE(LipEpsilon(p, q), std::log(e) + 1e-9);
    const Alphabet a = Alphabet::Range(2);
    EXPECT_LE(EstimatorVariance({p, q, a}),
              EstimatorVariance({p, OptimalLip(p, Eps(std::log(e))), a}) +
                  1e-12);
  }
}

TEST(OptimalLatentBinaryTest, AuditHoldsOnRandomInstances) {
  Stream stream(17);
  for (int i = 0; i < 200; ++i) {
    const std::size_t groups = 2 + i % 3;
    std::vector<double> t1(groups);
    for (double& t : t1) t = stream.Uniform();
    const LatentModel latent =
        Binary(RandomPrior(groups, stream).probs(), t1);
    const double eps = 0.1 + 2.9 * stream.Uniform();
    const Mechanism q = *OptimalLatentBinary(latent, Eps(eps));
    EXPECT_LE(testing::BruteLatentLip(latent, q.matrix()), eps + 1e-9)
        << "instance " << i;
  }
}

TEST(OptimalLatentBinaryTest, RejectsNonBinary) {
  auto latent = LatentModel::Create(std::vector<double>{1.0},
                                    Matrix::FromRows({{0.2, 0.3, 0.5}}),
                                    Alphabet::Range(3));
  EXPECT_FALSE(OptimalLatentBinary(*latent, Eps(1.0)).ok());
}

TEST(DirectReleaseValuesTest, Examples) {
  EXPECT_THAT(DirectReleaseValues(Binary({0.4, 0.6}, {0.3, 0.3}), Eps(0.01)),
              ElementsAre(0u, 1u));
  EXPECT_THAT(DirectReleaseValues(Binary({0.5, 0.5}, {0.4, 0.6}),
                                  Eps(std::log(2.0))),
              ElementsAre(0u, 1u));
  const LatentModel same = LatentModel::FromPrior(MakePrior({0.5, 0.5}),
                                                  Alphabet::Range(2));
  EXPECT_THAT(DirectReleaseValues(same, Eps(0.1)), IsEmpty());
}

}  // namespace
}  // namespace lipagg
