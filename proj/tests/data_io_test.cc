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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lipagg/lipagg.h"

namespace lipagg {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Pointwise;

std::string Fixture(const std::string& name) {
  return std::string(LIPAGG_TEST_DATA_DIR) + "/" + name;
}

absl::StatusOr<Dataset> Parse(const std::string& text,
                              const Schema& schema = {}) {
  std::istringstream in(text);
  return ParseDataset(in, schema);
}

TEST(LoadDatasetTest, InfersAlphabet) {
  auto data = LoadDataset(Fixture("three_rows.csv"));
  ASSERT_TRUE(data.ok()) << data.status();
  EXPECT_EQ(data->records.size(), 3u);
  EXPECT_THAT(data->alphabet.labels(), ElementsAre("a", "b"));
  EXPECT_TRUE(data->latent_labels.empty());
}

TEST(LoadDatasetTest, LatentColumn) {
  auto data = LoadDataset(Fixture("latent_four.csv"));
  ASSERT_TRUE(data.ok());
  EXPECT_EQ(data->records.size(), 4u);
  EXPECT_THAT(data->latent_labels, ElementsAre("f", "m"));
  EXPECT_THAT(data->alphabet.values(), ElementsAre(0.0, 1.0));
  ASSERT_TRUE(data->records[0].g.has_value());
  EXPECT_EQ(*data->records[0].g, "m");
}

TEST(LoadDatasetTest, NumericLabelsSortByValue) {
  auto data = Parse("user,x\na,10\nb,9\nc,2.5\n");
  ASSERT_TRUE(data.ok());
  EXPECT_THAT(data->alphabet.labels(), ElementsAre("2.5", "9", "10"));
  EXPECT_THAT(data->alphabet.values(), ElementsAre(2.5, 9.0, 10.0));
}

TEST(LoadDatasetTest, Errors) {
  auto malformed = LoadDataset(Fixture("malformed.csv"));
  ASSERT_FALSE(malformed.ok());
  EXPECT_THAT(malformed.status().message(), HasSubstr("line 3"));

  Schema schema;
  schema.alphabet = *Alphabet::Create({"a", "b"}, {0.0, 1.0});
  auto unknown = LoadDataset(Fixture("unknown_label.csv"), schema);
  ASSERT_FALSE(unknown.ok());
  EXPECT_THAT(unknown.status().message(), HasSubstr("line 3"));
  EXPECT_THAT(unknown.status().message(), HasSubstr("'c'"));

  EXPECT_FALSE(Parse("").ok());
  EXPECT_FALSE(Parse("user,x\n").ok());
  EXPECT_FALSE(Parse("id,value\n1,2\n").ok());
  EXPECT_FALSE(LoadDataset(Fixture("missing.csv")).ok());
}

TEST(EmpiricalPriorTest, Examples) {
  auto even = Parse("user,x\n1,a\n2,a\n3,b\n4,b\n");
  EXPECT_THAT(EmpiricalPrior(*even)->probs(), ElementsAre(0.5, 0.5));

  auto single = Parse("user,x\n1,a\n2,a\n");
  EXPECT_THAT(EmpiricalPrior(*single)->probs(), ElementsAre(1.0, 0.0));

  Schema schema;
  schema.alphabet = *Alphabet::Create({"a", "b"}, {0.0, 1.0});
  auto three = Parse("user,x\n1,a\n2,a\n3,a\n", schema);
  EXPECT_THAT(EmpiricalPrior(*three, 1.0)->probs(),
              Pointwise(DoubleNear(1e-15), std::vector<double>{0.8, 0.2}));
  EXPECT_FALSE(EmpiricalPrior(*three, -1.0).ok());
}

TEST(EmpiricalPriorTest, SmoothingKeepsCountOrder) {
  auto data = LoadDataset(Fixture("checkins.csv"));
  ASSERT_TRUE(data.ok());
  const Prior raw = *EmpiricalPrior(*data);
  const Prior smooth = *EmpiricalPrior(*data, 3.0);
  double sum = 0.0;
  for (double v : smooth.probs()) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (raw[i] > raw[j]) EXPECT_GT(smooth[i], smooth[j]);
    }
  }
}

TEST(EmpiricalConditionalTest, HandComputedFixture) {
  auto data = LoadDataset(Fixture("latent_four.csv"));
  auto latent = EmpiricalConditional(*data);
  ASSERT_TRUE(latent.ok());
  EXPECT_THAT(latent->g_prior(), ElementsAre(0.5, 0.5));
  // alpha = 1/2: g=f has counts (0, 2), g=m has (1, 1).
  EXPECT_NEAR(latent->cond()(0, 0), 0.5 / 3.0, 1e-15);
  EXPECT_NEAR(latent->cond()(0, 1), 2.5 / 3.0, 1e-15);
  EXPECT_NEAR(latent->cond()(1, 0), 0.5, 1e-15);
  EXPECT_NEAR(latent->cond()(1, 1), 0.5, 1e-15);
}

TEST(EmpiricalConditionalTest, CorrelatedAndIndependent) {
  auto same = Parse("user,x,g\n1,a,a\n2,b,b\n3,a,a\n");
  auto exact = EmpiricalConditional(*same, 0.0);
  ASSERT_TRUE(exact.ok());
  EXPECT_EQ(exact->cond(), Matrix::Identity(2));

  auto indep = Parse("user,x,g\n1,a,u\n2,b,u\n3,a,v\n4,b,v\n");
  auto lat = EmpiricalConditional(*indep);
  ASSERT_TRUE(lat.ok());
  for (std::size_t g = 0; g < 2; ++g) {
    EXPECT_NEAR(lat->cond()(g, 0), 0.5, 1e-15);
  }
  EXPECT_FALSE(EmpiricalConditional(*Parse("user,x\n1,a\n2,b\n")).ok());
}

std::vector<TradeoffPoint> Points() {
  return {{0.5, 1.23456789, 1.2, 0.0123456789, 2000},
          {1.0, 0.000123456789, 0.0001, 1e-7, 2000}};
}

TEST(ExportTradeoffTest, CsvLayout) {
  auto csv = FormatTradeoff({Points()[0]}, ExportFormat::kCsv);
  ASSERT_TRUE(csv.ok());
  EXPECT_EQ(*csv,
            "epsilon,analytic_mse,empirical_mse,root_avg_mse,trials\n"
            "0.5,1.23457,1.2,0.0123457,2000\n");
}

TEST(ExportTradeoffTest, RoundTrips) {
  for (ExportFormat f : {ExportFormat::kCsv, ExportFormat::kJson}) {
    auto text = FormatTradeoff(Points(), f);
    ASSERT_TRUE(text.ok());
    auto back = ParseTradeoff(*text, f);
    ASSERT_TRUE(back.ok()) << back.status();
    ASSERT_EQ(back->size(), 2u);
    const auto points = Points();
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& a = points[i];
      const auto& b = (*back)[i];
      EXPECT_NEAR(b.analytic_mse, a.analytic_mse, 5e-6 * a.analytic_mse);
      EXPECT_NEAR(b.root_avg_mse, a.root_avg_mse, 5e-6 * a.root_avg_mse);
      EXPECT_EQ(b.trials, a.trials);
      EXPECT_EQ(b.epsilon, a.epsilon);
    }
    // A second pass is lossless.
    EXPECT_EQ(*FormatTradeoff(*back, f), *text);
  }
}

TEST(ExportTradeoffTest, JsonKeys) {
  auto text = FormatTradeoff({Points()[0]}, ExportFormat::kJson);
  const auto j = nlohmann::json::parse(*text);
  ASSERT_TRUE(j.is_array());
  std::vector<std::string> keys;
  for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.push_back(it.key());
  EXPECT_THAT(keys, ::testing::UnorderedElementsAre(
                        "epsilon", "analytic_mse", "empirical_mse",
                        "root_avg_mse", "trials"));
}

TEST(ExportTradeoffTest, WritesFileAndReportsErrors) {
  const auto path =
      std::filesystem::temp_directory_path() / "lipagg_export_test.csv";
  ASSERT_TRUE(ExportTradeoff(Points(), path.string(), ExportFormat::kCsv).ok());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string body = ss.str();
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 3);
  std::filesystem::remove(path);

  EXPECT_FALSE(ExportTradeoff({}, path.string(), ExportFormat::kCsv).ok());
  EXPECT_FALSE(
      ExportTradeoff(Points(), "/nonexistent_dir/x.csv", ExportFormat::kCsv).ok());
  EXPECT_FALSE(ParseTradeoff("eps\n1\n", ExportFormat::kCsv).ok());
  EXPECT_FALSE(ParseTradeoff("{}", ExportFormat::kJson).ok());
}

TEST(AuditReportJsonTest, FlatObjectWithInfinity) {
  const auto j = AuditReportJson(
      Audit(*Prior::Create(std::vector<double>{0.5, 0.5}), Mechanism::Identity(2)));
  EXPECT_EQ(j.at("lip_eps"), "inf");
  EXPECT_EQ(j.at("ldp_eps"), "inf");
  EXPECT_NEAR(j.at("mutual_info").get<double>(), std::log(2.0), 1e-15);
  EXPECT_NEAR(j.at("d_infinity").get<double>(), 0.0, 1e-15);
  EXPECT_EQ(j.size(), 7u);
}

}  // namespace
}  // namespace lipagg
