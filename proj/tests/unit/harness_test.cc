// Copyright 2026 The kakeya-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "kakeya/harness.h"

namespace kakeya {
namespace {

TEST(ConfigTest, JsonRoundTrip) {
  Json j = Json::parse(R"({"spec": "2,2,4", "eta": {"form": "power", "c": 0.9, "p": 1.5},
                           "phi": "llog2e:0.5", "trials": 40, "seed": 11, "sizes": [2, 3],
                           "n0": 2, "windows": 5, "node_budget": 5000})");
  ExperimentConfig c = ExperimentConfig::FromJson(j);
  EXPECT_EQ(c.spec, "2,2,4");
  EXPECT_EQ(c.eta.form, EtaSequence::Form::kPower);
  EXPECT_EQ(c.trials, 40);
  EXPECT_EQ(c.seed, 11u);
  EXPECT_EQ(c.sizes, (std::vector<int>{2, 3}));
  EXPECT_EQ(c.node_budget, 5000u);
  ExperimentConfig back = ExperimentConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
}

TEST(ConfigTest, Rejections) {
  EXPECT_THROW(ExperimentConfig::FromJson(Json::parse(R"({"trails": 3})")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::FromJson(Json::parse("[1]")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::FromJson(Json::parse(R"({"sizes": [9]})")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::FromJson(Json::parse(R"({"spec": "3"})")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::FromJson(Json::parse(R"({"phi": "nope"})")),
               std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::FromJson(Json::parse(R"({"eta": {"form": "geometric", "q": 1}})")),
               std::invalid_argument);
  EXPECT_NO_THROW(ExperimentConfig::FromJson(Json::object()));
}

TEST(EtaTest, SummableAndAdmissible) {
  EtaSequence g;  // 2^-n
  EXPECT_TRUE(g.Summable());
  EXPECT_TRUE(g.Admissible(30));
  EXPECT_DOUBLE_EQ(g(3), 0.125);

  EtaSequence small = g;
  small.c = 0.5;  // below 2^-n
  EXPECT_FALSE(small.Admissible(5));

  EtaSequence p;
  p.form = EtaSequence::Form::kPower;
  p.c = 0.9;
  p.p = 2.0;
  EXPECT_TRUE(p.Summable());
  EXPECT_FALSE(p.Admissible(5));  // 0.9 / 4 < 1/4
  p.p = 1.0;
  EXPECT_FALSE(p.Summable());

  EtaSequence big = g;
  big.c = 2.0;  // eta_1 = 1
  EXPECT_FALSE(big.Admissible(3));
  EXPECT_EQ(EtaSequence::FromJson(p.ToJson()).ToJson(), p.ToJson());
}

TEST(RngTest, DeterministicAndInRange) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.Below(1000);
    ASSERT_EQ(x, b.Below(1000));
    ASSERT_LT(x, 1000u);
    differs = differs || x != c.Below(1000);
  }
  EXPECT_TRUE(differs);
  for (int i = 0; i < 100; ++i) {
    std::int64_t v = a.Between(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    Dyadic d = a.DyadicIn(Dyadic(0), Dyadic::Parse("1/2"), 10);
    ASSERT_GE(d, Dyadic(0));
    ASSERT_LE(d, Dyadic::Parse("1/2"));
    ASSERT_LE(d.exponent(), 11u);
  }
  EXPECT_THROW(a.Below(0), std::invalid_argument);
}

TEST(SuiteTest, NamesAndUnknown) {
  std::vector<std::string> names = SuiteNames();
  for (const char* n : {"prop31", "prop32", "prop33", "prop34", "adaptive_sum", "prop41",
                        "lemma51", "lemma52_53_surrogate", "thm61"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
  EXPECT_THROW(VerifySuite("prop99", {}), std::invalid_argument);
}

TEST(SuiteTest, SmallRunReportsAndIsDeterministic) {
  ExperimentConfig c;
  c.sizes = {1, 2};
  VerdictReport r = VerifySuite("prop31", c);
  EXPECT_TRUE(r.passed());
  ASSERT_NE(r.Find("construction_equivalence"), nullptr);
  EXPECT_EQ(r.Find("missing"), nullptr);
  Json j = r.ToJson();
  EXPECT_EQ(j.at("suite"), "prop31");
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_EQ(j.at("checks").size(), r.checks.size());
  std::string csv = r.ToCsv();
  EXPECT_EQ(csv.rfind("suite,check,status,detail\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.checks.size() + 1);
  EXPECT_EQ(VerifySuite("prop31", c).ToJson().dump(), j.dump());
}

TEST(SuiteTest, SampledIntervalConstants) {
  ExperimentConfig c;
  c.sizes = {2};
  c.trials = 60;
  VerdictReport r = VerifySuite("prop33", c);
  EXPECT_TRUE(r.Find("lower_constant_1_8")->passed);
  EXPECT_TRUE(r.Find("upper_constant_16")->passed);
  EXPECT_TRUE(r.Find("anchored_interval_count")->passed);
  c.seed = 8;
  EXPECT_NE(VerifySuite("prop33", c).ToJson().dump(), r.ToJson().dump());
}

TEST(SuiteTest, FailureCarriesWitness) {
  ExperimentConfig c;
  c.sizes = {2};
  c.trials = 200;
  VerdictReport r = VerifySuite("prop33", c);
  const Check* mono = r.Find("band_monotonicity");
  ASSERT_NE(mono, nullptr);
  if (!mono->passed) {
    EXPECT_FALSE(mono->witness.is_null());
    EXPECT_FALSE(r.passed());
  }
}

}  // namespace
}  // namespace kakeya
