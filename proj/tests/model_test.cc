// Copyright 2023 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adasub/model.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace adasub {
namespace {

using testing::kA;
using testing::kB;
using testing::kBad;
using testing::kGood;
using testing::M1;
using testing::Psi;

TEST(ValidateModelTest, AcceptsFairBinaryItems) {
  EXPECT_TRUE(ValidateModel(M1()).ok);
}

TEST(ValidateModelTest, ReportsShortProbabilitySum) {
  Model model{{{"a", {"x", "y"}, {0.6, 0.3}}}};
  ValidationResult result = ValidateModel(model);
  ASSERT_FALSE(result.ok);
  EXPECT_EQ(result.item, 0);
  EXPECT_NE(result.reason.find("sums to 0.9"), std::string::npos)
      << result.reason;
}

TEST(ValidateModelTest, ReportsEmptyItemSet) {
  ValidationResult result = ValidateModel(Model{});
  ASSERT_FALSE(result.ok);
  EXPECT_FALSE(result.item.has_value());
  EXPECT_EQ(result.reason, "empty item set");
}

TEST(ValidateModelTest, ReportsNegativeProbability) {
  Model model{{{"a", {"x", "y"}, {0.5, 0.5}}, {"b", {"x", "y"}, {1.5, -0.5}}}};
  ValidationResult result = ValidateModel(model);
  ASSERT_FALSE(result.ok);
  EXPECT_EQ(result.item, 1);
  EXPECT_NE(result.reason.find("negative probability"), std::string::npos);
}

TEST(ValidateModelTest, ReportsEmptyOutcomeSetAndDuplicateLabels) {
  Model empty{{{"a", {}, {}}}};
  EXPECT_NE(ValidateModel(empty).reason.find("empty outcome set"),
            std::string::npos);
  Model duplicate{{{"a", {"x"}, {1.0}}, {"a", {"x"}, {1.0}}}};
  EXPECT_NE(ValidateModel(duplicate).reason.find("duplicate label"),
            std::string::npos);
}

TEST(SampleRealizationTest, IsAPureFunctionOfSeed) {
  const Model model = M1();
  for (uint64_t seed : {0ull, 1ull, 99ull, 123456789ull}) {
    EXPECT_EQ(SampleRealization(model, seed), SampleRealization(model, seed));
  }
}

TEST(SampleRealizationTest, DegeneratePriorAlwaysYieldsOutcomeZero) {
  const Model model = testing::DeterministicModel(4);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(SampleRealization(model, seed).outcomes,
              std::vector<OutcomeIndex>(4, 0));
  }
}

TEST(SampleRealizationTest, FairCoinFrequencyWithinFourSigma) {
  // 4 sigma for a fair coin over 10,000 draws: 4 * sqrt(0.25 / 10000) = 0.02.
  constexpr int kDraws = 10'000;
  const double sigma = std::sqrt(0.25 / kDraws);
  const Model model = M1();
  int good = 0;
  for (int seed = 0; seed < kDraws; ++seed) {
    if (SampleRealization(model, seed)[kA] == kGood) ++good;
  }
  const double freq = static_cast<double>(good) / kDraws;
  EXPECT_NEAR(4 * sigma, 0.02, 1e-15);
  EXPECT_GE(freq, 0.48);
  EXPECT_LE(freq, 0.52);
}

TEST(SampleRealizationTest, RejectsInvalidModel) {
  EXPECT_THROW(SampleRealization(Model{}, 1), Error);
}

TEST(EnumerateConsistentTest, EmptyObservationGivesFourEqualWorlds) {
  const auto worlds = EnumerateConsistent(M1(), Psi(2, {}));
  ASSERT_EQ(worlds.size(), 4u);
  // Lexicographic in (item, outcome): item a varies slowest.
  const std::vector<std::vector<int>> expected = {
      {0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (size_t k = 0; k < worlds.size(); ++k) {
    EXPECT_EQ(worlds[k].realization.outcomes, expected[k]);
    EXPECT_DOUBLE_EQ(worlds[k].probability, 0.25);
  }
}

TEST(EnumerateConsistentTest, ConditioningLeavesOnlyFreeItem) {
  const auto worlds = EnumerateConsistent(M1(), Psi(2, {{kA, kGood}}));
  ASSERT_EQ(worlds.size(), 2u);
  for (const auto& w : worlds) {
    EXPECT_EQ(w.realization[kA], kGood);
    EXPECT_DOUBLE_EQ(w.probability, 0.5);
  }
}

TEST(EnumerateConsistentTest, DeterministicModelHasOneWorld) {
  const auto worlds =
      EnumerateConsistent(testing::DeterministicModel(3), Psi(3, {}));
  ASSERT_EQ(worlds.size(), 1u);
  EXPECT_DOUBLE_EQ(worlds[0].probability, 1.0);
}

TEST(EnumerateConsistentTest, ZeroProbabilityObservationIsAnError) {
  try {
    EnumerateConsistent(testing::DeterministicModel(2), Psi(2, {{0, kBad}}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kZeroProbability);
    EXPECT_NE(std::string(e.what()).find("probability zero"),
              std::string::npos);
  }
}

// Random product models with 1-4 items and 1-3 outcomes.
Model RandomModel(std::mt19937_64& rng) {
  Model model;
  const int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    Item item{"i" + std::to_string(i), {}, {}};
    double total = 0.0;
    for (int o = 0; o < k; ++o) {
      item.outcomes.push_back("o" + std::to_string(o));
      // Some zero entries to exercise support filtering.
      const double w = (rng() % 4 == 0) ? 0.0 : 1.0 + static_cast<double>(rng() % 9);
      item.prior.push_back(w);
      total += w;
    }
    if (total == 0.0) {
      item.prior[0] = 1.0;
      total = 1.0;
    }
    for (double& p : item.prior) p /= total;
    model.items.push_back(std::move(item));
  }
  return model;
}

TEST(EnumerateConsistentProperty, WeightsNormalizeAndRespectObservations) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Model model = RandomModel(rng);
    ASSERT_TRUE(ValidateModel(model).ok);
    PartialRealization psi(model.size());
    for (int i = 0; i < model.size(); ++i) {
      if (rng() % 2) continue;
      // Observe a positive-probability outcome.
      for (int o = 0; o < model.outcome_count(i); ++o) {
        if (model.prior(i, o) > 0.0 && rng() % 2 == 0) {
          psi.Observe(i, o);
          break;
        }
      }
    }
    double total = 0.0;
    for (const auto& w : EnumerateConsistent(model, psi)) {
      EXPECT_TRUE(psi.ConsistentWith(w.realization));
      EXPECT_GT(w.probability, 0.0);
      total += w.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(EnumerateConsistentProperty, MarginalsRecoverPrior) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Model model = RandomModel(rng);
    const auto worlds = EnumerateConsistent(model, PartialRealization(model.size()));
    for (int i = 0; i < model.size(); ++i) {
      for (int o = 0; o < model.outcome_count(i); ++o) {
        double marginal = 0.0;
        for (const auto& w : worlds) {
          if (w.realization[i] == o) marginal += w.probability;
        }
        EXPECT_NEAR(marginal, model.prior(i, o), 1e-9);
      }
    }
  }
}

TEST(PartialRealizationTest, SubrealizationAndConsistency) {
  const PartialRealization empty = Psi(2, {});
  const PartialRealization a_good = Psi(2, {{kA, kGood}});
  const PartialRealization a_bad = Psi(2, {{kA, kBad}});
  EXPECT_TRUE(empty.IsSubrealizationOf(a_good));
  EXPECT_FALSE(a_good.IsSubrealizationOf(empty));
  EXPECT_FALSE(a_bad.IsSubrealizationOf(Psi(2, {{kA, kGood}, {kB, kGood}})));
  EXPECT_TRUE(a_good.ConsistentWith(Realization{{kGood, kBad}}));
  EXPECT_FALSE(a_bad.ConsistentWith(Realization{{kGood, kBad}}));
  EXPECT_EQ(a_good.ToString(M1()), "{a->good}");
}

TEST(PartialRealizationTest, ObservingTwiceIsAnError) {
  PartialRealization psi = Psi(2, {{kA, kGood}});
  EXPECT_THROW(psi.Observe(kA, kBad), Error);
  EXPECT_THROW(psi.Observe(5, 0), Error);
}

TEST(PartialRealizationCodecTest, RoundTripsEveryCode) {
  Model model{{{"a", {"x", "y", "z"}, {0.2, 0.3, 0.5}},
               {"b", {"x", "y"}, {0.5, 0.5}},
               {"c", {"x"}, {1.0}}}};
  PartialRealizationCodec codec(model);
  EXPECT_EQ(codec.state_count(), 4u * 3u * 2u);
  for (uint64_t code = 0; code < codec.state_count(); ++code) {
    EXPECT_EQ(codec.Encode(codec.Decode(code)), code);
  }
}

}  // namespace
}  // namespace adasub
