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

#include "adasub/objective.h"

#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace adasub {
namespace {

using testing::BruteForceGain;
using testing::kA;
using testing::kB;
using testing::kBad;
using testing::kGood;
using testing::M1;
using testing::Psi;

Objective NegativeSize() {
  return Objective::Custom("negative-size", [](const ItemSet& s,
                                               const Realization&) {
    return -static_cast<double>(s.size());
  });
}

Objective Zero() {
  return Objective::Custom("zero",
                           [](const ItemSet&, const Realization&) { return 0.0; });
}

TEST(EvaluateTest, CountCountsGoodSelectedItems) {
  const Realization phi{{kGood, kBad}};
  EXPECT_EQ(Evaluate(Objective::Count(), {kA, kB}, phi), 1.0);
  EXPECT_EQ(Evaluate(Objective::Count(), {}, phi), 0.0);
}

TEST(EvaluateTest, AndNeedsBothSelectedAndGood) {
  const Objective f = Objective::And();
  EXPECT_EQ(Evaluate(f, {kA, kB}, Realization{{kGood, kGood}}), 1.0);
  EXPECT_EQ(Evaluate(f, {kA}, Realization{{kGood, kGood}}), 0.0);
  EXPECT_EQ(Evaluate(f, {kA, kB}, Realization{{kGood, kBad}}), 0.0);
}

TEST(EvaluateTest, RejectsOutOfRangeAndUnsortedSets) {
  const Realization phi{{kGood, kBad}};
  EXPECT_THROW(Evaluate(Objective::Count(), {2}, phi), Error);
  EXPECT_THROW(Evaluate(Objective::Count(), {kB, kA}, phi), Error);
}

TEST(ExpectedMarginalGainTest, CountOnFairItems) {
  // Frozen from BruteForceGain over the four equiprobable worlds.
  ASSERT_DOUBLE_EQ(BruteForceGain(M1(), Objective::Count(), kA, Psi(2, {})),
                   0.5);
  EXPECT_DOUBLE_EQ(
      ExpectedMarginalGain(M1(), Objective::Count(), kA, Psi(2, {})), 0.5);
}

TEST(ExpectedMarginalGainTest, AndGainsGrowAfterObservingA) {
  const Objective f = Objective::And();
  EXPECT_DOUBLE_EQ(ExpectedMarginalGain(M1(), f, kB, Psi(2, {})), 0.0);
  ASSERT_DOUBLE_EQ(BruteForceGain(M1(), f, kB, Psi(2, {{kA, kGood}})), 0.5);
  EXPECT_DOUBLE_EQ(ExpectedMarginalGain(M1(), f, kB, Psi(2, {{kA, kGood}})),
                   0.5);
}

TEST(ExpectedMarginalGainTest, RejectsObservedItem) {
  EXPECT_THROW(ExpectedMarginalGain(M1(), Objective::Count(), kA,
                                    Psi(2, {{kA, kGood}})),
               Error);
}

TEST(ExpectedMarginalGainTest, PropagatesZeroProbability) {
  try {
    ExpectedMarginalGain(testing::DeterministicModel(2), Objective::Count(), 1,
                         Psi(2, {{0, kBad}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kZeroProbability);
  }
}

TEST(CheckAdaptiveMonotoneTest, CountPasses) {
  EXPECT_TRUE(CheckAdaptiveMonotone(M1(), Objective::Count()).passed);
}

TEST(CheckAdaptiveMonotoneTest, DecreasingObjectiveFailsAtEmptyObservation) {
  const CheckReport report = CheckAdaptiveMonotone(M1(), NegativeSize());
  ASSERT_FALSE(report.passed);
  const Witness& first = report.witnesses.front();
  EXPECT_EQ(first.psi, Psi(2, {}));
  EXPECT_FALSE(first.psi_prime.has_value());
  EXPECT_EQ(first.item, kA);
  EXPECT_DOUBLE_EQ(first.gain_at_psi, -1.0);
}

TEST(CheckAdaptiveMonotoneTest, PointwiseDominanceOnOneItemPasses) {
  Model model{{{"a", {"x", "y", "z"}, {0.2, 0.3, 0.5}}}};
  Objective f = Objective::Custom("grow", [](const ItemSet& s,
                                             const Realization& phi) {
    return s.empty() ? 1.0 : 1.0 + phi[0];
  });
  EXPECT_TRUE(CheckAdaptiveMonotone(model, f).passed);
}

TEST(CheckAdaptiveSubmodularTest, CountPasses) {
  EXPECT_TRUE(CheckAdaptiveSubmodular(M1(), Objective::Count()).passed);
}

TEST(CheckAdaptiveSubmodularTest, AndFailsWithExpectedWitness) {
  const CheckReport report = CheckAdaptiveSubmodular(M1(), Objective::And());
  ASSERT_FALSE(report.passed);
  const Witness& first = report.witnesses.front();
  EXPECT_EQ(first.psi, Psi(2, {}));
  ASSERT_TRUE(first.psi_prime.has_value());
  EXPECT_EQ(*first.psi_prime, Psi(2, {{kA, kGood}}));
  EXPECT_EQ(first.item, kB);
  EXPECT_DOUBLE_EQ(first.gain_at_psi, 0.0);
  EXPECT_DOUBLE_EQ(*first.gain_at_psi_prime, 0.5);
  EXPECT_NE(FormatWitness(M1(), first).find("psi'={a->good}"),
            std::string::npos);
}

TEST(CheckAdaptiveSubmodularTest, ZeroObjectivePasses) {
  EXPECT_TRUE(CheckAdaptiveSubmodular(M1(), Zero()).passed);
  EXPECT_TRUE(CheckAdaptiveSubmodular(testing::DeterministicModel(4), Zero()).passed);
}

TEST(CheckAdaptiveSubmodularTest, WitnessesAreSorted) {
  const CheckReport report = CheckAdaptiveSubmodular(M1(), Objective::And());
  for (size_t k = 1; k < report.witnesses.size(); ++k) {
    const auto& a = report.witnesses[k - 1];
    const auto& b = report.witnesses[k];
    const auto key = [](const Witness& w) {
      return std::make_tuple(w.psi.Observations(), w.psi_prime->Observations(),
                             w.item);
    };
    EXPECT_LE(key(a), key(b));
  }
}

TEST(CheckerCapTest, TooLargeInstanceIsRejected) {
  // 3^12 partial realizations exceed the default cap of 200,000.
  Model model;
  for (int i = 0; i < 12; ++i) {
    model.items.push_back({"", {"good", "bad"}, {0.5, 0.5}});
  }
  try {
    CheckAdaptiveSubmodular(model, Objective::Count());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooLarge);
    EXPECT_NE(std::string(e.what()).find("too large to check exhaustively"),
              std::string::npos);
  }
  EXPECT_THROW(CheckAdaptiveMonotone(model, Objective::Count()), Error);
}

// Random models with 1-4 items and 1-3 outcomes paired with random coverage
// objectives.
struct RandomCase {
  Model model;
  Objective objective;
};

RandomCase MakeRandomCase(std::mt19937_64& rng) {
  Model model;
  const int n = 1 + static_cast<int>(rng() % 4);
  std::vector<std::vector<int>> sets;
  for (int i = 0; i < n; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    Item item{"", {}, {}};
    double total = 0.0;
    for (int o = 0; o < k; ++o) {
      item.outcomes.push_back(std::to_string(o));
      const double w = 1.0 + static_cast<double>(rng() % 5);
      item.prior.push_back(w);
      total += w;
    }
    for (double& p : item.prior) p /= total;
    model.items.push_back(std::move(item));
    std::vector<int> set;
    for (int u = 0; u < 4; ++u) {
      if (rng() % 2) set.push_back(u);
    }
    sets.push_back(set);
  }
  return {model, Objective::Coverage(4, sets)};
}

TEST(ExpectedMarginalGainProperty, MatchesBruteForceEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const RandomCase c = MakeRandomCase(rng);
    const int n = c.model.size();
    PartialRealizationCodec codec(c.model);
    for (uint64_t code = 0; code < codec.state_count(); ++code) {
      const PartialRealization psi = codec.Decode(code);
      for (int e = 0; e < n; ++e) {
        if (psi.observed(e)) continue;
        EXPECT_NEAR(ExpectedMarginalGain(c.model, c.objective, e, psi),
                    BruteForceGain(c.model, c.objective, e, psi), 1e-12);
      }
    }
  }
}

TEST(ExpectedMarginalGainProperty, ModularGainsIgnoreObservations) {
  // f(S, phi) = sum over S of g(e, phi(e)) with item-dependent weights.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    RandomCase c = MakeRandomCase(rng);
    const Objective modular = Objective::Custom(
        "modular", [](const ItemSet& s, const Realization& phi) {
          double total = 0.0;
          for (ItemIndex e : s) total += (e + 1) * (phi[e] + 0.5);
          return total;
        });
    PartialRealizationCodec codec(c.model);
    for (int e = 0; e < c.model.size(); ++e) {
      const double base = ExpectedMarginalGain(
          c.model, modular, e, PartialRealization(c.model.size()));
      for (uint64_t code = 0; code < codec.state_count(); ++code) {
        const PartialRealization psi = codec.Decode(code);
        if (psi.observed(e)) continue;
        EXPECT_NEAR(ExpectedMarginalGain(c.model, modular, e, psi), base,
                    1e-9);
      }
    }
  }
}

TEST(CheckerProperty, CoverageObjectivesPassBothCheckers) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomCase c = MakeRandomCase(rng);
    EXPECT_TRUE(CheckAdaptiveMonotone(c.model, c.objective).passed);
    EXPECT_TRUE(CheckAdaptiveSubmodular(c.model, c.objective).passed);
  }
}

}  // namespace
}  // namespace adasub
