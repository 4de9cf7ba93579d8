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

#include "adasub/instances.h"

#include <cmath>
#include <random>

namespace adasub {
namespace {

Model CoverageModel(const std::vector<CoverageItem>& items) {
  Model model;
  for (size_t i = 0; i < items.size(); ++i) {
    const double p = items[i].success_prob;
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "success probability of item " + std::to_string(i) +
                      " outside [0, 1]");
    }
    model.items.push_back(
        {items[i].label, {"works", "fails"}, {p, 1.0 - p}});
  }
  return model;
}

// Uniform integer in [lo, hi].
int Draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

IndependenceSystem RandomPartition(std::mt19937_64& rng, int n, int max_blocks,
                                   int max_capacity) {
  const int block_count = Draw(rng, 2, max_blocks);
  std::vector<ItemSet> blocks(block_count);
  for (ItemIndex i = 0; i < n; ++i) {
    blocks[Draw(rng, 0, block_count - 1)].push_back(i);
  }
  std::vector<int> capacities;
  for (int b = 0; b < block_count; ++b) {
    capacities.push_back(Draw(rng, 1, max_capacity));
  }
  return IndependenceSystem::Partition(n, std::move(blocks),
                                       std::move(capacities));
}

}  // namespace

void ValidateInstance(const Instance& instance) {
  RequireValidModel(instance.model);
  const int n = instance.model.size();
  if (instance.system.ground_size() != n) {
    throw Error(ErrorKind::kValidation,
                "constraint ground size " +
                    std::to_string(instance.system.ground_size()) +
                    " does not match " + std::to_string(n) + " items");
  }
  if (instance.objective.kind() == ObjectiveKind::kCoverage &&
      static_cast<int>(instance.objective.coverage_sets().size()) != n) {
    throw Error(ErrorKind::kValidation,
                "coverage objective lists " +
                    std::to_string(instance.objective.coverage_sets().size()) +
                    " sets for " + std::to_string(n) + " items");
  }
  if (instance.objective.kind() == ObjectiveKind::kAnd) {
    for (ItemIndex i : instance.objective.and_items()) {
      if (i < 0 || i >= n) {
        throw Error(ErrorKind::kValidation,
                    "and objective names item " + std::to_string(i) +
                        " outside the ground set");
      }
    }
  }
  if (instance.declared_p) {
    if (instance.declared_p->num <= 0) {
      throw Error(ErrorKind::kValidation, "declared p must be positive");
    }
    if (n <= kMaxEstimatePGround) {
      const PReport report = EstimateP(instance.system, n);
      if (!(report.p_value == *instance.declared_p)) {
        throw Error(ErrorKind::kValidation,
                    "declared p " + instance.declared_p->ToString() +
                        " but exhaustive estimate gives " +
                        report.p_value.ToString());
      }
    }
  }
}

Instance MakeCoverage(int universe_size, const std::vector<CoverageItem>& items,
                      IndependenceSystem system) {
  std::vector<std::vector<int>> sets;
  for (const auto& item : items) sets.push_back(item.covers);
  Instance instance{
      "coverage",
      CoverageModel(items),
      Objective::Coverage(universe_size, std::move(sets)),
      std::move(system),
      std::nullopt,
      {},
  };
  ValidateInstance(instance);
  return instance;
}

Instance MakeCoverage(int universe_size, const std::vector<CoverageItem>& items,
                      int k) {
  return MakeCoverage(
      universe_size, items,
      IndependenceSystem::Uniform(static_cast<int>(items.size()), k));
}

double MatchmakingSpec::ProbabilityOf(int left, int right) const {
  if (success_prob.size() == 1) return success_prob[0];
  return success_prob[static_cast<size_t>(left * right_count + right)];
}

void ValidateMatchmakingSpec(const MatchmakingSpec& spec) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorKind::kInvalidArgument,
                "invalid matchmaking spec: " + why);
  };
  if (spec.left_count < 1 || spec.right_count < 1) fail("counts must be >= 1");
  if (spec.cap_left < 1 || spec.cap_right < 1) fail("caps must be >= 1");
  const size_t pairs =
      static_cast<size_t>(spec.left_count) * spec.right_count;
  if (spec.success_prob.size() != 1 && spec.success_prob.size() != pairs) {
    fail("expected 1 or " + std::to_string(pairs) + " success probabilities");
  }
  for (double p : spec.success_prob) {
    if (!(p >= 0.0 && p <= 1.0)) fail("probabilities must lie in [0, 1]");
  }
}

Instance MakeMatchmaking(const MatchmakingSpec& spec) {
  ValidateMatchmakingSpec(spec);
  const int n = spec.left_count * spec.right_count;
  std::vector<CoverageItem> dates;
  std::vector<ItemSet> by_left(spec.left_count);
  std::vector<ItemSet> by_right(spec.right_count);
  for (int l = 0; l < spec.left_count; ++l) {
    for (int r = 0; r < spec.right_count; ++r) {
      // People are universe elements: left l is l, right r is left_count + r.
      dates.push_back({{l, spec.left_count + r},
                       spec.ProbabilityOf(l, r),
                       "e" + std::to_string(l + 1) + "_" +
                           std::to_string(r + 1)});
      by_left[l].push_back(MatchmakingItem(spec, l, r));
      by_right[r].push_back(MatchmakingItem(spec, l, r));
    }
  }
  auto left_matroid = IndependenceSystem::Partition(
      n, by_left, std::vector<int>(spec.left_count, spec.cap_left));
  left_matroid.set_name("left-capacity(" + std::to_string(spec.cap_left) +
                        ")");
  auto right_matroid = IndependenceSystem::Partition(
      n, by_right, std::vector<int>(spec.right_count, spec.cap_right));
  right_matroid.set_name("right-capacity(" + std::to_string(spec.cap_right) +
                         ")");

  Instance instance = MakeCoverage(
      spec.left_count + spec.right_count, dates,
      Intersect({std::move(left_matroid), std::move(right_matroid)}));
  instance.name = "matchmaking-" + std::to_string(spec.left_count) + "x" +
                  std::to_string(spec.right_count) + "-cap" +
                  std::to_string(spec.cap_left) + "-" +
                  std::to_string(spec.cap_right);
  instance.objective.set_name("matched-people");
  instance.declared_p = Rational::Of(2, 1);
  if (n <= kMaxEstimatePGround) {
    const Rational exact = EstimateP(instance.system, n).p_value;
    if (!(exact == *instance.declared_p)) {
      instance.warnings.push_back("declared p 2 overridden by exhaustive "
                                  "estimate " + exact.ToString());
      instance.declared_p = exact;
    }
  }
  return instance;
}

Instance RandomSmallInstance(uint64_t seed, const RandomInstanceCaps& caps) {
  if (caps.min_items < 1 || caps.max_items < caps.min_items ||
      caps.max_universe < 1) {
    throw Error(ErrorKind::kInvalidArgument, "invalid random instance caps");
  }
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32), 0xc0feu};
  std::mt19937_64 rng(seq);

  const int n = Draw(rng, caps.min_items, caps.max_items);
  const int universe = Draw(rng, std::min(2, caps.max_universe),
                            caps.max_universe);
  std::vector<CoverageItem> items;
  for (int i = 0; i < n; ++i) {
    CoverageItem item;
    for (int u = 0; u < universe; ++u) {
      if (Draw(rng, 0, 9) < 4) item.covers.push_back(u);
    }
    if (item.covers.empty()) item.covers.push_back(Draw(rng, 0, universe - 1));
    item.success_prob = 0.05 * Draw(rng, 2, 18);
    item.label = "i" + std::to_string(i);
    items.push_back(std::move(item));
  }

  const int constraint_kind = Draw(rng, 0, 2);
  std::optional<IndependenceSystem> system;
  if (constraint_kind == 0) {
    system = IndependenceSystem::Uniform(n, Draw(rng, 1, std::max(1, n - 1)));
  } else if (constraint_kind == 1) {
    system = RandomPartition(rng, n, 3, 2);
  } else {
    // Redraw until p is integral, so the suite only exercises p in {1, 2}.
    do {
      system = Intersect({RandomPartition(rng, n, 3, 1),
                          RandomPartition(rng, n, 3, 1)});
    } while (n <= kMaxEstimatePGround &&
             EstimateP(*system, n).p_value.den != 1);
  }

  Instance instance = MakeCoverage(universe, items, std::move(*system));
  instance.name = "random-" + std::to_string(seed);
  return instance;
}

}  // namespace adasub
