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

// Problem instances: stochastic coverage, adaptive matchmaking and a seeded
// generator of small random instances.

#ifndef ADASUB_INSTANCES_H_
#define ADASUB_INSTANCES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adasub/constraints.h"
#include "adasub/model.h"
#include "adasub/objective.h"

namespace adasub {

struct Instance {
  std::string name;
  Model model;
  Objective objective;
  IndependenceSystem system;
  std::optional<Rational> declared_p;
  std::vector<std::string> warnings;
};

// Model validity, matching ground sizes, and, on grounds small enough for
// EstimateP, agreement of declared_p with the exhaustive value. Throws
// kValidation.
void ValidateInstance(const Instance& instance);

struct CoverageItem {
  std::vector<int> covers;
  double success_prob = 1.0;
  std::string label;
};

// Each item works with its success probability; f(S, phi) counts universe
// elements covered by selected items that work.
Instance MakeCoverage(int universe_size, const std::vector<CoverageItem>& items,
                      IndependenceSystem system);
// Same, under uniform(k).
Instance MakeCoverage(int universe_size, const std::vector<CoverageItem>& items,
                      int k);

// Dates between `left_count` and `right_count` people; person capacities
// bound how many dates each may be arranged.
struct MatchmakingSpec {
  int left_count = 1;
  int right_count = 1;
  int cap_left = 1;
  int cap_right = 1;
  // One entry (shared by every pair) or left_count * right_count entries in
  // row-major (left, right) order.
  std::vector<double> success_prob = {0.5};

  double ProbabilityOf(int left, int right) const;
};

// Validation failures are kInvalidArgument.
void ValidateMatchmakingSpec(const MatchmakingSpec& spec);

// Item index of the date between `left` and `right`.
inline ItemIndex MatchmakingItem(const MatchmakingSpec& spec, int left,
                                 int right) {
  return left * spec.right_count + right;
}

// Ground set: every (left, right) pair, each succeeding independently.
// Objective: number of people with at least one successful selected date.
// Constraint: per-person capacities as the intersection of two partition
// matroids. declared_p is 2, replaced (with a warning) by the exhaustive
// value whenever the ground is small enough to compute it.
Instance MakeMatchmaking(const MatchmakingSpec& spec);

struct RandomInstanceCaps {
  int min_items = 3;
  int max_items = 5;
  int max_universe = 6;
};

// Seeded stochastic-coverage instance with binary outcomes, success
// probabilities on a 0.05 grid in [0.1, 0.9], and a constraint drawn from
// uniform(k), a partition matroid, or an intersection of two partition
// matroids with integral p.
Instance RandomSmallInstance(uint64_t seed, const RandomInstanceCaps& caps = {});

}  // namespace adasub

#endif  // ADASUB_INSTANCES_H_
