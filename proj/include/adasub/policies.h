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

// The adaptive greedy policy, two baselines, and their evaluation.
//
// A policy runs closed loop against a hidden realization: it picks an item,
// observes that item's outcome, and picks again with the enlarged partial
// realization, until its step rule stops. Only the adaptive greedy policy
// uses the observations.

#ifndef ADASUB_POLICIES_H_
#define ADASUB_POLICIES_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "adasub/constraints.h"
#include "adasub/model.h"
#include "adasub/objective.h"

namespace adasub {

enum class PolicyKind {
  kAdaptiveGreedy,
  kNonadaptiveGreedy,  // commits to the open-loop greedy set
  kRandomFeasible,     // uniform among feasible items until none remain
};

std::string_view PolicyKindName(PolicyKind kind);
std::optional<PolicyKind> ParsePolicyKind(std::string_view name);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kAdaptiveGreedy;
  // Stop once the best available gain is at most `tolerance`. Turning this
  // off fills the selection up to a maximal independent set.
  bool stop_on_zero_gain = true;
  // Gains within this distance of each other are ties.
  double tolerance = 1e-9;
  // Drives kRandomFeasible only.
  uint64_t random_seed = 0;
};

struct PolicyStep {
  ItemIndex item = 0;
  OutcomeIndex outcome = 0;
  friend bool operator==(const PolicyStep&, const PolicyStep&) = default;
};

struct PolicyTrace {
  std::vector<PolicyStep> steps;
  double final_value = 0.0;

  ItemSet Selected() const;
};

struct EvaluationCaps {
  uint64_t max_realizations = 100'000;
};

// One greedy selection: the feasible item outside dom(psi) with the largest
// Delta(e | psi), smallest index on ties. Absent when nothing is feasible, or
// when stop_on_zero_gain is set and the best gain is at most the tolerance.
std::optional<ItemIndex> GreedyStep(const Model& model,
                                    const Objective& objective,
                                    const IndependenceSystem& system,
                                    const PartialRealization& psi,
                                    const PolicyConfig& config);

PolicyTrace ExecutePolicy(const Model& model, const Objective& objective,
                          const IndependenceSystem& system,
                          const PolicyConfig& config, const Realization& phi);

// Sum over realizations of prior(phi) * final value. kRandomFeasible is
// averaged exactly over its own choices as well.
double ExpectedValueExact(const Model& model, const Objective& objective,
                          const IndependenceSystem& system,
                          const PolicyConfig& config,
                          const EvaluationCaps& caps = {});

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample i uses realization seed `seed + i`.
MonteCarloEstimate ExpectedValueMonteCarlo(const Model& model,
                                           const Objective& objective,
                                           const IndependenceSystem& system,
                                           const PolicyConfig& config,
                                           int64_t samples, uint64_t seed);

// The open-loop greedy selection in pick order: each step adds the feasible
// item with the largest unconditional expected gain.
std::vector<ItemIndex> NonadaptiveGreedySequence(
    const Model& model, const Objective& objective,
    const IndependenceSystem& system, const PolicyConfig& config,
    const EvaluationCaps& caps = {});

// NonadaptiveGreedySequence as a sorted set.
ItemSet NonadaptiveGreedySet(const Model& model, const Objective& objective,
                             const IndependenceSystem& system,
                             const PolicyConfig& config,
                             const EvaluationCaps& caps = {});

// E[f(s, Phi)] under the prior.
double CommittedSetValue(const Model& model, const Objective& objective,
                         const ItemSet& s, const EvaluationCaps& caps = {});

}  // namespace adasub

#endif  // ADASUB_POLICIES_H_
