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

#include "adasub/policies.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>

namespace adasub {
namespace {

void RequireSetup(const Model& model, const IndependenceSystem& system,
                  const PolicyConfig& config) {
  RequireValidModel(model);
  if (system.ground_size() != model.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "constraint ground size " +
                    std::to_string(system.ground_size()) +
                    " does not match model size " +
                    std::to_string(model.size()));
  }
  if (!(config.tolerance >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "tolerance must be >= 0");
  }
}

void RequireRealizationCap(const Model& model, const EvaluationCaps& caps,
                           const char* what) {
  const uint64_t count = RealizationCount(model);
  if (count > caps.max_realizations) {
    throw Error(ErrorKind::kTooLarge,
                std::string(what) + ": " + std::to_string(count) +
                    " realizations exceed cap " +
                    std::to_string(caps.max_realizations));
  }
}

std::vector<ItemIndex> FeasibleExtensions(const IndependenceSystem& system,
                                          const ItemSet& selected) {
  std::vector<ItemIndex> feasible;
  for (ItemIndex e = 0; e < system.ground_size(); ++e) {
    if (std::binary_search(selected.begin(), selected.end(), e)) continue;
    if (system.Contains(WithItem(selected, e))) feasible.push_back(e);
  }
  return feasible;
}

// Argmax with tolerance ties resolved to the earliest candidate.
std::optional<ItemIndex> PickBest(const std::vector<ItemIndex>& candidates,
                                  const std::vector<double>& gains,
                                  const PolicyConfig& config) {
  if (candidates.empty()) return std::nullopt;
  size_t best = 0;
  for (size_t k = 1; k < candidates.size(); ++k) {
    if (gains[k] > gains[best] + config.tolerance) best = k;
  }
  if (config.stop_on_zero_gain && gains[best] <= config.tolerance) {
    return std::nullopt;
  }
  return candidates[best];
}

uint64_t PolicySeed(uint64_t seed) {
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32), 0x5eedu};
  uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

// Decides the next item from the observations so far.
class StepRule {
 public:
  virtual ~StepRule() = default;
  virtual std::optional<ItemIndex> Next(const PartialRealization& psi) = 0;
};

class AdaptiveGreedyRule : public StepRule {
 public:
  AdaptiveGreedyRule(const Model& model, const Objective& objective,
                     const IndependenceSystem& system,
                     const PolicyConfig& config)
      : model_(model), objective_(objective), system_(system),
        config_(config) {}

  std::optional<ItemIndex> Next(const PartialRealization& psi) override {
    // Many realizations share decision points; decisions depend on psi only.
    auto key = psi.Observations();
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto choice = GreedyStep(model_, objective_, system_, psi, config_);
    cache_.emplace(std::move(key), choice);
    return choice;
  }

 private:
  const Model& model_;
  const Objective& objective_;
  const IndependenceSystem& system_;
  PolicyConfig config_;
  std::map<std::vector<std::pair<ItemIndex, OutcomeIndex>>,
           std::optional<ItemIndex>>
      cache_;
};

class SequenceRule : public StepRule {
 public:
  explicit SequenceRule(std::vector<ItemIndex> sequence)
      : sequence_(std::move(sequence)) {}

  std::optional<ItemIndex> Next(const PartialRealization& psi) override {
    const auto k = static_cast<size_t>(psi.domain_size());
    if (k >= sequence_.size()) return std::nullopt;
    return sequence_[k];
  }

 private:
  std::vector<ItemIndex> sequence_;
};

class RandomFeasibleRule : public StepRule {
 public:
  RandomFeasibleRule(const IndependenceSystem& system, uint64_t seed)
      : system_(system), rng_(PolicySeed(seed)) {}

  std::optional<ItemIndex> Next(const PartialRealization& psi) override {
    const auto feasible = FeasibleExtensions(system_, psi.Domain());
    if (feasible.empty()) return std::nullopt;
    return feasible[rng_() % feasible.size()];
  }

 private:
  const IndependenceSystem& system_;
  std::mt19937_64 rng_;
};

std::unique_ptr<StepRule> MakeRule(const Model& model,
                                   const Objective& objective,
                                   const IndependenceSystem& system,
                                   const PolicyConfig& config) {
  switch (config.kind) {
    case PolicyKind::kAdaptiveGreedy:
      return std::make_unique<AdaptiveGreedyRule>(model, objective, system,
                                                  config);
    case PolicyKind::kNonadaptiveGreedy:
      return std::make_unique<SequenceRule>(NonadaptiveGreedySequence(
          model, objective, system, config));
    case PolicyKind::kRandomFeasible:
      return std::make_unique<RandomFeasibleRule>(system, config.random_seed);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown policy kind");
}

PolicyTrace Run(const Model& model, const Objective& objective,
                const IndependenceSystem& system, StepRule& rule,
                const Realization& phi) {
  PolicyTrace trace;
  PartialRealization psi(model.size());
  ItemSet selected;
  while (auto e = rule.Next(psi)) {
    if (*e < 0 || *e >= model.size() || psi.observed(*e)) {
      throw Error(ErrorKind::kValidation,
                  "policy selected an invalid item " + std::to_string(*e));
    }
    selected = WithItem(selected, *e);
    if (!system.Contains(selected)) {
      throw Error(ErrorKind::kValidation,
                  "policy selection left the independence system at item " +
                      model.ItemName(*e));
    }
    psi.Observe(*e, phi[*e]);
    trace.steps.push_back({*e, phi[*e]});
  }
  trace.final_value = objective(selected, phi);
  return trace;
}

// Probability of each final selection under uniformly random feasible picks.
std::map<uint64_t, double> RandomFinalSets(const IndependenceSystem& system) {
  if (system.ground_size() > 62) {
    throw Error(ErrorKind::kTooLarge,
                "ground too large for exact random-policy evaluation");
  }
  std::map<uint64_t, double> finals;
  std::map<uint64_t, double> frontier{{0, 1.0}};
  while (!frontier.empty()) {
    std::map<uint64_t, double> next;
    for (const auto& [mask, p] : frontier) {
      const auto feasible = FeasibleExtensions(system, MaskToSet(mask));
      if (feasible.empty()) {
        finals[mask] += p;
        continue;
      }
      const double share = p / static_cast<double>(feasible.size());
      for (ItemIndex e : feasible) next[mask | (uint64_t{1} << e)] += share;
    }
    frontier = std::move(next);
  }
  return finals;
}

}  // namespace

std::string_view PolicyKindName(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kAdaptiveGreedy:
      return "adaptive_greedy";
    case PolicyKind::kNonadaptiveGreedy:
      return "nonadaptive_greedy";
    case PolicyKind::kRandomFeasible:
      return "random_feasible";
  }
  return "unknown";
}

std::optional<PolicyKind> ParsePolicyKind(std::string_view name) {
  for (PolicyKind kind :
       {PolicyKind::kAdaptiveGreedy, PolicyKind::kNonadaptiveGreedy,
        PolicyKind::kRandomFeasible}) {
    if (PolicyKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

ItemSet PolicyTrace::Selected() const {
  ItemSet selected;
  for (const auto& step : steps) selected.push_back(step.item);
  std::sort(selected.begin(), selected.end());
  return selected;
}

std::optional<ItemIndex> GreedyStep(const Model& model,
                                    const Objective& objective,
                                    const IndependenceSystem& system,
                                    const PartialRealization& psi,
                                    const PolicyConfig& config) {
  RequireSetup(model, system, config);
  RequireCompatible(model, psi);
  const ItemSet domain = psi.Domain();
  if (!system.Contains(domain)) {
    throw Error(ErrorKind::kInvalidArgument,
                "observed items are not independent in " + system.name());
  }
  const auto candidates = FeasibleExtensions(system, domain);
  if (candidates.empty()) return std::nullopt;

  std::vector<ItemSet> extended;
  for (ItemIndex e : candidates) extended.push_back(WithItem(domain, e));
  std::vector<double> gains(candidates.size(), 0.0);
  ForEachConsistent(model, psi, [&](const Realization& phi, double w) {
    const double base = objective(domain, phi);
    for (size_t k = 0; k < candidates.size(); ++k) {
      gains[k] += w * (objective(extended[k], phi) - base);
    }
  });
  return PickBest(candidates, gains, config);
}

PolicyTrace ExecutePolicy(const Model& model, const Objective& objective,
                          const IndependenceSystem& system,
                          const PolicyConfig& config, const Realization& phi) {
  RequireSetup(model, system, config);
  RequireCompatible(model, phi);
  auto rule = MakeRule(model, objective, system, config);
  return Run(model, objective, system, *rule, phi);
}

double ExpectedValueExact(const Model& model, const Objective& objective,
                          const IndependenceSystem& system,
                          const PolicyConfig& config,
                          const EvaluationCaps& caps) {
  RequireSetup(model, system, config);
  RequireRealizationCap(model, caps, "instance too large for exact evaluation");

  if (config.kind == PolicyKind::kRandomFeasible) {
    double value = 0.0;
    for (const auto& [mask, p] : RandomFinalSets(system)) {
      value += p * CommittedSetValue(model, objective, MaskToSet(mask), caps);
    }
    return value;
  }

  auto rule = MakeRule(model, objective, system, config);
  double value = 0.0;
  ForEachRealization(model, [&](const Realization& phi, double w) {
    value += w * Run(model, objective, system, *rule, phi).final_value;
  });
  return value;
}

MonteCarloEstimate ExpectedValueMonteCarlo(const Model& model,
                                           const Objective& objective,
                                           const IndependenceSystem& system,
                                           const PolicyConfig& config,
                                           int64_t samples, uint64_t seed) {
  RequireSetup(model, system, config);
  if (samples < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "Monte Carlo evaluation needs at least 2 samples");
  }
  // Greedy decisions are shared across samples; only the random baseline
  // needs a fresh rule per sample.
  std::unique_ptr<StepRule> shared;
  if (config.kind != PolicyKind::kRandomFeasible) {
    shared = MakeRule(model, objective, system, config);
  }
  // Welford accumulation in sample order.
  double mean = 0.0;
  double m2 = 0.0;
  for (int64_t i = 0; i < samples; ++i) {
    const uint64_t sample_seed = seed + static_cast<uint64_t>(i);
    const Realization phi = SampleRealization(model, sample_seed);
    double value;
    if (shared) {
      value = Run(model, objective, system, *shared, phi).final_value;
    } else {
      RandomFeasibleRule rule(system, sample_seed);
      value = Run(model, objective, system, rule, phi).final_value;
    }
    const double delta = value - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (value - mean);
  }
  const double variance = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(std::max(0.0, variance) /
                          static_cast<double>(samples))};
}

std::vector<ItemIndex> NonadaptiveGreedySequence(
    const Model& model, const Objective& objective,
    const IndependenceSystem& system, const PolicyConfig& config,
    const EvaluationCaps& caps) {
  RequireSetup(model, system, config);
  RequireRealizationCap(model, caps, "instance too large");
  std::vector<WeightedRealization> worlds;
  ForEachRealization(model, [&](const Realization& phi, double w) {
    worlds.push_back({phi, w});
  });

  std::vector<ItemIndex> sequence;
  ItemSet selected;
  while (true) {
    const auto candidates = FeasibleExtensions(system, selected);
    if (candidates.empty()) break;
    std::vector<double> gains(candidates.size(), 0.0);
    for (const auto& [phi, w] : worlds) {
      const double base = objective(selected, phi);
      for (size_t k = 0; k < candidates.size(); ++k) {
        gains[k] += w * (objective(WithItem(selected, candidates[k]), phi) -
                         base);
      }
    }
    const auto pick = PickBest(candidates, gains, config);
    if (!pick) break;
    sequence.push_back(*pick);
    selected = WithItem(selected, *pick);
  }
  return sequence;
}

ItemSet NonadaptiveGreedySet(const Model& model, const Objective& objective,
                             const IndependenceSystem& system,
                             const PolicyConfig& config,
                             const EvaluationCaps& caps) {
  auto sequence =
      NonadaptiveGreedySequence(model, objective, system, config, caps);
  std::sort(sequence.begin(), sequence.end());
  return sequence;
}

double CommittedSetValue(const Model& model, const Objective& objective,
                         const ItemSet& s, const EvaluationCaps& caps) {
  RequireValidModel(model);
  RequireRealizationCap(model, caps, "instance too large");
  double value = 0.0;
  ForEachRealization(model, [&](const Realization& phi, double w) {
    value += w * Evaluate(objective, s, phi);
  });
  return value;
}

}  // namespace adasub
