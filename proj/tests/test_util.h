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

// Shared fixtures and independent reference computations for tests. Nothing
// here calls the enumeration or policy code it is used to check.

#ifndef ADASUB_TESTS_TEST_UTIL_H_
#define ADASUB_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adasub/constraints.h"
#include "adasub/instances.h"
#include "adasub/model.h"
#include "adasub/objective.h"

namespace adasub::testing {

inline constexpr OutcomeIndex kGood = 0;
inline constexpr OutcomeIndex kBad = 1;
inline constexpr ItemIndex kA = 0;
inline constexpr ItemIndex kB = 1;

// Items a and b, outcomes {good, bad}, fair priors.
inline Model M1() {
  return Model{{{"a", {"good", "bad"}, {0.5, 0.5}},
                {"b", {"good", "bad"}, {0.5, 0.5}}}};
}

// Every item surely lands on outcome 0.
inline Model DeterministicModel(int n) {
  Model model;
  for (int i = 0; i < n; ++i) {
    model.items.push_back(
        {"x" + std::to_string(i), {"good", "bad"}, {1.0, 0.0}});
  }
  return model;
}

inline PartialRealization Psi(
    int n, std::vector<std::pair<ItemIndex, OutcomeIndex>> observations) {
  PartialRealization psi(n);
  for (auto [item, outcome] : observations) psi.Observe(item, outcome);
  return psi;
}

// All |outcomes|^n worlds by a plain odometer (zero-probability worlds
// included), item 0 slowest.
inline void ForAllWorlds(
    const Model& model,
    const std::function<void(const std::vector<int>&, double)>& fn) {
  const int n = model.size();
  std::vector<int> world(n, 0);
  while (true) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= model.items[i].prior[world[i]];
    fn(world, p);
    int k = n - 1;
    while (k >= 0 &&
           ++world[k] == static_cast<int>(model.items[k].outcomes.size())) {
      world[k] = 0;
      --k;
    }
    if (k < 0) return;
  }
}

// Delta(e | psi) by filtering all worlds and normalizing explicitly.
inline double BruteForceGain(const Model& model, const Objective& objective,
                             ItemIndex item, const PartialRealization& psi) {
  std::vector<int> domain;
  for (int i = 0; i < model.size(); ++i) {
    if (psi.observed(i)) domain.push_back(i);
  }
  std::vector<int> extended = domain;
  extended.push_back(item);
  std::sort(extended.begin(), extended.end());
  double mass = 0.0;
  double weighted = 0.0;
  ForAllWorlds(model, [&](const std::vector<int>& world, double p) {
    for (int i = 0; i < model.size(); ++i) {
      if (psi.observed(i) && *psi.outcome(i) != world[i]) return;
    }
    Realization phi{world};
    mass += p;
    weighted += p * (objective(extended, phi) - objective(domain, phi));
  });
  return weighted / mass;
}

// Policy value by recursing over the greedy decision tree instead of over
// realizations: at each node the greedy choice is recomputed from brute-force
// gains, and outcomes branch with their prior weights.
inline double BruteForceGreedyTreeValue(const Model& model,
                                        const Objective& objective,
                                        const IndependenceSystem& system,
                                        const PartialRealization& psi,
                                        double tolerance = 1e-9) {
  std::vector<int> domain;
  for (int i = 0; i < model.size(); ++i) {
    if (psi.observed(i)) domain.push_back(i);
  }
  std::optional<int> best;
  double best_gain = 0.0;
  for (int e = 0; e < model.size(); ++e) {
    if (psi.observed(e)) continue;
    std::vector<int> extended = domain;
    extended.push_back(e);
    std::sort(extended.begin(), extended.end());
    if (!system.Contains(extended)) continue;
    const double gain = BruteForceGain(model, objective, e, psi);
    if (!best || gain > best_gain + tolerance) {
      best = e;
      best_gain = gain;
    }
  }
  if (!best || best_gain <= tolerance) {
    // Leaf: E[f(dom psi) | psi].
    double mass = 0.0;
    double value = 0.0;
    ForAllWorlds(model, [&](const std::vector<int>& world, double p) {
      for (int i = 0; i < model.size(); ++i) {
        if (psi.observed(i) && *psi.outcome(i) != world[i]) return;
      }
      mass += p;
      value += p * objective(domain, Realization{world});
    });
    return value / mass;
  }
  double value = 0.0;
  for (int o = 0; o < model.outcome_count(*best); ++o) {
    const double p = model.prior(*best, o);
    if (p <= 0.0) continue;
    value += p * BruteForceGreedyTreeValue(model, objective, system,
                                           psi.With(*best, o), tolerance);
  }
  return value;
}

// K_{2,2} edges e11, e12, e21, e22 as items 0..3.
inline constexpr ItemIndex kE11 = 0;
inline constexpr ItemIndex kE12 = 1;
inline constexpr ItemIndex kE21 = 2;
inline constexpr ItemIndex kE22 = 3;

// Matching membership written directly: no two chosen edges share an
// endpoint.
inline bool IsMatchingK22(const ItemSet& edges) {
  auto left = [](int e) { return e / 2; };
  auto right = [](int e) { return e % 2; };
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      if (left(edges[i]) == left(edges[j]) ||
          right(edges[i]) == right(edges[j])) {
        return false;
      }
    }
  }
  return true;
}

inline IndependenceSystem MatchingK22() {
  return Intersect(
      {IndependenceSystem::Partition(4, {{kE11, kE12}, {kE21, kE22}}, {1, 1}),
       IndependenceSystem::Partition(4, {{kE11, kE21}, {kE12, kE22}}, {1, 1})});
}

// Suite of random instances used across tests and the acceptance run.
inline std::vector<Instance> Suite(int count = 20) {
  std::vector<Instance> suite;
  for (int seed = 0; seed < count; ++seed) {
    suite.push_back(RandomSmallInstance(static_cast<uint64_t>(seed)));
  }
  return suite;
}

}  // namespace adasub::testing

#endif  // ADASUB_TESTS_TEST_UTIL_H_
