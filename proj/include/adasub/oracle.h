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

// Exact optimal values by exhaustive search, for toy instances only.

#ifndef ADASUB_ORACLE_H_
#define ADASUB_ORACLE_H_

#include <cstdint>
#include <optional>

#include "adasub/constraints.h"
#include "adasub/model.h"
#include "adasub/objective.h"

namespace adasub {

struct OracleOptions {
  int max_items = 7;
  int max_outcomes = 3;
  bool memoize = true;
};

struct OracleResult {
  double value = 0.0;
  uint64_t explored_states = 0;
  std::optional<ItemIndex> best_first_action;  // absent if stopping is best
};

// Value of the best adaptive policy:
//   V(psi) = max(E[f(dom psi) | psi],
//                max over feasible e of sum_o P(o) V(psi + {e -> o}))
// with zero-probability outcomes skipped and V memoized on psi.
OracleResult OptimalAdaptiveValue(const Model& model,
                                  const Objective& objective,
                                  const IndependenceSystem& system,
                                  const OracleOptions& options = {});

struct NonadaptiveOptimum {
  double value = 0.0;
  ItemSet best_set;  // lexicographically smallest maximizer
};

struct NonadaptiveOracleCaps {
  int max_items = 20;
  // Independent sets examined times realizations per set.
  uint64_t max_work = uint64_t{1} << 26;
};

// Best committed set: max of E[f(S, Phi)] over independent S.
NonadaptiveOptimum OptimalNonadaptiveValue(
    const Model& model, const Objective& objective,
    const IndependenceSystem& system, const NonadaptiveOracleCaps& caps = {});

}  // namespace adasub

#endif  // ADASUB_ORACLE_H_
