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

// Pointwise objectives f(S, phi), conditional expected marginal gains, and
// exhaustive checkers for adaptive monotonicity and adaptive submodularity.

#ifndef ADASUB_OBJECTIVE_H_
#define ADASUB_OBJECTIVE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adasub/model.h"

namespace adasub {

using Evaluator =
    std::function<double(const ItemSet& selected, const Realization& phi)>;

enum class ObjectiveKind {
  kCount,     // selected items whose outcome is the success outcome
  kAnd,       // 1 iff every listed item is selected and succeeded
  kCoverage,  // universe elements covered by selected items that work
  kCustom,    // arbitrary evaluator, not serializable
};

class Objective {
 public:
  static Objective Count(OutcomeIndex success_outcome = 0);
  // An empty item list means "all items of the realization".
  static Objective And(ItemSet items = {}, OutcomeIndex success_outcome = 0);
  // sets[i] lists the universe elements item i covers when its outcome is
  // `works_outcome`. Throws kInvalidArgument on elements outside the universe.
  static Objective Coverage(int universe_size,
                            std::vector<std::vector<int>> sets,
                            OutcomeIndex works_outcome = 0);
  static Objective Custom(std::string name, Evaluator evaluator);

  ObjectiveKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  OutcomeIndex success_outcome() const { return success_outcome_; }
  const ItemSet& and_items() const { return and_items_; }
  int universe_size() const { return universe_size_; }
  const std::vector<std::vector<int>>& coverage_sets() const { return sets_; }

  // Unchecked evaluation; see Evaluate() for the checked form.
  double operator()(const ItemSet& selected, const Realization& phi) const {
    return evaluator_(selected, phi);
  }

 private:
  Objective() = default;

  ObjectiveKind kind_ = ObjectiveKind::kCustom;
  std::string name_;
  OutcomeIndex success_outcome_ = 0;
  ItemSet and_items_;
  int universe_size_ = 0;
  std::vector<std::vector<int>> sets_;
  Evaluator evaluator_;
};

// f(selected, phi). Throws kInvalidArgument if `selected` is unsorted, has
// duplicates, or names an item outside the realization.
double Evaluate(const Objective& objective, const ItemSet& selected,
                const Realization& phi);

// Sorted insertion; `item` must not already be in `set`.
ItemSet WithItem(const ItemSet& set, ItemIndex item);

// Delta(item | psi): the expected increase of f from adding `item` to dom(psi),
// averaged over realizations consistent with psi. Exact, by enumeration.
double ExpectedMarginalGain(const Model& model, const Objective& objective,
                            ItemIndex item, const PartialRealization& psi);

// E[f(dom(psi), Phi) | psi].
double ConditionalExpectedValue(const Model& model, const Objective& objective,
                                const PartialRealization& psi);

struct CheckerOptions {
  // Cap on prod_i (outcomes_i + 1), the number of partial realizations.
  uint64_t max_partial_realizations = 200'000;
  double tolerance = 1e-9;
};

struct Witness {
  PartialRealization psi;
  std::optional<PartialRealization> psi_prime;
  ItemIndex item = 0;
  double gain_at_psi = 0.0;
  std::optional<double> gain_at_psi_prime;
};

struct CheckReport {
  bool passed = true;
  std::vector<Witness> witnesses;  // sorted by (psi, psi_prime, item)
};

std::string FormatWitness(const Model& model, const Witness& witness);

// Passes iff Delta(e | psi) >= -tolerance for every positive-probability psi
// and every e outside dom(psi).
CheckReport CheckAdaptiveMonotone(const Model& model,
                                  const Objective& objective,
                                  const CheckerOptions& options = {});

// Passes iff Delta(e | psi) >= Delta(e | psi') - tolerance whenever psi is a
// subrealization of psi', both have positive probability, and e lies outside
// dom(psi').
CheckReport CheckAdaptiveSubmodular(const Model& model,
                                    const Objective& objective,
                                    const CheckerOptions& options = {});

}  // namespace adasub

#endif  // ADASUB_OBJECTIVE_H_
