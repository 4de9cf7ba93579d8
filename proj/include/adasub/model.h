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

// Items with finite outcome sets and independent priors, together with full
// and partial realizations of the hidden world state.

#ifndef ADASUB_MODEL_H_
#define ADASUB_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adasub/error.h"

namespace adasub {

using ItemIndex = int;
using OutcomeIndex = int;

// Sorted ascending, no duplicates.
using ItemSet = std::vector<ItemIndex>;

// Probability lists must sum to one within this tolerance.
inline constexpr double kProbabilityTolerance = 1e-9;

struct Item {
  std::string label;
  std::vector<std::string> outcomes;
  std::vector<double> prior;  // one entry per outcome
};

// Ground set plus a product prior over outcomes. Items are addressed by dense
// index; labels are presentation only.
struct Model {
  std::vector<Item> items;

  int size() const { return static_cast<int>(items.size()); }
  int outcome_count(ItemIndex item) const {
    return static_cast<int>(items[item].outcomes.size());
  }
  double prior(ItemIndex item, OutcomeIndex outcome) const {
    return items[item].prior[outcome];
  }
  int max_outcome_count() const;

  std::optional<ItemIndex> FindItem(const std::string& label) const;
  std::optional<OutcomeIndex> FindOutcome(ItemIndex item,
                                          const std::string& label) const;
  // Label if present, otherwise the decimal index.
  std::string ItemName(ItemIndex item) const;
  std::string OutcomeName(ItemIndex item, OutcomeIndex outcome) const;
};

// A total assignment of one outcome to every item.
struct Realization {
  std::vector<OutcomeIndex> outcomes;

  OutcomeIndex operator[](ItemIndex item) const { return outcomes[item]; }
  int size() const { return static_cast<int>(outcomes.size()); }
  friend bool operator==(const Realization&, const Realization&) = default;
};

// The observations made so far: outcomes for a subset of the items.
class PartialRealization {
 public:
  static constexpr OutcomeIndex kUnobserved = -1;

  PartialRealization() = default;
  explicit PartialRealization(int item_count)
      : observed_(item_count, kUnobserved) {}

  int item_count() const { return static_cast<int>(observed_.size()); }
  bool observed(ItemIndex item) const {
    return observed_[item] != kUnobserved;
  }
  std::optional<OutcomeIndex> outcome(ItemIndex item) const;

  // Throws kInvalidArgument if the item is out of range or already observed.
  void Observe(ItemIndex item, OutcomeIndex outcome);
  PartialRealization With(ItemIndex item, OutcomeIndex outcome) const;

  ItemSet Domain() const;
  int domain_size() const;
  std::vector<std::pair<ItemIndex, OutcomeIndex>> Observations() const;

  bool ConsistentWith(const Realization& phi) const;
  // dom(this) is a subset of dom(other) and the two agree on dom(this).
  bool IsSubrealizationOf(const PartialRealization& other) const;

  std::string ToString(const Model& model) const;

  friend bool operator==(const PartialRealization&,
                         const PartialRealization&) = default;

 private:
  std::vector<OutcomeIndex> observed_;
};

// Lexicographic order on the sorted (item, outcome) observation lists.
bool ObservationOrderLess(const PartialRealization& a,
                          const PartialRealization& b);

struct ValidationResult {
  bool ok = true;
  std::optional<ItemIndex> item;
  std::string reason;

  explicit operator bool() const { return ok; }
};

ValidationResult ValidateModel(const Model& model);

// Throws Error(kValidation) carrying the first violation.
void RequireValidModel(const Model& model);

// Outcome indices in range for the model; throws kInvalidArgument otherwise.
void RequireCompatible(const Model& model, const Realization& phi);
void RequireCompatible(const Model& model, const PartialRealization& psi);

// Each item drawn independently from its prior; a pure function of
// (model, seed).
Realization SampleRealization(const Model& model, uint64_t seed);

double RealizationProbability(const Model& model, const Realization& phi);

// Prior probability of observing psi.
double ObservationProbability(const Model& model,
                              const PartialRealization& psi);

// Number of full realizations, saturating at UINT64_MAX.
uint64_t RealizationCount(const Model& model);

struct WeightedRealization {
  Realization realization;
  double probability;
};

// Every positive-probability realization consistent with psi, with its
// probability conditioned on psi, in lexicographic (item, outcome) order.
// Throws kZeroProbability if psi itself has prior probability zero.
std::vector<WeightedRealization> EnumerateConsistent(
    const Model& model, const PartialRealization& psi);

// Allocation-free form of EnumerateConsistent. `fn(phi, weight)` is called in
// the same order; phi is reused between calls.
template <typename Fn>
void ForEachConsistent(const Model& model, const PartialRealization& psi,
                       Fn&& fn);

// Full-prior iteration, equivalent to ForEachConsistent with nothing observed.
template <typename Fn>
void ForEachRealization(const Model& model, Fn&& fn) {
  ForEachConsistent(model, PartialRealization(model.size()),
                    std::forward<Fn>(fn));
}

// Mixed-radix code for partial realizations: item i contributes digit 0 when
// unobserved and 1 + outcome otherwise, item 0 most significant. Codes are
// dense in [0, state_count()).
class PartialRealizationCodec {
 public:
  // Throws kTooLarge if the state count does not fit in 63 bits.
  explicit PartialRealizationCodec(const Model& model);

  uint64_t state_count() const { return state_count_; }
  uint64_t Encode(const PartialRealization& psi) const;
  PartialRealization Decode(uint64_t code) const;

 private:
  std::vector<uint64_t> radix_;
  std::vector<uint64_t> place_;
  uint64_t state_count_ = 1;
};

// ---------------------------------------------------------------------------

namespace internal {
[[noreturn]] void ThrowZeroProbability(const Model& model,
                                       const PartialRealization& psi);
}  // namespace internal

template <typename Fn>
void ForEachConsistent(const Model& model, const PartialRealization& psi,
                       Fn&& fn) {
  RequireCompatible(model, psi);
  const int n = model.size();
  Realization phi{std::vector<OutcomeIndex>(n, 0)};
  // Free items iterate only over their positive-probability outcomes.
  std::vector<ItemIndex> free_items;
  std::vector<std::vector<OutcomeIndex>> support;
  for (ItemIndex i = 0; i < n; ++i) {
    if (auto o = psi.outcome(i)) {
      if (!(model.prior(i, *o) > 0.0)) {
        internal::ThrowZeroProbability(model, psi);
      }
      phi.outcomes[i] = *o;
      continue;
    }
    std::vector<OutcomeIndex> outcomes;
    for (OutcomeIndex o = 0; o < model.outcome_count(i); ++o) {
      if (model.prior(i, o) > 0.0) outcomes.push_back(o);
    }
    if (outcomes.empty()) {
      throw Error(ErrorKind::kValidation,
                  "item " + std::to_string(i) + ": no outcome has positive probability");
    }
    free_items.push_back(i);
    support.push_back(std::move(outcomes));
  }
  const int free_count = static_cast<int>(free_items.size());
  std::vector<int> digit(free_count, 0);
  for (int k = 0; k < free_count; ++k) {
    phi.outcomes[free_items[k]] = support[k][0];
  }
  while (true) {
    double weight = 1.0;
    for (int k = 0; k < free_count; ++k) {
      weight *= model.prior(free_items[k], phi.outcomes[free_items[k]]);
    }
    fn(static_cast<const Realization&>(phi), weight);
    // Odometer with the last free item fastest.
    int k = free_count - 1;
    while (k >= 0) {
      if (++digit[k] < static_cast<int>(support[k].size())) {
        phi.outcomes[free_items[k]] = support[k][digit[k]];
        break;
      }
      digit[k] = 0;
      phi.outcomes[free_items[k]] = support[k][0];
      --k;
    }
    if (k < 0) break;
  }
}

}  // namespace adasub

#endif  // ADASUB_MODEL_H_
