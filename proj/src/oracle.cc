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

#include "adasub/oracle.h"

#include <cmath>
#include <limits>
#include <vector>

namespace adasub {
namespace {

constexpr double kNonadaptiveTieTolerance = 1e-12;

void RequireGroundMatches(const Model& model,
                          const IndependenceSystem& system) {
  if (system.ground_size() != model.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "constraint ground size does not match model size");
  }
}

class AdaptiveSearch {
 public:
  AdaptiveSearch(const Model& model, const Objective& objective,
                 const IndependenceSystem& system, bool memoize)
      : model_(model), objective_(objective), system_(system),
        codec_(model), memoize_(memoize) {
    if (memoize_) {
      memo_.assign(codec_.state_count(),
                   std::numeric_limits<double>::quiet_NaN());
    }
  }

  OracleResult Solve() {
    PartialRealization root(model_.size());
    OracleResult result;
    result.value = Value(root, &result.best_first_action);
    result.explored_states = explored_;
    return result;
  }

 private:
  double Value(const PartialRealization& psi,
               std::optional<ItemIndex>* best_action) {
    uint64_t code = 0;
    if (memoize_ && best_action == nullptr) {
      code = codec_.Encode(psi);
      if (!std::isnan(memo_[code])) return memo_[code];
    }
    ++explored_;
    const ItemSet domain = psi.Domain();
    const double stop = ConditionalExpectedValue(model_, objective_, psi);
    double best_move = -std::numeric_limits<double>::infinity();
    std::optional<ItemIndex> best_item;
    for (ItemIndex e = 0; e < model_.size(); ++e) {
      if (psi.observed(e) || !system_.Contains(WithItem(domain, e))) continue;
      double value = 0.0;
      for (OutcomeIndex o = 0; o < model_.outcome_count(e); ++o) {
        const double p = model_.prior(e, o);
        if (!(p > 0.0)) continue;
        value += p * Value(psi.With(e, o), nullptr);
      }
      if (value > best_move) {
        best_move = value;
        best_item = e;
      }
    }
    // Stopping wins only when strictly better than every move.
    const bool move = best_item && best_move >= stop;
    const double best = move ? best_move : stop;
    if (best_action != nullptr) {
      *best_action = move ? best_item : std::nullopt;
    }
    if (memoize_) memo_[codec_.Encode(psi)] = best;
    return best;
  }

  const Model& model_;
  const Objective& objective_;
  const IndependenceSystem& system_;
  PartialRealizationCodec codec_;
  bool memoize_;
  std::vector<double> memo_;
  uint64_t explored_ = 0;
};

}  // namespace

OracleResult OptimalAdaptiveValue(const Model& model,
                                  const Objective& objective,
                                  const IndependenceSystem& system,
                                  const OracleOptions& options) {
  RequireValidModel(model);
  RequireGroundMatches(model, system);
  if (model.size() > options.max_items ||
      model.max_outcome_count() > options.max_outcomes) {
    throw Error(ErrorKind::kTooLarge,
                "instance exceeds oracle caps: " +
                    std::to_string(model.size()) + " items (cap " +
                    std::to_string(options.max_items) + "), " +
                    std::to_string(model.max_outcome_count()) +
                    " outcomes (cap " + std::to_string(options.max_outcomes) +
                    ")");
  }
  return AdaptiveSearch(model, objective, system, options.memoize).Solve();
}

NonadaptiveOptimum OptimalNonadaptiveValue(
    const Model& model, const Objective& objective,
    const IndependenceSystem& system, const NonadaptiveOracleCaps& caps) {
  RequireValidModel(model);
  RequireGroundMatches(model, system);
  const int n = model.size();
  const uint64_t worlds = RealizationCount(model);
  if (n > caps.max_items || worlds > caps.max_work ||
      (uint64_t{1} << n) > caps.max_work / worlds) {
    throw Error(ErrorKind::kTooLarge,
                "instance exceeds caps for the non-adaptive oracle");
  }
  std::vector<WeightedRealization> realizations;
  ForEachRealization(model, [&](const Realization& phi, double w) {
    realizations.push_back({phi, w});
  });
  auto expected = [&](const ItemSet& s) {
    double value = 0.0;
    for (const auto& [phi, w] : realizations) value += w * objective(s, phi);
    return value;
  };

  NonadaptiveOptimum best{expected({}), {}};
  // Preorder over sets extended by increasing items visits them in
  // lexicographic order, so the first maximizer found is the smallest.
  ItemSet current;
  auto visit = [&](auto&& self, ItemIndex next) -> void {
    for (ItemIndex e = next; e < n; ++e) {
      current.push_back(e);
      if (system.Contains(current)) {
        const double value = expected(current);
        if (value > best.value + kNonadaptiveTieTolerance) {
          best = {value, current};
        }
      }
      self(self, e + 1);
      current.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

}  // namespace adasub
