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

#include "adasub/model.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <string>

namespace adasub {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "invalid_argument";
    case ErrorKind::kValidation:
      return "validation";
    case ErrorKind::kZeroProbability:
      return "zero_probability";
    case ErrorKind::kTooLarge:
      return "too_large";
    case ErrorKind::kParse:
      return "parse";
  }
  return "unknown";
}

namespace {

std::string FormatReal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

// Uniform double in [0, 1) from the top 53 bits.
double UnitInterval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

int Model::max_outcome_count() const {
  int best = 0;
  for (const Item& item : items) {
    best = std::max(best, static_cast<int>(item.outcomes.size()));
  }
  return best;
}

std::optional<ItemIndex> Model::FindItem(const std::string& label) const {
  for (ItemIndex i = 0; i < size(); ++i) {
    if (items[i].label == label) return i;
  }
  return std::nullopt;
}

std::optional<OutcomeIndex> Model::FindOutcome(
    ItemIndex item, const std::string& label) const {
  const auto& outcomes = items[item].outcomes;
  for (OutcomeIndex o = 0; o < static_cast<int>(outcomes.size()); ++o) {
    if (outcomes[o] == label) return o;
  }
  return std::nullopt;
}

std::string Model::ItemName(ItemIndex item) const {
  if (item >= 0 && item < size() && !items[item].label.empty()) {
    return items[item].label;
  }
  return std::to_string(item);
}

std::string Model::OutcomeName(ItemIndex item, OutcomeIndex outcome) const {
  if (item >= 0 && item < size() && outcome >= 0 &&
      outcome < outcome_count(item) && !items[item].outcomes[outcome].empty()) {
    return items[item].outcomes[outcome];
  }
  return std::to_string(outcome);
}

std::optional<OutcomeIndex> PartialRealization::outcome(ItemIndex item) const {
  if (observed_[item] == kUnobserved) return std::nullopt;
  return observed_[item];
}

void PartialRealization::Observe(ItemIndex item, OutcomeIndex outcome) {
  if (item < 0 || item >= item_count()) {
    throw Error(ErrorKind::kInvalidArgument,
                "item index " + std::to_string(item) + " out of range");
  }
  if (outcome < 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "negative outcome index for item " + std::to_string(item));
  }
  if (observed_[item] != kUnobserved) {
    throw Error(ErrorKind::kInvalidArgument,
                "item already observed: " + std::to_string(item));
  }
  observed_[item] = outcome;
}

PartialRealization PartialRealization::With(ItemIndex item,
                                            OutcomeIndex outcome) const {
  PartialRealization copy = *this;
  copy.Observe(item, outcome);
  return copy;
}

ItemSet PartialRealization::Domain() const {
  ItemSet domain;
  for (ItemIndex i = 0; i < item_count(); ++i) {
    if (observed_[i] != kUnobserved) domain.push_back(i);
  }
  return domain;
}

int PartialRealization::domain_size() const {
  return static_cast<int>(
      std::count_if(observed_.begin(), observed_.end(),
                    [](OutcomeIndex o) { return o != kUnobserved; }));
}

std::vector<std::pair<ItemIndex, OutcomeIndex>>
PartialRealization::Observations() const {
  std::vector<std::pair<ItemIndex, OutcomeIndex>> pairs;
  for (ItemIndex i = 0; i < item_count(); ++i) {
    if (observed_[i] != kUnobserved) pairs.emplace_back(i, observed_[i]);
  }
  return pairs;
}

bool PartialRealization::ConsistentWith(const Realization& phi) const {
  if (phi.size() != item_count()) return false;
  for (ItemIndex i = 0; i < item_count(); ++i) {
    if (observed_[i] != kUnobserved && observed_[i] != phi[i]) return false;
  }
  return true;
}

bool PartialRealization::IsSubrealizationOf(
    const PartialRealization& other) const {
  if (other.item_count() != item_count()) return false;
  for (ItemIndex i = 0; i < item_count(); ++i) {
    if (observed_[i] != kUnobserved && observed_[i] != other.observed_[i]) {
      return false;
    }
  }
  return true;
}

std::string PartialRealization::ToString(const Model& model) const {
  std::string out = "{";
  bool first = true;
  for (const auto& [item, outcome] : Observations()) {
    if (!first) out += ", ";
    first = false;
    out += model.ItemName(item) + "->" + model.OutcomeName(item, outcome);
  }
  return out + "}";
}

bool ObservationOrderLess(const PartialRealization& a,
                          const PartialRealization& b) {
  return a.Observations() < b.Observations();
}

ValidationResult ValidateModel(const Model& model) {
  auto fail = [](std::optional<ItemIndex> item, std::string reason) {
    return ValidationResult{false, item, std::move(reason)};
  };
  if (model.items.empty()) return fail(std::nullopt, "empty item set");
  std::set<std::string> labels;
  for (ItemIndex i = 0; i < model.size(); ++i) {
    const Item& item = model.items[i];
    const std::string where = "item " + std::to_string(i) + ": ";
    if (item.outcomes.empty()) return fail(i, where + "empty outcome set");
    if (item.prior.size() != item.outcomes.size()) {
      return fail(i, where + "has " + std::to_string(item.outcomes.size()) +
                         " outcomes but " + std::to_string(item.prior.size()) +
                         " probabilities");
    }
    double sum = 0.0;
    for (double p : item.prior) {
      if (!std::isfinite(p)) return fail(i, where + "non-finite probability");
      if (p < 0.0) {
        return fail(i, where + "negative probability " + FormatReal(p));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      return fail(i, where + "probability list sums to " + FormatReal(sum) +
                         " != 1");
    }
    if (!item.label.empty() && !labels.insert(item.label).second) {
      return fail(i, where + "duplicate label '" + item.label + "'");
    }
  }
  return {};
}

void RequireValidModel(const Model& model) {
  ValidationResult result = ValidateModel(model);
  if (!result) throw Error(ErrorKind::kValidation, result.reason);
}

void RequireCompatible(const Model& model, const Realization& phi) {
  if (phi.size() != model.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "realization covers " + std::to_string(phi.size()) +
                    " items, model has " + std::to_string(model.size()));
  }
  for (ItemIndex i = 0; i < model.size(); ++i) {
    if (phi[i] < 0 || phi[i] >= model.outcome_count(i)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "outcome index " + std::to_string(phi[i]) +
                      " out of range for item " + std::to_string(i));
    }
  }
}

void RequireCompatible(const Model& model, const PartialRealization& psi) {
  if (psi.item_count() != model.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "partial realization covers " +
                    std::to_string(psi.item_count()) + " items, model has " +
                    std::to_string(model.size()));
  }
  for (const auto& [item, outcome] : psi.Observations()) {
    if (outcome >= model.outcome_count(item)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "outcome index " + std::to_string(outcome) +
                      " out of range for item " + std::to_string(item));
    }
  }
}

Realization SampleRealization(const Model& model, uint64_t seed) {
  RequireValidModel(model);
  std::seed_seq seq{static_cast<uint32_t>(seed),
                    static_cast<uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  Realization phi{std::vector<OutcomeIndex>(model.size(), 0)};
  for (ItemIndex i = 0; i < model.size(); ++i) {
    // Inverse CDF; the last positive outcome absorbs rounding slack.
    const double u = UnitInterval(rng);
    double cumulative = 0.0;
    OutcomeIndex chosen = -1;
    for (OutcomeIndex o = 0; o < model.outcome_count(i); ++o) {
      if (model.prior(i, o) <= 0.0) continue;
      chosen = o;
      cumulative += model.prior(i, o);
      if (u < cumulative) break;
    }
    phi.outcomes[i] = chosen;
  }
  return phi;
}

double RealizationProbability(const Model& model, const Realization& phi) {
  RequireCompatible(model, phi);
  double p = 1.0;
  for (ItemIndex i = 0; i < model.size(); ++i) p *= model.prior(i, phi[i]);
  return p;
}

double ObservationProbability(const Model& model,
                              const PartialRealization& psi) {
  RequireCompatible(model, psi);
  double p = 1.0;
  for (const auto& [item, outcome] : psi.Observations()) {
    p *= model.prior(item, outcome);
  }
  return p;
}

uint64_t RealizationCount(const Model& model) {
  uint64_t count = 1;
  for (ItemIndex i = 0; i < model.size(); ++i) {
    const auto k = static_cast<uint64_t>(model.outcome_count(i));
    if (k != 0 && count > std::numeric_limits<uint64_t>::max() / k) {
      return std::numeric_limits<uint64_t>::max();
    }
    count *= k;
  }
  return count;
}

std::vector<WeightedRealization> EnumerateConsistent(
    const Model& model, const PartialRealization& psi) {
  RequireValidModel(model);
  std::vector<WeightedRealization> out;
  ForEachConsistent(model, psi, [&](const Realization& phi, double weight) {
    out.push_back({phi, weight});
  });
  return out;
}

PartialRealizationCodec::PartialRealizationCodec(const Model& model) {
  const int n = model.size();
  radix_.resize(n);
  place_.resize(n);
  constexpr uint64_t kLimit = uint64_t{1} << 62;
  for (int i = n - 1; i >= 0; --i) {
    radix_[i] = static_cast<uint64_t>(model.outcome_count(i)) + 1;
    place_[i] = state_count_;
    if (state_count_ > kLimit / radix_[i]) {
      throw Error(ErrorKind::kTooLarge, "partial realization space too large");
    }
    state_count_ *= radix_[i];
  }
}

uint64_t PartialRealizationCodec::Encode(const PartialRealization& psi) const {
  uint64_t code = 0;
  for (ItemIndex i = 0; i < psi.item_count(); ++i) {
    if (auto o = psi.outcome(i)) {
      code += place_[i] * static_cast<uint64_t>(*o + 1);
    }
  }
  return code;
}

PartialRealization PartialRealizationCodec::Decode(uint64_t code) const {
  const int n = static_cast<int>(radix_.size());
  PartialRealization psi(n);
  for (ItemIndex i = 0; i < n; ++i) {
    const uint64_t digit = (code / place_[i]) % radix_[i];
    if (digit != 0) psi.Observe(i, static_cast<OutcomeIndex>(digit - 1));
  }
  return psi;
}

namespace internal {

void ThrowZeroProbability(const Model& model, const PartialRealization& psi) {
  throw Error(ErrorKind::kZeroProbability,
              "observation has probability zero: " + psi.ToString(model));
}

}  // namespace internal

}  // namespace adasub
