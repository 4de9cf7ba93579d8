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

#include "adasub/objective.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <tuple>

namespace adasub {
namespace {

std::string FormatReal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void RequireItemInRange(const Model& model, ItemIndex item) {
  if (item < 0 || item >= model.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "item index " + std::to_string(item) + " out of range");
  }
}

// Delta(e | psi) for every positive-probability psi and every e outside
// dom(psi), indexed by codec code. Entries for observed items and
// zero-probability psi stay NaN.
class GainTable {
 public:
  GainTable(const Model& model, const Objective& objective,
            const CheckerOptions& options)
      : codec_(model), n_(model.size()) {
    if (codec_.state_count() > options.max_partial_realizations) {
      throw Error(ErrorKind::kTooLarge,
                  "instance too large to check exhaustively: " +
                      std::to_string(codec_.state_count()) +
                      " partial realizations exceed cap " +
                      std::to_string(options.max_partial_realizations));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    gains_.assign(codec_.state_count() * n_, nan);
    positive_.assign(codec_.state_count(), false);
    for (uint64_t code = 0; code < codec_.state_count(); ++code) {
      PartialRealization psi = codec_.Decode(code);
      if (!(ObservationProbability(model, psi) > 0.0)) continue;
      positive_[code] = true;
      const ItemSet domain = psi.Domain();
      std::vector<ItemSet> extended(n_);
      for (ItemIndex e = 0; e < n_; ++e) {
        if (!psi.observed(e)) {
          extended[e] = WithItem(domain, e);
          gains_[code * n_ + e] = 0.0;
        }
      }
      ForEachConsistent(model, psi, [&](const Realization& phi, double w) {
        const double base = objective(domain, phi);
        for (ItemIndex e = 0; e < n_; ++e) {
          if (psi.observed(e)) continue;
          gains_[code * n_ + e] += w * (objective(extended[e], phi) - base);
        }
      });
    }
  }

  const PartialRealizationCodec& codec() const { return codec_; }
  bool positive(uint64_t code) const { return positive_[code]; }
  double gain(uint64_t code, ItemIndex e) const {
    return gains_[code * n_ + e];
  }

 private:
  PartialRealizationCodec codec_;
  int n_;
  std::vector<double> gains_;
  std::vector<bool> positive_;
};

void SortWitnesses(std::vector<Witness>& witnesses) {
  auto key = [](const Witness& w) {
    return std::make_tuple(
        w.psi.Observations(),
        w.psi_prime ? w.psi_prime->Observations()
                    : std::vector<std::pair<ItemIndex, OutcomeIndex>>{},
        w.item);
  };
  std::stable_sort(witnesses.begin(), witnesses.end(),
                   [&](const Witness& a, const Witness& b) {
                     return key(a) < key(b);
                   });
}

}  // namespace

Objective Objective::Count(OutcomeIndex success_outcome) {
  Objective obj;
  obj.kind_ = ObjectiveKind::kCount;
  obj.name_ = "count";
  obj.success_outcome_ = success_outcome;
  obj.evaluator_ = [success_outcome](const ItemSet& selected,
                                     const Realization& phi) {
    double count = 0.0;
    for (ItemIndex i : selected) {
      if (phi[i] == success_outcome) count += 1.0;
    }
    return count;
  };
  return obj;
}

Objective Objective::And(ItemSet items, OutcomeIndex success_outcome) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  Objective obj;
  obj.kind_ = ObjectiveKind::kAnd;
  obj.name_ = "and";
  obj.success_outcome_ = success_outcome;
  obj.and_items_ = items;
  obj.evaluator_ = [items, success_outcome](const ItemSet& selected,
                                            const Realization& phi) {
    auto succeeded = [&](ItemIndex i) {
      return std::binary_search(selected.begin(), selected.end(), i) &&
             phi[i] == success_outcome;
    };
    if (items.empty()) {
      for (ItemIndex i = 0; i < phi.size(); ++i) {
        if (!succeeded(i)) return 0.0;
      }
      return 1.0;
    }
    for (ItemIndex i : items) {
      if (!succeeded(i)) return 0.0;
    }
    return 1.0;
  };
  return obj;
}

Objective Objective::Coverage(int universe_size,
                              std::vector<std::vector<int>> sets,
                              OutcomeIndex works_outcome) {
  if (universe_size < 0) {
    throw Error(ErrorKind::kInvalidArgument, "negative universe size");
  }
  for (size_t i = 0; i < sets.size(); ++i) {
    auto& set = sets[i];
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    for (int element : set) {
      if (element < 0 || element >= universe_size) {
        throw Error(ErrorKind::kInvalidArgument,
                    "invalid coverage set for item " + std::to_string(i) +
                        ": element " + std::to_string(element) +
                        " outside universe of size " +
                        std::to_string(universe_size));
      }
    }
  }
  Objective obj;
  obj.kind_ = ObjectiveKind::kCoverage;
  obj.name_ = "coverage";
  obj.success_outcome_ = works_outcome;
  obj.universe_size_ = universe_size;
  obj.sets_ = sets;
  obj.evaluator_ = [universe_size, sets = std::move(sets), works_outcome](
                       const ItemSet& selected, const Realization& phi) {
    std::vector<char> covered(universe_size, 0);
    int count = 0;
    for (ItemIndex i : selected) {
      if (i >= static_cast<int>(sets.size())) {
        throw Error(ErrorKind::kInvalidArgument,
                    "item index " + std::to_string(i) +
                        " has no coverage set");
      }
      if (phi[i] != works_outcome) continue;
      for (int element : sets[i]) {
        if (!covered[element]) {
          covered[element] = 1;
          ++count;
        }
      }
    }
    return static_cast<double>(count);
  };
  return obj;
}

Objective Objective::Custom(std::string name, Evaluator evaluator) {
  Objective obj;
  obj.kind_ = ObjectiveKind::kCustom;
  obj.name_ = std::move(name);
  obj.evaluator_ = std::move(evaluator);
  return obj;
}

double Evaluate(const Objective& objective, const ItemSet& selected,
                const Realization& phi) {
  for (size_t k = 0; k < selected.size(); ++k) {
    if (selected[k] < 0 || selected[k] >= phi.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "item index " + std::to_string(selected[k]) +
                      " out of range");
    }
    if (k > 0 && selected[k - 1] >= selected[k]) {
      throw Error(ErrorKind::kInvalidArgument,
                  "selected set must be sorted and duplicate-free");
    }
  }
  return objective(selected, phi);
}

ItemSet WithItem(const ItemSet& set, ItemIndex item) {
  ItemSet out;
  out.reserve(set.size() + 1);
  auto pos = std::lower_bound(set.begin(), set.end(), item);
  out.insert(out.end(), set.begin(), pos);
  out.push_back(item);
  out.insert(out.end(), pos, set.end());
  return out;
}

double ExpectedMarginalGain(const Model& model, const Objective& objective,
                            ItemIndex item, const PartialRealization& psi) {
  RequireValidModel(model);
  RequireItemInRange(model, item);
  RequireCompatible(model, psi);
  if (psi.observed(item)) {
    throw Error(ErrorKind::kInvalidArgument,
                "item already observed: " + model.ItemName(item));
  }
  const ItemSet domain = psi.Domain();
  const ItemSet extended = WithItem(domain, item);
  double gain = 0.0;
  ForEachConsistent(model, psi, [&](const Realization& phi, double w) {
    gain += w * (objective(extended, phi) - objective(domain, phi));
  });
  return gain;
}

double ConditionalExpectedValue(const Model& model, const Objective& objective,
                                const PartialRealization& psi) {
  RequireValidModel(model);
  const ItemSet domain = psi.Domain();
  double value = 0.0;
  ForEachConsistent(model, psi, [&](const Realization& phi, double w) {
    value += w * objective(domain, phi);
  });
  return value;
}

std::string FormatWitness(const Model& model, const Witness& witness) {
  std::string out = "psi=" + witness.psi.ToString(model);
  if (witness.psi_prime) out += " psi'=" + witness.psi_prime->ToString(model);
  out += " item=" + model.ItemName(witness.item);
  out += " gain(psi)=" + FormatReal(witness.gain_at_psi);
  if (witness.gain_at_psi_prime) {
    out += " gain(psi')=" + FormatReal(*witness.gain_at_psi_prime);
  }
  return out;
}

CheckReport CheckAdaptiveMonotone(const Model& model,
                                  const Objective& objective,
                                  const CheckerOptions& options) {
  RequireValidModel(model);
  GainTable table(model, objective, options);
  const auto& codec = table.codec();
  CheckReport report;
  for (uint64_t code = 0; code < codec.state_count(); ++code) {
    if (!table.positive(code)) continue;
    const PartialRealization psi = codec.Decode(code);
    for (ItemIndex e = 0; e < model.size(); ++e) {
      if (psi.observed(e)) continue;
      const double gain = table.gain(code, e);
      if (gain < -options.tolerance) {
        report.witnesses.push_back({psi, std::nullopt, e, gain, std::nullopt});
      }
    }
  }
  SortWitnesses(report.witnesses);
  report.passed = report.witnesses.empty();
  return report;
}

CheckReport CheckAdaptiveSubmodular(const Model& model,
                                    const Objective& objective,
                                    const CheckerOptions& options) {
  RequireValidModel(model);
  GainTable table(model, objective, options);
  const auto& codec = table.codec();
  CheckReport report;
  for (uint64_t refined_code = 0; refined_code < codec.state_count();
       ++refined_code) {
    if (!table.positive(refined_code)) continue;
    const PartialRealization refined = codec.Decode(refined_code);
    const auto observations = refined.Observations();
    const int d = static_cast<int>(observations.size());
    // Every subrealization keeps a subset of the refined observations; all of
    // them have positive probability under a product prior.
    for (uint64_t mask = 0; mask < (uint64_t{1} << d); ++mask) {
      PartialRealization coarse(model.size());
      for (int k = 0; k < d; ++k) {
        if (mask & (uint64_t{1} << k)) {
          coarse.Observe(observations[k].first, observations[k].second);
        }
      }
      const uint64_t coarse_code = codec.Encode(coarse);
      for (ItemIndex e = 0; e < model.size(); ++e) {
        if (refined.observed(e)) continue;
        const double coarse_gain = table.gain(coarse_code, e);
        const double refined_gain = table.gain(refined_code, e);
        if (coarse_gain < refined_gain - options.tolerance) {
          report.witnesses.push_back(
              {coarse, refined, e, coarse_gain, refined_gain});
        }
      }
    }
  }
  SortWitnesses(report.witnesses);
  report.passed = report.witnesses.empty();
  return report;
}

}  // namespace adasub
