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

// End-to-end measurements of a policy against the optimal adaptive value,
// and their CSV form.

#ifndef ADASUB_EXPERIMENT_H_
#define ADASUB_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "adasub/instances.h"
#include "adasub/policies.h"

namespace adasub {

enum class EvalMode { kExact, kMonteCarlo };

std::string_view EvalModeName(EvalMode mode);  // "exact" / "mc"
std::optional<EvalMode> ParseEvalMode(std::string_view name);

struct ExperimentRecord {
  std::string instance_name;
  PolicyKind policy_kind = PolicyKind::kAdaptiveGreedy;
  double p_value = 1.0;
  std::optional<double> opt_adaptive;
  std::optional<double> opt_nonadaptive;
  double policy_value = 0.0;
  std::optional<double> ratio;  // policy_value / opt_adaptive, 1 if OPT is 0
  // Both objective checkers passed; absent when they were not run. Not a CSV
  // column.
  std::optional<bool> checkers_passed;
  double bound = 0.5;           // 1 / (p_value + 1)
  EvalMode eval_mode = EvalMode::kExact;
  std::optional<int64_t> samples;  // Monte Carlo only
  uint64_t seed = 0;
  double runtime_ms = 0.0;
};

struct ExperimentOptions {
  PolicyConfig policy;
  EvalMode eval_mode = EvalMode::kExact;
  int64_t samples = 10'000;
  uint64_t seed = 0;
  bool with_oracle = false;
};

// p comes from EstimateP when the ground allows it, otherwise declared_p;
// neither available is kValidation "no p available". The non-adaptive
// optimum and the checker verdict are reported only when they fit their
// caps.
ExperimentRecord RunExperiment(const Instance& instance,
                               const ExperimentOptions& options);

// ratio >= 0, bound == 1/(p+1), and for exact adaptive-greedy runs whose
// objective passed both checkers, ratio >= bound - 1e-9. Returns the first
// violation.
std::optional<std::string> CheckRecordInvariants(const ExperimentRecord& record);

// instance,policy,p,opt_adaptive,opt_nonadaptive,policy_value,ratio,bound,
// eval_mode,samples,seed,runtime_ms
std::string_view CsvHeader();

// One row without a trailing newline. Reals use 12 significant digits and
// absent optionals are empty fields.
std::string FormatCsvRow(const ExperimentRecord& record);

// Appends a row (and the header, for a new or empty file) by writing a
// temporary sibling and renaming it over `path`.
void AppendCsvRow(const std::string& path, const ExperimentRecord& record);

}  // namespace adasub

#endif  // ADASUB_EXPERIMENT_H_
