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

#include "adasub/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adasub/objective.h"
#include "adasub/oracle.h"

namespace adasub {
namespace {

constexpr double kBoundTolerance = 1e-9;

std::string Real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string Real(const std::optional<double>& value) {
  return value ? Real(*value) : std::string();
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string_view EvalModeName(EvalMode mode) {
  return mode == EvalMode::kExact ? "exact" : "mc";
}

std::optional<EvalMode> ParseEvalMode(std::string_view name) {
  if (name == "exact") return EvalMode::kExact;
  if (name == "mc") return EvalMode::kMonteCarlo;
  return std::nullopt;
}

ExperimentRecord RunExperiment(const Instance& instance,
                               const ExperimentOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ValidateInstance(instance);
  const int n = instance.model.size();

  ExperimentRecord record;
  record.instance_name = instance.name;
  record.policy_kind = options.policy.kind;
  record.eval_mode = options.eval_mode;
  record.seed = options.seed;

  if (n <= kMaxEstimatePGround) {
    record.p_value = EstimateP(instance.system, n).p_value.value();
  } else if (instance.declared_p) {
    record.p_value = instance.declared_p->value();
  } else {
    throw Error(ErrorKind::kValidation,
                "no p available: ground of " + std::to_string(n) +
                    " items is too large to estimate and no declared_p");
  }
  record.bound = 1.0 / (record.p_value + 1.0);

  if (options.eval_mode == EvalMode::kExact) {
    record.policy_value =
        ExpectedValueExact(instance.model, instance.objective, instance.system,
                           options.policy);
  } else {
    PolicyConfig policy = options.policy;
    policy.random_seed = options.seed;
    record.policy_value =
        ExpectedValueMonteCarlo(instance.model, instance.objective,
                                instance.system, policy, options.samples,
                                options.seed)
            .mean;
    record.samples = options.samples;
  }

  if (options.with_oracle) {
    record.opt_adaptive =
        OptimalAdaptiveValue(instance.model, instance.objective,
                             instance.system)
            .value;
    try {
      record.opt_nonadaptive =
          OptimalNonadaptiveValue(instance.model, instance.objective,
                                  instance.system)
              .value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kTooLarge) throw;
    }
    try {
      record.checkers_passed =
          CheckAdaptiveMonotone(instance.model, instance.objective).passed &&
          CheckAdaptiveSubmodular(instance.model, instance.objective).passed;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kTooLarge) throw;
    }
    record.ratio = *record.opt_adaptive == 0.0
                       ? 1.0
                       : record.policy_value / *record.opt_adaptive;
  }

  record.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return record;
}

std::optional<std::string> CheckRecordInvariants(
    const ExperimentRecord& record) {
  if (record.ratio && *record.ratio < 0.0) return "negative ratio";
  if (std::abs(record.bound - 1.0 / (record.p_value + 1.0)) > 1e-12) {
    return "bound does not equal 1/(p+1)";
  }
  // The guarantee is for greedy on adaptive monotone submodular objectives.
  if (record.eval_mode == EvalMode::kExact &&
      record.policy_kind == PolicyKind::kAdaptiveGreedy &&
      record.checkers_passed.value_or(false) && record.ratio &&
      *record.ratio < record.bound - kBoundTolerance) {
    return "ratio " + Real(*record.ratio) + " below bound " +
           Real(record.bound);
  }
  return std::nullopt;
}

std::string_view CsvHeader() {
  return "instance,policy,p,opt_adaptive,opt_nonadaptive,policy_value,ratio,"
         "bound,eval_mode,samples,seed,runtime_ms";
}

std::string FormatCsvRow(const ExperimentRecord& record) {
  std::ostringstream row;
  row << CsvField(record.instance_name) << ','
      << PolicyKindName(record.policy_kind) << ',' << Real(record.p_value)
      << ',' << Real(record.opt_adaptive) << ','
      << Real(record.opt_nonadaptive) << ',' << Real(record.policy_value)
      << ',' << Real(record.ratio) << ',' << Real(record.bound) << ','
      << EvalModeName(record.eval_mode) << ','
      << (record.samples ? std::to_string(*record.samples) : std::string())
      << ',' << record.seed << ',' << Real(record.runtime_ms);
  return row.str();
}

void AppendCsvRow(const std::string& path, const ExperimentRecord& record) {
  namespace fs = std::filesystem;
  std::string existing;
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    existing = buffer.str();
  }
  if (existing.empty()) {
    existing = std::string(CsvHeader()) + "\n";
  } else if (existing.back() != '\n') {
    existing += '\n';
  }
  existing += FormatCsvRow(record) + "\n";

  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << existing;
    if (!out) {
      throw Error(ErrorKind::kInvalidArgument, "cannot write " + temp);
    }
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot rename " + temp + " to " + path + ": " + ec.message());
  }
}

}  // namespace adasub
