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

// Command-line front end.
//
//   adasub run --instance m1.json --policy adaptive_greedy --eval exact \
//       --oracle --out results.csv
//   adasub check --instance matchmaking.json
//   adasub oracle --instance m1.json
//
// Exit codes: 0 success, 1 validation or check failure, 2 usage or parse
// error. Failures print one "error: kind=<kind> message=<text>" line to
// stderr.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adasub/constraints.h"
#include "adasub/experiment.h"
#include "adasub/instance_io.h"
#include "adasub/objective.h"
#include "adasub/oracle.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string Real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

int ReportError(std::string_view kind, const std::string& message, int code) {
  std::cerr << "error: kind=" << kind << " message=" << message << "\n";
  return code;
}

int ExitCodeFor(const adasub::Error& e) {
  return e.kind() == adasub::ErrorKind::kParse ? kExitUsage : kExitFailure;
}

void PrintWarnings(const adasub::Instance& instance) {
  for (const auto& warning : instance.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
}

struct RunArgs {
  std::string instance;
  std::string policy = "adaptive_greedy";
  std::string eval = "exact";
  int64_t samples = 10'000;
  uint64_t seed = 0;
  bool oracle = false;
  std::string out;
};

int Run(const RunArgs& args) {
  const auto policy = adasub::ParsePolicyKind(args.policy);
  if (!policy) {
    return ReportError("usage", "unknown policy '" + args.policy + "'",
                       kExitUsage);
  }
  const auto eval = adasub::ParseEvalMode(args.eval);
  if (!eval) {
    return ReportError("usage", "unknown eval mode '" + args.eval + "'",
                       kExitUsage);
  }
  const adasub::Instance instance = adasub::ParseInstance(args.instance);
  PrintWarnings(instance);

  adasub::ExperimentOptions options;
  options.policy.kind = *policy;
  options.policy.random_seed = args.seed;
  options.eval_mode = *eval;
  options.samples = args.samples;
  options.seed = args.seed;
  options.with_oracle = args.oracle;
  const adasub::ExperimentRecord record =
      adasub::RunExperiment(instance, options);

  std::cout << adasub::CsvHeader() << "\n"
            << adasub::FormatCsvRow(record) << "\n";
  if (!args.out.empty()) adasub::AppendCsvRow(args.out, record);
  if (auto violation = adasub::CheckRecordInvariants(record)) {
    return ReportError("check", *violation, kExitFailure);
  }
  return 0;
}

int Check(const std::string& path) {
  using adasub::ErrorKind;
  const adasub::Instance instance = adasub::ParseInstance(path);
  PrintWarnings(instance);
  const int n = instance.model.size();
  bool all_passed = true;
  auto line = [](const std::string& name, const std::string& status,
                 const std::string& detail = "") {
    std::cout << name << ": " << status;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  };

  std::cout << "instance: " << instance.name << " (" << n << " items, "
            << instance.objective.name() << ", " << instance.system.name()
            << ")\n";
  const adasub::ValidationResult validation =
      adasub::ValidateModel(instance.model);
  line("validate_model", validation ? "pass" : "FAIL", validation.reason);
  all_passed &= validation.ok;

  if (n <= adasub::kMaxDownwardClosedGround) {
    const auto closure = adasub::CheckDownwardClosed(instance.system, n);
    std::string detail;
    if (!closure.closed) {
      auto fmt = [](const adasub::ItemSet& s) {
        std::string out = "{";
        for (size_t k = 0; k < s.size(); ++k) {
          out += (k ? "," : "") + std::to_string(s[k]);
        }
        return out + "}";
      };
      detail = "independent " +
               (closure.superset ? fmt(*closure.superset) : "none") +
               " has rejected subset " + fmt(*closure.rejected_subset);
    }
    line("downward_closed", closure.closed ? "pass" : "FAIL", detail);
    all_passed &= closure.closed;
    if (closure.closed && n <= adasub::kMaxEstimatePGround) {
      const auto report = adasub::EstimateP(instance.system, n);
      line("estimate_p", report.p_value.ToString(),
           "witness set of " + std::to_string(report.witness_set.size()) +
               " items, bases of sizes " +
               std::to_string(report.larger_basis.size()) + " and " +
               std::to_string(report.smaller_basis.size()));
      if (instance.declared_p &&
          !(report.p_value == *instance.declared_p)) {
        line("declared_p", "FAIL",
             "declared " + instance.declared_p->ToString());
        all_passed = false;
      }
    } else {
      line("estimate_p", "skipped", "ground too large");
    }
  } else {
    line("downward_closed", "skipped", "ground too large");
  }

  auto run_checker = [&](const std::string& name, auto&& checker) {
    try {
      const adasub::CheckReport report =
          checker(instance.model, instance.objective, adasub::CheckerOptions{});
      std::string detail;
      if (!report.passed) {
        detail = std::to_string(report.witnesses.size()) +
                 " witnesses; first: " +
                 adasub::FormatWitness(instance.model, report.witnesses[0]);
      }
      line(name, report.passed ? "pass" : "FAIL", detail);
      all_passed &= report.passed;
    } catch (const adasub::Error& e) {
      if (e.kind() != ErrorKind::kTooLarge) throw;
      line(name, "skipped", e.what());
    }
  };
  run_checker("adaptive_monotone", [](auto&&... a) {
    return adasub::CheckAdaptiveMonotone(a...);
  });
  run_checker("adaptive_submodular", [](auto&&... a) {
    return adasub::CheckAdaptiveSubmodular(a...);
  });

  std::cout << "result: " << (all_passed ? "pass" : "FAIL") << "\n";
  return all_passed ? 0 : kExitFailure;
}

int Oracle(const std::string& path) {
  const adasub::Instance instance = adasub::ParseInstance(path);
  PrintWarnings(instance);
  const adasub::OracleResult result = adasub::OptimalAdaptiveValue(
      instance.model, instance.objective, instance.system);
  std::cout << "value: " << Real(result.value) << "\n"
            << "explored_states: " << result.explored_states << "\n"
            << "best_first_action: "
            << (result.best_first_action
                    ? instance.model.ItemName(*result.best_first_action)
                    : std::string("stop"))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive greedy for adaptive submodular maximization"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "evaluate a policy on an instance");
  run->add_option("--instance", run_args.instance, "instance JSON file")
      ->required();
  run->add_option("--policy", run_args.policy,
                  "adaptive_greedy | nonadaptive_greedy | random_feasible");
  run->add_option("--eval", run_args.eval, "exact | mc");
  run->add_option("--samples", run_args.samples, "Monte Carlo samples")
      ->check(CLI::Range(int64_t{2}, std::numeric_limits<int64_t>::max()));
  run->add_option("--seed", run_args.seed, "base seed");
  run->add_flag("--oracle", run_args.oracle, "also compute optimal values");
  run->add_option("--out", run_args.out, "CSV file to append the record to");

  std::string check_path;
  CLI::App* check = app.add_subcommand(
      "check", "validate an instance and run the structural checkers");
  check->add_option("--instance", check_path, "instance JSON file")
      ->required();

  std::string oracle_path;
  CLI::App* oracle =
      app.add_subcommand("oracle", "print the optimal adaptive value");
  oracle->add_option("--instance", oracle_path, "instance JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ReportError("usage", e.what(), kExitUsage);
  }

  try {
    if (*run) return Run(run_args);
    if (*check) return Check(check_path);
    if (*oracle) return Oracle(oracle_path);
  } catch (const adasub::Error& e) {
    return ReportError(adasub::ErrorKindName(e.kind()), e.what(),
                       ExitCodeFor(e));
  } catch (const std::exception& e) {
    return ReportError("internal", e.what(), kExitFailure);
  }
  return kExitUsage;
}
