// Copyright 2026 The bnscore Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bnscore {

// One parsed invocation.  Which fields are required depends on the
// command; run_command validates.
struct RunConfig {
  std::string command;  // score | learn | equiv | prior-build | check-consistency

  std::string data_path;
  std::string dag_path;
  std::string dag2_path;
  std::string prior_path;
  std::string network_path;

  std::optional<std::string> model;  // "discrete" | "gaussian"; inferred from the prior

  std::optional<double> ess;    // discrete effective sample size (prior-build)
  std::optional<double> a_mu;   // gaussian effective sample sizes (prior-build)
  std::optional<double> a_w;

  std::optional<double> arc_penalty;  // per-arc log penalty (learn)
  int restarts = 1;
  int max_parents = 5;
  std::optional<std::uint64_t> seed;  // mandatory for learn
  int points = 100;                   // check-consistency sample size
};

struct RunResult {
  int exit_code = 0;
  std::string report;       // JSON, newline terminated
  std::string trace_jsonl;  // learn only: one {"step","move","score"} per line
};

// Executes one command; all reported numbers are printed with 12
// significant digits, and identical configs with identical seeds produce
// byte-identical reports.  Failures return a nonzero exit code and an
// {"error": {"kind", "message"}} report.
RunResult run_command(const RunConfig& config);

}  // namespace bnscore
