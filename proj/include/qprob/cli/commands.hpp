// Copyright 2026 The qprob Authors
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
#include <ostream>
#include <string>
#include <vector>

#include "qprob/cli/report.hpp"
#include "qprob/cli/scenario_file.hpp"
#include "qprob/cli/verify.hpp"

namespace qprob::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitInconsistent = 3,
  kExitInconclusive = 4,
};

struct CommandResult {
  Report report;
  ExitCode exit_code = kExitOk;
};

/** Overrides that apply to simulate: unset values fall back to the file, then defaults. */
struct SimulateOverrides {
  std::optional<std::uint64_t> samples;
  std::optional<Seed> seed;
};

CommandResult cmd_predict(const ScenarioFile& file, const std::string& digest);
CommandResult cmd_retrodict(const ScenarioFile& file, const std::string& digest);
CommandResult cmd_simulate(const ScenarioFile& file, const std::string& digest,
                           const SimulateOverrides& overrides = {});
CommandResult cmd_verify(const VerifyOptions& options);

/**
 * Parses "key=value[,key=value...]" over the Tolerances field names.
 * @throws ParseError
 */
Tolerances parse_tolerance_overrides(const std::string& list, Tolerances base);

/** Full command-line entry point; returns the process exit code. */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qprob::cli
