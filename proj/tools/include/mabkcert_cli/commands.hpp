// Copyright 2026 The mabkcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MABKCERT_CLI_COMMANDS_HPP
#define MABKCERT_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mabkcert_cli/report.hpp"

namespace mabkcert::cli {

/// Everything the command line can set. Unset optionals take per-command
/// defaults.
struct CommandOptions {
  std::optional<int> n;
  int level = 2;
  int trials = 1000;
  int restarts = 100;
  std::uint64_t seed = 20180214;
  /// Solver tolerance for npa; the claim tolerances are fixed per verdict.
  double tol = 1e-8;
  bool perfect_correlations = false;
  bool honest = false;
  std::string format = "text";
  int verbose = 0;
  /// Diagnostic lines for --verbose go here when non-null.
  std::ostream* log = nullptr;
};

const std::vector<std::string>& command_names();

RunReport cmd_mabk_show(const CommandOptions& opts);
RunReport cmd_theorem1(const CommandOptions& opts);
RunReport cmd_optimize(const CommandOptions& opts);
RunReport cmd_npa(const CommandOptions& opts);
/// Runs every other command over its reference inputs and merges the reports.
RunReport cmd_reproduce_paper(const CommandOptions& opts);

/// Dispatches on the command name. Throws UsageError for unknown commands
/// and out-of-range arguments.
RunReport run_command(const std::string& command, const CommandOptions& opts);

/// Renders in opts.format ("text", "json" or "csv").
std::string render(const RunReport& report, const std::string& format);

}  // namespace mabkcert::cli

#endif  // MABKCERT_CLI_COMMANDS_HPP
