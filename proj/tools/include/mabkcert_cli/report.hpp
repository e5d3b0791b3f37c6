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

#ifndef MABKCERT_CLI_REPORT_HPP
#define MABKCERT_CLI_REPORT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mabkcert::cli {

using Json = nlohmann::ordered_json;

enum class ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumericalFailure = 3,
  kVerdictFailure = 4,
};

/// How observed is compared with target.
enum class Comparison {
  kWithin,   // |observed - target| <= tolerance
  kAtMost,   // observed <= target + tolerance
  kIsTrue,   // observed != 0; target and tolerance are informational
};

struct Verdict {
  std::string claim;
  double target = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::kWithin;
  bool pass = false;
};

Verdict make_verdict(std::string claim, double target, double observed, double tolerance,
                     Comparison comparison);

struct RunReport {
  std::string command;
  Json params = Json::object();
  Json results = Json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;
  /// Set when a solver did not converge or a certificate could not be built.
  bool numerical_failure = false;
  std::string diagnostics;
  double duration_ms = 0.0;

  void add(Verdict v) { verdicts.push_back(std::move(v)); }
  bool all_pass() const;
  ExitCode exit_code() const;
};

/// The stable document {command, params, results, verdicts, duration_ms}.
/// Warnings and diagnostics, when present, go under results.
Json to_json(const RunReport& report);
/// The same document without duration_ms: identical for identical inputs.
Json payload(const RunReport& report);

std::string render_text(const RunReport& report);
std::string render_json(const RunReport& report);
/// One row per scalar: command,section,key,value with '/'-joined keys.
std::string render_csv(const RunReport& report);

/// Thrown for arguments outside a command's domain; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mabkcert::cli

#endif  // MABKCERT_CLI_REPORT_HPP
