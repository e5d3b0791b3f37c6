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

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "mabkcert_cli/commands.hpp"

using mabkcert::cli::CommandOptions;
using mabkcert::cli::ExitCode;

int main(int argc, char** argv) {
  CLI::App app{"Certified MABK / GHZ / NPA computations", "mabkcert"};
  CommandOptions opts;
  std::string command;
  int n = 0;

  app.add_option("command", command, "mabk-show | theorem1 | optimize | npa | reproduce-paper")
      ->required()
      ->check(CLI::IsMember(mabkcert::cli::command_names()));
  auto* n_opt = app.add_option("--n", n, "number of parties");
  app.add_option("--level", opts.level, "NPA hierarchy level (2 or 3)")->capture_default_str();
  app.add_option("--trials", opts.trials, "random settings for theorem1")->capture_default_str();
  app.add_option("--restarts", opts.restarts, "optimizer restarts")->capture_default_str();
  app.add_option("--seed", opts.seed, "64-bit seed")->capture_default_str();
  app.add_option("--tol", opts.tol, "SDP solver tolerance")->capture_default_str();
  app.add_flag("--perfect-correlations", opts.perfect_correlations, "impose perfect key-round correlations");
  app.add_flag("--honest", opts.honest, "pin A0 to sigma_z");
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_flag("-v,--verbose", opts.verbose, "more detail on stderr; repeat for more");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::kUsage);
  }
  if (n_opt->count() > 0) opts.n = n;
  opts.log = &std::cerr;

  try {
    const auto report = mabkcert::cli::run_command(command, opts);
    std::cout << mabkcert::cli::render(report, opts.format);
    return static_cast<int>(report.exit_code());
  } catch (const mabkcert::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kUsage);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kNumericalFailure);
  }
}
