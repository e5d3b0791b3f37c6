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

#include "mabkcert_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "mabkcert/blochopt.hpp"
#include "mabkcert/correlators.hpp"
#include "mabkcert/mabk.hpp"
#include "mabkcert/npa.hpp"

namespace mabkcert::cli {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kHonestBoundTol = 1e-9;
constexpr double kOptimizerTol = 1e-6;
constexpr double kClassicalTargetTol = 1e-4;
constexpr double kMaxViolationTol = 1e-3;
constexpr double kNpaTargetTol = 1e-5;
constexpr double kWeakDualityTol = 1e-9;
constexpr double kMonotonicityTol = 1e-6;

void log_line(const CommandOptions& opts, int level, const std::string& line) {
  if (opts.log != nullptr && opts.verbose >= level) *opts.log << line << '\n';
}

std::string bits(const BitString& x) {
  std::string s;
  for (auto b : x) s.push_back(b ? '1' : '0');
  return s;
}

Json bloch_json(const BlochVector& b) { return Json::array({b.x(), b.y(), b.z()}); }

Json settings_json(const MeasurementSettings& s) {
  Json out;
  out["alice"] = Json::array({bloch_json(s.alice()[0]), bloch_json(s.alice()[1])});
  Json bobs = Json::array();
  for (const ObservablePair& p : s.bobs()) bobs.push_back(Json::array({bloch_json(p[0]), bloch_json(p[1])}));
  out["bobs"] = std::move(bobs);
  return out;
}

BlochVector random_bloch(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1e-6) return {x / r, y / r, z / r};
  }
}

int require_n(const CommandOptions& opts, int fallback, int lo, int hi, const char* command) {
  const int n = opts.n.value_or(fallback);
  if (n < lo || n > hi) {
    throw UsageError(std::string(command) + ": --n must be in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "], got " + std::to_string(n));
  }
  return n;
}

BellExpression recursion_reference(std::size_t n) {
  if (n == 3) return mabk_recursion_step(mabk_two_party_seed());
  return mabk_recursion_step(mabk_recursion_step(mabk_explicit(n - 2)));
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"mabk-show", "theorem1", "optimize", "npa", "reproduce-paper"};
  return names;
}

RunReport cmd_mabk_show(const CommandOptions& opts) {
  const int n = require_n(opts, 3, 2, 10, "mabk-show");
  const auto un = static_cast<std::size_t>(n);
  RunReport r;
  r.command = "mabk-show";
  r.params = {{"n", n}};

  const BellExpression expr = mabk_expression(un);
  Json terms = Json::array();
  for (const BellTerm& t : expr.terms) terms.push_back({{"inputs", bits(t.inputs)}, {"coefficient", t.coefficient.str()}});
  r.results["term_count"] = expr.terms.size();
  r.results["normalization"] = expr.normalization;
  r.results["coefficient_l1"] = expr.l1_norm().str();
  r.results["construction"] = n == 2 ? "seed" : (n % 2 == 1 ? "closed_form" : "recursion");
  r.results["terms"] = std::move(terms);

  r.add(make_verdict("term count equals E_N = 4^floor(N/2)", static_cast<double>(mabk_term_count(un)),
                     static_cast<double>(expr.terms.size()), 0.0, Comparison::kWithin));
  r.add(make_verdict("normalization equals 2^floor(N/2)", static_cast<double>(mabk_normalization(un)),
                     static_cast<double>(expr.normalization), 0.0, Comparison::kWithin));
  r.add(make_verdict("coefficient l1 norm equals E_N / normalization",
                     static_cast<double>(mabk_term_count(un) / mabk_normalization(un)),
                     expr.l1_norm().to_double(), 0.0, Comparison::kWithin));
  if (n % 2 == 1) {
    const bool same = recursion_reference(un) == expr;
    r.results["recursion_matches_closed_form"] = same;
    r.add(make_verdict("closed form equals the recursion", 1.0, same ? 1.0 : 0.0, 0.0, Comparison::kIsTrue));
  }
  return r;
}

RunReport cmd_theorem1(const CommandOptions& opts) {
  const int n = require_n(opts, 3, 3, 12, "theorem1");
  if (opts.trials < 0) throw UsageError("theorem1: --trials must be >= 0");
  const auto un = static_cast<std::size_t>(n);
  RunReport r;
  r.command = "theorem1";
  r.params = {{"n", n}, {"trials", opts.trials}, {"seed", opts.seed}};

  const GhzCorrelator correlator(un);
  const BellExpression expr = mabk_expression(un);
  std::mt19937_64 rng(opts.seed);
  const bool odd = n % 2 == 1;
  double worst = 0.0;
  double max_mabk = 0.0;
  std::size_t evaluated = 0;
  for (int trial = 0; trial < opts.trials; ++trial) {
    const ObservablePair alice{BlochVector::sigma_z(), random_bloch(rng)};
    std::vector<ObservablePair> bobs;
    for (std::size_t k = 1; k < un; ++k) {
      const BlochVector b0 = random_bloch(rng);
      const BlochVector b1 = random_bloch(rng);
      bobs.push_back({b0, b1});
    }
    const MeasurementSettings settings(alice, std::move(bobs), true);
    for (std::size_t y = 0; y < (std::size_t{1} << (un - 1)); ++y) {
      BitString inputs(un, 0);
      std::vector<double> beta_z;
      for (std::size_t k = 1; k < un; ++k) {
        inputs[k] = static_cast<std::uint8_t>(y >> (un - 1 - k) & 1U);
        beta_z.push_back(settings.observable(k, inputs[k]).z());
      }
      const double value = correlator.expectation(settings.select(inputs));
      const double residual = odd ? std::abs(value) : std::abs(value - honest_even_formula(un, beta_z));
      worst = std::max(worst, residual);
      ++evaluated;
    }
    max_mabk = std::max(max_mabk, std::abs(correlator.bell_value(expr, settings)));
  }
  r.results["parity"] = odd ? "odd" : "even";
  r.results["expectations_evaluated"] = evaluated;
  r.results[odd ? "max_abs_expectation" : "max_deviation_from_product"] = worst;
  r.results["max_mabk_value"] = max_mabk;
  r.results["bounds"] = {{"gme", gme_bound(un, un - 1)}};
  if (odd) r.results["bounds"]["theorem1"] = theorem1_bound(un);
  if (opts.trials == 0) {
    r.warnings.push_back("no trials were run; the claims hold vacuously");
  }

  if (odd) {
    r.add(make_verdict("expectations with A0 = sigma_z vanish", 0.0, worst, kIdentityTol, Comparison::kWithin));
    r.add(make_verdict("honest MABK value at most 2^((N-3)/2)", theorem1_bound(un), max_mabk, kHonestBoundTol,
                       Comparison::kAtMost));
  } else {
    r.add(make_verdict("expectation with A0 = sigma_z equals prod beta_z", 0.0, worst, kIdentityTol,
                       Comparison::kWithin));
  }
  return r;
}

RunReport cmd_optimize(const CommandOptions& opts) {
  const int n = require_n(opts, 4, 3, 8, "optimize");
  if (opts.restarts < 1) throw UsageError("optimize: --restarts must be >= 1");
  const auto un = static_cast<std::size_t>(n);
  RunReport r;
  r.command = "optimize";
  r.params = {{"n", n}, {"restarts", opts.restarts}, {"seed", opts.seed}, {"honest", opts.honest}};

  OptimizerConfig config;
  config.restarts = opts.restarts;
  config.seed = opts.seed;
  const OptimizationResult result =
      opts.honest ? maximize_honest_mabk(un, config) : maximize_unconstrained_mabk(un, config);
  for (std::size_t i = 0; i < result.per_restart_values.size(); ++i) {
    log_line(opts, 2, "restart " + std::to_string(i) + ": " + std::to_string(result.per_restart_values[i]));
  }
  const auto [lo, hi] = std::ranges::minmax(result.per_restart_values);
  r.results["best_value"] = result.best_value;
  r.results["converged_count"] = result.converged_count;
  r.results["restart_value_range"] = Json::array({lo, hi});
  if (result.best_settings) r.results["best_settings"] = settings_json(*result.best_settings);
  const double quantum = std::pow(2.0, (n - 1) / 2.0);
  r.results["bounds"] = {{"gme", gme_bound(un, un - 1)}, {"quantum", quantum}};

  if (!opts.honest) {
    r.add(make_verdict("unconstrained optimum reaches 2^((N-1)/2)", quantum, result.best_value, kMaxViolationTol,
                       Comparison::kWithin));
  } else if (n % 2 == 1) {
    r.results["bounds"]["theorem1"] = theorem1_bound(un);
    r.add(make_verdict("honest optimum at most 2^((N-3)/2)", theorem1_bound(un), result.best_value, kOptimizerTol,
                       Comparison::kAtMost));
  } else {
    if (n == 4) {
      r.add(make_verdict("honest 4-MABK optimum equals the classical bound 1", 1.0, result.best_value,
                         kClassicalTargetTol, Comparison::kWithin));
    }
    r.add(make_verdict("honest optimum does not exceed the GME threshold 2^((N-2)/2)", gme_bound(un, un - 1),
                       result.best_value, kOptimizerTol, Comparison::kAtMost));
  }
  return r;
}

RunReport cmd_npa(const CommandOptions& opts) {
  if (opts.level != 2 && opts.level != 3) {
    throw UsageError("npa: --level must be 2 or 3, got " + std::to_string(opts.level));
  }
  if (!(opts.tol > 0.0) || opts.tol >= 1e-3) throw UsageError("npa: --tol must be in (0, 1e-3)");
  RunReport r;
  r.command = "npa";
  r.params = {{"n", 3}, {"level", opts.level}, {"perfect_correlations", opts.perfect_correlations}, {"tol", opts.tol}};

  const NpaRun run = npa_upper_bound(opts.level, opts.perfect_correlations, opts.tol);
  for (const SdpIterate& it : run.solution.trace) {
    std::ostringstream os;
    os.precision(10);
    os << "iter " << it.iteration << " primal " << it.primal_objective << " dual " << it.dual_objective << " mu "
       << it.mu << " steps " << it.primal_step << ' ' << it.dual_step;
    log_line(opts, 1, os.str());
  }
  r.results["bound"] = run.bound;
  r.results["primal_objective"] = run.solution.primal_objective;
  r.results["status"] = to_string(run.solution.status);
  r.results["iterations"] = run.solution.iterations;
  r.results["basis_size"] = run.basis_size;
  r.results["moment_classes"] = run.n_classes;
  r.results["solved_basis_size"] = run.solved_basis_size;
  r.results["solved_moment_classes"] = run.solved_classes;
  r.results["certificate"] = {{"verified", run.certificate.verified},
                              {"gap", run.bound - run.solution.primal_objective},
                              {"min_eigenvalue", run.certificate.min_eigenvalue},
                              {"stationarity_residual", run.certificate.stationarity_residual}};
  if (!run.solution.ok()) {
    r.numerical_failure = true;
    r.diagnostics = run.solution.diagnostics;
  }

  r.add(make_verdict("dual certificate verified", 1.0, run.verified ? 1.0 : 0.0, 0.0, Comparison::kIsTrue));
  r.add(make_verdict("weak duality: primal value at most the certified bound", run.bound,
                     run.solution.primal_objective, kWeakDualityTol, Comparison::kAtMost));
  if (opts.perfect_correlations) {
    r.add(make_verdict("perfect correlations cap MK3 at sqrt(2)", std::numbers::sqrt2, run.bound, kNpaTargetTol,
                       Comparison::kWithin));
  } else {
    r.add(make_verdict("unconstrained MK3 bound equals 2", 2.0, run.bound, kNpaTargetTol, Comparison::kWithin));
  }
  if (opts.level == 3) {
    const NpaRun lower = npa_upper_bound(2, opts.perfect_correlations, opts.tol);
    r.results["level2_bound"] = lower.bound;
    r.add(make_verdict("level 3 bound at most the level 2 bound", lower.bound, run.bound, kMonotonicityTol,
                       Comparison::kAtMost));
  }
  return r;
}

RunReport cmd_reproduce_paper(const CommandOptions& opts) {
  RunReport all;
  all.command = "reproduce-paper";
  all.params = {{"trials", opts.trials}, {"restarts", opts.restarts}, {"seed", opts.seed}, {"tol", opts.tol}};

  auto merge = [&](const std::string& name, const RunReport& sub) {
    log_line(opts, 1, "finished " + name);
    Json entry;
    entry["params"] = sub.params;
    entry["results"] = sub.results;
    if (sub.numerical_failure) entry["results"]["diagnostics"] = sub.diagnostics;
    all.results[name] = std::move(entry);
    for (Verdict v : sub.verdicts) {
      v.claim = name + ": " + v.claim;
      all.add(std::move(v));
    }
    for (const std::string& w : sub.warnings) all.warnings.push_back(name + ": " + w);
    all.numerical_failure = all.numerical_failure || sub.numerical_failure;
    if (sub.numerical_failure) all.diagnostics += name + ": " + sub.diagnostics + "; ";
  };
  auto with = [&](auto&& edit) {
    CommandOptions o = opts;
    edit(o);
    return o;
  };

  for (int n = 3; n <= 8; ++n) {
    merge("mabk-show n=" + std::to_string(n), cmd_mabk_show(with([n](CommandOptions& o) { o.n = n; })));
  }
  for (int n : {3, 5, 7, 4, 6}) {
    merge("theorem1 n=" + std::to_string(n), cmd_theorem1(with([n](CommandOptions& o) { o.n = n; })));
  }
  for (int n : {4, 3, 5}) {
    merge("optimize honest n=" + std::to_string(n), cmd_optimize(with([n](CommandOptions& o) {
            o.n = n;
            o.honest = true;
          })));
  }
  for (int n : {3, 4, 5}) {
    merge("optimize unconstrained n=" + std::to_string(n), cmd_optimize(with([n](CommandOptions& o) {
            o.n = n;
            o.honest = false;
          })));
  }
  for (int level : {2, 3}) {
    for (bool pc : {false, true}) {
      merge("npa level=" + std::to_string(level) + (pc ? " constrained" : " unconstrained"),
            cmd_npa(with([&](CommandOptions& o) {
              o.level = level;
              o.perfect_correlations = pc;
            })));
    }
  }
  return all;
}

RunReport run_command(const std::string& command, const CommandOptions& opts) {
  static const std::vector<std::pair<std::string, std::function<RunReport(const CommandOptions&)>>> table = {
      {"mabk-show", cmd_mabk_show},
      {"theorem1", cmd_theorem1},
      {"optimize", cmd_optimize},
      {"npa", cmd_npa},
      {"reproduce-paper", cmd_reproduce_paper},
  };
  const auto it = std::ranges::find(table, command, &decltype(table)::value_type::first);
  if (it == table.end()) throw UsageError("unknown command '" + command + "'");
  const auto start = std::chrono::steady_clock::now();
  RunReport report = it->second(opts);
  report.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render(const RunReport& report, const std::string& format) {
  if (format == "text") return render_text(report);
  if (format == "json") return render_json(report);
  if (format == "csv") return render_csv(report);
  throw UsageError("unknown format '" + format + "'");
}

}  // namespace mabkcert::cli
