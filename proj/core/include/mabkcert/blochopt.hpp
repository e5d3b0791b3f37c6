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

#ifndef MABKCERT_BLOCHOPT_HPP
#define MABKCERT_BLOCHOPT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mabkcert/correlators.hpp"

namespace mabkcert {

/// Multi-start local ascent settings.
///
/// Restart r draws its starting angles from a std::mt19937_64 seeded with
/// restart_seed(seed, r), so results depend only on (n, restarts, seed) and
/// not on how restarts are scheduled over threads.
struct OptimizerConfig {
  int restarts = 100;
  std::uint64_t seed = 20180214;
  /// Central finite-difference step on the angles.
  double gradient_step = 1e-5;
  /// Stop when the largest gradient component falls below this.
  double convergence_tol = 1e-9;
  int max_iterations = 2000;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws std::invalid_argument on restarts < 1 or convergence_tol <= 0.
  void validate() const;
};

struct OptimizationResult {
  double best_value = 0.0;
  std::optional<MeasurementSettings> best_settings;
  std::vector<double> per_restart_values;
  int converged_count = 0;
};

/// Unit vector (sin t cos p, sin t sin p, cos t).
BlochVector angles_to_bloch(double theta, double phi);

/// splitmix64 of seed + (restart + 1) * golden-ratio increment.
std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart);

/// Settings from a flat angle vector. Honest layout: A_1 then
/// (B_0^{(k)}, B_1^{(k)}) for each Bob, two angles per observable, A_0 pinned
/// to sigma_z. Unconstrained layout prepends A_0.
MeasurementSettings settings_from_angles(std::size_t n, std::span<const double> angles, bool honest);
std::size_t angle_count(std::size_t n, bool honest);

/// Largest |MK_n| over all settings with A_0 = sigma_z. Throws for n < 3.
OptimizationResult maximize_honest_mabk(std::size_t n, const OptimizerConfig& config);
/// Same search with A_0 free as well.
OptimizationResult maximize_unconstrained_mabk(std::size_t n, const OptimizerConfig& config);

}  // namespace mabkcert

#endif  // MABKCERT_BLOCHOPT_HPP
