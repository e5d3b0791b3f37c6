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

#include "mabkcert/blochopt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace mabkcert {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
  if (!(convergence_tol > 0.0)) throw std::invalid_argument("OptimizerConfig: convergence_tol must be > 0");
  if (!(gradient_step > 0.0)) throw std::invalid_argument("OptimizerConfig: gradient_step must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
}

BlochVector angles_to_bloch(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
  std::uint64_t z = seed + (restart + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t angle_count(std::size_t n, bool honest) { return 2 * (2 * n - (honest ? 1 : 0)); }

MeasurementSettings settings_from_angles(std::size_t n, std::span<const double> angles, bool honest) {
  if (n < 2) throw std::invalid_argument("settings_from_angles: n must be >= 2");
  if (angles.size() != angle_count(n, honest)) {
    throw std::invalid_argument("settings_from_angles: wrong number of angles");
  }
  std::size_t k = 0;
  auto next = [&] {
    const BlochVector b = angles_to_bloch(angles[k], angles[k + 1]);
    k += 2;
    return b;
  };
  const BlochVector a0 = honest ? BlochVector::sigma_z() : next();
  const BlochVector a1 = next();
  std::vector<ObservablePair> bobs;
  bobs.reserve(n - 1);
  for (std::size_t b = 0; b + 1 < n; ++b) {
    const BlochVector b0 = next();
    const BlochVector b1 = next();
    bobs.push_back({b0, b1});
  }
  return MeasurementSettings({a0, a1}, std::move(bobs), honest);
}

namespace {

struct LocalResult {
  Eigen::VectorXd x;
  double value = 0.0;  // value of the maximized (signed) objective
  bool converged = false;
};

class Ascent {
 public:
  Ascent(std::size_t n, bool honest, const OptimizerConfig& config)
      : n_(n), honest_(honest), config_(config), correlator_(n), expr_(mabk_expression(n)) {}

  double objective(const Eigen::VectorXd& x) const {
    return correlator_.bell_value(expr_, settings_from_angles(n_, {x.data(), static_cast<std::size_t>(x.size())}, honest_));
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x, double sign) const {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd probe = x;
    const double h = config_.gradient_step;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      probe(i) = x(i) + h;
      const double up = objective(probe);
      probe(i) = x(i) - h;
      const double down = objective(probe);
      probe(i) = x(i);
      g(i) = sign * (up - down) / (2.0 * h);
    }
    return g;
  }

  // Quasi-Newton ascent on sign * objective with Armijo backtracking.
  LocalResult climb(Eigen::VectorXd x, double sign) const {
    const Eigen::Index dim = x.size();
    Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(dim, dim);
    double f = sign * objective(x);
    Eigen::VectorXd g = gradient(x, sign);
    LocalResult out;
    for (int iter = 0; iter < config_.max_iterations; ++iter) {
      if (g.lpNorm<Eigen::Infinity>() < config_.convergence_tol) {
        out.converged = true;
        break;
      }
      Eigen::VectorXd dir = inv_hessian * g;
      double slope = g.dot(dir);
      if (!(slope > 0.0)) {
        inv_hessian.setIdentity();
        dir = g;
        slope = g.squaredNorm();
      }
      double step = 1.0;
      bool accepted = false;
      Eigen::VectorXd trial;
      double f_trial = f;
      for (int halving = 0; halving < 60; ++halving) {
        trial = x + step * dir;
        f_trial = sign * objective(trial);
        if (f_trial >= f + 1e-4 * step * slope) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        // No ascent is measurable at double precision: a stationary point
        // up to finite-difference noise.
        out.converged = g.lpNorm<Eigen::Infinity>() < 1e-6;
        break;
      }
      const Eigen::VectorXd g_trial = gradient(trial, sign);
      const Eigen::VectorXd s = trial - x;
      const Eigen::VectorXd y = g - g_trial;  // gradient of the minimized -f
      const double sy = s.dot(y);
      if (sy > 1e-14) {
        const Eigen::VectorXd hy = inv_hessian * y;
        const double rho = 1.0 / sy;
        inv_hessian += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) -
                       rho * (hy * s.transpose() + s * hy.transpose());
      }
      x = trial;
      f = f_trial;
      g = g_trial;
    }
    out.x = std::move(x);
    out.value = f;
    return out;
  }

  std::size_t dim() const { return angle_count(n_, honest_); }
  std::size_t n() const { return n_; }
  bool honest() const { return honest_; }

 private:
  std::size_t n_;
  bool honest_;
  const OptimizerConfig& config_;
  GhzCorrelator correlator_;
  BellExpression expr_;
};

struct RestartOutcome {
  double value = 0.0;
  Eigen::VectorXd x;
  bool converged = false;
};

RestartOutcome run_restart(const Ascent& ascent, const OptimizerConfig& config, int restart) {
  std::mt19937_64 rng(restart_seed(config.seed, static_cast<std::uint64_t>(restart)));
  std::uniform_real_distribution<double> polar(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd start(static_cast<Eigen::Index>(ascent.dim()));
  for (Eigen::Index i = 0; i < start.size(); i += 2) {
    start(i) = polar(rng);
    start(i + 1) = azimuth(rng);
  }
  // |tr(MK rho)| is handled by climbing +value and -value separately.
  RestartOutcome best;
  bool first = true;
  for (double sign : {1.0, -1.0}) {
    LocalResult r = ascent.climb(start, sign);
    if (first || r.value > best.value) {
      best.value = r.value;
      best.x = std::move(r.x);
      best.converged = r.converged;
      first = false;
    }
  }
  return best;
}

OptimizationResult maximize(std::size_t n, bool honest, const OptimizerConfig& config) {
  if (n < 3) throw std::invalid_argument("MABK maximization needs n >= 3");
  config.validate();
  const Ascent ascent(n, honest, config);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));

  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1U, static_cast<unsigned>(config.restarts));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < config.restarts; r = next++) {
      outcomes[static_cast<std::size_t>(r)] = run_restart(ascent, config, r);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  OptimizationResult result;
  std::size_t best_index = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.per_restart_values.push_back(outcomes[r].value);
    if (outcomes[r].converged) ++result.converged_count;
    if (outcomes[r].value > outcomes[best_index].value) best_index = r;
  }
  result.best_value = outcomes[best_index].value;
  const Eigen::VectorXd& x = outcomes[best_index].x;
  result.best_settings = settings_from_angles(n, {x.data(), static_cast<std::size_t>(x.size())}, honest);
  return result;
}

}  // namespace

OptimizationResult maximize_honest_mabk(std::size_t n, const OptimizerConfig& config) {
  return maximize(n, true, config);
}

OptimizationResult maximize_unconstrained_mabk(std::size_t n, const OptimizerConfig& config) {
  return maximize(n, false, config);
}

}  // namespace mabkcert
