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

#ifndef MABKCERT_SDP_HPP
#define MABKCERT_SDP_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mabkcert {

/// Symmetric matrix stored as its upper-triangle entries (row <= col).
class SymmetricSparse {
 public:
  struct Entry {
    int row;
    int col;
    double value;
  };

  SymmetricSparse() = default;
  explicit SymmetricSparse(int dim) : dim_(dim) {}

  /// Adds value at (row, col) and, off the diagonal, at (col, row).
  void add(int row, int col, double value);
  /// Merges repeated positions and drops zeros.
  void compress();

  int dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void add_to(Eigen::MatrixXd& dense, double scale) const;
  /// <this, m> = tr(this * m) for symmetric m.
  double inner(const Eigen::MatrixXd& m) const;
  Eigen::MatrixXd to_dense() const;

 private:
  int dim_ = 0;
  std::vector<Entry> entries_;
};

/// maximize c.y  subject to  M(y) = F0 + sum_i y_i F_i >= 0  and  E y = f.
///
/// The Lagrange dual is: minimize <F0, Z> + lambda.f over Z >= 0 with
/// c_i + <F_i, Z> - (E^T lambda)_i = 0, so any such (Z, lambda) certifies
/// the upper bound <F0, Z> + lambda.f on the maximum.
struct SdpProblem {
  int dim = 0;
  Eigen::MatrixXd f0;
  std::vector<SymmetricSparse> basis;
  Eigen::VectorXd objective;
  Eigen::MatrixXd eq_matrix;  // rows x basis.size(); may have zero rows
  Eigen::VectorXd eq_rhs;

  std::size_t n_vars() const { return basis.size(); }
  /// Throws std::invalid_argument on shape mismatches or a non-symmetric F0.
  void validate() const;
  /// True when no matrix entry is shared by two basis matrices.
  bool disjoint_supports() const;
  Eigen::MatrixXd moment_matrix(const Eigen::VectorXd& y) const;
};

enum class SdpStatus { kOptimal, kMaxIterations, kNumericalFailure };
std::string to_string(SdpStatus status);

struct SdpIterate {
  int iteration;
  double primal_objective;    // c.y
  double dual_objective;      // <F0, Z> + lambda.f on the reduced problem
  double primal_residual;     // ||F0 + sum y F - S||_max
  double dual_residual;       // max_i |c_i + <F_i, Z>|
  double mu;
  double primal_step;
  double dual_step;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalFailure;
  std::string diagnostics;
  Eigen::VectorXd y;           // all variables, equalities satisfied
  Eigen::MatrixXd dual_slack;  // Z
  Eigen::VectorXd multipliers; // lambda for E y = f
  double primal_objective = 0.0;
  double dual_objective = 0.0;  // the certified upper bound
  double gap = 0.0;
  int iterations = 0;
  std::vector<SdpIterate> trace;

  bool ok() const { return status == SdpStatus::kOptimal; }
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iter = 200;
  /// Fixed barrier reduction, used when predictor_corrector is off.
  double mu_factor = 0.3;
  /// Mehrotra predictor-corrector: centering sigma = (mu_aff / mu)^3.
  bool predictor_corrector = true;
  double step_fraction = 0.98;
};

/// Infeasible-start primal-dual path-following (HKM search direction).
/// Equalities are eliminated by substitution before iterating. Never throws
/// on numerical trouble; failures come back as a status with diagnostics.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});
SdpSolution solve(const SdpProblem& problem, double tol, int max_iter);

struct CertificateCheck {
  bool verified = false;
  double min_eigenvalue = 0.0;
  double stationarity_residual = 0.0;
  double bound = 0.0;
};

/// Re-derives the bound from (Z, lambda) and the problem data alone.
CertificateCheck check_certificate(const SdpProblem& problem, const SdpSolution& solution,
                                   double eig_floor = -1e-9, double stationarity_tol = 1e-7);
bool verify_certificate(const SdpProblem& problem, const SdpSolution& solution);

}  // namespace mabkcert

#endif  // MABKCERT_SDP_HPP
