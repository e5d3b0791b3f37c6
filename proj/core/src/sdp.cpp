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

#include "mabkcert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace mabkcert {

void SymmetricSparse::add(int row, int col, double value) {
  if (row < 0 || col < 0 || row >= dim_ || col >= dim_) {
    throw std::out_of_range("SymmetricSparse::add: index out of range");
  }
  if (row > col) std::swap(row, col);
  entries_.push_back({row, col, value});
}

void SymmetricSparse::compress() {
  std::map<std::pair<int, int>, double> merged;
  for (const Entry& e : entries_) merged[{e.row, e.col}] += e.value;
  entries_.clear();
  for (const auto& [pos, v] : merged) {
    if (v != 0.0) entries_.push_back({pos.first, pos.second, v});
  }
}

void SymmetricSparse::add_to(Eigen::MatrixXd& dense, double scale) const {
  for (const Entry& e : entries_) {
    dense(e.row, e.col) += scale * e.value;
    if (e.row != e.col) dense(e.col, e.row) += scale * e.value;
  }
}

double SymmetricSparse::inner(const Eigen::MatrixXd& m) const {
  double sum = 0.0;
  for (const Entry& e : entries_) {
    sum += e.row == e.col ? e.value * m(e.row, e.col)
                          : e.value * (m(e.row, e.col) + m(e.col, e.row));
  }
  return sum;
}

Eigen::MatrixXd SymmetricSparse::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  add_to(out, 1.0);
  return out;
}

void SdpProblem::validate() const {
  if (dim <= 0) throw std::invalid_argument("SdpProblem: dimension must be positive");
  if (f0.rows() != dim || f0.cols() != dim) throw std::invalid_argument("SdpProblem: F0 has wrong shape");
  if ((f0 - f0.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("SdpProblem: F0 is not symmetric");
  }
  for (const SymmetricSparse& b : basis) {
    if (b.dim() != dim) throw std::invalid_argument("SdpProblem: basis matrix has wrong dimension");
  }
  if (objective.size() != static_cast<Eigen::Index>(basis.size())) {
    throw std::invalid_argument("SdpProblem: objective length differs from variable count");
  }
  if (eq_matrix.rows() != eq_rhs.size() ||
      (eq_matrix.rows() > 0 && eq_matrix.cols() != static_cast<Eigen::Index>(basis.size()))) {
    throw std::invalid_argument("SdpProblem: equality constraint shapes disagree");
  }
}

bool SdpProblem::disjoint_supports() const {
  Eigen::MatrixXi cover = Eigen::MatrixXi::Zero(dim, dim);
  for (const SymmetricSparse& b : basis) {
    for (const auto& e : b.entries()) {
      if (++cover(e.row, e.col) > 1) return false;
    }
  }
  return true;
}

Eigen::MatrixXd SdpProblem::moment_matrix(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd m = f0;
  for (std::size_t i = 0; i < basis.size(); ++i) basis[i].add_to(m, y(static_cast<Eigen::Index>(i)));
  return m;
}

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal: return "optimal";
    case SdpStatus::kMaxIterations: return "max_iterations";
    case SdpStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

/// y = offset + map * w after eliminating E y = f.
struct Reduction {
  Eigen::VectorXd offset;
  Eigen::MatrixXd map;
  bool consistent = true;
};

Reduction eliminate_equalities(const SdpProblem& p) {
  const auto m = static_cast<Eigen::Index>(p.n_vars());
  Reduction red{Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Identity(m, m), true};
  for (Eigen::Index k = 0; k < p.eq_matrix.rows(); ++k) {
    const Eigen::VectorXd a = red.map.transpose() * p.eq_matrix.row(k).transpose();
    const double rhs = p.eq_rhs(k) - p.eq_matrix.row(k).dot(red.offset);
    Eigen::Index pivot = 0;
    const double scale = a.size() > 0 ? a.cwiseAbs().maxCoeff(&pivot) : 0.0;
    if (scale <= 1e-12) {
      // Redundant row: must be consistent.
      if (std::abs(rhs) > 1e-9) red.consistent = false;
      continue;
    }
    const Eigen::VectorXd pivot_col = red.map.col(pivot);
    red.offset += pivot_col * (rhs / a(pivot));
    Eigen::MatrixXd next(m, red.map.cols() - 1);
    for (Eigen::Index j = 0, out = 0; j < red.map.cols(); ++j) {
      if (j == pivot) continue;
      next.col(out++) = red.map.col(j) - pivot_col * (a(j) / a(pivot));
    }
    red.map = std::move(next);
  }
  return red;
}

/// Symmetric sparse matrix with both (r,c) and (c,r) listed, for the Schur
/// complement sum.
struct FullEntries {
  std::vector<int> row, col;
  std::vector<double> val;
};

FullEntries expand(const SymmetricSparse& s) {
  FullEntries f;
  for (const auto& e : s.entries()) {
    f.row.push_back(e.row);
    f.col.push_back(e.col);
    f.val.push_back(e.value);
    if (e.row != e.col) {
      f.row.push_back(e.col);
      f.col.push_back(e.row);
      f.val.push_back(e.value);
    }
  }
  return f;
}

/// Largest alpha in (0, 1] keeping x + alpha*dx positive definite, scaled by
/// the fraction-to-boundary factor. x_chol is the Cholesky factor of x.
double max_step(const Eigen::LLT<Eigen::MatrixXd>& x_chol, const Eigen::MatrixXd& dx, double fraction) {
  const auto& l = x_chol.matrixL();
  Eigen::MatrixXd t = l.solve(dx);
  t = l.solve(t.transpose()).transpose().eval();
  t = (0.5 * (t + t.transpose())).eval();
  const double lambda_min =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (lambda_min >= 0.0) return 1.0;
  return std::min(1.0, fraction * (-1.0 / lambda_min));
}

double frob_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a.cwiseProduct(b).sum(); }

}  // namespace

SdpSolution solve(const SdpProblem& problem, double tol, int max_iter) {
  SdpOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return solve(problem, options);
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  problem.validate();
  SdpSolution sol;
  const int d = problem.dim;

  const Reduction red = eliminate_equalities(problem);
  if (!red.consistent) {
    sol.status = SdpStatus::kNumericalFailure;
    sol.diagnostics = "equality constraints are inconsistent";
    return sol;
  }

  // Reduced problem: maximize c_r.w + c0 s.t. G0 + sum_j w_j G_j >= 0.
  const auto m_full = static_cast<Eigen::Index>(problem.n_vars());
  const Eigen::Index m = red.map.cols();
  Eigen::MatrixXd g0 = problem.f0;
  for (Eigen::Index i = 0; i < m_full; ++i) {
    if (red.offset(i) != 0.0) problem.basis[static_cast<std::size_t>(i)].add_to(g0, red.offset(i));
  }
  const double c0 = problem.objective.dot(red.offset);
  const Eigen::VectorXd c = red.map.transpose() * problem.objective;
  std::vector<SymmetricSparse> g(static_cast<std::size_t>(m), SymmetricSparse(d));
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m_full; ++i) {
      const double t = red.map(i, j);
      if (t == 0.0) continue;
      for (const auto& e : problem.basis[static_cast<std::size_t>(i)].entries()) {
        g[static_cast<std::size_t>(j)].add(e.row, e.col, t * e.value);
      }
    }
    g[static_cast<std::size_t>(j)].compress();
  }
  std::vector<FullEntries> gfull;
  gfull.reserve(g.size());
  for (const auto& gj : g) gfull.push_back(expand(gj));

  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(d, d);

  auto affine = [&](const Eigen::VectorXd& v) {
    Eigen::MatrixXd out = g0;
    for (Eigen::Index j = 0; j < m; ++j) g[static_cast<std::size_t>(j)].add_to(out, v(j));
    return out;
  };

  for (int iter = 0;; ++iter) {
    const Eigen::MatrixXd rd = affine(w) - s;
    Eigen::VectorXd r(m);
    for (Eigen::Index j = 0; j < m; ++j) r(j) = c(j) + g[static_cast<std::size_t>(j)].inner(z);
    const double pobj = c.dot(w) + c0;
    const double dobj = frob_inner(g0, z) + c0;
    const double mu = frob_inner(z, s) / d;
    const double presid = rd.size() ? rd.cwiseAbs().maxCoeff() : 0.0;
    const double dresid = m ? r.cwiseAbs().maxCoeff() : 0.0;
    const double gap = dobj - pobj;
    sol.trace.push_back({iter, pobj, dobj, presid, dresid, mu, 0.0, 0.0});
    sol.iterations = iter;

    if (presid < options.tol && dresid < options.tol &&
        std::abs(gap) < options.tol * std::max(1.0, std::abs(dobj))) {
      sol.status = SdpStatus::kOptimal;
      break;
    }
    if (iter >= options.max_iter) {
      sol.status = SdpStatus::kMaxIterations;
      std::ostringstream os;
      os << "iteration limit " << options.max_iter << " reached: gap=" << gap
         << " primal_residual=" << presid << " dual_residual=" << dresid;
      sol.diagnostics = os.str();
      break;
    }

    const Eigen::LLT<Eigen::MatrixXd> s_chol(s);
    const Eigen::LLT<Eigen::MatrixXd> z_chol(z);
    if (s_chol.info() != Eigen::Success || z_chol.info() != Eigen::Success) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.diagnostics = "lost positive definiteness at iteration " + std::to_string(iter);
      break;
    }
    const Eigen::MatrixXd s_inv = s_chol.solve(Eigen::MatrixXd::Identity(d, d));

    // Schur complement M_ij = tr(G_i Z G_j S^{-1}).
    Eigen::MatrixXd schur(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const FullEntries& gi = gfull[static_cast<std::size_t>(i)];
      for (Eigen::Index j = i; j < m; ++j) {
        const FullEntries& gj = gfull[static_cast<std::size_t>(j)];
        double sum = 0.0;
        for (std::size_t p = 0; p < gi.val.size(); ++p) {
          const int a = gi.row[p];
          const int b = gi.col[p];
          double inner = 0.0;
          for (std::size_t q = 0; q < gj.val.size(); ++q) {
            inner += gj.val[q] * z(b, gj.row[q]) * s_inv(gj.col[q], a);
          }
          sum += gi.val[p] * inner;
        }
        schur(i, j) = schur(j, i) = sum;
      }
    }
    const Eigen::LLT<Eigen::MatrixXd> schur_chol(schur);
    const Eigen::LDLT<Eigen::MatrixXd> schur_ldlt =
        schur_chol.info() == Eigen::Success ? Eigen::LDLT<Eigen::MatrixXd>() : Eigen::LDLT<Eigen::MatrixXd>(schur);
    if (m > 0 && schur_chol.info() != Eigen::Success && schur_ldlt.info() != Eigen::Success) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.diagnostics = "Schur complement factorization failed at iteration " + std::to_string(iter);
      break;
    }

    // HKM direction for complementarity target Z S = target * I, with an
    // optional second-order term correction (Mehrotra corrector).
    struct Direction {
      Eigen::VectorXd dw;
      Eigen::MatrixXd ds, dz;
    };
    auto direction = [&](double target, const Eigen::MatrixXd* correction) {
      Eigen::MatrixXd base = target * s_inv - z;
      if (correction) base -= *correction * s_inv;
      const Eigen::MatrixXd rhs_mat = base - z * rd * s_inv;
      Eigen::VectorXd rhs(m);
      for (Eigen::Index j = 0; j < m; ++j) rhs(j) = r(j) + g[static_cast<std::size_t>(j)].inner(rhs_mat);
      Direction dir;
      if (m == 0) {
        dir.dw = Eigen::VectorXd::Zero(0);
      } else if (schur_chol.info() == Eigen::Success) {
        dir.dw = schur_chol.solve(rhs);
      } else {
        dir.dw = schur_ldlt.solve(rhs);
      }
      dir.ds = rd;
      for (Eigen::Index j = 0; j < m; ++j) g[static_cast<std::size_t>(j)].add_to(dir.ds, dir.dw(j));
      dir.dz = base - z * dir.ds * s_inv;
      dir.dz = (0.5 * (dir.dz + dir.dz.transpose())).eval();
      return dir;
    };

    double target = options.mu_factor * mu;
    Direction dir;
    if (options.predictor_corrector) {
      const Direction affine_dir = direction(0.0, nullptr);
      const double ap = max_step(s_chol, affine_dir.ds, 1.0);
      const double ad = max_step(z_chol, affine_dir.dz, 1.0);
      const double mu_aff = frob_inner(z + ad * affine_dir.dz, s + ap * affine_dir.ds) / d;
      const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
      target = sigma * mu;
      const Eigen::MatrixXd second_order = affine_dir.dz * affine_dir.ds;
      dir = direction(target, &second_order);
    } else {
      dir = direction(target, nullptr);
    }
    if (!dir.dw.allFinite() || !dir.dz.allFinite()) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.diagnostics = "non-finite search direction at iteration " + std::to_string(iter);
      break;
    }

    double alpha_p = max_step(s_chol, dir.ds, options.step_fraction);
    double alpha_d = max_step(z_chol, dir.dz, options.step_fraction);
    // Confirm positive definiteness by factorization; shrink if rounding bites.
    for (int k = 0; k < 30 && Eigen::LLT<Eigen::MatrixXd>(s + alpha_p * dir.ds).info() != Eigen::Success; ++k) alpha_p *= 0.5;
    for (int k = 0; k < 30 && Eigen::LLT<Eigen::MatrixXd>(z + alpha_d * dir.dz).info() != Eigen::Success; ++k) alpha_d *= 0.5;

    w += alpha_p * dir.dw;
    s += alpha_p * dir.ds;
    s = (0.5 * (s + s.transpose())).eval();
    z += alpha_d * dir.dz;
    sol.trace.back().mu = mu;
    sol.trace.back().primal_step = alpha_p;
    sol.trace.back().dual_step = alpha_d;
  }

  sol.y = red.offset + red.map * w;
  sol.dual_slack = z;
  sol.primal_objective = problem.objective.dot(sol.y);

  // Multipliers from stationarity c + F(Z) = E^T lambda (least squares).
  Eigen::VectorXd grad(m_full);
  for (Eigen::Index i = 0; i < m_full; ++i) {
    grad(i) = problem.objective(i) + problem.basis[static_cast<std::size_t>(i)].inner(z);
  }
  if (problem.eq_matrix.rows() > 0) {
    sol.multipliers = problem.eq_matrix.transpose().colPivHouseholderQr().solve(grad);
  } else {
    sol.multipliers = Eigen::VectorXd::Zero(0);
  }
  sol.dual_objective = frob_inner(problem.f0, z) +
                       (problem.eq_rhs.size() ? sol.multipliers.dot(problem.eq_rhs) : 0.0);
  sol.gap = sol.dual_objective - sol.primal_objective;
  return sol;
}

CertificateCheck check_certificate(const SdpProblem& problem, const SdpSolution& solution,
                                   double eig_floor, double stationarity_tol) {
  CertificateCheck check;
  const Eigen::MatrixXd& z = solution.dual_slack;
  if (z.rows() != problem.dim || z.cols() != problem.dim) return check;
  const Eigen::MatrixXd zs = 0.5 * (z + z.transpose());
  check.min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(zs, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  const auto m = static_cast<Eigen::Index>(problem.n_vars());
  const bool has_eq = problem.eq_matrix.rows() > 0;
  if (has_eq && solution.multipliers.size() != problem.eq_matrix.rows()) return check;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double resid = problem.objective(i) + problem.basis[static_cast<std::size_t>(i)].inner(zs);
    if (has_eq) resid -= problem.eq_matrix.col(i).dot(solution.multipliers);
    worst = std::max(worst, std::abs(resid));
  }
  check.stationarity_residual = worst;
  check.bound = frob_inner(problem.f0, zs) + (has_eq ? solution.multipliers.dot(problem.eq_rhs) : 0.0);
  check.verified = check.min_eigenvalue >= eig_floor && worst < stationarity_tol && std::isfinite(check.bound);
  return check;
}

bool verify_certificate(const SdpProblem& problem, const SdpSolution& solution) {
  return check_certificate(problem, solution).verified;
}

}  // namespace mabkcert
