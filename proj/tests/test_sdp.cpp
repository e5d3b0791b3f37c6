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


#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mabkcert/sdp.hpp"
#include "support/generators.hpp"

namespace mabkcert {
namespace {

// 3x3 correlation matrix [[1 a b] [a 1 c] [b c 1]] with variables (a, b, c).
SdpProblem elliptope(const Eigen::Vector3d& c) {
  SdpProblem p;
  p.dim = 3;
  p.f0 = Eigen::MatrixXd::Identity(3, 3);
  const int pos[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& rc : pos) {
    SymmetricSparse b(3);
    b.add(rc[0], rc[1], 1.0);
    p.basis.push_back(b);
  }
  p.objective = c;
  p.eq_matrix = Eigen::MatrixXd::Zero(0, 3);
  p.eq_rhs = Eigen::VectorXd::Zero(0);
  return p;
}

// Maximizes c.(u1.u2, u1.u3, u2.u3) over unit vectors u1 = e1,
// u2 = (cos t, sin t, 0), u3 = (cos s, sin s cos g, sin s sin g): every
// 3x3 correlation matrix arises this way. Grid then coordinate
// refinement; the objective is smooth in the angles.
double gram_oracle(const Eigen::Vector3d& c, std::optional<double> pinned_t = std::nullopt) {
  auto value = [&](double t, double s, double g) {
    const double a = std::cos(t);
    const double b = std::cos(s);
    const double cc = std::cos(t) * std::cos(s) + std::sin(t) * std::sin(s) * std::cos(g);
    return c(0) * a + c(1) * b + c(2) * cc;
  };
  const bool pinned = pinned_t.has_value();
  const double pi = std::numbers::pi;
  double best = -1e300;
  double bt = 0, bs = 0, bg = 0;
  const int grid = 48;
  for (int i = 0; i <= (pinned ? 0 : grid); ++i) {
    const double t = pinned ? *pinned_t : pi * i / grid;
    for (int j = 0; j <= grid; ++j) {
      for (int k = 0; k <= 2 * grid; ++k) {
        const double s = pi * j / grid;
        const double g = pi * k / grid;
        const double v = value(t, s, g);
        if (v > best) best = v, bt = t, bs = s, bg = g;
      }
    }
  }
  for (double h = pi / grid; h > 1e-9; h *= 0.5) {
    for (bool improved = true; improved;) {
      improved = false;
      for (int axis = pinned ? 1 : 0; axis < 3; ++axis) {
        for (double d : {h, -h}) {
          double t = bt, s = bs, g = bg;
          (axis == 0 ? t : axis == 1 ? s : g) += d;
          const double v = value(t, s, g);
          if (v > best + 1e-15) best = v, bt = t, bs = s, bg = g, improved = true;
        }
      }
    }
  }
  return best;
}

void expect_certified(const SdpProblem& p, const SdpSolution& s) {
  ASSERT_TRUE(s.ok()) << s.diagnostics;
  EXPECT_TRUE(verify_certificate(p, s));
  EXPECT_LE(s.primal_objective, s.dual_objective + 1e-9);
  const CertificateCheck check = check_certificate(p, s);
  EXPECT_NEAR(check.bound, s.dual_objective, 1e-9);
}

TEST(SymmetricSparse, AddAndCompress) {
  SymmetricSparse m(3);
  m.add(0, 1, 2.0);
  m.add(1, 0, 1.0);
  m.add(2, 2, 0.5);
  m.add(2, 2, -0.5);
  m.compress();
  ASSERT_EQ(m.entries().size(), 1u);
  EXPECT_EQ(m.entries()[0].row, 0);
  EXPECT_EQ(m.entries()[0].col, 1);
  EXPECT_EQ(m.entries()[0].value, 3.0);
  const Eigen::MatrixXd d = m.to_dense();
  EXPECT_EQ(d(1, 0), 3.0);
  EXPECT_EQ(d(0, 1), 3.0);
  Eigen::MatrixXd other = Eigen::MatrixXd::Ones(3, 3);
  EXPECT_EQ(m.inner(other), 6.0);
  EXPECT_THROW(m.add(3, 0, 1.0), std::out_of_range);
}

TEST(SdpProblem, ValidateRejectsBadShapes) {
  SdpProblem p = elliptope({1, 1, 1});
  EXPECT_NO_THROW(p.validate());
  EXPECT_TRUE(p.disjoint_supports());
  SdpProblem bad = p;
  bad.objective = Eigen::VectorXd::Ones(2);
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.f0(0, 1) = 0.3;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.basis.push_back(SymmetricSparse(4));
  bad.objective = Eigen::VectorXd::Ones(4);
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.eq_matrix = Eigen::MatrixXd::Zero(1, 3);
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = p;
  bad.basis[1].add(0, 1, 1.0);
  EXPECT_FALSE(bad.disjoint_supports());
}

TEST(Solve, OneByOne) {
  SdpProblem p;
  p.dim = 1;
  p.f0 = Eigen::MatrixXd::Constant(1, 1, 2.0);
  SymmetricSparse b(1);
  b.add(0, 0, -1.0);
  p.basis = {b};
  p.objective = Eigen::VectorXd::Constant(1, 3.0);
  p.eq_matrix = Eigen::MatrixXd::Zero(0, 1);
  p.eq_rhs = Eigen::VectorXd::Zero(0);
  const SdpSolution s = solve(p);
  expect_certified(p, s);
  EXPECT_NEAR(s.dual_objective, 6.0, 1e-7);
  EXPECT_NEAR(s.y(0), 2.0, 1e-6);
}

TEST(Solve, TwoByTwoCorrelation) {
  SdpProblem p;
  p.dim = 2;
  p.f0 = Eigen::MatrixXd::Identity(2, 2);
  SymmetricSparse b(2);
  b.add(0, 1, 1.0);
  p.basis = {b};
  p.objective = Eigen::VectorXd::Constant(1, -1.0);
  p.eq_matrix = Eigen::MatrixXd::Zero(0, 1);
  p.eq_rhs = Eigen::VectorXd::Zero(0);
  const SdpSolution s = solve(p);
  expect_certified(p, s);
  EXPECT_NEAR(s.dual_objective, 1.0, 1e-7);
  EXPECT_NEAR(s.y(0), -1.0, 1e-6);
}

TEST(Solve, ElliptopeMatchesGramOracle) {
  gen::Source src(51);
  for (int trial = 0; trial < 12; ++trial) {
    const Eigen::Vector3d c(src.uniform(-1, 1), src.uniform(-1, 1), src.uniform(-1, 1));
    const SdpProblem p = elliptope(c);
    const SdpSolution s = solve(p);
    expect_certified(p, s);
    EXPECT_NEAR(s.dual_objective, gram_oracle(c), 1e-4) << c.transpose();
  }
}

TEST(Solve, EqualityMatchesPinnedOracle) {
  gen::Source src(52);
  for (int trial = 0; trial < 6; ++trial) {
    const double a = src.uniform(-0.9, 0.9);
    const Eigen::Vector3d c(0.0, src.uniform(-1, 1), src.uniform(-1, 1));
    SdpProblem p = elliptope(c);
    p.eq_matrix = Eigen::MatrixXd::Zero(1, 3);
    p.eq_matrix(0, 0) = 1.0;
    p.eq_rhs = Eigen::VectorXd::Constant(1, a);
    const SdpSolution s = solve(p);
    expect_certified(p, s);
    EXPECT_NEAR(s.y(0), a, 1e-9);
    EXPECT_NEAR(s.dual_objective, gram_oracle(c, std::acos(a)), 1e-4);
  }
}

TEST(Solve, Mermin3x3Example) {
  // Maximum of a + b - c on the elliptope: rank one at (1, 1, 1) gives 1,
  // the optimum 3/2 sits at a = b = 1/2, c = -1/2.
  const SdpProblem p = elliptope({1.0, 1.0, -1.0});
  const SdpSolution s = solve(p);
  expect_certified(p, s);
  EXPECT_NEAR(s.dual_objective, 1.5, 1e-6);
}

TEST(Solve, TracesAreBitIdentical) {
  const SdpProblem p = elliptope({0.3, -0.7, 0.2});
  const SdpSolution a = solve(p);
  const SdpSolution b = solve(p);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].primal_objective, b.trace[i].primal_objective);
    EXPECT_EQ(a.trace[i].dual_objective, b.trace[i].dual_objective);
    EXPECT_EQ(a.trace[i].mu, b.trace[i].mu);
  }
  EXPECT_EQ(a.dual_objective, b.dual_objective);
}

TEST(Solve, ObjectiveScaling) {
  const Eigen::Vector3d c(0.4, 0.1, -0.9);
  const double base = solve(elliptope(c)).dual_objective;
  EXPECT_NEAR(solve(elliptope(3.0 * c)).dual_objective, 3.0 * base, 1e-6);
}

TEST(Solve, FixedBarrierAlsoConverges) {
  SdpOptions opts;
  opts.predictor_corrector = false;
  const SdpProblem p = elliptope({1.0, 1.0, -1.0});
  const SdpSolution s = solve(p, opts);
  expect_certified(p, s);
  EXPECT_NEAR(s.dual_objective, 1.5, 1e-6);
  EXPECT_GT(s.iterations, solve(p).iterations);
}

TEST(Solve, InconsistentEqualitiesReported) {
  SdpProblem p = elliptope({1, 0, 0});
  p.eq_matrix = Eigen::MatrixXd::Zero(2, 3);
  p.eq_matrix(0, 0) = 1.0;
  p.eq_matrix(1, 0) = 1.0;
  p.eq_rhs = Eigen::Vector2d(0.5, 0.6);
  const SdpSolution s = solve(p);
  EXPECT_EQ(s.status, SdpStatus::kNumericalFailure);
  EXPECT_FALSE(s.diagnostics.empty());
}

TEST(Solve, IterationCapReported) {
  const SdpSolution s = solve(elliptope({1, 1, -1}), 1e-8, 2);
  EXPECT_EQ(s.status, SdpStatus::kMaxIterations);
  EXPECT_FALSE(s.ok());
  EXPECT_EQ(to_string(s.status).empty(), false);
}

TEST(Certificate, RejectsTamperedSlack) {
  const SdpProblem p = elliptope({1.0, 1.0, -1.0});
  SdpSolution s = solve(p);
  ASSERT_TRUE(verify_certificate(p, s));
  SdpSolution tampered = s;
  tampered.dual_slack -= 0.01 * Eigen::MatrixXd::Identity(3, 3) + s.dual_slack;
  EXPECT_FALSE(verify_certificate(p, tampered));
  EXPECT_LT(check_certificate(p, tampered).min_eigenvalue, 0.0);
  tampered = s;
  tampered.dual_slack(0, 1) += 0.1;
  tampered.dual_slack(1, 0) += 0.1;
  EXPECT_GT(check_certificate(p, tampered).stationarity_residual, 1e-3);
  EXPECT_FALSE(verify_certificate(p, tampered));
}

TEST(Certificate, BoundDominatesFeasiblePoints) {
  gen::Source src(53);
  const Eigen::Vector3d c(0.5, -0.2, 0.8);
  const SdpProblem p = elliptope(c);
  const SdpSolution s = solve(p);
  ASSERT_TRUE(verify_certificate(p, s));
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Vector3d y(src.uniform(-1, 1), src.uniform(-1, 1), src.uniform(-1, 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p.moment_matrix(y));
    if (eig.eigenvalues().minCoeff() >= 0.0) {
      EXPECT_LE(c.dot(y), s.dual_objective + 1e-9);
    }
  }
}

}  // namespace
}  // namespace mabkcert
