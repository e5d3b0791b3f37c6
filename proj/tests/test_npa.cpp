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


#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "mabkcert/blochopt.hpp"
#include "mabkcert/npa.hpp"
#include "support/oracles.hpp"

namespace mabkcert {
namespace {

OperatorLetter L(int party, int input) {
  return {static_cast<std::uint8_t>(party), static_cast<std::uint8_t>(input)};
}

// Per-party reduced words of length k with m inputs: m (m-1)^(k-1).
// Words of the whole scenario are products over parties.
std::size_t monomial_count_oracle(const std::vector<int>& inputs, int level) {
  std::vector<std::size_t> total(static_cast<std::size_t>(level) + 1, 0);
  total[0] = 1;
  for (int m : inputs) {
    std::vector<std::size_t> per(total.size(), 0);
    per[0] = 1;
    for (std::size_t k = 1; k < per.size(); ++k) per[k] = k == 1 ? m : per[k - 1] * (m - 1);
    std::vector<std::size_t> next(total.size(), 0);
    for (std::size_t a = 0; a < total.size(); ++a) {
      for (std::size_t b = 0; a + b < total.size(); ++b) next[a + b] += total[a] * per[b];
    }
    total = next;
  }
  std::size_t sum = 0;
  for (std::size_t v : total) sum += v;
  return sum;
}

// Words as one string of input digits per party, reduced with a stack.
using Word = std::vector<std::string>;

Word reduce(const Word& w) {
  Word out;
  for (const std::string& s : w) {
    std::string stack;
    for (char ch : s) {
      if (!stack.empty() && stack.back() == ch) {
        stack.pop_back();
      } else {
        stack.push_back(ch);
      }
    }
    out.push_back(stack);
  }
  return out;
}

std::vector<Word> words_oracle(const std::vector<int>& inputs, int level) {
  std::vector<Word> all{Word(inputs.size())};
  std::vector<Word> layer = all;
  for (int len = 1; len <= level; ++len) {
    std::set<Word> next;
    for (const Word& w : layer) {
      for (std::size_t p = 0; p < inputs.size(); ++p) {
        for (int x = 0; x < inputs[p]; ++x) {
          Word v = w;
          v[p].push_back(static_cast<char>('0' + x));
          v = reduce(v);
          std::size_t length = 0;
          for (const auto& s : v) length += s.size();
          if (length == static_cast<std::size_t>(len)) next.insert(v);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    all.insert(all.end(), layer.begin(), layer.end());
  }
  return all;
}

std::size_t class_count_oracle(const std::vector<int>& inputs, int level) {
  const std::vector<Word> basis = words_oracle(inputs, level);
  std::set<Word> keys;
  for (const Word& u : basis) {
    for (const Word& v : basis) {
      Word w(inputs.size());
      for (std::size_t p = 0; p < inputs.size(); ++p) w[p] = std::string(u[p].rbegin(), u[p].rend()) + v[p];
      w = reduce(w);
      Word adj = w;
      for (auto& s : adj) std::reverse(s.begin(), s.end());
      keys.insert(std::min(w, adj));
    }
  }
  return keys.size();
}

TEST(Canonicalize, Examples) {
  const std::vector<OperatorLetter> w1{L(1, 0), L(0, 1), L(1, 0)};
  EXPECT_EQ(canonicalize(w1).monomial.str(), "A1");
  const std::vector<OperatorLetter> w2{L(2, 2), L(0, 0), L(1, 1), L(0, 1)};
  EXPECT_EQ(canonicalize(w2).monomial.str(), "A0 A1 B1 C2");
  const std::vector<OperatorLetter> w3{L(0, 0), L(0, 1), L(0, 1), L(0, 0)};
  EXPECT_TRUE(canonicalize(w3).monomial.is_identity());
  EXPECT_EQ(canonicalize(w3).sign, 1);
  const std::vector<OperatorLetter> w4{L(3, 1)};
  EXPECT_EQ(canonicalize(w4).monomial.str(), "P3_1");
}

TEST(Canonicalize, AdjointReversesWithinParty) {
  const Monomial m = canonicalize(std::vector{L(0, 0), L(0, 1), L(1, 2), L(1, 0)}).monomial;
  EXPECT_EQ(adjoint(m).str(), "A1 A0 B0 B2");
  EXPECT_EQ(adjoint(adjoint(m)), m);
}

TEST(Monomials, CountsMatchOracle) {
  const Scenario s = Scenario::conference(3);
  EXPECT_EQ(s.inputs_per_party, (std::vector<int>{2, 3, 3}));
  for (int level = 0; level <= 3; ++level) {
    const auto monos = generate_monomials(s, level);
    EXPECT_EQ(monos.size(), monomial_count_oracle(s.inputs_per_party, level)) << level;
    EXPECT_EQ(monos.size(), words_oracle(s.inputs_per_party, level).size());
  }
  EXPECT_EQ(generate_monomials(s, 1).size(), 9u);
  EXPECT_EQ(generate_monomials(s, 2).size(), 44u);
  EXPECT_EQ(generate_monomials(s, 3).size(), 160u);
  EXPECT_THROW(generate_monomials(s, -1), std::invalid_argument);
  EXPECT_THROW(Scenario::conference(1), std::invalid_argument);
}

TEST(Monomials, AreCanonicalAndDistinct) {
  const auto monos = generate_monomials(Scenario::conference(3), 3);
  std::set<Monomial> seen(monos.begin(), monos.end());
  EXPECT_EQ(seen.size(), monos.size());
  EXPECT_TRUE(monos.front().is_identity());
  for (const Monomial& m : monos) EXPECT_EQ(canonicalize(m.word).monomial, m);
}

TEST(Structure, ClassCountsMatchOracle) {
  const Scenario s = Scenario::conference(3);
  for (int level = 1; level <= 3; ++level) {
    const MomentMatrixStructure st = build_moment_structure(generate_monomials(s, level));
    EXPECT_EQ(st.n_classes(), class_count_oracle(s.inputs_per_party, level)) << level;
  }
  EXPECT_EQ(build_moment_structure(generate_monomials(s, 2)).n_classes(), 313u);
  EXPECT_EQ(build_moment_structure(generate_monomials(s, 3)).n_classes(), 1987u);
}

TEST(Structure, SymmetricWithUnitDiagonal) {
  const MomentMatrixStructure st = build_moment_structure(generate_monomials(Scenario::conference(3), 2));
  ASSERT_EQ(st.dim(), 44u);
  for (std::size_t r = 0; r < st.dim(); ++r) {
    EXPECT_EQ(st.entry_class(r, r), 0);
    for (std::size_t c = 0; c < st.dim(); ++c) EXPECT_EQ(st.entry_class(r, c), st.entry_class(c, r));
  }
  EXPECT_TRUE(st.class_representatives[0].is_identity());
  for (std::size_t k = 0; k < st.n_classes(); ++k) {
    EXPECT_EQ(st.class_index.at(st.class_representatives[k]), static_cast<int>(k));
  }
  EXPECT_EQ(st.find_class(std::vector{L(0, 0), L(0, 1), L(0, 0), L(0, 1), L(0, 0), L(0, 1)}), -1);
  EXPECT_EQ(st.find_class(std::vector{L(1, 2), L(0, 1)}), st.find_class(std::vector{L(0, 1), L(1, 2)}));
}

TEST(Objective, MerminWeights) {
  const MomentMatrixStructure st = build_moment_structure(generate_monomials(Scenario::conference(3), 2));
  const MomentFunctional f = encode_objective(mabk_explicit(3), st);
  ASSERT_EQ(f.coefficients.size(), 4u);
  EXPECT_EQ(f.coefficients.at(st.find_class(std::vector{L(0, 0), L(1, 0), L(2, 1)})), 0.5);
  EXPECT_EQ(f.coefficients.at(st.find_class(std::vector{L(0, 1), L(1, 0), L(2, 0)})), 0.5);
  EXPECT_EQ(f.coefficients.at(st.find_class(std::vector{L(0, 1), L(1, 1), L(2, 1)})), -0.5);
  const MomentMatrixStructure small = build_moment_structure(generate_monomials(Scenario::conference(3), 1));
  EXPECT_THROW(encode_objective(mabk_explicit(3), small), std::invalid_argument);
}

TEST(PerfectCorrelation, ProjectorExpansion) {
  const std::vector<OperatorLetter> key{L(0, 0), L(1, 2), L(2, 2)};
  const auto proj = expand_agreement_projector(key);
  ASSERT_EQ(proj.size(), 4u);
  for (const auto& [mono, coeff] : proj) {
    EXPECT_EQ(coeff, 0.25) << mono.str();
    EXPECT_TRUE(mono.length() == 0 || mono.length() == 2) << mono.str();
  }
  const MomentMatrixStructure st = build_moment_structure(generate_monomials(Scenario::conference(3), 2));
  const CorrelationConstraint cc = encode_perfect_correlation(st);
  ASSERT_EQ(cc.equalities.size(), 3u);
  std::set<int> classes;
  for (const MomentEquality& e : cc.equalities) {
    EXPECT_EQ(e.rhs, 1.0);
    classes.insert(e.moment_class);
  }
  EXPECT_EQ(classes, (std::set<int>{st.find_class(std::vector{L(0, 0), L(1, 2)}),
                                    st.find_class(std::vector{L(0, 0), L(2, 2)}),
                                    st.find_class(std::vector{L(1, 2), L(2, 2)})}));
}

// A qubit strategy on GHZ with A0 = B2 = C2 = sigma_z meets the perfect
// correlation constraints, so its moment matrix is a feasible point.
TEST(PerfectCorrelation, GhzStrategyIsFeasible) {
  const MomentMatrixStructure st = build_moment_structure(generate_monomials(Scenario::conference(3), 2));
  const oracle::Mat id = oracle::Mat::Identity(2, 2);
  const std::vector<std::vector<oracle::Mat>> obs{
      {oracle::pauli('Z'), oracle::bloch(0.6, 0.0, 0.8)},
      {oracle::bloch(0.0, 0.6, 0.8), oracle::pauli('X'), oracle::pauli('Z')},
      {oracle::pauli('Y'), oracle::bloch(0.8, 0.6, 0.0), oracle::pauli('Z')}};
  auto op = [&](const Monomial& m) {
    std::vector<oracle::Mat> local(3, id);
    for (const OperatorLetter& l : m.word) local[l.party] = local[l.party] * obs[l.party][l.input];
    return oracle::tensor(local);
  };
  const oracle::Vec psi = oracle::ghz(3);
  const std::size_t d = st.dim();
  Eigen::MatrixXd gamma(d, d);
  std::vector<double> class_value(st.n_classes(), std::nan(""));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      gamma(r, c) = (psi.adjoint() * op(st.basis[r]).adjoint() * op(st.basis[c]) * psi)(0).real();
      double& v = class_value[static_cast<std::size_t>(st.entry_class(r, c))];
      if (std::isnan(v)) v = gamma(r, c);
      EXPECT_NEAR(gamma(r, c), v, 1e-12);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gamma);
  EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-12);
  for (const MomentEquality& e : encode_perfect_correlation(st).equalities) {
    EXPECT_NEAR(class_value[static_cast<std::size_t>(e.moment_class)], e.rhs, 1e-12);
  }
  double value = 0.0;
  for (const auto& [cls, coeff] : encode_objective(mabk_explicit(3), st).coefficients) {
    value += coeff * class_value[static_cast<std::size_t>(cls)];
  }
  EXPECT_LE(value, std::sqrt(2.0) + 1e-6);
}

TEST(Reduction, SizesAndMaps) {
  const MomentMatrixStructure st2 = build_moment_structure(generate_monomials(Scenario::conference(3), 2));
  const auto eq2 = encode_perfect_correlation(st2).equalities;
  const ReducedMoments r2 = reduce_unit_moments(st2, eq2);
  EXPECT_EQ(r2.structure.dim(), 29u);
  EXPECT_TRUE(r2.equalities.empty());
  EXPECT_EQ(r2.class_map.size(), st2.n_classes());
  EXPECT_EQ(r2.basis_map.size(), st2.dim());
  EXPECT_EQ(r2.class_map[0], 0);
  for (const MomentEquality& e : eq2) EXPECT_EQ(r2.class_map[static_cast<std::size_t>(e.moment_class)], 0);
  // Rows merged into one another must have carried equal classes.
  for (std::size_t r = 0; r < st2.dim(); ++r) {
    for (std::size_t c = 0; c < st2.dim(); ++c) {
      EXPECT_EQ(r2.class_map[static_cast<std::size_t>(st2.entry_class(r, c))],
                r2.structure.entry_class(static_cast<std::size_t>(r2.basis_map[r]),
                                         static_cast<std::size_t>(r2.basis_map[c])));
    }
  }
  const MomentMatrixStructure st3 = build_moment_structure(generate_monomials(Scenario::conference(3), 3));
  EXPECT_EQ(reduce_unit_moments(st3, encode_perfect_correlation(st3).equalities).structure.dim(), 95u);
  const std::vector<MomentEquality> bad{{static_cast<int>(st2.n_classes()), 1.0}};
  EXPECT_THROW(reduce_unit_moments(st2, bad), std::invalid_argument);
}

TEST(Bounds, LevelTwo) {
  const NpaRun free = npa_upper_bound(2, false);
  EXPECT_TRUE(free.verified);
  EXPECT_NEAR(free.bound, 2.0, 1e-5);
  EXPECT_LE(free.solution.primal_objective + free.constant_term, free.bound + 1e-9);
  const NpaRun pc = npa_upper_bound(2, true);
  EXPECT_TRUE(pc.verified);
  EXPECT_NEAR(pc.bound, std::sqrt(2.0), 1e-5);
  EXPECT_EQ(pc.basis_size, 44u);
  EXPECT_EQ(pc.solved_basis_size, 29u);
}

TEST(Bounds, LevelThreeTightensOrMatches) {
  for (bool constrained : {false, true}) {
    const NpaRun l2 = npa_upper_bound(2, constrained);
    const NpaRun l3 = npa_upper_bound(3, constrained);
    EXPECT_TRUE(l3.verified);
    EXPECT_LE(l3.bound, l2.bound + 1e-6);
  }
}

TEST(Bounds, WithoutReductionUnconstrainedAgrees) {
  NpaOptions opts;
  opts.facial_reduction = false;
  const NpaRun run = npa_upper_bound(Scenario::conference(3), mabk_explicit(3), opts);
  EXPECT_TRUE(run.verified);
  EXPECT_NEAR(run.bound, 2.0, 1e-5);
}

TEST(Bounds, NegatedObjectiveIsSymmetric) {
  NpaOptions opts;
  opts.negate_objective = true;
  const NpaRun run = npa_upper_bound(Scenario::conference(3), mabk_explicit(3), opts);
  EXPECT_TRUE(run.verified);
  EXPECT_NEAR(run.bound, 2.0, 1e-5);
  opts.level = 1;
  EXPECT_THROW(npa_upper_bound(Scenario::conference(3), mabk_explicit(3), opts), std::invalid_argument);
}

TEST(Bounds, DominateQuantumOptimum) {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  const double quantum = maximize_unconstrained_mabk(3, cfg).best_value;
  EXPECT_LE(quantum, npa_upper_bound(2, false).bound + 1e-6);
}

}  // namespace
}  // namespace mabkcert
