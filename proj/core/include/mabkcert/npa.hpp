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

#ifndef MABKCERT_NPA_HPP
#define MABKCERT_NPA_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mabkcert/mabk.hpp"
#include "mabkcert/sdp.hpp"

namespace mabkcert {

/// Hermitian dichotomic operator of one party: squares to the identity and
/// commutes with every other party's letters.
struct OperatorLetter {
  std::uint8_t party = 0;
  std::uint8_t input = 0;

  friend auto operator<=>(const OperatorLetter&, const OperatorLetter&) = default;
};

/// Canonical word: letters sorted by party (stable within a party), with no
/// two equal letters adjacent. The empty word is the identity.
struct Monomial {
  std::vector<OperatorLetter> word;

  std::size_t length() const { return word.size(); }
  bool is_identity() const { return word.empty(); }
  /// e.g. "A0 B2 C1"; parties beyond three print as P<k>_.
  std::string str() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct Canonical {
  int sign = 1;
  Monomial monomial;
};

/// Reduces a word using party commutation and O^2 = 1 until nothing changes.
Canonical canonicalize(std::span<const OperatorLetter> word);
/// u^dagger: the letters in reverse order, canonicalized.
Monomial adjoint(const Monomial& u);

/// Number of measurement inputs for each party. Party 0 is Alice.
struct Scenario {
  std::vector<int> inputs_per_party;

  /// Alice with inputs {0,1}, each of n-1 Bobs with {0,1,2}.
  static Scenario conference(std::size_t n_parties);
  std::size_t n_parties() const { return inputs_per_party.size(); }
};

/// All canonical monomials of length <= level: identity first, then by
/// length, lexicographic within a length.
std::vector<Monomial> generate_monomials(const Scenario& scenario, int level);

/// Gamma(u, v) = <u^dagger v>. Entries are grouped into moment classes; a
/// class collects every entry whose canonical word is w or the canonical
/// adjoint of w (moments are taken real). Class 0 is the identity.
struct MomentMatrixStructure {
  std::vector<Monomial> basis;
  std::vector<int> class_of;  // row-major basis.size()^2
  std::vector<Monomial> class_representatives;
  std::map<Monomial, int> class_index;

  std::size_t dim() const { return basis.size(); }
  std::size_t n_classes() const { return class_representatives.size(); }
  int entry_class(std::size_t row, std::size_t col) const { return class_of[row * basis.size() + col]; }
  /// Class of an arbitrary word, or -1 if it is not an entry of the matrix.
  int find_class(std::span<const OperatorLetter> word) const;
};

/// Throws std::invalid_argument unless the basis contains the identity.
MomentMatrixStructure build_moment_structure(std::vector<Monomial> monomials);

/// Sparse linear functional over moment classes.
struct MomentFunctional {
  std::map<int, double> coefficients;
};

/// Maps each Bell term to the class of A_{x_1} B^{(1)}_{x_2} ... with its
/// coefficient. Throws std::invalid_argument if a term's word is not a
/// matrix entry (level too low).
MomentFunctional encode_objective(const BellExpression& expr, const MomentMatrixStructure& structure);

/// <moment(class)> = rhs
struct MomentEquality {
  int moment_class;
  double rhs;
};

struct CorrelationConstraint {
  /// tr(C rho) written over monomials: the identity plus pairwise correlators.
  std::map<Monomial, double> projector_expansion;
  std::vector<MomentEquality> equalities;
};

/// sum over the all-plus and all-minus outcomes of prod_p (1 +- O_p)/2 for the
/// given key-round letters, expanded over monomials.
std::map<Monomial, double> expand_agreement_projector(std::span<const OperatorLetter> key_letters);

/// Perfect key-round correlations (Alice input 0, every Bob input 2): from
/// tr(C rho) = 1 every correlator in the expansion is forced to 1, giving one
/// equality per pair of parties. Throws if a pair is missing from the matrix.
CorrelationConstraint encode_perfect_correlation(const MomentMatrixStructure& structure);

/// Moment matrix after merging monomials whose overlap is pinned to 1.
struct ReducedMoments {
  MomentMatrixStructure structure;
  /// Equalities that were not absorbed, on the reduced classes.
  std::vector<MomentEquality> equalities;
  /// Original class -> reduced class.
  std::vector<int> class_map;
  /// Original basis index -> reduced basis index.
  std::vector<int> basis_map;
};

/// Every basis word is unitary, so Gamma(u, u) = 1, and Gamma(u, v) = 1 in a
/// PSD Gamma forces rows u and v to coincide. Pins with rhs 1 are turned into
/// such merges, repeated until no new entry lands in the identity class. The
/// reduced problem has the same optimum and, unlike the original, can have a
/// strictly feasible point.
ReducedMoments reduce_unit_moments(const MomentMatrixStructure& structure,
                                   std::span<const MomentEquality> equalities);

/// SDP over the non-identity moment classes: variable i is class i+1.
SdpProblem build_npa_problem(const MomentMatrixStructure& structure, const MomentFunctional& objective,
                             std::span<const MomentEquality> equalities);

struct NpaOptions {
  int level = 2;
  bool perfect_correlations = false;
  double tol = 1e-8;
  /// Minimize instead; the reported bound is then on -expr.
  bool negate_objective = false;
  bool facial_reduction = true;
};

struct NpaRun {
  double bound = 0.0;
  bool verified = false;
  CertificateCheck certificate;
  SdpSolution solution;
  /// The problem actually solved (after reduction, if any).
  SdpProblem problem;
  std::size_t basis_size = 0;
  std::size_t n_classes = 0;
  std::size_t solved_basis_size = 0;
  std::size_t solved_classes = 0;
  /// Objective weight on the identity, added to the SDP bound.
  double constant_term = 0.0;
};

/// Certified upper bound on tr(MK_3 rho) over all tripartite quantum
/// strategies, optionally under perfect key-round correlations. Throws
/// std::invalid_argument for level < 2.
NpaRun npa_upper_bound(int level, bool with_constraint, double tol = 1e-8);
/// General form for an arbitrary scenario and expression.
NpaRun npa_upper_bound(const Scenario& scenario, const BellExpression& expr, const NpaOptions& options);

}  // namespace mabkcert

#endif  // MABKCERT_NPA_HPP
