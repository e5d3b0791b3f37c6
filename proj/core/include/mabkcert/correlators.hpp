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

#ifndef MABKCERT_CORRELATORS_HPP
#define MABKCERT_CORRELATORS_HPP

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mabkcert/mabk.hpp"
#include "mabkcert/pauli.hpp"
#include "mabkcert/stabilizer.hpp"

namespace mabkcert {

using ObservablePair = std::array<BlochVector, 2>;

/// Type-1 measurement settings: Alice's A_0, A_1 and, for each of the N-1
/// Bobs, B_0^{(k)}, B_1^{(k)}. In an honest implementation A_0 is sigma_z.
class MeasurementSettings {
 public:
  /// Throws std::invalid_argument if honest is set and A_0 is not exactly
  /// (0, 0, 1), or if there are no Bobs.
  MeasurementSettings(ObservablePair alice, std::vector<ObservablePair> bobs, bool honest);

  /// Same observable pair for every party; honest is false.
  static MeasurementSettings uniform(std::size_t n_parties, const ObservablePair& pair);

  std::size_t n_parties() const { return bobs_.size() + 1; }
  bool honest() const { return honest_; }
  const ObservablePair& alice() const { return alice_; }
  std::span<const ObservablePair> bobs() const { return bobs_; }

  /// Observable of a party (0 = Alice) for input 0 or 1.
  const BlochVector& observable(std::size_t party, std::uint8_t input) const;
  /// Observables selected by an input string, one per party.
  std::vector<BlochVector> select(const BitString& inputs) const;

  /// Every observable of Alice negated; honest flag dropped.
  MeasurementSettings with_alice_negated() const;

 private:
  ObservablePair alice_;
  std::vector<ObservablePair> bobs_;
  bool honest_;
};

/// Precomputed GHZ_N expectation evaluator. Only stabilizer elements with no
/// identity letter contribute (the observables are traceless), so those are
/// the only ones kept: the all-X/Y orbit (s_1 = 1) plus at most one Z-string.
class GhzCorrelator {
 public:
  explicit GhzCorrelator(std::size_t n);

  std::size_t n_parties() const { return n_; }
  /// Number of stabilizer elements retained after the identity-letter skip.
  std::size_t retained_elements() const { return signs_.size(); }

  /// <O_1 (x) ... (x) O_N> on GHZ_N. Throws std::invalid_argument on a size mismatch.
  double expectation(std::span<const BlochVector> observables) const;

  /// Signed tr(MK rho) for the given settings.
  double bell_value(const BellExpression& expr, const MeasurementSettings& settings) const;

 private:
  std::size_t n_;
  std::vector<double> signs_;
  std::vector<PauliLetter> letters_;  // row-major, n_ letters per retained element
};

/// <O_1 (x) ... (x) O_N> on GHZ_n through the stabilizer expansion.
double ghz_expectation(std::size_t n, std::span<const BlochVector> observables);

/// Same quantity summed over all 2^n stabilizer elements without the
/// identity-letter skip; each single-qubit trace tr(O_i S_i) is expanded as
/// sum_a b_a tr(sigma_a S_i) through letter_mul. Reference path for tests.
double ghz_expectation_full_sum(std::size_t n, std::span<const BlochVector> observables);

/// prod_k beta_z^{(k)}: the GHZ correlator with A_0 = sigma_z for even n.
/// Throws std::invalid_argument for odd n or a wrong number of entries.
double honest_even_formula(std::size_t n, std::span<const double> bob_bloch_z);

/// 2^{(m-1)/2}: the largest MABK value reachable when at most m parties
/// share entanglement. Throws std::invalid_argument unless 1 <= m <= n.
double gme_bound(std::size_t n, std::size_t m);

/// (E_N / N_N) / 2 = 2^{(n-3)/2}: the honest-implementation cap for odd n.
double theorem1_bound(std::size_t n);

struct CorrelatorReport {
  std::vector<std::pair<BitString, double>> expectations;
  double signed_value = 0.0;
  double mabk_value = 0.0;
  /// Threshold 2^{(N-2)/2} whose violation certifies genuine N-partite entanglement.
  double bound_gme = 0.0;
  /// Only for odd N.
  std::optional<double> bound_theorem1;
};

/// Throws std::invalid_argument when the party counts disagree.
CorrelatorReport mabk_value(const BellExpression& expr, const MeasurementSettings& settings);

}  // namespace mabkcert

#endif  // MABKCERT_CORRELATORS_HPP
