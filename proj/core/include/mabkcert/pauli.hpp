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

#ifndef MABKCERT_PAULI_HPP
#define MABKCERT_PAULI_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mabkcert {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

/// Largest qubit count for which dense 2^N x 2^N oracles are built.
inline constexpr std::size_t kMaxDenseQubits = 12;

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<PauliLetter, 4> kAllLetters = {
    PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z};

char to_char(PauliLetter letter);

/// A product a*b written as i^phase_power * letter.
struct PhasedLetter {
  int phase_power = 0;
  PauliLetter letter = PauliLetter::I;

  friend bool operator==(const PhasedLetter&, const PhasedLetter&) = default;
};

/// Single-qubit product from sigma_j sigma_k = delta_jk 1 + i eps_jkl sigma_l.
PhasedLetter letter_mul(PauliLetter a, PauliLetter b);

/// i^k for k taken mod 4.
Complex phase_value(int phase_power);

/// Phase-tracked N-qubit Pauli operator i^phase_power * (P_1 (x) ... (x) P_N).
/// Position 0 is qubit 1.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliLetter> letters, int phase_power = 0);

  /// Parses strings like "+XYZ", "-iXI", "ZZ". '_' is accepted for I.
  static PauliString from_str(std::string_view text);
  static PauliString identity(std::size_t n_qubits);

  std::size_t size() const { return letters_.size(); }
  int phase_power() const { return phase_power_; }
  std::span<const PauliLetter> letters() const { return letters_; }
  PauliLetter operator[](std::size_t qubit) const { return letters_[qubit]; }

  bool is_identity_letters() const;
  bool has_identity_letter() const;
  /// Hermitian iff the phase is real (+1 or -1).
  bool is_hermitian() const { return phase_power_ % 2 == 0; }

  /// Canonical text: sign prefix in {+, -, +i, -i} followed by the letters.
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int phase_power_ = 0;
  std::vector<PauliLetter> letters_;
};

/// Operator product p*q. Throws std::invalid_argument on length mismatch.
PauliString string_mul(const PauliString& p, const PauliString& q);

/// tr(p) = i^k 2^N when every letter is I, otherwise 0. Throws
/// std::logic_error if the trace would be imaginary.
double trace_coeff(const PauliString& p);

/// 2x2 matrix of a single letter.
Eigen::Matrix2cd letter_matrix(PauliLetter letter);

/// Dense 2^N x 2^N matrix of p. Qubit 1 is the most significant tensor
/// factor: basis index b = sum_j bit_j * 2^(N-1-j), so the result is
/// kron(P_1, kron(P_2, ...)). Throws std::length_error when N exceeds
/// kMaxDenseQubits.
DenseMatrix dense_matrix(const PauliString& p);

/// Kronecker product in the same ordering convention as dense_matrix.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Unit Bloch vector (bx, by, bz) defining the dichotomic observable b . sigma.
class BlochVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::invalid_argument unless |b|^2 = 1 within kNormTolerance.
  BlochVector(double bx, double by, double bz);

  static BlochVector sigma_x() { return {1.0, 0.0, 0.0}; }
  static BlochVector sigma_y() { return {0.0, 1.0, 0.0}; }
  static BlochVector sigma_z() { return {0.0, 0.0, 1.0}; }

  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double z() const { return c_[2]; }
  /// Component along a Pauli letter; I maps to 0 (the observable is traceless).
  double component(PauliLetter letter) const;

  BlochVector negated() const { return {-c_[0], -c_[1], -c_[2]}; }
  Eigen::Matrix2cd matrix() const;

  friend bool operator==(const BlochVector&, const BlochVector&) = default;

 private:
  std::array<double, 3> c_;
};

/// Dense matrix of O_1 (x) ... (x) O_N, same convention as dense_matrix.
DenseMatrix dense_observable(std::span<const BlochVector> observables);

}  // namespace mabkcert

#endif  // MABKCERT_PAULI_HPP
