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

#include "mabkcert/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mabkcert {

namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

}  // namespace

char to_char(PauliLetter letter) { return "IXYZ"[static_cast<int>(letter)]; }

PhasedLetter letter_mul(PauliLetter a, PauliLetter b) {
  if (a == PauliLetter::I) return {0, b};
  if (b == PauliLetter::I) return {0, a};
  if (a == b) return {0, PauliLetter::I};
  // X=1, Y=2, Z=3: the third letter is the one not named, and the sign is
  // the Levi-Civita symbol, +1 for cyclic (XY, YZ, ZX).
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto c = static_cast<PauliLetter>(6 - ia - ib);
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? 1 : 3, c};
}

Complex phase_value(int phase_power) {
  switch (mod4(phase_power)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString::PauliString(std::vector<PauliLetter> letters, int phase_power)
    : phase_power_(mod4(phase_power)), letters_(std::move(letters)) {}

PauliString PauliString::from_str(std::string_view text) {
  int phase = 0;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    if (text.front() == '-') phase += 2;
    text.remove_prefix(1);
  }
  if (!text.empty() && text.front() == 'i') {
    phase += 1;
    text.remove_prefix(1);
  }
  std::vector<PauliLetter> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'I': case '_': letters.push_back(PauliLetter::I); break;
      case 'X': letters.push_back(PauliLetter::X); break;
      case 'Y': letters.push_back(PauliLetter::Y); break;
      case 'Z': letters.push_back(PauliLetter::Z); break;
      default:
        throw std::invalid_argument(std::string("bad Pauli letter '") + ch + "'");
    }
  }
  if (letters.empty()) throw std::invalid_argument("empty Pauli string");
  return PauliString(std::move(letters), phase);
}

PauliString PauliString::identity(std::size_t n_qubits) {
  return PauliString(std::vector<PauliLetter>(n_qubits, PauliLetter::I), 0);
}

bool PauliString::is_identity_letters() const {
  return std::ranges::all_of(letters_, [](PauliLetter l) { return l == PauliLetter::I; });
}

bool PauliString::has_identity_letter() const {
  return std::ranges::any_of(letters_, [](PauliLetter l) { return l == PauliLetter::I; });
}

std::string PauliString::str() const {
  static constexpr std::array<const char*, 4> kPrefix = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase_power_];
  for (PauliLetter l : letters_) out.push_back(to_char(l));
  return out;
}

PauliString string_mul(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("string_mul: length mismatch (" + std::to_string(p.size()) +
                                " vs " + std::to_string(q.size()) + ")");
  }
  int phase = p.phase_power() + q.phase_power();
  std::vector<PauliLetter> letters(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const PhasedLetter r = letter_mul(p[j], q[j]);
    phase += r.phase_power;
    letters[j] = r.letter;
  }
  return PauliString(std::move(letters), phase);
}

double trace_coeff(const PauliString& p) {
  if (!p.is_identity_letters()) return 0.0;
  if (!p.is_hermitian()) {
    throw std::logic_error("trace_coeff: imaginary trace for " + p.str());
  }
  const double magnitude = std::ldexp(1.0, static_cast<int>(p.size()));
  return p.phase_power() == 0 ? magnitude : -magnitude;
}

Eigen::Matrix2cd letter_matrix(PauliLetter letter) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  switch (letter) {
    case PauliLetter::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case PauliLetter::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case PauliLetter::Y: m << 0.0, -i, i, 0.0; break;
    case PauliLetter::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

DenseMatrix dense_matrix(const PauliString& p) {
  if (p.size() > kMaxDenseQubits) {
    throw std::length_error("dense_matrix: " + std::to_string(p.size()) +
                            " qubits exceeds the dense limit");
  }
  DenseMatrix out = DenseMatrix::Identity(1, 1) * phase_value(p.phase_power());
  for (PauliLetter l : p.letters()) out = kron(out, letter_matrix(l));
  return out;
}

BlochVector::BlochVector(double bx, double by, double bz) : c_{bx, by, bz} {
  const double norm2 = bx * bx + by * by + bz * bz;
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("BlochVector: not unit norm (|b|^2 = " +
                                std::to_string(norm2) + ")");
  }
}

double BlochVector::component(PauliLetter letter) const {
  switch (letter) {
    case PauliLetter::X: return c_[0];
    case PauliLetter::Y: return c_[1];
    case PauliLetter::Z: return c_[2];
    default: return 0.0;
  }
}

Eigen::Matrix2cd BlochVector::matrix() const {
  return c_[0] * letter_matrix(PauliLetter::X) + c_[1] * letter_matrix(PauliLetter::Y) +
         c_[2] * letter_matrix(PauliLetter::Z);
}

DenseMatrix dense_observable(std::span<const BlochVector> observables) {
  if (observables.size() > kMaxDenseQubits) {
    throw std::length_error("dense_observable: too many qubits");
  }
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (const BlochVector& b : observables) out = kron(out, b.matrix());
  return out;
}

}  // namespace mabkcert
