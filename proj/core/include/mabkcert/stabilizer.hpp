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

#ifndef MABKCERT_STABILIZER_HPP
#define MABKCERT_STABILIZER_HPP

#include <cstdint>
#include <vector>

#include "mabkcert/pauli.hpp"

namespace mabkcert {

/// Bit string s = (s_1, ..., s_N); entry j is s_{j+1}.
using BitString = std::vector<std::uint8_t>;

/// Generators of the N-GHZ stabilizer group: G_1 = X^N and, for j >= 2,
/// Z on qubits j-1 and j. Throws std::invalid_argument for n < 2.
std::vector<PauliString> ghz_generators(std::size_t n);

/// The stabilizer element labelled by s:
///   (X^{s_1})^N * (Z^{s_2} (x) Z^{s_2+s_3} (x) ... (x) Z^{s_{N-1}+s_N} (x) Z^{s_N}),
/// with exponents reduced mod 2 and the X*Z phases produced by string_mul.
PauliString ghz_element(const BitString& s);

/// All 2^N stabilizer elements. Element k is labelled by the bit string whose
/// s_1 is the most significant bit of k.
std::vector<PauliString> ghz_expansion(std::size_t n);

/// Bit string for index k of ghz_expansion(n).
BitString expansion_label(std::size_t n, std::size_t k);

/// (|0...0> + |1...1>)/sqrt(2) as a dense column vector.
Eigen::VectorXcd ghz_vector(std::size_t n);

/// Dense projector onto the GHZ vector.
DenseMatrix ghz_dense(std::size_t n);

/// Generators plus the closed-form expansion, validated at construction.
struct GhzStabilizer {
  explicit GhzStabilizer(std::size_t n);

  std::size_t n_parties;
  std::vector<PauliString> generators;
  std::vector<PauliString> expansion;
};

}  // namespace mabkcert

#endif  // MABKCERT_STABILIZER_HPP
