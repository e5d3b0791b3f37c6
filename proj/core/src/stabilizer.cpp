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

#include "mabkcert/stabilizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mabkcert {

namespace {

void require_parties(std::size_t n) {
  if (n < 2) throw std::invalid_argument("GHZ stabilizer needs n >= 2, got " + std::to_string(n));
}

}  // namespace

std::vector<PauliString> ghz_generators(std::size_t n) {
  require_parties(n);
  std::vector<PauliString> gens;
  gens.reserve(n);
  gens.emplace_back(std::vector<PauliLetter>(n, PauliLetter::X));
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<PauliLetter> letters(n, PauliLetter::I);
    letters[j - 1] = PauliLetter::Z;
    letters[j] = PauliLetter::Z;
    gens.emplace_back(std::move(letters));
  }
  return gens;
}

PauliString ghz_element(const BitString& s) {
  const std::size_t n = s.size();
  require_parties(n);
  const PauliLetter x_part = (s[0] & 1U) ? PauliLetter::X : PauliLetter::I;
  std::vector<PauliLetter> z_letters(n, PauliLetter::I);
  // Z exponent on qubit 1 is s_2, on qubit N is s_N, and s_j + s_{j+1} between.
  for (std::size_t q = 0; q < n; ++q) {
    unsigned exponent = 0;
    if (q == 0) {
      exponent = s[1];
    } else if (q == n - 1) {
      exponent = s[n - 1];
    } else {
      exponent = static_cast<unsigned>(s[q]) + s[q + 1];
    }
    if (exponent % 2 == 1) z_letters[q] = PauliLetter::Z;
  }
  return string_mul(PauliString(std::vector<PauliLetter>(n, x_part)),
                    PauliString(std::move(z_letters)));
}

BitString expansion_label(std::size_t n, std::size_t k) {
  BitString s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = static_cast<std::uint8_t>((k >> (n - 1 - j)) & 1U);
  return s;
}

std::vector<PauliString> ghz_expansion(std::size_t n) {
  require_parties(n);
  if (n >= 8 * sizeof(std::size_t) - 1) throw std::length_error("ghz_expansion: n too large");
  const std::size_t count = std::size_t{1} << n;
  std::vector<PauliString> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(ghz_element(expansion_label(n, k)));
  return out;
}

Eigen::VectorXcd ghz_vector(std::size_t n) {
  require_parties(n);
  if (n > kMaxDenseQubits) throw std::length_error("ghz_vector: n exceeds the dense limit");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

DenseMatrix ghz_dense(std::size_t n) {
  const Eigen::VectorXcd v = ghz_vector(n);
  return v * v.adjoint();
}

GhzStabilizer::GhzStabilizer(std::size_t n)
    : n_parties(n), generators(ghz_generators(n)), expansion(ghz_expansion(n)) {
  for (const PauliString& s : expansion) {
    if (!s.is_hermitian()) throw std::logic_error("GHZ expansion element with imaginary phase: " + s.str());
  }
}

}  // namespace mabkcert
