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

#ifndef MABKCERT_MABK_HPP
#define MABKCERT_MABK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mabkcert/stabilizer.hpp"

namespace mabkcert {

/// Exact dyadic rational numerator / 2^exponent, kept in lowest terms
/// (numerator odd, or the value is zero with exponent 0).
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t numerator, int exponent);

  std::int64_t numerator() const { return numerator_; }
  int exponent() const { return exponent_; }
  bool is_zero() const { return numerator_ == 0; }
  double to_double() const;
  std::string str() const;

  Dyadic half() const { return Dyadic(numerator_, exponent_ + 1); }
  Dyadic abs() const { return Dyadic(numerator_ < 0 ? -numerator_ : numerator_, exponent_); }
  Dyadic operator-() const { return Dyadic(-numerator_, exponent_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;

 private:
  std::int64_t numerator_ = 0;
  int exponent_ = 0;
};

/// One summand c * P^1_{x_1} (x) ... (x) P^N_{x_N}.
struct BellTerm {
  Dyadic coefficient;
  BitString inputs;

  friend bool operator==(const BellTerm&, const BellTerm&) = default;
};

/// Signed combination of per-party input choices. Coefficients already carry
/// the 1/normalization factor. Terms are kept sorted by input string.
struct BellExpression {
  std::size_t n_parties = 0;
  std::vector<BellTerm> terms;
  std::int64_t normalization = 1;

  /// Sorts terms, then throws std::logic_error on zero coefficients,
  /// wrong-length or repeated input strings.
  void canonicalize_and_check();
  /// Throws std::logic_error unless term count, normalization and the
  /// coefficient l1-norm match E_N = 4^{floor(N/2)}, 2^{floor(N/2)}.
  void check_mabk_counts() const;

  /// Sum of |coefficient| (exact).
  Dyadic l1_norm() const;
  std::string str() const;

  friend bool operator==(const BellExpression&, const BellExpression&) = default;
};

std::size_t hamming_weight(const BitString& x);

/// Number of distinct expectation values E_N = 2^{2 floor(N/2)}.
std::int64_t mabk_term_count(std::size_t n);
/// Normalization 2^{floor(N/2)}.
std::int64_t mabk_normalization(std::size_t n);

/// Odd n >= 3: all x with H(x) = (n-1)/2 mod 2, in increasing binary order.
std::vector<BitString> mabk_index_set(std::size_t n);

/// (-1)^xi with xi = (n-1)/4 - H(x)/2. Throws std::invalid_argument if xi is
/// not an integer (x outside the index set) or n is not odd >= 3.
int mabk_sign(std::size_t n, const BitString& x);

/// Closed-form MABK operator for odd n >= 3.
BellExpression mabk_explicit(std::size_t n);

/// 1/2 [P0P0 + P0P1 + P1P0 - P1P1].
BellExpression mabk_two_party_seed();

/// MK_N = 1/2 [MK_{N-1} (x) (P0 + P1) + MK'_{N-1} (x) (P0 - P1)] where MK'
/// swaps 0 <-> 1 on every party. The result is checked against the term-count
/// and normalization identities; a violation throws std::logic_error.
BellExpression mabk_recursion_step(const BellExpression& expr);

/// n = 2: seed; odd n: closed form; even n > 2: one recursion step from n-1.
BellExpression mabk_expression(std::size_t n);

}  // namespace mabkcert

#endif  // MABKCERT_MABK_HPP
