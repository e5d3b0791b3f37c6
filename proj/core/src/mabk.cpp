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

#include "mabkcert/mabk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mabkcert {

Dyadic::Dyadic(std::int64_t numerator, int exponent) : numerator_(numerator), exponent_(exponent) {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && numerator_ % 2 == 0) {
    numerator_ /= 2;
    --exponent_;
  }
  while (exponent_ < 0) {
    numerator_ *= 2;
    ++exponent_;
  }
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(numerator_), -exponent_); }

std::string Dyadic::str() const {
  std::ostringstream os;
  os << numerator_;
  if (exponent_ > 0) os << "/" << (std::int64_t{1} << exponent_);
  return os.str();
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const int e = std::max(a.exponent_, b.exponent_);
  return Dyadic(a.numerator_ * (std::int64_t{1} << (e - a.exponent_)) +
                    b.numerator_ * (std::int64_t{1} << (e - b.exponent_)),
                e);
}

void BellExpression::canonicalize_and_check() {
  std::ranges::sort(terms, {}, &BellTerm::inputs);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient.is_zero()) throw std::logic_error("BellExpression: zero coefficient");
    if (terms[i].inputs.size() != n_parties) {
      throw std::logic_error("BellExpression: input string length differs from party count");
    }
    if (i > 0 && terms[i].inputs == terms[i - 1].inputs) {
      throw std::logic_error("BellExpression: repeated input string");
    }
  }
}

void BellExpression::check_mabk_counts() const {
  const auto expected_terms = mabk_term_count(n_parties);
  const auto expected_norm = mabk_normalization(n_parties);
  if (static_cast<std::int64_t>(terms.size()) != expected_terms) {
    throw std::logic_error("MABK expression for N=" + std::to_string(n_parties) + " has " +
                           std::to_string(terms.size()) + " terms, expected " +
                           std::to_string(expected_terms));
  }
  if (normalization != expected_norm) {
    throw std::logic_error("MABK expression normalization mismatch");
  }
  // Every coefficient is +-1/normalization, so the l1-norm is E_N / N_N.
  for (const BellTerm& t : terms) {
    if (t.coefficient.abs() != Dyadic(1, static_cast<int>(n_parties / 2))) {
      throw std::logic_error("MABK coefficient is not +-1/normalization");
    }
  }
  if (l1_norm() != Dyadic(expected_terms / expected_norm, 0)) {
    throw std::logic_error("MABK coefficient l1-norm mismatch");
  }
}

Dyadic BellExpression::l1_norm() const {
  Dyadic sum;
  for (const BellTerm& t : terms) sum = sum + t.coefficient.abs();
  return sum;
}

std::string BellExpression::str() const {
  std::ostringstream os;
  for (const BellTerm& t : terms) {
    os << (t.coefficient.numerator() < 0 ? "- " : "+ ") << t.coefficient.abs().str() << " ";
    for (std::size_t i = 0; i < t.inputs.size(); ++i) {
      os << "P" << int(t.inputs[i]) << "^" << (i + 1) << (i + 1 < t.inputs.size() ? " " : "");
    }
    os << "\n";
  }
  return os.str();
}

std::size_t hamming_weight(const BitString& x) {
  return static_cast<std::size_t>(std::ranges::count_if(x, [](std::uint8_t b) { return b != 0; }));
}

std::int64_t mabk_term_count(std::size_t n) { return std::int64_t{1} << (2 * (n / 2)); }

std::int64_t mabk_normalization(std::size_t n) { return std::int64_t{1} << (n / 2); }

namespace {

void require_odd(std::size_t n, const char* who) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": n must be odd and >= 3, got " +
                                std::to_string(n));
  }
}

}  // namespace

std::vector<BitString> mabk_index_set(std::size_t n) {
  require_odd(n, "mabk_index_set");
  const std::size_t parity = ((n - 1) / 2) % 2;
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << (n - 1));
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
    BitString x = expansion_label(n, k);
    if (hamming_weight(x) % 2 == parity) out.push_back(std::move(x));
  }
  return out;
}

int mabk_sign(std::size_t n, const BitString& x) {
  require_odd(n, "mabk_sign");
  if (x.size() != n) throw std::invalid_argument("mabk_sign: input length differs from n");
  // 2*xi = (n-1)/2 - H(x) must be even.
  const auto twice_xi =
      static_cast<std::int64_t>((n - 1) / 2) - static_cast<std::int64_t>(hamming_weight(x));
  if (twice_xi % 2 != 0) throw std::invalid_argument("mabk_sign: xi is not an integer");
  return (twice_xi / 2) % 2 == 0 ? 1 : -1;
}

BellExpression mabk_explicit(std::size_t n) {
  require_odd(n, "mabk_explicit");
  BellExpression expr;
  expr.n_parties = n;
  expr.normalization = mabk_normalization(n);
  const int exponent = static_cast<int>(n / 2);
  for (BitString& x : mabk_index_set(n)) {
    const int sign = mabk_sign(n, x);
    expr.terms.push_back({Dyadic(sign, exponent), std::move(x)});
  }
  expr.canonicalize_and_check();
  expr.check_mabk_counts();
  return expr;
}

BellExpression mabk_two_party_seed() {
  BellExpression expr;
  expr.n_parties = 2;
  expr.normalization = 2;
  expr.terms = {{Dyadic(1, 1), {0, 0}},
                {Dyadic(1, 1), {0, 1}},
                {Dyadic(1, 1), {1, 0}},
                {Dyadic(-1, 1), {1, 1}}};
  expr.canonicalize_and_check();
  expr.check_mabk_counts();
  return expr;
}

BellExpression mabk_recursion_step(const BellExpression& expr) {
  std::map<BitString, Dyadic> acc;
  for (const BellTerm& t : expr.terms) {
    BitString plain = t.inputs;
    BitString swapped = t.inputs;
    for (auto& b : swapped) b ^= 1U;
    const Dyadic c = t.coefficient.half();
    // MK (x) (P0 + P1)
    plain.push_back(0);
    acc[plain] = acc[plain] + c;
    plain.back() = 1;
    acc[plain] = acc[plain] + c;
    // MK' (x) (P0 - P1)
    swapped.push_back(0);
    acc[swapped] = acc[swapped] + c;
    swapped.back() = 1;
    acc[swapped] = acc[swapped] - c;
  }
  BellExpression out;
  out.n_parties = expr.n_parties + 1;
  out.normalization = mabk_normalization(out.n_parties);
  for (auto& [inputs, c] : acc) {
    if (!c.is_zero()) out.terms.push_back({c, inputs});
  }
  out.canonicalize_and_check();
  out.check_mabk_counts();
  return out;
}

BellExpression mabk_expression(std::size_t n) {
  if (n < 2) throw std::invalid_argument("mabk_expression: n must be >= 2");
  if (n == 2) return mabk_two_party_seed();
  if (n % 2 == 1) return mabk_explicit(n);
  return mabk_recursion_step(mabk_explicit(n - 1));
}

}  // namespace mabkcert
