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

#include "mabkcert/correlators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mabkcert {

MeasurementSettings::MeasurementSettings(ObservablePair alice, std::vector<ObservablePair> bobs,
                                         bool honest)
    : alice_(alice), bobs_(std::move(bobs)), honest_(honest) {
  if (bobs_.empty()) throw std::invalid_argument("MeasurementSettings: need at least one Bob");
  if (honest_ && !(alice_[0] == BlochVector::sigma_z())) {
    throw std::invalid_argument("MeasurementSettings: honest settings require A_0 = sigma_z");
  }
}

MeasurementSettings MeasurementSettings::uniform(std::size_t n_parties, const ObservablePair& pair) {
  if (n_parties < 2) throw std::invalid_argument("MeasurementSettings: need n >= 2");
  return MeasurementSettings(pair, std::vector<ObservablePair>(n_parties - 1, pair), false);
}

const BlochVector& MeasurementSettings::observable(std::size_t party, std::uint8_t input) const {
  if (input > 1) throw std::out_of_range("MeasurementSettings: input must be 0 or 1");
  if (party == 0) return alice_[input];
  return bobs_.at(party - 1)[input];
}

std::vector<BlochVector> MeasurementSettings::select(const BitString& inputs) const {
  if (inputs.size() != n_parties()) {
    throw std::invalid_argument("MeasurementSettings::select: input length mismatch");
  }
  std::vector<BlochVector> out;
  out.reserve(inputs.size());
  for (std::size_t p = 0; p < inputs.size(); ++p) out.push_back(observable(p, inputs[p]));
  return out;
}

MeasurementSettings MeasurementSettings::with_alice_negated() const {
  return MeasurementSettings({alice_[0].negated(), alice_[1].negated()}, bobs_, false);
}

GhzCorrelator::GhzCorrelator(std::size_t n) : n_(n) {
  for (const PauliString& s : ghz_expansion(n)) {
    if (s.has_identity_letter()) continue;
    if (!s.is_hermitian()) throw std::logic_error("GHZ stabilizer with imaginary phase");
    signs_.push_back(s.phase_power() == 0 ? 1.0 : -1.0);
    letters_.insert(letters_.end(), s.letters().begin(), s.letters().end());
  }
}

double GhzCorrelator::expectation(std::span<const BlochVector> observables) const {
  if (observables.size() != n_) {
    throw std::invalid_argument("ghz_expectation: expected " + std::to_string(n_) +
                                " observables, got " + std::to_string(observables.size()));
  }
  // (1/2^N) sum_S sign(S) prod_i tr(O_i S_i), with tr(b.sigma sigma_L) = 2 b_L.
  double total = 0.0;
  for (std::size_t e = 0; e < signs_.size(); ++e) {
    double term = signs_[e];
    const PauliLetter* row = letters_.data() + e * n_;
    for (std::size_t q = 0; q < n_ && term != 0.0; ++q) term *= observables[q].component(row[q]);
    total += term;
  }
  return total;
}

double GhzCorrelator::bell_value(const BellExpression& expr,
                                 const MeasurementSettings& settings) const {
  if (expr.n_parties != n_ || settings.n_parties() != n_) {
    throw std::invalid_argument("bell_value: party count mismatch");
  }
  std::vector<BlochVector> obs(n_, BlochVector::sigma_z());
  double total = 0.0;
  for (const BellTerm& t : expr.terms) {
    for (std::size_t p = 0; p < n_; ++p) obs[p] = settings.observable(p, t.inputs[p]);
    total += t.coefficient.to_double() * expectation(obs);
  }
  return total;
}

double ghz_expectation(std::size_t n, std::span<const BlochVector> observables) {
  return GhzCorrelator(n).expectation(observables);
}

double ghz_expectation_full_sum(std::size_t n, std::span<const BlochVector> observables) {
  if (observables.size() != n) throw std::invalid_argument("ghz_expectation_full_sum: size mismatch");
  static constexpr std::array<PauliLetter, 3> kXyz = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
  Complex total{0.0, 0.0};
  for (const PauliString& s : ghz_expansion(n)) {
    Complex term = phase_value(s.phase_power());
    for (std::size_t q = 0; q < n; ++q) {
      Complex qubit_trace{0.0, 0.0};
      for (PauliLetter a : kXyz) {
        const PhasedLetter prod = letter_mul(a, s[q]);
        if (prod.letter == PauliLetter::I) {
          qubit_trace += observables[q].component(a) * 2.0 * phase_value(prod.phase_power);
        }
      }
      term *= qubit_trace;
    }
    total += term;
  }
  total /= std::ldexp(1.0, static_cast<int>(n));
  if (std::abs(total.imag()) > 1e-12) throw std::logic_error("ghz_expectation_full_sum: complex result");
  return total.real();
}

double honest_even_formula(std::size_t n, std::span<const double> bob_bloch_z) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("honest_even_formula: n must be even");
  if (bob_bloch_z.size() != n - 1) {
    throw std::invalid_argument("honest_even_formula: need n-1 Bob z-components");
  }
  double product = 1.0;
  for (double bz : bob_bloch_z) product *= bz;
  return product;
}

double gme_bound(std::size_t n, std::size_t m) {
  if (m < 1 || m > n) {
    throw std::invalid_argument("gme_bound: need 1 <= m <= n, got m=" + std::to_string(m) +
                                " n=" + std::to_string(n));
  }
  return std::pow(2.0, (static_cast<double>(m) - 1.0) / 2.0);
}

double theorem1_bound(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("theorem1_bound: n must be odd and >= 3");
  return static_cast<double>(mabk_term_count(n) / mabk_normalization(n)) / 2.0;
}

CorrelatorReport mabk_value(const BellExpression& expr, const MeasurementSettings& settings) {
  if (expr.n_parties != settings.n_parties()) {
    throw std::invalid_argument("mabk_value: expression has " + std::to_string(expr.n_parties) +
                                " parties, settings have " + std::to_string(settings.n_parties()));
  }
  const std::size_t n = expr.n_parties;
  const GhzCorrelator correlator(n);
  CorrelatorReport report;
  for (const BellTerm& t : expr.terms) {
    const double e = correlator.expectation(settings.select(t.inputs));
    report.expectations.emplace_back(t.inputs, e);
    report.signed_value += t.coefficient.to_double() * e;
  }
  report.mabk_value = std::abs(report.signed_value);
  report.bound_gme = gme_bound(n, n - 1);
  if (n % 2 == 1 && n >= 3) report.bound_theorem1 = theorem1_bound(n);
  return report;
}

}  // namespace mabkcert
