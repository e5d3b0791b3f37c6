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

// Reference computations that share no code path with the library: Pauli
// matrices are spelled out here, tensor products go through Eigen's
// KroneckerProduct module, and the GHZ vector is written down directly.

#ifndef MABKCERT_TESTS_ORACLES_HPP
#define MABKCERT_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli(char letter) {
  Mat m(2, 2);
  const C i(0.0, 1.0);
  switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Mat bloch(double x, double y, double z) {
  return x * pauli('X') + y * pauli('Y') + z * pauli('Z');
}

/// Qubit 0 is the leftmost (most significant) factor.
inline Mat tensor(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const Mat& f : factors) {
    Mat next = Eigen::kroneckerProduct(out, f).eval();
    out = std::move(next);
  }
  return out;
}

/// i^phase times the tensor product of the letters in text ("XIZ").
inline Mat pauli_string(const char* text, int phase = 0) {
  std::vector<Mat> f;
  for (const char* p = text; *p; ++p) f.push_back(pauli(*p));
  const C phases[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
  return phases[((phase % 4) + 4) % 4] * tensor(f);
}

inline Vec ghz(int n) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

inline double expectation(const Vec& psi, const Mat& op) { return (psi.adjoint() * op * psi)(0).real(); }

}  // namespace oracle

#endif  // MABKCERT_TESTS_ORACLES_HPP
