// Copyright 2026 The qfode Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfode/reference_kernels.hpp"

#include <cmath>
#include <numbers>

#include "qfode/errors.hpp"

namespace qfode::reference {

void apply_single_qubit(std::span<Complex> amps, std::size_t qubit, const GateMatrix& gate) {
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps[i], a1 = amps[i | bit];
    amps[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
    amps[i | bit] = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
}

std::vector<Complex> apply_dense(std::span<const Complex> amps, std::span<const std::size_t> targets,
                                 const GateMatrix& matrix, std::span<const std::size_t> controls) {
  std::size_t tmask = 0, cmask = 0;
  for (std::size_t t : targets) tmask |= std::size_t{1} << t;
  for (std::size_t c : controls) cmask |= std::size_t{1} << c;
  std::vector<Complex> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) != cmask) {
      out[i] = amps[i];
      continue;
    }
    std::size_t row = 0;
    for (std::size_t k = 0; k < targets.size(); ++k)
      if (i & (std::size_t{1} << targets[k])) row |= std::size_t{1} << k;
    Complex acc = 0.0;
    for (std::size_t l = 0; l < matrix.dim(); ++l) {
      std::size_t src = i & ~tmask;
      for (std::size_t k = 0; k < targets.size(); ++k)
        if (l & (std::size_t{1} << k)) src |= std::size_t{1} << targets[k];
      acc += matrix(row, l) * amps[src];
    }
    out[i] = acc;
  }
  return out;
}

GateMatrix matmul(const GateMatrix& a, const GateMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("matmul: dimension mismatch");
  const std::size_t n = a.dim();
  GateMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

GateMatrix inverse_dft_matrix(std::size_t num_qubits) {
  const std::size_t n = std::size_t{1} << num_qubits;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  GateMatrix m(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((x * y) % n) / static_cast<double>(n);
      m(y, x) = std::polar(scale, ang);
    }
  return m;
}

}  // namespace qfode::reference
