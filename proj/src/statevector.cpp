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

#include "qfode/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qfode/errors.hpp"
#include "qfode/internal/complex_ops.hpp"

namespace qfode {

using internal::cmul;
using internal::deposit_bits;

GateMatrix::GateMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

GateMatrix::GateMatrix(std::size_t dim, std::initializer_list<Complex> entries)
    : dim_(dim), data_(entries) {
  if (data_.size() != dim * dim) throw ValidationError("GateMatrix: entry count must be dim*dim");
}

GateMatrix GateMatrix::identity(std::size_t dim) {
  GateMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

GateMatrix GateMatrix::adjoint() const {
  GateMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool GateMatrix::is_unitary(double tol) const {
  const GateMatrix p = (*this) * adjoint();
  return p.max_abs_diff(identity(dim_)) <= tol;
}

double GateMatrix::max_abs_diff(const GateMatrix& other) const {
  if (other.dim_ != dim_) throw ValidationError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
  if (a.dim_ != b.dim_) throw ValidationError("GateMatrix product: dimension mismatch");
  const std::size_t n = a.dim_;
  GateMatrix out(n);
  const Complex* pa = a.data_.data();
  const Complex* pb = b.data_.data();
  Complex* po = out.data_.data();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    Complex* row = po + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = pa[i * n + k];
      if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
      const Complex* brow = pb + k * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += cmul(aik, brow[j]);
    }
  }
  return out;
}

GateMatrix kron(const GateMatrix& high, const GateMatrix& low) {
  const std::size_t dh = high.dim(), dl = low.dim();
  GateMatrix out(dh * dl);
  for (std::size_t r1 = 0; r1 < dh; ++r1)
    for (std::size_t c1 = 0; c1 < dh; ++c1)
      for (std::size_t r2 = 0; r2 < dl; ++r2)
        for (std::size_t c2 = 0; c2 < dl; ++c2)
          out(r1 * dl + r2, c1 * dl + c2) = high(r1, c1) * low(r2, c2);
  return out;
}

namespace gates {

GateMatrix hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return GateMatrix(2, {s, s, s, -s});
}

GateMatrix pauli_x() { return GateMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

GateMatrix ry(double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  return GateMatrix(2, {c, -s, s, c});
}

GateMatrix phase(double phi) { return GateMatrix(2, {1.0, 0.0, 0.0, std::polar(1.0, phi)}); }

GateMatrix swap() {
  return GateMatrix(4, {1.0, 0.0, 0.0, 0.0,  //
                        0.0, 0.0, 1.0, 0.0,  //
                        0.0, 1.0, 0.0, 0.0,  //
                        0.0, 0.0, 0.0, 1.0});
}

}  // namespace gates

StateVector StateVector::zero(std::size_t num_qubits, std::size_t qubit_cap) {
  if (num_qubits < 1) throw ValidationError("StateVector needs at least one qubit");
  if (num_qubits > qubit_cap) {
    throw ResourceError("StateVector: " + std::to_string(num_qubits) + " qubits exceeds cap of " +
                        std::to_string(qubit_cap));
  }
  StateVector s;
  s.num_qubits_ = num_qubits;
  s.amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  s.amps_[0] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || (n & (n - 1)) != 0) throw ValidationError("amplitude count must be a power of two");
  StateVector s;
  s.num_qubits_ = static_cast<std::size_t>(std::countr_zero(n));
  s.amps_ = std::move(amplitudes);
  return s;
}

void StateVector::check_qubit(std::size_t q) const {
  if (q >= num_qubits_) throw ValidationError("qubit index " + std::to_string(q) + " out of range");
}

double StateVector::norm_squared() const {
  double s = 0.0;
  const std::size_t n = amps_.size();
  const Complex* a = amps_.data();
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
  return s;
}

void StateVector::apply_single_qubit(std::size_t qubit, const GateMatrix& gate, bool validate) {
  check_qubit(qubit);
  if (gate.dim() != 2) throw ValidationError("single-qubit gate must be 2x2");
  if (validate && !gate.is_unitary(1e-10)) throw ValidationError("gate is not unitary");
  const Complex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  const std::size_t half = amps_.size() / 2;
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t low_mask = bit - 1;
  Complex* a = amps_.data();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = ((k & ~low_mask) << 1) | (k & low_mask);
    const std::size_t i1 = i0 | bit;
    const Complex a0 = a[i0], a1 = a[i1];
    a[i0] = cmul(g00, a0) + cmul(g01, a1);
    a[i1] = cmul(g10, a0) + cmul(g11, a1);
  }
}

void StateVector::apply_controlled(std::span<const std::size_t> controls, std::size_t target,
                                   const GateMatrix& gate) {
  check_qubit(target);
  if (gate.dim() != 2) throw ValidationError("controlled gate must be 2x2");
  std::size_t cmask = 0;
  for (std::size_t c : controls) {
    check_qubit(c);
    if (c == target) throw ValidationError("control and target qubits collide");
    const std::size_t b = std::size_t{1} << c;
    if (cmask & b) throw ValidationError("duplicate control qubit");
    cmask |= b;
  }
  const Complex g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  const std::size_t half = amps_.size() / 2;
  const std::size_t bit = std::size_t{1} << target;
  const std::size_t low_mask = bit - 1;
  Complex* a = amps_.data();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = ((k & ~low_mask) << 1) | (k & low_mask);
    if ((i0 & cmask) != cmask) continue;
    const std::size_t i1 = i0 | bit;
    const Complex a0 = a[i0], a1 = a[i1];
    a[i0] = cmul(g00, a0) + cmul(g01, a1);
    a[i1] = cmul(g10, a0) + cmul(g11, a1);
  }
}

void StateVector::apply_dense_unitary(std::span<const std::size_t> targets, const GateMatrix& matrix,
                                      std::span<const std::size_t> controls) {
  const std::size_t nt = targets.size();
  if (nt == 0) throw ValidationError("dense unitary needs at least one target");
  if (matrix.dim() != (std::size_t{1} << nt)) {
    throw ValidationError("dense unitary dimension " + std::to_string(matrix.dim()) +
                          " does not match 2^" + std::to_string(nt));
  }
  std::vector<std::size_t> fixed;
  std::size_t used = 0, cmask = 0;
  for (std::size_t t : targets) {
    check_qubit(t);
    if (used & (std::size_t{1} << t)) throw ValidationError("duplicate target qubit");
    used |= std::size_t{1} << t;
    fixed.push_back(t);
  }
  for (std::size_t c : controls) {
    check_qubit(c);
    if (used & (std::size_t{1} << c)) throw ValidationError("control collides with a target");
    used |= std::size_t{1} << c;
    cmask |= std::size_t{1} << c;
    fixed.push_back(c);
  }
  std::sort(fixed.begin(), fixed.end());

  const std::size_t d = matrix.dim();
  std::vector<std::size_t> offsets(d, 0);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < nt; ++k)
      if (l & (std::size_t{1} << k)) offsets[l] |= std::size_t{1} << targets[k];

  const std::size_t outer = std::size_t{1} << (num_qubits_ - fixed.size());
  const Complex* m = matrix.data().data();
  Complex* a = amps_.data();
#pragma omp parallel
  {
    std::vector<Complex> in(d), out(d);
#pragma omp for schedule(static)
    for (std::size_t b = 0; b < outer; ++b) {
      const std::size_t base = deposit_bits(b, fixed) | cmask;
      for (std::size_t l = 0; l < d; ++l) in[l] = a[base | offsets[l]];
      for (std::size_t r = 0; r < d; ++r) {
        const Complex* row = m + r * d;
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < d; ++l) acc += cmul(row[l], in[l]);
        out[r] = acc;
      }
      for (std::size_t l = 0; l < d; ++l) a[base | offsets[l]] = out[l];
    }
  }
}

void StateVector::qft(std::span<const std::size_t> reg) {
  const std::size_t m = reg.size();
  if (m == 0) throw ValidationError("QFT register is empty");
  const GateMatrix h = gates::hadamard();
  for (std::size_t jj = m; jj-- > 0;) {
    apply_single_qubit(reg[jj], h);
    for (std::size_t kk = jj; kk-- > 0;) {
      const double phi = 2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(jj - kk + 1));
      apply_controlled({reg[kk]}, reg[jj], gates::phase(phi));
    }
  }
  const GateMatrix sw = gates::swap();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const std::size_t pair[2] = {reg[i], reg[m - 1 - i]};
    apply_dense_unitary(pair, sw);
  }
}

void StateVector::inverse_qft(std::span<const std::size_t> reg) {
  const std::size_t m = reg.size();
  if (m == 0) throw ValidationError("QFT register is empty");
  const GateMatrix sw = gates::swap();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const std::size_t pair[2] = {reg[i], reg[m - 1 - i]};
    apply_dense_unitary(pair, sw);
  }
  const GateMatrix h = gates::hadamard();
  for (std::size_t jj = 0; jj < m; ++jj) {
    for (std::size_t kk = 0; kk < jj; ++kk) {
      const double phi = -2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(jj - kk + 1));
      apply_controlled({reg[kk]}, reg[jj], gates::phase(phi));
    }
    apply_single_qubit(reg[jj], h);
  }
}

double StateVector::marginal_probability(std::size_t qubit, int outcome) const {
  check_qubit(qubit);
  if (outcome != 0 && outcome != 1) throw ValidationError("outcome must be 0 or 1");
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t want = outcome ? bit : 0;
  const std::size_t n = amps_.size();
  const Complex* a = amps_.data();
  double p = 0.0;
#pragma omp parallel for reduction(+ : p) schedule(static)
  for (std::size_t i = 0; i < n; ++i)
    if ((i & bit) == want) p += std::norm(a[i]);
  return p;
}

std::vector<double> StateVector::register_distribution(std::span<const std::size_t> reg) const {
  for (std::size_t q : reg) check_qubit(q);
  std::vector<double> dist(std::size_t{1} << reg.size(), 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    std::size_t y = 0;
    for (std::size_t k = 0; k < reg.size(); ++k)
      if (i & (std::size_t{1} << reg[k])) y |= std::size_t{1} << k;
    dist[y] += std::norm(amps_[i]);
  }
  return dist;
}

}  // namespace qfode
