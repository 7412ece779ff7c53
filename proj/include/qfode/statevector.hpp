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

#pragma once

// Dense statevector simulator.
//
// Bit order: bit j of a basis index is the value of qubit j (least significant
// first). A dense matrix acting on targets {t_0, t_1, ...} uses the same rule
// locally: bit k of its row/column index is qubit t_k.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfode {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultQubitCap = 24;

/// Dense row-major complex matrix of power-of-two dimension.
class GateMatrix {
 public:
  GateMatrix() = default;
  /// Zero matrix.
  explicit GateMatrix(std::size_t dim);
  /// Row-major entries; the count must be dim * dim.
  GateMatrix(std::size_t dim, std::initializer_list<Complex> entries);

  static GateMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  GateMatrix adjoint() const;
  bool is_unitary(double tol = 1e-10) const;
  double max_abs_diff(const GateMatrix& other) const;

  /// Parallel blocked product.
  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product; `low` acts on the less significant qubits.
GateMatrix kron(const GateMatrix& high, const GateMatrix& low);

namespace gates {
GateMatrix hadamard();
GateMatrix pauli_x();
/// R_y(angle) = [[cos(angle/2), -sin(angle/2)], [sin(angle/2), cos(angle/2)]].
GateMatrix ry(double angle);
/// diag(1, e^{i phi}).
GateMatrix phase(double phi);
/// Two-qubit swap.
GateMatrix swap();
}  // namespace gates

class StateVector {
 public:
  /// |0...0> on num_qubits qubits. Throws ResourceError above the cap.
  static StateVector zero(std::size_t num_qubits, std::size_t qubit_cap = kDefaultQubitCap);
  /// Takes ownership of amplitudes; the length must be a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;

  /// With validate = true the gate is checked for unitarity (tolerance 1e-10).
  void apply_single_qubit(std::size_t qubit, const GateMatrix& gate, bool validate = false);
  /// Applies gate on target in the subspace where every control qubit is 1.
  void apply_controlled(std::span<const std::size_t> controls, std::size_t target,
                        const GateMatrix& gate);
  void apply_controlled(std::initializer_list<std::size_t> controls, std::size_t target,
                        const GateMatrix& gate) {
    apply_controlled(std::span<const std::size_t>(controls.begin(), controls.size()), target, gate);
  }
  /// Dense unitary on a sub-register, optionally conditioned on controls.
  void apply_dense_unitary(std::span<const std::size_t> targets, const GateMatrix& matrix,
                           std::span<const std::size_t> controls = {});

  /// QFT|x> = 2^{-m/2} sum_y e^{+2 pi i x y / 2^m} |y>, x and y read from `reg` (reg[0] least significant).
  void qft(std::span<const std::size_t> reg);
  /// Inverse of qft(); built from Hadamards, controlled phases and swaps.
  void inverse_qft(std::span<const std::size_t> reg);

  /// Probability that `qubit` measures `outcome`.
  double marginal_probability(std::size_t qubit, int outcome) const;
  /// Exact distribution of the integer read from `reg` (reg[0] least significant).
  std::vector<double> register_distribution(std::span<const std::size_t> reg) const;

 private:
  StateVector() = default;
  void check_qubit(std::size_t q) const;

  std::size_t num_qubits_ = 0;
  std::vector<Complex> amps_;
};

}  // namespace qfode
