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

// Oracles, the Grover-like amplification operator and phase-estimation based
// amplitude estimation (QAE), plus the sin^2 integral readout built on them.
//
// Register layout of every oracle: index qubits 0..n-1 (qubit j is bit j of the
// grid index i), ancilla qubit n. A QAE run appends the evaluation register on
// qubits n+1..n+m.

#include <cstddef>
#include <string_view>
#include <vector>

#include "qfode/statevector.hpp"

namespace qfode {

/// Integral of sin^2(m z + c) over [b_min, b_max].
struct SinSqIntegrand {
  double m = 0.0;
  double c = 0.0;
  double b_min = 0.0;
  double b_max = 1.0;

  /// Throws ValidationError unless b_max > b_min.
  void validate() const;
  /// Closed-form value of the integral.
  double closed_form() const;
};

/// Sample placement on [b_min, b_max] with 2^n index states.
enum class GridConvention {
  /// z_i = b_min + i*delta, delta = (b_max - b_min)/(2^n - 1); both endpoints sampled.
  Endpoint,
  /// z_i = b_min + (i + 1/2)*delta, delta = (b_max - b_min)/2^n.
  Midpoint,
};

struct CircuitOp {
  enum class Kind { Hadamard, Ry, ControlledRy, Cnot };
  Kind kind;
  std::size_t target;
  std::size_t control = 0;
  double angle = 0.0;
};

/// State-preparation unitary A as an explicit gate list.
class OracleCircuit {
 public:
  OracleCircuit(std::size_t n_index_qubits, double alpha, double theta, std::vector<CircuitOp> ops);

  std::size_t n_index_qubits() const { return n_index_; }
  std::size_t num_qubits() const { return n_index_ + 1; }
  std::size_t ancilla() const { return n_index_; }
  /// Half-angle offset and per-index increment of the sin^2 construction (zero for general oracles).
  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }

  /// Applies A to qubits offset..offset+n of `state`.
  void apply(StateVector& state, std::size_t offset = 0) const;
  /// Applies A^{-1}.
  void apply_inverse(StateVector& state, std::size_t offset = 0) const;
  /// A|0>_{n+1}.
  StateVector prepare() const;
  /// Dense matrix of A, column b = A|b>.
  GateMatrix to_matrix() const;
  /// Ancilla-|1> probability of A|0>.
  double good_probability() const;

 private:
  std::size_t n_index_;
  double alpha_;
  double theta_;
  std::vector<CircuitOp> ops_;
};

/// Grid points z_i for 2^n index states.
std::vector<double> grid_points(double b_min, double b_max, std::size_t n_index_qubits,
                                GridConvention convention = GridConvention::Endpoint);

/// H on the index register, R_y(2 alpha) on the ancilla, then R_y(2^{j+1} theta) on the
/// ancilla controlled by index qubit j, so the ancilla half-angle at index i is m z_i + c.
OracleCircuit build_sin_sq_oracle(const SinSqIntegrand& integrand, std::size_t n_index_qubits,
                                  GridConvention convention = GridConvention::Endpoint);

/// (1/2^n) sum_i sin^2(m z_i + c): the exact ancilla probability of the sin^2 oracle.
double riemann_mean(const SinSqIntegrand& integrand, std::size_t n_index_qubits,
                    GridConvention convention = GridConvention::Endpoint);

/// Samples g(z_i) in [0, 1] of a rescaled driving function, g = (f - f_min)/(f_max - f_min).
struct GeneralIntegrand {
  std::vector<double> samples;
  double f_min = 0.0;
  double f_max = 1.0;

  /// Rescales raw samples f(z_i). A constant function maps to g = 0 with f_min = f.
  static GeneralIntegrand from_values(const std::vector<double>& f_values);
  /// Undoes the rescaling of a mean of g.
  double integral_from_mean(double g_mean) const { return f_min + (f_max - f_min) * g_mean; }
};

/// Multiplexed R_y(2 asin sqrt(g_i)) on the ancilla, decomposed into 2^n R_y and 2^n CNOT gates.
OracleCircuit build_general_oracle(const GeneralIntegrand& integrand, std::size_t n_index_qubits);

inline constexpr std::size_t kDefaultDenseCap = std::size_t{1} << 12;

/// Q = -A S_0 A^{-1} S_chi on the n+1 oracle qubits, where S_chi flips the sign of ancilla-|1>
/// states and S_0 flips |0>_{n+1}. Assembled from psi = A|0> as Q = -(I - 2|psi><psi|) S_chi.
GateMatrix grover_operator(const OracleCircuit& oracle, std::size_t dense_cap = kDefaultDenseCap);

struct AmplitudeEstimate {
  double a_hat = 0.0;
  double theta_hat = 0.0;
  std::size_t m_eval_qubits = 0;
  std::size_t y_star = 0;
  /// Probability of every evaluation-register outcome y.
  std::vector<double> outcome_distribution;
};

/// pi/2^m + pi^2/2^{2m}.
double qae_error_bound(std::size_t m_eval_qubits);

/// H on the evaluation register, controlled-Q^{2^j} from evaluation qubit j, inverse QFT on the
/// evaluation register, then the most probable y (smaller y on ties) gives a_hat = sin^2(pi y / 2^m).
AmplitudeEstimate run_qae(const OracleCircuit& oracle, std::size_t m_eval_qubits,
                          std::size_t qubit_cap = kDefaultQubitCap,
                          std::size_t dense_cap = kDefaultDenseCap);

enum class Backend { Circuit, Analytic };

/// "circuit" or "analytic"; anything else is a ValidationError.
Backend parse_backend(std::string_view name);
std::string_view to_string(Backend backend);

/// (b_max - b_min) * a, where a is the QAE estimate (circuit) or the exact grid mean (analytic).
double estimate_integral(const SinSqIntegrand& integrand, std::size_t n_index_qubits,
                         std::size_t m_eval_qubits, Backend backend,
                         GridConvention convention = GridConvention::Endpoint);

}  // namespace qfode
