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

#include "qfode/amplitude_estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qfode/errors.hpp"

namespace qfode {

void SinSqIntegrand::validate() const {
  if (!(b_max > b_min)) throw ValidationError("SinSqIntegrand requires b_max > b_min");
}

double SinSqIntegrand::closed_form() const {
  validate();
  if (m == 0.0) return (b_max - b_min) * std::pow(std::sin(c), 2);
  const auto antiderivative = [&](double z) { return z / 2.0 - std::sin(2.0 * (m * z + c)) / (4.0 * m); };
  return antiderivative(b_max) - antiderivative(b_min);
}

OracleCircuit::OracleCircuit(std::size_t n_index_qubits, double alpha, double theta,
                             std::vector<CircuitOp> ops)
    : n_index_(n_index_qubits), alpha_(alpha), theta_(theta), ops_(std::move(ops)) {
  if (n_index_ < 1) throw ValidationError("oracle needs at least one index qubit");
}

namespace {

void apply_op(StateVector& s, const CircuitOp& op, std::size_t offset, bool inverse) {
  const double angle = inverse ? -op.angle : op.angle;
  switch (op.kind) {
    case CircuitOp::Kind::Hadamard:
      s.apply_single_qubit(offset + op.target, gates::hadamard());
      break;
    case CircuitOp::Kind::Ry:
      s.apply_single_qubit(offset + op.target, gates::ry(angle));
      break;
    case CircuitOp::Kind::ControlledRy:
      s.apply_controlled({offset + op.control}, offset + op.target, gates::ry(angle));
      break;
    case CircuitOp::Kind::Cnot:
      s.apply_controlled({offset + op.control}, offset + op.target, gates::pauli_x());
      break;
  }
}

}  // namespace

void OracleCircuit::apply(StateVector& state, std::size_t offset) const {
  for (const CircuitOp& op : ops_) apply_op(state, op, offset, false);
}

void OracleCircuit::apply_inverse(StateVector& state, std::size_t offset) const {
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) apply_op(state, *it, offset, true);
}

StateVector OracleCircuit::prepare() const {
  StateVector s = StateVector::zero(num_qubits());
  apply(s);
  return s;
}

GateMatrix OracleCircuit::to_matrix() const {
  const std::size_t d = std::size_t{1} << num_qubits();
  GateMatrix m(d);
  for (std::size_t b = 0; b < d; ++b) {
    std::vector<Complex> basis(d, 0.0);
    basis[b] = 1.0;
    StateVector s = StateVector::from_amplitudes(std::move(basis));
    apply(s);
    for (std::size_t r = 0; r < d; ++r) m(r, b) = s[r];
  }
  return m;
}

double OracleCircuit::good_probability() const { return prepare().marginal_probability(ancilla(), 1); }

std::vector<double> grid_points(double b_min, double b_max, std::size_t n_index_qubits,
                                GridConvention convention) {
  const std::size_t count = std::size_t{1} << n_index_qubits;
  std::vector<double> z(count);
  if (convention == GridConvention::Endpoint) {
    const double delta = (b_max - b_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) z[i] = b_min + static_cast<double>(i) * delta;
  } else {
    const double delta = (b_max - b_min) / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) z[i] = b_min + (static_cast<double>(i) + 0.5) * delta;
  }
  return z;
}

OracleCircuit build_sin_sq_oracle(const SinSqIntegrand& integrand, std::size_t n_index_qubits,
                                  GridConvention convention) {
  integrand.validate();
  if (n_index_qubits < 1) throw ValidationError("sin^2 oracle needs at least one index qubit");
  const double count = std::ldexp(1.0, static_cast<int>(n_index_qubits));
  const double span = integrand.b_max - integrand.b_min;
  double delta = 0.0, z0 = integrand.b_min;
  if (convention == GridConvention::Endpoint) {
    delta = span / (count - 1.0);
  } else {
    delta = span / count;
    z0 += 0.5 * delta;
  }
  const double theta = integrand.m * delta;
  const double alpha = integrand.m * z0 + integrand.c;

  const std::size_t anc = n_index_qubits;
  std::vector<CircuitOp> ops;
  for (std::size_t q = 0; q < n_index_qubits; ++q) ops.push_back({CircuitOp::Kind::Hadamard, q});
  ops.push_back({CircuitOp::Kind::Ry, anc, 0, 2.0 * alpha});
  for (std::size_t j = 0; j < n_index_qubits; ++j) {
    const double angle = std::ldexp(theta, static_cast<int>(j) + 1);
    ops.push_back({CircuitOp::Kind::ControlledRy, anc, j, angle});
  }
  return OracleCircuit(n_index_qubits, alpha, theta, std::move(ops));
}

double riemann_mean(const SinSqIntegrand& integrand, std::size_t n_index_qubits,
                    GridConvention convention) {
  integrand.validate();
  const auto z = grid_points(integrand.b_min, integrand.b_max, n_index_qubits, convention);
  double s = 0.0;
  for (double zi : z) s += std::pow(std::sin(integrand.m * zi + integrand.c), 2);
  return s / static_cast<double>(z.size());
}

GeneralIntegrand GeneralIntegrand::from_values(const std::vector<double>& f_values) {
  if (f_values.empty()) throw ValidationError("GeneralIntegrand needs samples");
  const auto [lo, hi] = std::minmax_element(f_values.begin(), f_values.end());
  GeneralIntegrand g;
  g.f_min = *lo;
  g.f_max = *hi;
  g.samples.resize(f_values.size(), 0.0);
  if (g.f_max > g.f_min) {
    for (std::size_t i = 0; i < f_values.size(); ++i)
      g.samples[i] = (f_values[i] - g.f_min) / (g.f_max - g.f_min);
  } else {
    g.f_max = g.f_min + 1.0;
  }
  return g;
}

OracleCircuit build_general_oracle(const GeneralIntegrand& integrand, std::size_t n_index_qubits) {
  if (n_index_qubits < 1) throw ValidationError("general oracle needs at least one index qubit");
  const std::size_t count = std::size_t{1} << n_index_qubits;
  if (integrand.samples.size() != count) {
    throw ValidationError("general oracle expects " + std::to_string(count) + " samples, got " +
                          std::to_string(integrand.samples.size()));
  }
  std::vector<double> phi(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double g = integrand.samples[i];
    if (!(g >= 0.0 && g <= 1.0)) throw ValidationError("general oracle sample outside [0, 1]");
    phi[i] = 2.0 * std::asin(std::sqrt(g));
  }

  // Uniformly controlled rotation: phi_i = sum_l (-1)^{popcount(i & gray(l))} beta_l.
  const auto gray = [](std::size_t l) { return l ^ (l >> 1); };
  const std::size_t anc = n_index_qubits;
  std::vector<CircuitOp> ops;
  for (std::size_t q = 0; q < n_index_qubits; ++q) ops.push_back({CircuitOp::Kind::Hadamard, q});
  for (std::size_t l = 0; l < count; ++l) {
    double beta = 0.0;
    for (std::size_t i = 0; i < count; ++i)
      beta += (std::popcount(i & gray(l)) & 1) ? -phi[i] : phi[i];
    beta /= static_cast<double>(count);
    ops.push_back({CircuitOp::Kind::Ry, anc, 0, beta});
    const std::size_t flip = gray(l) ^ gray((l + 1) % count);
    ops.push_back({CircuitOp::Kind::Cnot, anc, static_cast<std::size_t>(std::countr_zero(flip))});
  }
  return OracleCircuit(n_index_qubits, 0.0, 0.0, std::move(ops));
}

GateMatrix grover_operator(const OracleCircuit& oracle, std::size_t dense_cap) {
  const std::size_t d = std::size_t{1} << oracle.num_qubits();
  if (d > dense_cap) {
    throw ResourceError("Grover operator dimension " + std::to_string(d) + " exceeds dense cap " +
                        std::to_string(dense_cap));
  }
  const StateVector psi = oracle.prepare();
  const std::size_t good_bit = std::size_t{1} << oracle.ancilla();
  GateMatrix q(d);
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double s_chi = (c & good_bit) ? -1.0 : 1.0;
      const Complex reflect = (r == c ? 1.0 : 0.0) - 2.0 * psi[r] * std::conj(psi[c]);
      q(r, c) = -reflect * s_chi;
    }
  }
  return q;
}

double qae_error_bound(std::size_t m_eval_qubits) {
  const double big_m = std::ldexp(1.0, static_cast<int>(m_eval_qubits));
  return std::numbers::pi / big_m + std::numbers::pi * std::numbers::pi / (big_m * big_m);
}

AmplitudeEstimate run_qae(const OracleCircuit& oracle, std::size_t m_eval_qubits,
                          std::size_t qubit_cap, std::size_t dense_cap) {
  if (m_eval_qubits < 1) throw ValidationError("QAE needs at least one evaluation qubit");
  const std::size_t n_sys = oracle.num_qubits();
  StateVector state = StateVector::zero(n_sys + m_eval_qubits, qubit_cap);
  GateMatrix power = grover_operator(oracle, dense_cap);

  std::vector<std::size_t> system(n_sys), eval(m_eval_qubits);
  std::iota(system.begin(), system.end(), std::size_t{0});
  std::iota(eval.begin(), eval.end(), n_sys);

  oracle.apply(state);
  for (std::size_t e : eval) state.apply_single_qubit(e, gates::hadamard());
  for (std::size_t j = 0; j < m_eval_qubits; ++j) {
    const std::size_t control[1] = {eval[j]};
    state.apply_dense_unitary(system, power, control);
    if (j + 1 < m_eval_qubits) power = power * power;
  }
  state.inverse_qft(eval);

  AmplitudeEstimate est;
  est.m_eval_qubits = m_eval_qubits;
  est.outcome_distribution = state.register_distribution(eval);
  std::size_t best = 0;
  for (std::size_t y = 1; y < est.outcome_distribution.size(); ++y)
    if (est.outcome_distribution[y] > est.outcome_distribution[best] + 1e-12) best = y;
  const std::size_t big_m = std::size_t{1} << m_eval_qubits;
  est.y_star = best;
  est.a_hat = std::pow(std::sin(std::numbers::pi * static_cast<double>(best) / static_cast<double>(big_m)), 2);
  est.theta_hat = std::numbers::pi * static_cast<double>(std::min(best, big_m - best)) /
                  static_cast<double>(big_m);
  return est;
}

Backend parse_backend(std::string_view name) {
  if (name == "circuit") return Backend::Circuit;
  if (name == "analytic") return Backend::Analytic;
  throw ValidationError("unknown quantum backend '" + std::string(name) + "'");
}

std::string_view to_string(Backend backend) {
  return backend == Backend::Circuit ? "circuit" : "analytic";
}

double estimate_integral(const SinSqIntegrand& integrand, std::size_t n_index_qubits,
                         std::size_t m_eval_qubits, Backend backend, GridConvention convention) {
  integrand.validate();
  const double span = integrand.b_max - integrand.b_min;
  if (backend == Backend::Analytic) return span * riemann_mean(integrand, n_index_qubits, convention);
  const OracleCircuit oracle = build_sin_sq_oracle(integrand, n_index_qubits, convention);
  return span * run_qae(oracle, m_eval_qubits).a_hat;
}

}  // namespace qfode
