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

// Two-level Taylor time stepping.
//
// [0, T] is split into n subintervals of length h, each into N_k = n^(k-1)
// sub-subintervals of length h_bar. On every sub-subinterval the solution is a
// degree r+1 Taylor polynomial seeded by the previous one; the subinterval
// update integrates f along that chain through the Fourier reduction.

#include <cstddef>
#include <functional>
#include <vector>

#include "qfode/amplitude_estimation.hpp"
#include "qfode/errors.hpp"
#include "qfode/fourier_quadrature.hpp"
#include "qfode/grid.hpp"
#include "qfode/pde_models.hpp"

namespace qfode {

inline constexpr std::size_t kDefaultKCap = 12;

struct TimePartition {
  double T = 0.0;
  std::size_t n = 1;
  std::size_t k = 1;
  double h = 0.0;
  std::size_t n_k = 1;
  double h_bar = 0.0;
  double epsilon1 = 0.0;
  double dt_cfl = 0.0;
  /// k before any CFL adjustment (0 when k was not derived from epsilon1).
  std::size_t k_from_epsilon = 0;
  bool adjusted = false;

  std::size_t total_pieces() const { return n * n_k; }
  double subinterval_start(std::size_t i) const { return static_cast<double>(i) * h; }
};

/// Smallest k with n^(k-1) >= 1/epsilon1 (k = 1 + ceil(ln(1/epsilon1) / ln n)).
std::size_t k_from_epsilon(double epsilon1, std::size_t n);

/// k from epsilon1, then raised until h_bar = T / n^k < dt_cfl. ConfigError beyond k_cap.
TimePartition select_partition(double T, double dt_cfl, double epsilon1, std::size_t n,
                               std::size_t k_cap = kDefaultKCap);
/// Explicit (n, k): h = T / n, N_k = n^(k-1).
TimePartition make_partition(double T, std::size_t n, std::size_t k);
/// Explicit subinterval length and sub-subinterval count; T = n * h.
TimePartition fixed_partition(double h, std::size_t n, std::size_t n_k);

/// A_{i,j}(t) = sum_q rows[q] (t - t_start)^q, q = 0..r+1.
struct TaylorPiece {
  double t_start = 0.0;
  double h_bar = 0.0;
  std::vector<std::vector<double>> rows;

  int order() const { return static_cast<int>(rows.size()) - 2; }
  std::size_t entries() const { return rows.empty() ? 0 : rows.front().size(); }
  std::vector<double> evaluate(double t) const;
};

/// U_0 = y, U_{q+1} = F_q / (q + 1) for q = 0..r. ValidationError for r < 0.
TaylorPiece taylor_expand(const GridField& y, const Model& model, double t_start, int r,
                          double h_bar = 0.0);

/// N_k pieces over subinterval i. Piece 0 starts at y_i; piece j+1 starts at piece j
/// evaluated at the shared boundary, with boundary conditions re-applied there.
/// DivergenceError names the global sub-subinterval index of the first non-finite value.
std::vector<TaylorPiece> propagate_subinterval(const GridField& y_i, const Model& model,
                                               const TimePartition& partition, std::size_t i, int r);

struct QuadratureConfig {
  std::size_t n_fourier = 10;
  Extension extension = Extension::SmoothPeriodic;
  Backend backend = Backend::Analytic;
  std::size_t n_index_qubits = 8;
  std::size_t m_eval_qubits = 8;
  GridConvention convention = GridConvention::Endpoint;
};

/// Per-entry polynomial in z of h_bar^q-scaled coefficients of f(A(t_start + h_bar z)), q = 0..D
/// with D = rhs_degree * (r + 1).
PolynomialField compose_driving_function(const TaylorPiece& piece, const Model& model);

/// y_{i+1} from the Fourier form of sum_j int f(A_{i,j}) over the pieces, then boundary
/// conditions at the subinterval end.
GridField advance_subinterval(const GridField& y_i, const std::vector<TaylorPiece>& pieces,
                              const Model& model, const QuadratureConfig& quad,
                              const UniversalIntegrals& universal);

struct SubintervalInfo {
  std::size_t index = 0;
  /// Time at the end of the subinterval.
  double t = 0.0;
  const GridField* y = nullptr;
  /// max |y_{i+1} - y_i| / h.
  double residual = 0.0;
};

/// Return false to stop the run after this subinterval.
using Observer = std::function<bool(const SubintervalInfo&)>;

struct SolveOptions {
  int taylor_order = 2;
  QuadratureConfig quad;
  bool keep_trajectory = false;
  std::vector<Observer> observers;
};

struct Solution {
  TimePartition partition;
  GridField final_state;
  double final_time = 0.0;
  std::size_t subintervals_run = 0;
  bool stopped_early = false;
  double last_residual = 0.0;
  UniversalIntegrals universal;
  /// y_0, y_1, ... when keep_trajectory is set.
  std::vector<GridField> trajectory;
  std::vector<double> times;
};

/// DivergenceError that also carries the trajectory up to the last finite node.
class SolveDivergenceError : public DivergenceError {
 public:
  SolveDivergenceError(const std::string& what, std::size_t piece_index, Solution partial)
      : DivergenceError(what, piece_index), partial_(std::move(partial)) {}
  const Solution& partial() const { return partial_; }

 private:
  Solution partial_;
};

/// Runs all n subintervals (or until an observer stops it) from the model's initial condition.
Solution solve(const Model& model, const TimePartition& partition, const SolveOptions& options,
               UniversalIntegralCache& cache);

}  // namespace qfode
