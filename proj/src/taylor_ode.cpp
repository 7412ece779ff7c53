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

#include "qfode/taylor_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qfode {
namespace {

std::size_t composition_degree(const Model& model, int r) {
  return static_cast<std::size_t>(model.rhs_degree()) * static_cast<std::size_t>(r + 1);
}

// Streams q = 0..degree through the evaluator. rows[0] must hold the seed; rows[1..r+1] receive
// U_{q+1} = F_q / (q + 1). With accum, F_q h_bar^q is added into accum row q (inputs beyond
// r + 1 are zero, so F_q is then the exact coefficient of f(A(t)) for the degree r + 1 polynomial A).
void stream_piece(SeriesEvaluator& ev, int r, std::size_t degree, double h_bar,
                  std::vector<std::vector<double>>& rows, PolynomialField* accum,
                  std::vector<double>& f, const std::vector<double>& zeros) {
  ev.reset();
  const std::size_t last_row = static_cast<std::size_t>(r) + 1;
  double scale = 1.0;
  for (std::size_t q = 0; q <= degree; ++q) {
    const std::vector<double>& u = q <= last_row ? rows[q] : zeros;
    ev.next(u, f);
    if (q < last_row) {
      const double inv = 1.0 / static_cast<double>(q + 1);
      std::vector<double>& next = rows[q + 1];
      for (std::size_t e = 0; e < f.size(); ++e) next[e] = f[e] * inv;
    }
    if (accum != nullptr) {
      std::vector<double>& acc = accum->rows[q];
      for (std::size_t e = 0; e < f.size(); ++e) acc[e] += f[e] * scale;
      scale *= h_bar;
    }
  }
}

void horner(const std::vector<std::vector<double>>& rows, double tau, std::span<double> out) {
  const std::size_t entries = out.size();
  std::copy(rows.back().begin(), rows.back().end(), out.begin());
  for (std::size_t q = rows.size() - 1; q-- > 0;)
    for (std::size_t e = 0; e < entries; ++e) out[e] = out[e] * tau + rows[q][e];
}

std::vector<std::vector<double>> fresh_rows(int r, std::size_t entries) {
  return std::vector<std::vector<double>>(static_cast<std::size_t>(r) + 2, std::vector<double>(entries, 0.0));
}

void check_order(int r) {
  if (r < 0) throw ValidationError("Taylor order must be >= 0, got " + std::to_string(r));
}

std::size_t checked_power(std::size_t n, std::size_t e) {
  std::size_t p = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (p > std::numeric_limits<std::size_t>::max() / n) throw ConfigError("partition size overflows");
    p *= n;
  }
  return p;
}

}  // namespace

std::size_t k_from_epsilon(double epsilon1, std::size_t n) {
  if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) throw ConfigError("epsilon1 must lie in (0, 1)");
  if (n < 2) throw ConfigError("subinterval count n must be >= 2");
  const double target = 1.0 / epsilon1;
  std::size_t K = 0;
  double p = 1.0;
  while (p < target) {
    p *= static_cast<double>(n);
    ++K;
  }
  return K + 1;
}

TimePartition make_partition(double T, std::size_t n, std::size_t k) {
  if (!(T > 0.0)) throw ConfigError("T must be positive");
  if (n < 1 || k < 1) throw ConfigError("partition needs n >= 1 and k >= 1");
  TimePartition p;
  p.T = T;
  p.n = n;
  p.k = k;
  p.h = T / static_cast<double>(n);
  p.n_k = checked_power(n, k - 1);
  p.h_bar = p.h / static_cast<double>(p.n_k);
  return p;
}

TimePartition select_partition(double T, double dt_cfl, double epsilon1, std::size_t n, std::size_t k_cap) {
  if (!(dt_cfl > 0.0)) throw ConfigError("dt_cfl must be positive");
  const std::size_t k0 = k_from_epsilon(epsilon1, n);
  std::size_t k = k0;
  while (true) {
    if (k > k_cap) {
      throw ConfigError("no partition with k <= " + std::to_string(k_cap) + " satisfies h_bar < dt_cfl = " +
                        std::to_string(dt_cfl));
    }
    TimePartition p = make_partition(T, n, k);
    if (p.h_bar < dt_cfl) {
      p.epsilon1 = epsilon1;
      p.dt_cfl = dt_cfl;
      p.k_from_epsilon = k0;
      p.adjusted = k != k0;
      return p;
    }
    ++k;
  }
}

TimePartition fixed_partition(double h, std::size_t n, std::size_t n_k) {
  if (!(h > 0.0) || n < 1 || n_k < 1) throw ConfigError("fixed partition needs h > 0, n >= 1, N_k >= 1");
  TimePartition p;
  p.n = n;
  p.h = h;
  p.T = h * static_cast<double>(n);
  p.n_k = n_k;
  p.k = 0;
  p.h_bar = h / static_cast<double>(n_k);
  return p;
}

std::vector<double> TaylorPiece::evaluate(double t) const {
  std::vector<double> out(entries());
  horner(rows, t - t_start, out);
  return out;
}

TaylorPiece taylor_expand(const GridField& y, const Model& model, double t_start, int r, double h_bar) {
  check_order(r);
  if (y.size() != model.state_size()) throw ValidationError("taylor_expand: state size mismatch");
  TaylorPiece piece;
  piece.t_start = t_start;
  piece.h_bar = h_bar;
  piece.rows = fresh_rows(r, y.size());
  std::copy(y.values().begin(), y.values().end(), piece.rows[0].begin());
  auto ev = model.series_evaluator();
  std::vector<double> f(y.size()), zeros(y.size(), 0.0);
  stream_piece(*ev, r, static_cast<std::size_t>(r), h_bar, piece.rows, nullptr, f, zeros);
  return piece;
}

std::vector<TaylorPiece> propagate_subinterval(const GridField& y_i, const Model& model,
                                               const TimePartition& partition, std::size_t i, int r) {
  check_order(r);
  if (!y_i.all_finite()) throw DivergenceError("non-finite state entering subinterval " + std::to_string(i),
                                               i * partition.n_k);
  const std::size_t entries = y_i.size();
  auto ev = model.series_evaluator();
  std::vector<double> f(entries), zeros(entries, 0.0);
  std::vector<TaylorPiece> pieces;
  pieces.reserve(partition.n_k);
  GridField seed = y_i;
  const double t_i = partition.subinterval_start(i);
  for (std::size_t j = 0; j < partition.n_k; ++j) {
    const double t_ij = t_i + static_cast<double>(j) * partition.h_bar;
    if (j > 0) model.apply_bcs(seed, t_ij);
    TaylorPiece piece;
    piece.t_start = t_ij;
    piece.h_bar = partition.h_bar;
    piece.rows = fresh_rows(r, entries);
    std::copy(seed.values().begin(), seed.values().end(), piece.rows[0].begin());
    stream_piece(*ev, r, static_cast<std::size_t>(r), partition.h_bar, piece.rows, nullptr, f, zeros);
    horner(piece.rows, partition.h_bar, seed.values());
    if (!seed.all_finite()) {
      throw DivergenceError("non-finite Taylor value in sub-subinterval " + std::to_string(i * partition.n_k + j),
                            i * partition.n_k + j);
    }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

PolynomialField compose_driving_function(const TaylorPiece& piece, const Model& model) {
  const int r = piece.order();
  check_order(r);
  const std::size_t degree = composition_degree(model, r);
  const std::size_t entries = piece.entries();
  PolynomialField out(degree, entries);
  std::vector<std::vector<double>> rows = piece.rows;
  auto ev = model.series_evaluator();
  std::vector<double> f(entries), zeros(entries, 0.0);
  ev->reset();
  double scale = 1.0;
  for (std::size_t q = 0; q <= degree; ++q) {
    ev->next(q < rows.size() ? rows[q] : zeros, f);
    for (std::size_t e = 0; e < entries; ++e) out.rows[q][e] = f[e] * scale;
    scale *= piece.h_bar;
  }
  return out;
}

GridField advance_subinterval(const GridField& y_i, const std::vector<TaylorPiece>& pieces,
                              const Model& model, const QuadratureConfig& quad,
                              const UniversalIntegrals& universal) {
  if (pieces.empty()) throw ValidationError("advance_subinterval: no pieces");
  const double h_bar = pieces.front().h_bar;
  const std::size_t degree = composition_degree(model, pieces.front().order());
  PolynomialField summed(degree, y_i.size());
  for (const TaylorPiece& piece : pieces) {
    const PolynomialField g = compose_driving_function(piece, model);
    for (std::size_t q = 0; q <= degree; ++q)
      for (std::size_t e = 0; e < y_i.size(); ++e) summed.rows[q][e] += g.rows[q][e];
  }
  const FourierPlan plan(degree, quad.n_fourier, quad.extension);
  GridField next = assemble_update(y_i, plan.transform(summed), h_bar, universal);
  model.apply_bcs(next, pieces.back().t_start + h_bar);
  return next;
}

Solution solve(const Model& model, const TimePartition& partition, const SolveOptions& options,
               UniversalIntegralCache& cache) {
  const int r = options.taylor_order;
  check_order(r);
  const QuadratureConfig& quad = options.quad;
  Solution sol;
  sol.partition = partition;
  sol.universal = populate_universal_integrals(quad.n_fourier, quad.n_index_qubits, quad.m_eval_qubits,
                                               quad.backend, cache, quad.convention);

  GridField y = model.initial_condition();
  if (options.keep_trajectory) {
    sol.trajectory.push_back(y);
    sol.times.push_back(0.0);
  }
  const std::size_t entries = y.size();
  const std::size_t degree = composition_degree(model, r);
  const FourierPlan plan(degree, quad.n_fourier, quad.extension);
  auto ev = model.series_evaluator();
  std::vector<double> f(entries), zeros(entries, 0.0);
  std::vector<std::vector<double>> rows = fresh_rows(r, entries);
  PolynomialField summed(degree, entries);
  GridField seed = y;

  auto diverged = [&](const std::string& where, std::size_t piece) {
    sol.final_state = y;
    throw SolveDivergenceError("non-finite values " + where, piece, std::move(sol));
  };

  double t = 0.0;
  for (std::size_t i = 0; i < partition.n; ++i) {
    const double t_i = partition.subinterval_start(i);
    summed.set_zero();
    seed = y;
    for (std::size_t j = 0; j < partition.n_k; ++j) {
      if (j > 0) model.apply_bcs(seed, t_i + static_cast<double>(j) * partition.h_bar);
      std::copy(seed.values().begin(), seed.values().end(), rows[0].begin());
      stream_piece(*ev, r, degree, partition.h_bar, rows, &summed, f, zeros);
      horner(rows, partition.h_bar, seed.values());
      if (!seed.all_finite()) {
        const std::size_t piece = i * partition.n_k + j;
        diverged("in sub-subinterval " + std::to_string(piece), piece);
      }
    }
    GridField next = assemble_update(y, plan.transform(summed), partition.h_bar, sol.universal);
    t = partition.subinterval_start(i + 1);
    model.apply_bcs(next, t);
    if (!next.all_finite()) {
      const std::size_t piece = (i + 1) * partition.n_k - 1;
      diverged("after the update of subinterval " + std::to_string(i), piece);
    }
    double change = 0.0;
    for (std::size_t e = 0; e < entries; ++e) change = std::max(change, std::abs(next[e] - y[e]));
    y = std::move(next);
    sol.subintervals_run = i + 1;
    sol.last_residual = change / partition.h;
    if (options.keep_trajectory) {
      sol.trajectory.push_back(y);
      sol.times.push_back(t);
    }
    const SubintervalInfo info{i, t, &y, sol.last_residual};
    bool keep_going = true;
    for (const Observer& obs : options.observers) keep_going = obs(info) && keep_going;
    if (!keep_going) {
      sol.stopped_early = i + 1 < partition.n;
      break;
    }
  }
  sol.final_state = std::move(y);
  sol.final_time = t;
  return sol;
}

}  // namespace qfode
