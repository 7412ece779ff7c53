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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "qfode/errors.hpp"
#include "qfode/harness.hpp"
#include "qfode/pde_models.hpp"
#include "qfode/taylor_ode.hpp"

using namespace qfode;

namespace {

GridField scalar_state(double v) {
  GridField y({"u"}, 1);
  y[0] = v;
  return y;
}

QuadratureConfig quad_with(std::size_t nf) {
  QuadratureConfig q;
  q.n_fourier = nf;
  q.n_index_qubits = 10;
  return q;
}

}  // namespace

TEST(Partition, ReportedPairs) {
  const TimePartition a = select_partition(0.07, 1.0, 0.005, 256);
  EXPECT_EQ(a.k, 2u);
  EXPECT_EQ(a.n_k, 256u);
  const TimePartition b = select_partition(0.25, 1.0, 0.005, 16);
  EXPECT_EQ(b.k, 3u);
  EXPECT_EQ(b.n_k, 256u);
  EXPECT_DOUBLE_EQ(b.h, 0.25 / 16.0);
  EXPECT_DOUBLE_EQ(b.h_bar, 0.25 / 4096.0);
  EXPECT_FALSE(b.adjusted);
  EXPECT_EQ(k_from_epsilon(0.5, 2), 2u);
}

TEST(Partition, EpsilonRuleOnRandomPairs) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> log_eps(std::log(1e-9), std::log(0.999));
  for (int t = 0; t < 10000; ++t) {
    const double eps = std::exp(log_eps(rng));
    const std::size_t n = 2 + rng() % 300;
    const std::size_t k = k_from_epsilon(eps, n);
    ASSERT_GE(k, 2u);
    const double inv = 1.0 / eps;
    EXPECT_GE(std::pow(static_cast<double>(n), static_cast<double>(k - 1)), inv) << eps << " " << n;
    EXPECT_LT(std::pow(static_cast<double>(n), static_cast<double>(k - 2)), inv) << eps << " " << n;
  }
}

TEST(Partition, CflRaisesK) {
  const TimePartition p = select_partition(1.0, 1.25e-4, 0.005, 16);
  EXPECT_EQ(p.k_from_epsilon, 3u);
  EXPECT_EQ(p.k, 4u);
  EXPECT_TRUE(p.adjusted);
  EXPECT_LT(p.h_bar, 1.25e-4);
  EXPECT_THROW(select_partition(1.0, 1e-30, 0.5, 2, 12), ConfigError);
}

TEST(Partition, Errors) {
  EXPECT_THROW(k_from_epsilon(0.0, 16), ConfigError);
  EXPECT_THROW(k_from_epsilon(1.0, 16), ConfigError);
  EXPECT_THROW(k_from_epsilon(0.1, 1), ConfigError);
  EXPECT_THROW(select_partition(1.0, 0.0, 0.1, 4), ConfigError);
  EXPECT_THROW(make_partition(-1.0, 4, 2), ConfigError);
  EXPECT_THROW(fixed_partition(0.01, 5, 0), ConfigError);
  const TimePartition f = fixed_partition(0.01, 100, 64);
  EXPECT_DOUBLE_EQ(f.h_bar, 0.01 / 64.0);
  EXPECT_DOUBLE_EQ(f.T, 1.0);
  EXPECT_EQ(f.total_pieces(), 6400u);
}

TEST(Taylor, ExponentialSeries) {
  const auto model = build_scalar_model(0.0, 1.0, 0.0, 1.0);
  const TaylorPiece p = taylor_expand(scalar_state(1.0), *model, 0.0, 3);
  ASSERT_EQ(p.rows.size(), 5u);
  EXPECT_EQ(p.order(), 3);
  const double want[] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
  for (std::size_t q = 0; q < 5; ++q) EXPECT_NEAR(p.rows[q][0], want[q], 1e-15);
}

TEST(Taylor, RiccatiSeries) {
  const auto model = build_scalar_model(0.0, 0.0, 1.0, 1.0);
  const TaylorPiece p = taylor_expand(scalar_state(1.0), *model, 0.0, 2);
  ASSERT_EQ(p.rows.size(), 4u);
  for (std::size_t q = 0; q < 4; ++q) EXPECT_NEAR(p.rows[q][0], 1.0, 1e-15);
}

TEST(Taylor, ZeroRhsKeepsOnlyConstantRow) {
  const auto model = build_scalar_model(0.0, 0.0, 0.0, 2.0);
  const TaylorPiece p = taylor_expand(scalar_state(2.0), *model, 0.5, 4);
  EXPECT_EQ(p.rows[0][0], 2.0);
  for (std::size_t q = 1; q < p.rows.size(); ++q) EXPECT_EQ(p.rows[q][0], 0.0);
  EXPECT_EQ(p.evaluate(0.5)[0], 2.0);
  EXPECT_THROW(taylor_expand(scalar_state(1.0), *model, 0.0, -1), ValidationError);
  EXPECT_THROW(taylor_expand(GridField({"u"}, 2), *model, 0.0, 1), ValidationError);
}

TEST(Taylor, LocalOrder) {
  const auto model = build_scalar_model(0.0, -1.0, 0.0, 1.0);
  for (int r = 1; r <= 3; ++r) {
    std::vector<double> hs, errs;
    for (const double h : {0.2, 0.1, 0.05, 0.025}) {
      const TaylorPiece p = taylor_expand(scalar_state(1.0), *model, 0.0, r);
      hs.push_back(h);
      errs.push_back(std::abs(p.evaluate(h)[0] - std::exp(-h)));
    }
    EXPECT_NEAR(fit_loglog_slope(hs, errs), r + 2.0, 0.25) << "r=" << r;
  }
}

TEST(Propagate, ZeroRhsPiecesConstant) {
  const auto model = build_scalar_model(0.0, 0.0, 0.0, 3.0);
  const auto pieces = propagate_subinterval(scalar_state(3.0), *model, fixed_partition(0.1, 1, 8), 0, 2);
  ASSERT_EQ(pieces.size(), 8u);
  for (const auto& p : pieces) EXPECT_EQ(p.evaluate(p.t_start + p.h_bar)[0], 3.0);
}

TEST(Propagate, ExponentialChainAndContinuity) {
  const auto model = build_scalar_model(0.0, -1.0, 0.0, 1.0);
  const TimePartition part = fixed_partition(0.1, 1, 16);
  const auto pieces = propagate_subinterval(scalar_state(1.0), *model, part, 0, 3);
  ASSERT_EQ(pieces.size(), 16u);
  EXPECT_EQ(pieces.front().rows[0][0], 1.0);
  EXPECT_NEAR(pieces.back().evaluate(0.1)[0], std::exp(-0.1), 1e-6);
  for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
    const double t = pieces[j + 1].t_start;
    EXPECT_NEAR(t, (j + 1) * part.h_bar, 1e-15);
    EXPECT_EQ(pieces[j].evaluate(t)[0], pieces[j + 1].evaluate(t)[0]);
  }
}

TEST(Propagate, DivergenceNamesPiece) {
  const auto model = build_scalar_model(0.0, 0.0, 0.0, 1.0);
  try {
    propagate_subinterval(scalar_state(std::numeric_limits<double>::quiet_NaN()), *model,
                          fixed_partition(0.1, 4, 8), 2, 2);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.piece_index(), 16u);
  }
  // Blow-up of u' = u^2 inside a long piece chain.
  const auto riccati = build_scalar_model(0.0, 0.0, 1.0, 1.0);
  try {
    propagate_subinterval(scalar_state(1.0), *riccati, fixed_partition(1000.0, 1, 64), 0, 3);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_GT(e.piece_index(), 0u);
    EXPECT_LT(e.piece_index(), 64u);
  }
}

TEST(Advance, ZeroRhs) {
  const auto model = build_scalar_model(0.0, 0.0, 0.0, 1.5);
  const TimePartition part = fixed_partition(0.2, 1, 4);
  const auto pieces = propagate_subinterval(scalar_state(1.5), *model, part, 0, 2);
  const GridField next = advance_subinterval(scalar_state(1.5), pieces, *model, quad_with(8),
                                             UniversalIntegrals::exact(8));
  EXPECT_EQ(next[0], 1.5);
}

TEST(Advance, ConstantRhsGivesH) {
  const auto model = build_scalar_model(1.0, 0.0, 0.0, 0.0);
  const TimePartition part = fixed_partition(0.3, 1, 7);
  const auto pieces = propagate_subinterval(scalar_state(0.0), *model, part, 0, 2);
  QuadratureConfig q = quad_with(256);
  q.extension = Extension::ZeroPad;
  const GridField zp = advance_subinterval(scalar_state(0.0), pieces, *model, q, UniversalIntegrals::exact(256));
  // Zero padded constant: truncation of sum 4/(pi^2 (2m+1)^2) beyond N_f.
  EXPECT_NEAR(zp[0], 0.3, 0.3 * 4.0 / (9.8696 * 256.0));
  q.extension = Extension::SmoothPeriodic;
  const GridField sm = advance_subinterval(scalar_state(0.0), pieces, *model, q, UniversalIntegrals::exact(256));
  EXPECT_NEAR(sm[0], 0.3, 1e-14);
}

TEST(Advance, DecayWithAnalyticBackend) {
  const auto model = build_scalar_model(0.0, -1.0, 0.0, 1.0);
  const TimePartition part = fixed_partition(0.05, 1, 16);
  const auto pieces = propagate_subinterval(scalar_state(1.0), *model, part, 0, 3);
  UniversalIntegralCache cache;
  const QuadratureConfig q = quad_with(32);
  const auto uni = populate_universal_integrals(32, q.n_index_qubits, q.m_eval_qubits, q.backend, cache);
  const GridField next = advance_subinterval(scalar_state(1.0), pieces, *model, q, uni);
  EXPECT_NEAR(next[0], std::exp(-0.05), 1e-4);
}

TEST(Solve, ScalarDecay) {
  const auto model = build_scalar_model(0.0, -1.0, 0.0, 1.0);
  SolveOptions opt;
  opt.taylor_order = 3;
  opt.quad = quad_with(32);
  opt.keep_trajectory = true;
  UniversalIntegralCache cache;
  const Solution sol = solve(*model, make_partition(1.0, 8, 2), opt, cache);
  EXPECT_EQ(sol.subintervals_run, 8u);
  EXPECT_FALSE(sol.stopped_early);
  EXPECT_DOUBLE_EQ(sol.final_time, 1.0);
  EXPECT_NEAR(sol.final_state[0], std::exp(-1.0), 1e-4);
  ASSERT_EQ(sol.trajectory.size(), 9u);
  EXPECT_EQ(sol.trajectory.front()[0], 1.0);
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    EXPECT_NEAR(sol.times[i], i / 8.0, 1e-15);
    EXPECT_NEAR(sol.trajectory[i][0], std::exp(-sol.times[i]), 1e-4);
  }
}

TEST(Solve, ZeroRhsTrajectoryConstant) {
  const auto model = build_scalar_model(0.0, 0.0, 0.0, 0.25);
  SolveOptions opt;
  opt.keep_trajectory = true;
  UniversalIntegralCache cache;
  const Solution sol = solve(*model, make_partition(1.0, 4, 2), opt, cache);
  for (const auto& y : sol.trajectory) EXPECT_EQ(y[0], 0.25);
}

TEST(Solve, IndependentOfExactSolution) {
  const auto plain = build_scalar_model(0.1, -0.7, 0.2, 0.9);
  const auto with_exact = build_scalar_model(0.1, -0.7, 0.2, 0.9, [](double) { return 42.0; });
  SolveOptions opt;
  opt.taylor_order = 2;
  UniversalIntegralCache cache;
  const TimePartition part = make_partition(0.5, 4, 2);
  EXPECT_EQ(solve(*plain, part, opt, cache).final_state, solve(*with_exact, part, opt, cache).final_state);
}

TEST(Solve, FusedPathMatchesPieceApi) {
  const auto model = build_burgers_model(Mesh2D::uniform(11, 11), 0.05);
  const TimePartition part = make_partition(0.02, 2, 3);
  SolveOptions opt;
  opt.taylor_order = 2;
  opt.quad = quad_with(12);
  UniversalIntegralCache cache;
  const Solution fused = solve(*model, part, opt, cache);
  GridField y = model->initial_condition();
  for (std::size_t i = 0; i < part.n; ++i) {
    const auto pieces = propagate_subinterval(y, *model, part, i, opt.taylor_order);
    y = advance_subinterval(y, pieces, *model, opt.quad, fused.universal);
  }
  for (std::size_t e = 0; e < y.size(); ++e) EXPECT_NEAR(fused.final_state[e], y[e], 1e-13);
}

TEST(Solve, ObserverStopsEarly) {
  const auto model = build_scalar_model(0.0, -1.0, 0.0, 1.0);
  SolveOptions opt;
  std::vector<double> residuals;
  opt.observers.push_back([&](const SubintervalInfo& info) {
    residuals.push_back(info.residual);
    EXPECT_NEAR(info.t, (info.index + 1) * 0.125, 1e-15);
    return info.index < 2;
  });
  UniversalIntegralCache cache;
  const Solution sol = solve(*model, make_partition(1.0, 8, 2), opt, cache);
  EXPECT_EQ(sol.subintervals_run, 3u);
  EXPECT_TRUE(sol.stopped_early);
  ASSERT_EQ(residuals.size(), 3u);
  EXPECT_GT(residuals[0], residuals[2]);
  EXPECT_DOUBLE_EQ(sol.final_time, 0.375);
}

TEST(Solve, DivergenceCarriesPartialSolution) {
  const auto model = build_scalar_model(0.0, 0.0, 1.0, 1.0);
  SolveOptions opt;
  opt.taylor_order = 2;
  UniversalIntegralCache cache;
  try {
    solve(*model, make_partition(1000.0, 20, 1), opt, cache);
    FAIL() << "expected divergence";
  } catch (const SolveDivergenceError& e) {
    EXPECT_LT(e.partial().subintervals_run, 20u);
    EXPECT_TRUE(e.partial().final_state.all_finite());
    EXPECT_GE(e.piece_index(), e.partial().subintervals_run);
  }
  EXPECT_THROW(
      [&] {
        SolveOptions bad;
        bad.taylor_order = -1;
        solve(*model, make_partition(1.0, 2, 1), bad, cache);
      }(),
      ValidationError);
}

TEST(Solve, HeatMatchesClassicalRk4) {
  const auto model = build_heat_model(Mesh2D::uniform(21, 21));
  const TimePartition part = make_partition(0.07, 8, 3);
  ASSERT_LT(part.h_bar, model->cfl_time_scale(model->initial_condition()));
  SolveOptions opt;
  opt.taylor_order = 3;
  opt.quad = quad_with(64);
  UniversalIntegralCache cache;
  const Solution sol = solve(*model, part, opt, cache);
  const ReferenceResult ref = classical_reference_solve(*model, part.h_bar, part.T);
  EXPECT_LE(relative_l2(ref.field, sol.final_state), 1e-3);
}
