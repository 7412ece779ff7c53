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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "qfode/pde_models.hpp"
#include "qfode/reference_kernels.hpp"
#include "qfode/statevector.hpp"

namespace {

qfode::StateVector random_state(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  std::vector<qfode::Complex> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& z : a) {
    z = {d(rng), d(rng)};
    norm += std::norm(z);
  }
  for (auto& z : a) z /= std::sqrt(norm);
  return qfode::StateVector::from_amplitudes(std::move(a));
}

void BM_SingleQubitSerial(benchmark::State& st) {
  auto s = random_state(static_cast<std::size_t>(st.range(0)));
  const auto h = qfode::gates::hadamard();
  for (auto _ : st) {
    qfode::reference::apply_single_qubit(s.amplitudes(), 3, h);
    benchmark::ClobberMemory();
  }
}

void BM_SingleQubitParallel(benchmark::State& st) {
  auto s = random_state(static_cast<std::size_t>(st.range(0)));
  const auto h = qfode::gates::hadamard();
  for (auto _ : st) {
    s.apply_single_qubit(3, h);
    benchmark::ClobberMemory();
  }
}

qfode::GateMatrix random_unitaryish(std::size_t dim) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  qfode::GateMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = {d(rng), d(rng)};
  return m;
}

void BM_MatmulSerial(benchmark::State& st) {
  const auto a = random_unitaryish(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(qfode::reference::matmul(a, a));
}

void BM_MatmulParallel(benchmark::State& st) {
  const auto a = random_unitaryish(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(a * a);
}

void BM_BurgersRhsSerial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto model = qfode::build_burgers_model(qfode::Mesh2D::uniform(n, n), 0.01);
  const auto y = model->initial_condition();
  auto out = model->make_field();
  for (auto _ : st) {
    model->rhs(y, out);
    benchmark::ClobberMemory();
  }
}

void BM_BurgersRhsParallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto model = qfode::build_burgers_model(qfode::Mesh2D::uniform(n, n), 0.01);
  const auto y = model->initial_condition();
  auto out = model->make_field();
  auto ev = model->series_evaluator();
  for (auto _ : st) {
    ev->reset();
    ev->next(y.values(), out.values());
    benchmark::ClobberMemory();
  }
}

}  // namespace

BENCHMARK(BM_SingleQubitSerial)->Arg(16)->Arg(20);
BENCHMARK(BM_SingleQubitParallel)->Arg(16)->Arg(20);
BENCHMARK(BM_MatmulSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_MatmulParallel)->Arg(64)->Arg(256);
BENCHMARK(BM_BurgersRhsSerial)->Arg(101)->Arg(401);
BENCHMARK(BM_BurgersRhsParallel)->Arg(101)->Arg(401);

BENCHMARK_MAIN();
