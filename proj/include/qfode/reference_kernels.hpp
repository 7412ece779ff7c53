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

// Straightforward serial kernels kept as test oracles and benchmark baselines
// for the OpenMP kernels in statevector.cpp.

#include <cstddef>
#include <span>
#include <vector>

#include "qfode/statevector.hpp"

namespace qfode::reference {

/// Loops over every basis index and tests the target bit.
void apply_single_qubit(std::span<Complex> amps, std::size_t qubit, const GateMatrix& gate);

/// out[i] = sum_l M[local(i), l] * in[i with target bits set to l] when all controls are 1.
std::vector<Complex> apply_dense(std::span<const Complex> amps, std::span<const std::size_t> targets,
                                 const GateMatrix& matrix, std::span<const std::size_t> controls = {});

/// Naive triple loop.
GateMatrix matmul(const GateMatrix& a, const GateMatrix& b);

/// Inverse DFT matrix in the statevector convention: entries 2^{-m/2} e^{-2 pi i x y / 2^m}.
GateMatrix inverse_dft_matrix(std::size_t num_qubits);

}  // namespace qfode::reference
