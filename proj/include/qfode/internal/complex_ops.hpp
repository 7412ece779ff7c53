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

#include <complex>
#include <cstddef>
#include <span>

namespace qfode::internal {

// Plain complex product; std::complex operator* routes through the
// NaN-recovering libgcc helper, which is several times slower in tight loops.
inline std::complex<double> cmul(std::complex<double> a, std::complex<double> b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Spreads the bits of `compact` over the positions not listed in `sorted_positions`,
/// leaving zeros at the listed positions.
inline std::size_t deposit_bits(std::size_t compact, std::span<const std::size_t> sorted_positions) {
  for (std::size_t p : sorted_positions) {
    const std::size_t low = compact & ((std::size_t{1} << p) - 1);
    compact = ((compact >> p) << (p + 1)) | low;
  }
  return compact;
}

}  // namespace qfode::internal
