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

// Fourier reduction of per-step driving-function integrals.
//
// A polynomial p on z in [0, 1] is extended to a 2-periodic function (w = pi)
// and its Fourier coefficients are computed exactly from trigonometric moments.
// Every oscillatory term is then rewritten through double-angle identities as a
// sin^2 integral, so the only quantum work per step is the pair of universal
// integrals U1(n) = int_0^1 sin^2(n w z / 2) dz and
// U2(n) = int_0^1 sin^2(pi/4 - n w z / 2) dz for n = 1..N_f.

#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "qfode/amplitude_estimation.hpp"
#include "qfode/grid.hpp"

namespace qfode {

/// Coefficient p is the coefficient of z^p; trailing zeros are trimmed.
class PolynomialInZ {
 public:
  PolynomialInZ() = default;
  explicit PolynomialInZ(std::vector<double> coefficients);

  const std::vector<double>& coefficients() const { return coeffs_; }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  double operator()(double z) const;
  PolynomialInZ derivative() const;
  /// int_0^1 p(z) dz.
  double unit_integral() const;

  friend PolynomialInZ operator+(const PolynomialInZ& a, const PolynomialInZ& b);
  friend PolynomialInZ operator*(double s, const PolynomialInZ& p);

 private:
  void trim();
  std::vector<double> coeffs_;
};

struct TrigMoments {
  /// cos[p] = int_0^1 z^p cos(n pi z) dz, sin[p] likewise.
  std::vector<double> cos;
  std::vector<double> sin;
};

/// Integration-by-parts recurrence for p = 0..max_degree; n >= 1.
TrigMoments trig_moments(std::size_t max_degree, int n);

/// How the polynomial on [0, 1) is continued over [1, 2) before expansion.
enum class Extension {
  /// Zero on [1, 2). Discontinuous, coefficients decay like 1/n.
  ZeroPad,
  /// Cubic Hermite bridge on [1, 2) matching value and slope at both ends, so the periodic
  /// extension is C^1 and coefficients decay like 1/n^3.
  SmoothPeriodic,
};

/// f(z) ~ c + sum_{n=1}^{N_f} a_n cos(n w z) + b_n sin(n w z).
struct FourierSeries {
  double c = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  double w = std::numbers::pi;

  std::size_t order() const { return a.size(); }
  double operator()(double z) const;
};

/// Fourier coefficients of the 2-periodic extension of `poly`.
FourierSeries half_range_fourier(const PolynomialInZ& poly, std::size_t n_fourier,
                                 Extension extension = Extension::ZeroPad);

/// U1(n), U2(n) for n = 1..N_f (index n-1).
struct UniversalIntegrals {
  std::vector<double> u1;
  std::vector<double> u2;

  std::size_t order() const { return u1.size(); }
  /// Closed forms: U1 = 1/2, U2 = 1/2 + ((-1)^n - 1) / (2 n pi).
  static UniversalIntegrals exact(std::size_t n_fourier);
};

/// Integral weights of the oscillatory terms after the double-angle rewrite:
/// int_0^1 cos(n w z) = 1 - 2 U1(n), int_0^1 sin(n w z) = 1 - 2 U2(n).
struct SeriesWeights {
  std::vector<double> cos_weight;
  std::vector<double> sin_weight;
};

/// Requires universal.order() >= n_fourier.
SeriesWeights series_integral_weights(std::size_t n_fourier, const UniversalIntegrals& universal);

/// c + sum_n a_n (1 - 2 U1(n)) + b_n (1 - 2 U2(n)).
double series_integral(const FourierSeries& series, const UniversalIntegrals& universal);

struct UniversalKey {
  std::size_t n = 0;
  std::size_t n_index_qubits = 0;
  std::size_t m_eval_qubits = 0;
  Backend backend = Backend::Analytic;
  GridConvention convention = GridConvention::Endpoint;

  auto tie() const { return std::tie(n, n_index_qubits, m_eval_qubits, backend, convention); }
  friend bool operator<(const UniversalKey& l, const UniversalKey& r) { return l.tie() < r.tie(); }
};

/// Write-once store of universal integral pairs shared by all steps of all runs.
class UniversalIntegralCache {
 public:
  std::optional<std::pair<double, double>> find(const UniversalKey& key) const;
  /// Returns the stored pair; computes and inserts it under the lock if missing.
  template <typename Compute>
  std::pair<double, double> get_or_compute(const UniversalKey& key, Compute&& compute);

  std::size_t size() const;
  /// Number of times an entry had to be computed.
  std::size_t compute_count() const;

 private:
  mutable std::mutex mutex_;
  std::map<UniversalKey, std::pair<double, double>> entries_;
  std::size_t computes_ = 0;
};

template <typename Compute>
std::pair<double, double> UniversalIntegralCache::get_or_compute(const UniversalKey& key,
                                                                 Compute&& compute) {
  std::lock_guard lock(mutex_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  const std::pair<double, double> value = compute();
  ++computes_;
  entries_.emplace(key, value);
  return value;
}

/// Fills U1(n), U2(n) for n = 1..N_f through estimate_integral with (m, c) = (n w / 2, 0)
/// and (-n w / 2, pi/4) on [0, 1]. Idempotent.
UniversalIntegrals populate_universal_integrals(std::size_t n_fourier, std::size_t n_index_qubits,
                                                std::size_t m_eval_qubits, Backend backend,
                                                UniversalIntegralCache& cache,
                                                GridConvention convention = GridConvention::Endpoint);

/// Per-entry polynomials in z stored coefficient-major: row p holds the z^p coefficient of
/// every state entry.
struct PolynomialField {
  std::size_t entries = 0;
  std::vector<std::vector<double>> rows;

  PolynomialField() = default;
  PolynomialField(std::size_t degree, std::size_t entries);
  std::size_t degree() const { return rows.empty() ? 0 : rows.size() - 1; }
  PolynomialInZ polynomial(std::size_t entry) const;
  void set_zero();
};

/// Per-entry Fourier series; a and b are entry-major with stride n_fourier.
struct FourierField {
  std::size_t entries = 0;
  std::size_t n_fourier = 0;
  std::vector<double> c;
  std::vector<double> a;
  std::vector<double> b;

  FourierField() = default;
  FourierField(std::size_t entries, std::size_t n_fourier);
  FourierSeries series(std::size_t entry) const;
  void set(std::size_t entry, const FourierSeries& s);
};

/// Precomputed linear map from polynomial coefficients (degree <= D) to Fourier coefficients.
/// Column p is half_range_fourier of the monomial z^p.
class FourierPlan {
 public:
  FourierPlan(std::size_t max_degree, std::size_t n_fourier, Extension extension);

  std::size_t max_degree() const { return max_degree_; }
  std::size_t n_fourier() const { return n_fourier_; }
  Extension extension() const { return extension_; }

  FourierField transform(const PolynomialField& polys) const;

 private:
  std::size_t max_degree_;
  std::size_t n_fourier_;
  Extension extension_;
  std::vector<double> c_;  // [p]
  std::vector<double> a_;  // [n * (D+1) + p]
  std::vector<double> b_;
};

/// y_{i+1} = y_i - sum_n (2 hbar A_n) U1(n) - sum_n (2 hbar B_n) U2(n)
///           + hbar sum_n (A_n + B_n) + hbar C,
/// entry by entry, where (C, A_n, B_n) are the series summed over sub-subintervals.
GridField assemble_update(const GridField& y, const FourierField& summed, double h_bar,
                          const UniversalIntegrals& universal);

}  // namespace qfode
