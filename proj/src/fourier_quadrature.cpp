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

#include "qfode/fourier_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfode/errors.hpp"

namespace qfode {

PolynomialInZ::PolynomialInZ(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

void PolynomialInZ::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double PolynomialInZ::operator()(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PolynomialInZ PolynomialInZ::derivative() const {
  if (coeffs_.size() < 2) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t p = 1; p < coeffs_.size(); ++p) d[p - 1] = static_cast<double>(p) * coeffs_[p];
  return PolynomialInZ(std::move(d));
}

double PolynomialInZ::unit_integral() const {
  double s = 0.0;
  for (std::size_t p = 0; p < coeffs_.size(); ++p) s += coeffs_[p] / static_cast<double>(p + 1);
  return s;
}

PolynomialInZ operator+(const PolynomialInZ& a, const PolynomialInZ& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t p = 0; p < a.coeffs_.size(); ++p) c[p] += a.coeffs_[p];
  for (std::size_t p = 0; p < b.coeffs_.size(); ++p) c[p] += b.coeffs_[p];
  return PolynomialInZ(std::move(c));
}

PolynomialInZ operator*(double s, const PolynomialInZ& p) {
  std::vector<double> c = p.coeffs_;
  for (double& v : c) v *= s;
  return PolynomialInZ(std::move(c));
}

TrigMoments trig_moments(std::size_t max_degree, int n) {
  if (n < 1) throw ValidationError("trig_moments needs n >= 1");
  const double k = static_cast<double>(n) * std::numbers::pi;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
  TrigMoments m;
  m.cos.resize(max_degree + 1);
  m.sin.resize(max_degree + 1);
  m.cos[0] = 0.0;
  m.sin[0] = (1.0 - sign) / k;
  for (std::size_t p = 1; p <= max_degree; ++p) {
    const double pk = static_cast<double>(p) / k;
    m.sin[p] = -sign / k + pk * m.cos[p - 1];
    m.cos[p] = -pk * m.sin[p - 1];
  }
  return m;
}

double FourierSeries::operator()(double z) const {
  double s = c;
  for (std::size_t n = 1; n <= a.size(); ++n) {
    const double arg = static_cast<double>(n) * w * z;
    s += a[n - 1] * std::cos(arg) + b[n - 1] * std::sin(arg);
  }
  return s;
}

namespace {

// q(s) on [0, 1] with q(0) = p(1), q'(0) = p'(1), q(1) = p(0), q'(1) = p'(0).
PolynomialInZ hermite_bridge(const PolynomialInZ& p) {
  const PolynomialInZ dp = p.derivative();
  const double v0 = p(1.0), d0 = dp(1.0), v1 = p(0.0), d1 = dp(0.0);
  // Hermite basis h00 = 2s^3 - 3s^2 + 1, h10 = s^3 - 2s^2 + s, h01 = -2s^3 + 3s^2, h11 = s^3 - s^2.
  return PolynomialInZ({v0, d0, -3.0 * v0 - 2.0 * d0 + 3.0 * v1 - d1,
                        2.0 * v0 + d0 - 2.0 * v1 + d1});
}

double moment_sum(const std::vector<double>& coeffs, const std::vector<double>& moments) {
  double s = 0.0;
  for (std::size_t p = 0; p < coeffs.size(); ++p) s += coeffs[p] * moments[p];
  return s;
}

}  // namespace

FourierSeries half_range_fourier(const PolynomialInZ& poly, std::size_t n_fourier,
                                 Extension extension) {
  FourierSeries out;
  out.a.assign(n_fourier, 0.0);
  out.b.assign(n_fourier, 0.0);
  const bool smooth = extension == Extension::SmoothPeriodic;
  const PolynomialInZ bridge = smooth ? hermite_bridge(poly) : PolynomialInZ{};
  out.c = 0.5 * (poly.unit_integral() + bridge.unit_integral());
  if (n_fourier == 0 || (poly.is_zero() && bridge.is_zero())) return out;

  const std::size_t degree = std::max<std::size_t>(poly.degree(), 3);
  for (std::size_t n = 1; n <= n_fourier; ++n) {
    const TrigMoments m = trig_moments(degree, static_cast<int>(n));
    // On [1, 2): cos(n pi (s + 1)) = (-1)^n cos(n pi s), same for sin.
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out.a[n - 1] = moment_sum(poly.coefficients(), m.cos) + sign * moment_sum(bridge.coefficients(), m.cos);
    out.b[n - 1] = moment_sum(poly.coefficients(), m.sin) + sign * moment_sum(bridge.coefficients(), m.sin);
  }
  return out;
}

UniversalIntegrals UniversalIntegrals::exact(std::size_t n_fourier) {
  UniversalIntegrals u;
  for (std::size_t n = 1; n <= n_fourier; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    u.u1.push_back(0.5);
    u.u2.push_back(0.5 + (sign - 1.0) / (2.0 * static_cast<double>(n) * std::numbers::pi));
  }
  return u;
}

SeriesWeights series_integral_weights(std::size_t n_fourier, const UniversalIntegrals& universal) {
  if (universal.order() < n_fourier) {
    throw ValidationError("universal integrals populated to order " + std::to_string(universal.order()) +
                          ", need " + std::to_string(n_fourier));
  }
  SeriesWeights w;
  w.cos_weight.resize(n_fourier);
  w.sin_weight.resize(n_fourier);
  for (std::size_t n = 0; n < n_fourier; ++n) {
    w.cos_weight[n] = 1.0 - 2.0 * universal.u1[n];
    w.sin_weight[n] = 1.0 - 2.0 * universal.u2[n];
  }
  return w;
}

double series_integral(const FourierSeries& series, const UniversalIntegrals& universal) {
  const SeriesWeights w = series_integral_weights(series.order(), universal);
  double s = series.c;
  for (std::size_t n = 0; n < series.order(); ++n)
    s += series.a[n] * w.cos_weight[n] + series.b[n] * w.sin_weight[n];
  return s;
}

std::optional<std::pair<double, double>> UniversalIntegralCache::find(const UniversalKey& key) const {
  std::lock_guard lock(mutex_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::size_t UniversalIntegralCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t UniversalIntegralCache::compute_count() const {
  std::lock_guard lock(mutex_);
  return computes_;
}

UniversalIntegrals populate_universal_integrals(std::size_t n_fourier, std::size_t n_index_qubits,
                                                std::size_t m_eval_qubits, Backend backend,
                                                UniversalIntegralCache& cache,
                                                GridConvention convention) {
  constexpr double w = std::numbers::pi;
  UniversalIntegrals u;
  for (std::size_t n = 1; n <= n_fourier; ++n) {
    const UniversalKey key{n, n_index_qubits, m_eval_qubits, backend, convention};
    const auto [u1, u2] = cache.get_or_compute(key, [&] {
      const double half = static_cast<double>(n) * w / 2.0;
      const SinSqIntegrand first{half, 0.0, 0.0, 1.0};
      const SinSqIntegrand second{-half, std::numbers::pi / 4.0, 0.0, 1.0};
      return std::pair{estimate_integral(first, n_index_qubits, m_eval_qubits, backend, convention),
                       estimate_integral(second, n_index_qubits, m_eval_qubits, backend, convention)};
    });
    u.u1.push_back(u1);
    u.u2.push_back(u2);
  }
  return u;
}

PolynomialField::PolynomialField(std::size_t degree, std::size_t n_entries)
    : entries(n_entries), rows(degree + 1, std::vector<double>(n_entries, 0.0)) {}

PolynomialInZ PolynomialField::polynomial(std::size_t entry) const {
  std::vector<double> c(rows.size());
  for (std::size_t p = 0; p < rows.size(); ++p) c[p] = rows[p][entry];
  return PolynomialInZ(std::move(c));
}

void PolynomialField::set_zero() {
  for (auto& r : rows) std::fill(r.begin(), r.end(), 0.0);
}

FourierField::FourierField(std::size_t n_entries, std::size_t order)
    : entries(n_entries),
      n_fourier(order),
      c(n_entries, 0.0),
      a(n_entries * order, 0.0),
      b(n_entries * order, 0.0) {}

FourierSeries FourierField::series(std::size_t entry) const {
  FourierSeries s;
  s.c = c[entry];
  s.a.assign(a.begin() + static_cast<std::ptrdiff_t>(entry * n_fourier),
             a.begin() + static_cast<std::ptrdiff_t>((entry + 1) * n_fourier));
  s.b.assign(b.begin() + static_cast<std::ptrdiff_t>(entry * n_fourier),
             b.begin() + static_cast<std::ptrdiff_t>((entry + 1) * n_fourier));
  return s;
}

void FourierField::set(std::size_t entry, const FourierSeries& s) {
  if (s.order() != n_fourier) throw ValidationError("FourierField::set: order mismatch");
  c[entry] = s.c;
  std::copy(s.a.begin(), s.a.end(), a.begin() + static_cast<std::ptrdiff_t>(entry * n_fourier));
  std::copy(s.b.begin(), s.b.end(), b.begin() + static_cast<std::ptrdiff_t>(entry * n_fourier));
}

FourierPlan::FourierPlan(std::size_t max_degree, std::size_t n_fourier, Extension extension)
    : max_degree_(max_degree),
      n_fourier_(n_fourier),
      extension_(extension),
      c_(max_degree + 1),
      a_(n_fourier * (max_degree + 1)),
      b_(n_fourier * (max_degree + 1)) {
  const std::size_t stride = max_degree + 1;
  for (std::size_t p = 0; p <= max_degree; ++p) {
    std::vector<double> mono(p + 1, 0.0);
    mono[p] = 1.0;
    const FourierSeries s = half_range_fourier(PolynomialInZ(std::move(mono)), n_fourier, extension);
    c_[p] = s.c;
    for (std::size_t n = 0; n < n_fourier; ++n) {
      a_[n * stride + p] = s.a[n];
      b_[n * stride + p] = s.b[n];
    }
  }
}

FourierField FourierPlan::transform(const PolynomialField& polys) const {
  if (polys.degree() > max_degree_) throw ValidationError("FourierPlan: polynomial degree exceeds plan");
  const std::size_t entries = polys.entries;
  const std::size_t rows = polys.rows.size();
  const std::size_t stride = max_degree_ + 1;
  FourierField out(entries, n_fourier_);
#pragma omp parallel
  {
    std::vector<double> coeff(rows);
#pragma omp for schedule(static)
    for (std::size_t e = 0; e < entries; ++e) {
      for (std::size_t p = 0; p < rows; ++p) coeff[p] = polys.rows[p][e];
      double cs = 0.0;
      for (std::size_t p = 0; p < rows; ++p) cs += c_[p] * coeff[p];
      out.c[e] = cs;
      for (std::size_t n = 0; n < n_fourier_; ++n) {
        double as = 0.0, bs = 0.0;
        const double* arow = a_.data() + n * stride;
        const double* brow = b_.data() + n * stride;
        for (std::size_t p = 0; p < rows; ++p) {
          as += arow[p] * coeff[p];
          bs += brow[p] * coeff[p];
        }
        out.a[e * n_fourier_ + n] = as;
        out.b[e * n_fourier_ + n] = bs;
      }
    }
  }
  return out;
}

GridField assemble_update(const GridField& y, const FourierField& summed, double h_bar,
                          const UniversalIntegrals& universal) {
  if (summed.entries != y.size()) {
    throw ValidationError("assemble_update: " + std::to_string(summed.entries) +
                          " series for a state of " + std::to_string(y.size()) + " entries");
  }
  const std::size_t nf = summed.n_fourier;
  if (universal.order() < nf) throw ValidationError("assemble_update: universal integrals not populated");
  GridField next = y;
  const std::size_t entries = y.size();
#pragma omp parallel for schedule(static)
  for (std::size_t e = 0; e < entries; ++e) {
    const double* a = summed.a.data() + e * nf;
    const double* b = summed.b.data() + e * nf;
    double quantum = 0.0, constant = 0.0;
    for (std::size_t n = 0; n < nf; ++n) {
      quantum += (2.0 * h_bar * a[n]) * universal.u1[n] + (2.0 * h_bar * b[n]) * universal.u2[n];
      constant += a[n] + b[n];
    }
    next[e] = y[e] - quantum + h_bar * constant + h_bar * summed.c[e];
  }
  return next;
}

}  // namespace qfode
