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
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "qfode/errors.hpp"
#include "qfode/fourier_quadrature.hpp"

using namespace qfode;

namespace {

constexpr double kPi = std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm), right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

// Adaptive Simpson quadrature used as an independent oracle. Fixed panels first, so
// oscillatory integrands cannot fool the initial error estimate.
double quad(const std::function<double(double)>& f, double a = 0.0, double b = 1.0, double tol = 1e-13) {
  constexpr int kPanels = 64;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = a + (b - a) * k / kPanels, hi = a + (b - a) * (k + 1) / kPanels;
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    total += simpson(f, lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), tol / kPanels, 40);
  }
  return total;
}

PolynomialInZ random_poly(std::mt19937_64& rng, std::size_t max_degree = 8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t deg = rng() % (max_degree + 1);
  std::vector<double> c(deg + 1);
  for (double& v : c) v = u(rng);
  return PolynomialInZ(c);
}

double series_integral_exact(const FourierSeries& s) {
  return series_integral(s, UniversalIntegrals::exact(s.order()));
}

}  // namespace

TEST(Polynomial, TrimAndEvaluate) {
  const PolynomialInZ p({1.0, 2.0, 0.0, 0.0});
  EXPECT_EQ(p.coefficients().size(), 2u);
  EXPECT_EQ(p.degree(), 1u);
  EXPECT_DOUBLE_EQ(p(0.5), 2.0);
  EXPECT_DOUBLE_EQ(p.unit_integral(), 2.0);
  EXPECT_TRUE(PolynomialInZ({0.0, 0.0}).is_zero());
  const PolynomialInZ q = p + 2.0 * PolynomialInZ({0.0, 0.0, 3.0});
  EXPECT_DOUBLE_EQ(q(1.0), 9.0);
  EXPECT_DOUBLE_EQ(q.derivative()(1.0), 14.0);
}

TEST(TrigMoments, Examples) {
  const auto m2 = trig_moments(0, 2);
  EXPECT_NEAR(m2.sin[0], 0.0, 1e-16);
  EXPECT_NEAR(m2.cos[0], 0.0, 1e-16);
  const auto m1 = trig_moments(1, 1);
  EXPECT_NEAR(m1.sin[0], 2.0 / kPi, 1e-15);
  EXPECT_NEAR(m1.sin[1], 1.0 / kPi, 1e-15);
  EXPECT_NEAR(m1.cos[1], -2.0 / (kPi * kPi), 1e-15);
  EXPECT_THROW(trig_moments(3, 0), ValidationError);
}

TEST(TrigMoments, MatchAdaptiveQuadrature) {
  for (int n = 1; n <= 20; ++n) {
    const auto m = trig_moments(8, n);
    for (int p = 0; p <= 8; ++p) {
      const double c = quad([&](double z) { return std::pow(z, p) * std::cos(n * kPi * z); });
      const double s = quad([&](double z) { return std::pow(z, p) * std::sin(n * kPi * z); });
      EXPECT_NEAR(m.cos[p], c, 1e-10) << "p=" << p << " n=" << n;
      EXPECT_NEAR(m.sin[p], s, 1e-10) << "p=" << p << " n=" << n;
    }
  }
}

TEST(HalfRangeFourier, ZeroPadConstant) {
  const auto s = half_range_fourier(PolynomialInZ({1.0}), 6);
  EXPECT_DOUBLE_EQ(s.c, 0.5);
  EXPECT_DOUBLE_EQ(s.w, kPi);
  ASSERT_EQ(s.order(), 6u);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_NEAR(s.a[n - 1], 0.0, 1e-16);
    EXPECT_NEAR(s.b[n - 1], (1.0 - std::pow(-1.0, n)) / (n * kPi), 1e-15);
  }
}

TEST(HalfRangeFourier, ZeroPolynomial) {
  for (const auto ext : {Extension::ZeroPad, Extension::SmoothPeriodic}) {
    const auto s = half_range_fourier(PolynomialInZ(), 4, ext);
    EXPECT_EQ(s.c, 0.0);
    for (std::size_t n = 0; n < 4; ++n) {
      EXPECT_EQ(s.a[n], 0.0);
      EXPECT_EQ(s.b[n], 0.0);
    }
  }
}

TEST(HalfRangeFourier, ZeroPadLinear) {
  const auto s = half_range_fourier(PolynomialInZ({0.0, 1.0}), 1);
  EXPECT_NEAR(s.c, 0.25, 1e-16);
  EXPECT_NEAR(s.a[0], -2.0 / (kPi * kPi), 1e-15);
  EXPECT_NEAR(s.b[0], 1.0 / kPi, 1e-15);
}

TEST(HalfRangeFourier, CoefficientsMatchQuadratureOfExtension) {
  // Standard 2-periodic coefficients: a_n = int_0^2 f cos(n pi z), c = (1/2) int_0^2 f.
  const PolynomialInZ p({0.3, -1.2, 0.7, 2.0});
  const PolynomialInZ q = [&] {
    // Bridge on [1, 2) rebuilt here from Hermite basis functions.
    const double v0 = p(1.0), d0 = p.derivative()(1.0), v1 = p(0.0), d1 = p.derivative()(0.0);
    return PolynomialInZ({v0, d0, 0.0, 0.0}) +
           v0 * PolynomialInZ({0.0, 0.0, -3.0, 2.0}) + d0 * PolynomialInZ({0.0, 0.0, -2.0, 1.0}) +
           v1 * PolynomialInZ({0.0, 0.0, 3.0, -2.0}) + d1 * PolynomialInZ({0.0, 0.0, -1.0, 1.0});
  }();
  auto ext = [&](double z) { return z < 1.0 ? p(z) : q(z - 1.0); };
  const auto s = half_range_fourier(p, 5, Extension::SmoothPeriodic);
  EXPECT_NEAR(s.c, 0.5 * (quad(ext, 0.0, 1.0) + quad(ext, 1.0, 2.0)), 1e-12);
  for (int n = 1; n <= 5; ++n) {
    auto cs = [&](double z) { return ext(z) * std::cos(n * kPi * z); };
    auto sn = [&](double z) { return ext(z) * std::sin(n * kPi * z); };
    EXPECT_NEAR(s.a[n - 1], quad(cs, 0.0, 1.0) + quad(cs, 1.0, 2.0), 1e-11) << n;
    EXPECT_NEAR(s.b[n - 1], quad(sn, 0.0, 1.0) + quad(sn, 1.0, 2.0), 1e-11) << n;
  }
  // C^1 extension: the bridge matches value and slope at both joins.
  EXPECT_NEAR(q(0.0), p(1.0), 1e-15);
  EXPECT_NEAR(q(1.0), p(0.0), 1e-14);
}

TEST(HalfRangeFourier, SmoothExtensionConvergesPointwise) {
  const PolynomialInZ p({0.5, -2.0, 1.0, 3.0});
  const auto s = half_range_fourier(p, 64, Extension::SmoothPeriodic);
  for (const double z : {0.1, 0.37, 0.5, 0.9}) EXPECT_NEAR(s(z), p(z), 1e-4) << z;
  // Constant and the bridge coincide, so the series is exact.
  const auto one = half_range_fourier(PolynomialInZ({1.0}), 3, Extension::SmoothPeriodic);
  EXPECT_NEAR(one.c, 1.0, 1e-15);
  for (std::size_t n = 0; n < 3; ++n) EXPECT_NEAR(std::abs(one.a[n]) + std::abs(one.b[n]), 0.0, 1e-15);
}

TEST(HalfRangeFourier, SmoothExtensionIntegratesLinearExactly) {
  // The bridge reproduces affine data, so every truncation order is exact.
  const PolynomialInZ p({0.8, -1.7});
  for (const std::size_t nf : {0u, 1u, 4u, 32u}) {
    const auto s = half_range_fourier(p, nf, Extension::SmoothPeriodic);
    EXPECT_NEAR(series_integral_exact(s), p.unit_integral(), 1e-15) << nf;
  }
}

TEST(HalfRangeFourier, Linearity) {
  std::mt19937_64 rng(6);
  for (const auto ext : {Extension::ZeroPad, Extension::SmoothPeriodic}) {
    const PolynomialInZ p = random_poly(rng), q = random_poly(rng);
    const double alpha = 0.7, beta = -1.9;
    const auto sp = half_range_fourier(p, 12, ext), sq = half_range_fourier(q, 12, ext);
    const auto sc = half_range_fourier(alpha * p + beta * q, 12, ext);
    EXPECT_NEAR(sc.c, alpha * sp.c + beta * sq.c, 1e-12);
    for (std::size_t n = 0; n < 12; ++n) {
      EXPECT_NEAR(sc.a[n], alpha * sp.a[n] + beta * sq.a[n], 1e-12);
      EXPECT_NEAR(sc.b[n], alpha * sp.b[n] + beta * sq.b[n], 1e-12);
    }
  }
}

TEST(SeriesWeights, ExactUniversalValues) {
  const auto w = series_integral_weights(7, UniversalIntegrals::exact(7));
  for (int n = 1; n <= 7; ++n) {
    EXPECT_NEAR(w.cos_weight[n - 1], 0.0, 1e-15);
    EXPECT_NEAR(w.sin_weight[n - 1], (1.0 - std::pow(-1.0, n)) / (n * kPi), 1e-15);
  }
  EXPECT_THROW(series_integral_weights(8, UniversalIntegrals::exact(7)), ValidationError);
}

TEST(SeriesWeights, ConstantPartialSum) {
  const auto s = half_range_fourier(PolynomialInZ({1.0}), 10);
  const double expected = 0.5 + 4.0 / (kPi * kPi) * (1.0 + 1.0 / 9 + 1.0 / 25 + 1.0 / 49 + 1.0 / 81);
  EXPECT_NEAR(series_integral_exact(s), expected, 1e-14);
  EXPECT_NEAR(expected, 0.9798, 1e-4);
}

TEST(SeriesWeights, ConstantOnly) {
  const auto s = half_range_fourier(PolynomialInZ({0.3, 1.0}), 0);
  EXPECT_EQ(s.order(), 0u);
  EXPECT_DOUBLE_EQ(series_integral(s, {}), s.c);
}

TEST(SeriesWeights, ConvergesForRandomPolynomials) {
  std::mt19937_64 rng(1234);
  for (int t = 0; t < 100; ++t) {
    const PolynomialInZ p = random_poly(rng);
    const double exact = p.unit_integral();
    const double e4 = std::abs(series_integral_exact(half_range_fourier(p, 4, Extension::SmoothPeriodic)) - exact);
    const double e32 = std::abs(series_integral_exact(half_range_fourier(p, 32, Extension::SmoothPeriodic)) - exact);
    EXPECT_LT(e32, e4 + 1e-15) << t;
  }
}

TEST(Universal, AnalyticTenQubits) {
  UniversalIntegralCache cache;
  const auto u = populate_universal_integrals(2, 10, 1, Backend::Analytic, cache);
  EXPECT_NEAR(u.u1[0], 0.5, 2.0 / 1024.0);
  EXPECT_NEAR(u.u2[0], 0.5 - 1.0 / kPi, 2.0 / 1024.0);
  EXPECT_NEAR(u.u1[1], 0.5, 2.0 / 1024.0);
  EXPECT_NEAR(u.u2[1], 0.5, 2.0 / 1024.0);
}

TEST(Universal, CacheIsIdempotent) {
  UniversalIntegralCache cache;
  const auto first = populate_universal_integrals(5, 6, 4, Backend::Analytic, cache);
  EXPECT_EQ(cache.compute_count(), 5u);
  const auto again = populate_universal_integrals(5, 6, 4, Backend::Analytic, cache);
  EXPECT_EQ(cache.compute_count(), 5u);
  EXPECT_EQ(first.u1, again.u1);
  EXPECT_EQ(first.u2, again.u2);
  populate_universal_integrals(7, 6, 4, Backend::Analytic, cache);
  EXPECT_EQ(cache.compute_count(), 7u);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto v = cache.find({n, 6, 4, Backend::Analytic, GridConvention::Endpoint});
    ASSERT_TRUE(v.has_value());
    EXPECT_GE(v->first, 0.0);
    EXPECT_LE(v->first, 1.0);
    EXPECT_GE(v->second, 0.0);
    EXPECT_LE(v->second, 1.0);
  }
  EXPECT_FALSE(cache.find({1, 6, 4, Backend::Circuit, GridConvention::Endpoint}).has_value());
}

TEST(Universal, BackendConsistency) {
  UniversalIntegralCache cache;
  const auto a = populate_universal_integrals(4, 4, 6, Backend::Analytic, cache);
  const auto c = populate_universal_integrals(4, 4, 6, Backend::Circuit, cache);
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_LE(std::abs(a.u1[n] - c.u1[n]), qae_error_bound(6));
    EXPECT_LE(std::abs(a.u2[n] - c.u2[n]), qae_error_bound(6));
  }
}

TEST(Assemble, ZeroCoefficientsKeepState) {
  GridField y({"u"}, 3);
  y[0] = 1.0;
  y[1] = -2.0;
  y[2] = 3.5;
  const FourierField zero(3, 5);
  EXPECT_EQ(assemble_update(y, zero, 0.1, UniversalIntegrals::exact(5)), y);
}

TEST(Assemble, SizeMismatch) {
  GridField y({"u", "v"}, 2);
  EXPECT_THROW(assemble_update(y, FourierField(3, 2), 0.1, UniversalIntegrals::exact(2)), ValidationError);
  EXPECT_THROW(assemble_update(y, FourierField(4, 3), 0.1, UniversalIntegrals::exact(2)), ValidationError);
}

TEST(Assemble, ConstantDrivingApproachesHBar) {
  GridField y({"u"}, 1);
  y[0] = 2.0;
  const double hbar = 0.25;
  double prev_gap = 1.0;
  for (const std::size_t nf : {2u, 8u, 32u, 128u, 512u}) {
    FourierField f(1, nf);
    f.set(0, half_range_fourier(PolynomialInZ({1.0}), nf));
    const double gap = std::abs(assemble_update(y, f, hbar, UniversalIntegrals::exact(nf))[0] - (2.0 + hbar));
    EXPECT_LT(gap, prev_gap) << nf;
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-3 * hbar);
}

TEST(Assemble, ForwardEulerLimit) {
  GridField y({"u", "v"}, 2);
  const std::vector<double> f0 = {0.3, -1.1, 2.4, 0.05};
  for (std::size_t e = 0; e < 4; ++e) y[e] = 1.0 + e;
  const double hbar = 0.01;
  FourierField f(4, 64);
  for (std::size_t e = 0; e < 4; ++e) f.set(e, half_range_fourier(PolynomialInZ({f0[e]}), 64, Extension::SmoothPeriodic));
  const GridField next = assemble_update(y, f, hbar, UniversalIntegrals::exact(64));
  for (std::size_t e = 0; e < 4; ++e) EXPECT_NEAR(next[e], y[e] + hbar * f0[e], 1e-4);
}

TEST(Assemble, MatchesDirectQuadratureWithinTruncationError) {
  std::mt19937_64 rng(77);
  const double hbar = 0.05;
  const std::size_t nf = 10, pieces = 3;
  UniversalIntegralCache cache;
  const auto uni = populate_universal_integrals(nf, 10, 1, Backend::Analytic, cache);
  for (const auto ext : {Extension::ZeroPad, Extension::SmoothPeriodic}) {
    // Per piece polynomials; summing them first is exact by linearity.
    std::vector<PolynomialInZ> polys;
    PolynomialInZ sum;
    double direct = 0.0, series_exact = 0.0;
    for (std::size_t j = 0; j < pieces; ++j) {
      polys.push_back(random_poly(rng, 6));
      sum = sum + polys.back();
      direct += hbar * quad([&](double z) { return polys.back()(z); });
      series_exact += hbar * series_integral_exact(half_range_fourier(polys.back(), nf, ext));
    }
    FourierField f(1, nf);
    f.set(0, half_range_fourier(sum, nf, ext));
    GridField y({"u"}, 1);
    const double got = assemble_update(y, f, hbar, uni)[0];
    const double truncation = std::abs(series_exact - direct);
    // Universal integrals carry an O(2^-10) Riemann bias on top of the truncation error.
    double coeff_mass = 0.0;
    const FourierSeries s = f.series(0);
    for (std::size_t n = 0; n < nf; ++n) coeff_mass += std::abs(s.a[n]) + std::abs(s.b[n]);
    EXPECT_LE(std::abs(got - direct), truncation + 2.0 * hbar * coeff_mass * (2.0 / 1024.0) + 1e-13);
  }
}

TEST(FourierPlan, MatchesDirectTransform) {
  std::mt19937_64 rng(15);
  const std::size_t degree = 6, nf = 9, entries = 5;
  for (const auto ext : {Extension::ZeroPad, Extension::SmoothPeriodic}) {
    PolynomialField polys(degree, entries);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (auto& row : polys.rows)
      for (double& v : row) v = u(rng);
    const FourierPlan plan(degree, nf, ext);
    const FourierField got = plan.transform(polys);
    for (std::size_t e = 0; e < entries; ++e) {
      const FourierSeries want = half_range_fourier(polys.polynomial(e), nf, ext);
      const FourierSeries have = got.series(e);
      EXPECT_NEAR(have.c, want.c, 1e-12);
      for (std::size_t n = 0; n < nf; ++n) {
        EXPECT_NEAR(have.a[n], want.a[n], 1e-12);
        EXPECT_NEAR(have.b[n], want.b[n], 1e-12);
      }
    }
    PolynomialField too_high(degree + 1, entries);
    EXPECT_THROW(plan.transform(too_high), ValidationError);
  }
}
