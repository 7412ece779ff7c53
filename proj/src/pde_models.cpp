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

#include "qfode/pde_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfode/errors.hpp"

namespace qfode {
namespace {

constexpr double kPi = std::numbers::pi;

// Zero every boundary entry of a component-major state.
void zero_boundary(const Mesh2D& mesh, std::size_t components, std::span<double> f) {
  const std::size_t np = mesh.num_points();
  for (std::size_t c = 0; c < components; ++c) {
    double* fc = f.data() + c * np;
    for (std::size_t i = 0; i < mesh.nx; ++i) {
      fc[mesh.index(i, 0)] = 0.0;
      fc[mesh.index(i, mesh.ny - 1)] = 0.0;
    }
    for (std::size_t j = 0; j < mesh.ny; ++j) {
      fc[mesh.index(0, j)] = 0.0;
      fc[mesh.index(mesh.nx - 1, j)] = 0.0;
    }
  }
}

double laplacian(const double* u, std::size_t k, std::size_t nx, double idx2, double idy2) {
  return (u[k + 1] - 2.0 * u[k] + u[k - 1]) * idx2 + (u[k + nx] - 2.0 * u[k] + u[k - nx]) * idy2;
}

double diffusive_scale(const Mesh2D& mesh, double coefficient, double cfl) {
  if (coefficient <= 0.0) return std::numeric_limits<double>::infinity();
  return cfl / (2.0 * coefficient * (1.0 / (mesh.dx * mesh.dx) + 1.0 / (mesh.dy * mesh.dy)));
}

double convective_scale(const Mesh2D& mesh, double speed, double cfl) {
  if (!(speed > 0.0)) return std::numeric_limits<double>::infinity();
  return cfl * std::min(mesh.dx, mesh.dy) / speed;
}

void require_2d(const Mesh2D& mesh, const char* who) {
  if (mesh.nx < 3 || mesh.ny < 3) throw ValidationError(std::string(who) + " needs at least 3x3 points");
}

// Holds U_0..U_q of the running expansion.
class History {
 public:
  void reset() { size_ = 0; }
  std::span<const double> push(std::span<const double> u) {
    if (size_ == rows_.size()) rows_.emplace_back();
    rows_[size_].assign(u.begin(), u.end());
    return rows_[size_++];
  }
  std::size_t size() const { return size_; }
  const double* operator[](std::size_t q) const { return rows_[q].data(); }

 private:
  std::vector<std::vector<double>> rows_;
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------------------------
// Heat

class HeatModel final : public Model {
 public:
  HeatModel(const Mesh2D& mesh, double alpha_sq) : Model("heat", mesh, {"u"}), alpha_sq_(alpha_sq) {}

  GridField initial_condition() const override {
    GridField f = make_field();
    const Mesh2D& m = mesh();
    for (std::size_t j = 0; j < m.ny; ++j)
      for (std::size_t i = 0; i < m.nx; ++i)
        f.at(0, m.index(i, j)) = std::sin(kPi * m.x(i)) * std::sin(kPi * m.y(j));
    apply_bcs(f, 0.0);
    return f;
  }

  void apply_bcs(GridField& field, double) const override {
    zero_boundary(mesh(), 1, field.values());
  }

  void rhs(const GridField& y, GridField& out) const override {
    const Mesh2D& m = mesh();
    const double* u = y.component(0).data();
    auto f = out.component(0);
    const double idx2 = 1.0 / (m.dx * m.dx), idy2 = 1.0 / (m.dy * m.dy);
    std::fill(f.begin(), f.end(), 0.0);
    for (std::size_t j = 1; j + 1 < m.ny; ++j)
      for (std::size_t i = 1; i + 1 < m.nx; ++i) {
        const std::size_t k = m.index(i, j);
        f[k] = alpha_sq_ * laplacian(u, k, m.nx, idx2, idy2);
      }
  }

  class Series final : public SeriesEvaluator {
   public:
    explicit Series(const HeatModel& model) : model_(model) {}
    void reset() override {}
    void next(std::span<const double> u_q, std::span<double> f_q) override {
      const Mesh2D& m = model_.mesh();
      const double idx2 = 1.0 / (m.dx * m.dx), idy2 = 1.0 / (m.dy * m.dy);
      const double a = model_.alpha_sq_;
      const double* u = u_q.data();
      const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(m.ny);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t jj = 1; jj < ny - 1; ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        for (std::size_t i = 1; i + 1 < m.nx; ++i) {
          const std::size_t k = m.index(i, j);
          f_q[k] = a * laplacian(u, k, m.nx, idx2, idy2);
        }
      }
      zero_boundary(m, 1, f_q);
    }

   private:
    const HeatModel& model_;
  };

  std::unique_ptr<SeriesEvaluator> series_evaluator() const override {
    return std::make_unique<Series>(*this);
  }
  int rhs_degree() const override { return 1; }

  std::optional<GridField> exact_solution(double t) const override {
    GridField f = make_field();
    const Mesh2D& m = mesh();
    const double decay = std::exp(-2.0 * alpha_sq_ * kPi * kPi * t);
    for (std::size_t j = 0; j < m.ny; ++j)
      for (std::size_t i = 0; i < m.nx; ++i)
        f.at(0, m.index(i, j)) = std::sin(kPi * m.x(i)) * std::sin(kPi * m.y(j)) * decay;
    apply_bcs(f, t);
    return f;
  }

  double cfl_time_scale(const GridField&, double cfl) const override {
    return diffusive_scale(mesh(), alpha_sq_, cfl);
  }

  std::vector<std::pair<std::string, double>> parameters() const override {
    return {{"alpha_sq", alpha_sq_}};
  }

 private:
  double alpha_sq_;
};

// ---------------------------------------------------------------------------------------------
// Viscous Burgers

double burgers_exact(double x, double y, double t, double nu) {
  return 1.0 / (1.0 + std::exp((x + y - t) / (2.0 * nu)));
}

class BurgersModel final : public Model {
 public:
  BurgersModel(const Mesh2D& mesh, double nu) : Model("burgers", mesh, {"u"}), nu_(nu) {}

  GridField initial_condition() const override { return *exact_solution(0.0); }

  void apply_bcs(GridField& field, double t) const override {
    const Mesh2D& m = mesh();
    auto set = [&](std::size_t i, std::size_t j) {
      field.at(0, m.index(i, j)) = burgers_exact(m.x(i), m.y(j), t, nu_);
    };
    for (std::size_t i = 0; i < m.nx; ++i) {
      set(i, 0);
      set(i, m.ny - 1);
    }
    for (std::size_t j = 0; j < m.ny; ++j) {
      set(0, j);
      set(m.nx - 1, j);
    }
  }

  void rhs(const GridField& y, GridField& out) const override {
    const Mesh2D& m = mesh();
    const double* u = y.component(0).data();
    auto f = out.component(0);
    const double idx2 = 1.0 / (m.dx * m.dx), idy2 = 1.0 / (m.dy * m.dy);
    std::fill(f.begin(), f.end(), 0.0);
    for (std::size_t j = 1; j + 1 < m.ny; ++j)
      for (std::size_t i = 1; i + 1 < m.nx; ++i) {
        const std::size_t k = m.index(i, j);
        const double s = u[k] * u[k];
        const double sw = u[k - 1] * u[k - 1];
        const double ss = u[k - m.nx] * u[k - m.nx];
        f[k] = -(s - sw) / (2.0 * m.dx) - (s - ss) / (2.0 * m.dy) + nu_ * laplacian(u, k, m.nx, idx2, idy2);
      }
  }

  class Series final : public SeriesEvaluator {
   public:
    explicit Series(const BurgersModel& model)
        : model_(model), square_(model.mesh().num_points()) {}
    void reset() override { hist_.reset(); }
    void next(std::span<const double> u_q, std::span<double> f_q) override {
      const Mesh2D& m = model_.mesh();
      hist_.push(u_q);
      const std::size_t q = hist_.size() - 1;
      const std::size_t np = m.num_points();
      // Cauchy square S_q = sum_s U_s U_{q-s}.
      const std::ptrdiff_t npi = static_cast<std::ptrdiff_t>(np);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t kk = 0; kk < npi; ++kk) {
        const std::size_t k = static_cast<std::size_t>(kk);
        double s = 0.0;
        for (std::size_t r = 0; r <= q; ++r) s += hist_[r][k] * hist_[q - r][k];
        square_[k] = s;
      }
      const double idx2 = 1.0 / (m.dx * m.dx), idy2 = 1.0 / (m.dy * m.dy);
      const double nu = model_.nu_;
      const double* u = hist_[q];
      const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(m.ny);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t jj = 1; jj < ny - 1; ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        for (std::size_t i = 1; i + 1 < m.nx; ++i) {
          const std::size_t k = m.index(i, j);
          f_q[k] = -(square_[k] - square_[k - 1]) / (2.0 * m.dx) -
                   (square_[k] - square_[k - m.nx]) / (2.0 * m.dy) +
                   nu * laplacian(u, k, m.nx, idx2, idy2);
        }
      }
      zero_boundary(m, 1, f_q);
    }

   private:
    const BurgersModel& model_;
    History hist_;
    std::vector<double> square_;
  };

  std::unique_ptr<SeriesEvaluator> series_evaluator() const override {
    return std::make_unique<Series>(*this);
  }
  int rhs_degree() const override { return 2; }

  std::optional<GridField> exact_solution(double t) const override {
    GridField f = make_field();
    const Mesh2D& m = mesh();
    for (std::size_t j = 0; j < m.ny; ++j)
      for (std::size_t i = 0; i < m.nx; ++i) f.at(0, m.index(i, j)) = burgers_exact(m.x(i), m.y(j), t, nu_);
    return f;
  }

  double cfl_time_scale(const GridField& field, double cfl) const override {
    return std::min(convective_scale(mesh(), field.max_abs(), cfl), diffusive_scale(mesh(), nu_, cfl));
  }

  std::vector<std::pair<std::string, double>> parameters() const override { return {{"nu", nu_}}; }

 private:
  double nu_;
};

// ---------------------------------------------------------------------------------------------
// Coupled Burgers

double coupled_offset(double x, double y, double t, double nu) {
  return 1.0 / (4.0 + 4.0 * std::exp((-4.0 * x + 4.0 * y - t) / (32.0 * nu)));
}

class CoupledModel final : public Model {
 public:
  CoupledModel(const Mesh2D& mesh, double nu) : Model("coupled", mesh, {"u", "v"}), nu_(nu) {}

  GridField initial_condition() const override { return *exact_solution(0.0); }

  void apply_bcs(GridField& field, double t) const override {
    const Mesh2D& m = mesh();
    auto set = [&](std::size_t i, std::size_t j) {
      const double d = coupled_offset(m.x(i), m.y(j), t, nu_);
      field.at(0, m.index(i, j)) = 0.75 - d;
      field.at(1, m.index(i, j)) = 0.75 + d;
    };
    for (std::size_t i = 0; i < m.nx; ++i) {
      set(i, 0);
      set(i, m.ny - 1);
    }
    for (std::size_t j = 0; j < m.ny; ++j) {
      set(0, j);
      set(m.nx - 1, j);
    }
  }

  void rhs(const GridField& y, GridField& out) const override {
    const Mesh2D& m = mesh();
    const double* u = y.component(0).data();
    const double* v = y.component(1).data();
    auto fu = out.component(0);
    auto fv = out.component(1);
    const double idx2 = 1.0 / (m.dx * m.dx), idy2 = 1.0 / (m.dy * m.dy);
    out.fill(0.0);
    for (std::size_t j = 1; j + 1 < m.ny; ++j)
      for (std::size_t i = 1; i + 1 < m.nx; ++i) {
        const std::size_t k = m.index(i, j);
        fu[k] = -u[k] * (u[k] - u[k - 1]) / (2.0 * m.dx) - v[k] * (u[k] - u[k - m.nx]) / (2.0 * m.dy) +
                nu_ * laplacian(u, k, m.nx, idx2, idy2);
        fv[k] = -u[k] * (v[k] - v[k - 1]) / (2.0 * m.dx) - v[k] * (v[k] - v[k - m.nx]) / (2.0 * m.dy) +
                nu_ * laplacian(v, k, m.nx, idx2, idy2);
      }
  }

  class Series final : public SeriesEvaluator {
   public:
    explicit Series(const CoupledModel& model) : model_(model) {}
    void reset() override { hist_.reset(); }
    void next(std::span<const double> u_q, std::span<double> f_q) override {
      const Mesh2D& m = model_.mesh();
      hist_.push(u_q);
      const std::size_t q = hist_.size() - 1;
      const std::size_t np = m.num_points();
      const double idx2 = 1.0 / (m.dx * m.dx), idy2 = 1.0 / (m.dy * m.dy);
      const double nu = model_.nu_;
      const std::size_t nx = m.nx;
      const double hx = 1.0 / (2.0 * m.dx), hy = 1.0 / (2.0 * m.dy);
      const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(m.ny);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t jj = 1; jj < ny - 1; ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        for (std::size_t i = 1; i + 1 < nx; ++i) {
          const std::size_t k = m.index(i, j);
          double cu = 0.0, cv = 0.0;
          for (std::size_t r = 0; r <= q; ++r) {
            const double* ur = hist_[r];
            const double* uo = hist_[q - r];
            const double us = ur[k], vs = ur[np + k];
            cu += us * (uo[k] - uo[k - 1]) * hx + vs * (uo[k] - uo[k - nx]) * hy;
            cv += us * (uo[np + k] - uo[np + k - 1]) * hx + vs * (uo[np + k] - uo[np + k - nx]) * hy;
          }
          const double* uq = hist_[q];
          f_q[k] = -cu + nu * laplacian(uq, k, nx, idx2, idy2);
          f_q[np + k] = -cv + nu * laplacian(uq + np, k, nx, idx2, idy2);
        }
      }
      zero_boundary(m, 2, f_q);
    }

   private:
    const CoupledModel& model_;
    History hist_;
  };

  std::unique_ptr<SeriesEvaluator> series_evaluator() const override {
    return std::make_unique<Series>(*this);
  }
  int rhs_degree() const override { return 2; }

  std::optional<GridField> exact_solution(double t) const override {
    GridField f = make_field();
    const Mesh2D& m = mesh();
    for (std::size_t j = 0; j < m.ny; ++j)
      for (std::size_t i = 0; i < m.nx; ++i) {
        const double d = coupled_offset(m.x(i), m.y(j), t, nu_);
        f.at(0, m.index(i, j)) = 0.75 - d;
        f.at(1, m.index(i, j)) = 0.75 + d;
      }
    return f;
  }

  double cfl_time_scale(const GridField& field, double cfl) const override {
    return std::min(convective_scale(mesh(), field.max_abs(), cfl), diffusive_scale(mesh(), nu_, cfl));
  }

  std::vector<std::pair<std::string, double>> parameters() const override { return {{"nu", nu_}}; }

 private:
  double nu_;
};

// ---------------------------------------------------------------------------------------------
// Lid-driven cavity

class CavityModel final : public Model {
 public:
  CavityModel(const Mesh2D& mesh, double reynolds, double lid)
      : Model("cavity", mesh, {"omega", "psi"}), re_(reynolds), lid_(lid) {}

  GridField initial_condition() const override {
    GridField f = make_field();
    apply_bcs(f, 0.0);
    return f;
  }

  // psi = 0 on the walls; wall vorticity from the adjacent interior psi.
  void apply_bcs(GridField& field, double) const override {
    const Mesh2D& m = mesh();
    auto omega = field.component(0);
    auto psi = field.component(1);
    const double h = m.dx, ih2 = 1.0 / (h * h);
    const std::size_t nx = m.nx, ny = m.ny;
    for (std::size_t i = 0; i < nx; ++i) {
      psi[m.index(i, 0)] = 0.0;
      psi[m.index(i, ny - 1)] = 0.0;
    }
    for (std::size_t j = 0; j < ny; ++j) {
      psi[m.index(0, j)] = 0.0;
      psi[m.index(nx - 1, j)] = 0.0;
    }
    for (std::size_t j = 1; j + 1 < ny; ++j) {
      omega[m.index(0, j)] = -2.0 * psi[m.index(1, j)] * ih2;
      omega[m.index(nx - 1, j)] = -2.0 * psi[m.index(nx - 2, j)] * ih2;
    }
    for (std::size_t i = 0; i < nx; ++i) {
      omega[m.index(i, 0)] = -2.0 * psi[m.index(i, 1)] * ih2;
      omega[m.index(i, ny - 1)] = -2.0 * (psi[m.index(i, ny - 2)] + h * lid_) * ih2;
    }
  }

  void rhs(const GridField& y, GridField& out) const override {
    const Mesh2D& m = mesh();
    const double* w = y.component(0).data();
    const double* p = y.component(1).data();
    auto fw = out.component(0);
    auto fp = out.component(1);
    const double h = m.dx, h2 = h * h;
    const std::size_t nx = m.nx;
    out.fill(0.0);
    for (std::size_t j = 1; j + 1 < m.ny; ++j)
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        const std::size_t k = m.index(i, j);
        const double u = (p[k + nx] - p[k - nx]) / (2.0 * h);
        const double v = -(p[k + 1] - p[k - 1]) / (2.0 * h);
        fw[k] = -(u * (w[k + 1] - w[k - 1]) + v * (w[k + nx] - w[k - nx])) / (2.0 * h) +
                (w[k + 1] + w[k - 1] + w[k + nx] + w[k - nx] - 4.0 * w[k]) / (re_ * h2);
        fp[k] = (p[k + 1] + p[k - 1] + p[k + nx] + p[k - nx] + w[k] * h2) / 4.0 - p[k];
      }
  }

  class Series final : public SeriesEvaluator {
   public:
    explicit Series(const CavityModel& model) : model_(model) {}
    void reset() override {
      hist_.reset();
      vel_.reset();
    }
    void next(std::span<const double> u_q, std::span<double> f_q) override {
      const Mesh2D& m = model_.mesh();
      const std::size_t np = m.num_points(), nx = m.nx;
      const std::ptrdiff_t ny = static_cast<std::ptrdiff_t>(m.ny);
      hist_.push(u_q);
      const std::size_t q = hist_.size() - 1;
      const double h = m.dx, h2 = h * h, ih = 1.0 / (2.0 * h);
      // Velocity coefficients (u_q, v_q) stored as [u | v] over the mesh.
      scratch_.assign(2 * np, 0.0);
      const double* p = u_q.data() + np;
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t jj = 1; jj < ny - 1; ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        for (std::size_t i = 1; i + 1 < nx; ++i) {
          const std::size_t k = m.index(i, j);
          scratch_[k] = (p[k + nx] - p[k - nx]) * ih;
          scratch_[np + k] = -(p[k + 1] - p[k - 1]) * ih;
        }
      }
      vel_.push(scratch_);
      const double inv_re = 1.0 / model_.re_;
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t jj = 1; jj < ny - 1; ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        for (std::size_t i = 1; i + 1 < nx; ++i) {
          const std::size_t k = m.index(i, j);
          double conv = 0.0;
          for (std::size_t r = 0; r <= q; ++r) {
            const double* vr = vel_[r];
            const double* w = hist_[q - r];
            conv += vr[k] * (w[k + 1] - w[k - 1]) + vr[np + k] * (w[k + nx] - w[k - nx]);
          }
          const double* w = hist_[q];
          const double* ps = w + np;
          f_q[k] = -conv * ih + (w[k + 1] + w[k - 1] + w[k + nx] + w[k - nx] - 4.0 * w[k]) * inv_re / h2;
          f_q[np + k] = (ps[k + 1] + ps[k - 1] + ps[k + nx] + ps[k - nx] + w[k] * h2) / 4.0 - ps[k];
        }
      }
      zero_boundary(m, 2, f_q);
    }

   private:
    const CavityModel& model_;
    History hist_;
    History vel_;
    std::vector<double> scratch_;
  };

  std::unique_ptr<SeriesEvaluator> series_evaluator() const override {
    return std::make_unique<Series>(*this);
  }
  int rhs_degree() const override { return 2; }

  double cfl_time_scale(const GridField& field, double cfl) const override {
    const auto [u, v] = cavity_velocities(mesh(), field.component(1), lid_);
    double speed = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) speed = std::max({speed, std::abs(u[k]), std::abs(v[k])});
    // The psi relaxation has eigenvalues in [-2, 0].
    return std::min({convective_scale(mesh(), speed, cfl), diffusive_scale(mesh(), 1.0 / re_, cfl), cfl});
  }

  std::vector<std::pair<std::string, std::vector<double>>> diagnostic_fields(
      const GridField& field) const override {
    auto [u, v] = cavity_velocities(mesh(), field.component(1), lid_);
    return {{"u", std::move(u)}, {"v", std::move(v)}};
  }

  std::vector<std::pair<std::string, double>> parameters() const override {
    return {{"reynolds", re_}, {"lid_speed", lid_}};
  }

 private:
  double re_;
  double lid_;
};

// ---------------------------------------------------------------------------------------------
// Scalar

class ScalarModel final : public Model {
 public:
  ScalarModel(double k0, double k1, double k2, double u0, std::function<double(double)> exact)
      : Model("scalar", Mesh2D::single_point(), {"u"}), k0_(k0), k1_(k1), k2_(k2), u0_(u0),
        exact_(std::move(exact)) {}

  GridField initial_condition() const override {
    GridField f = make_field();
    f[0] = u0_;
    return f;
  }
  void apply_bcs(GridField&, double) const override {}
  void rhs(const GridField& y, GridField& out) const override {
    out[0] = k0_ + k1_ * y[0] + k2_ * y[0] * y[0];
  }

  class Series final : public SeriesEvaluator {
   public:
    explicit Series(const ScalarModel& model) : model_(model) {}
    void reset() override { u_.clear(); }
    void next(std::span<const double> u_q, std::span<double> f_q) override {
      u_.push_back(u_q[0]);
      const std::size_t q = u_.size() - 1;
      double sq = 0.0;
      for (std::size_t r = 0; r <= q; ++r) sq += u_[r] * u_[q - r];
      f_q[0] = (q == 0 ? model_.k0_ : 0.0) + model_.k1_ * u_[q] + model_.k2_ * sq;
    }

   private:
    const ScalarModel& model_;
    std::vector<double> u_;
  };

  std::unique_ptr<SeriesEvaluator> series_evaluator() const override {
    return std::make_unique<Series>(*this);
  }
  int rhs_degree() const override { return k2_ != 0.0 ? 2 : 1; }

  std::optional<GridField> exact_solution(double t) const override {
    if (!exact_) return std::nullopt;
    GridField f = make_field();
    f[0] = exact_(t);
    return f;
  }

  double cfl_time_scale(const GridField&, double) const override {
    return std::numeric_limits<double>::infinity();
  }

  std::vector<std::pair<std::string, double>> parameters() const override {
    return {{"k0", k0_}, {"k1", k1_}, {"k2", k2_}, {"u0", u0_}};
  }

 private:
  double k0_, k1_, k2_, u0_;
  std::function<double(double)> exact_;
};

}  // namespace

std::unique_ptr<Model> build_heat_model(const Mesh2D& mesh, double alpha_sq) {
  require_2d(mesh, "heat model");
  if (!(alpha_sq > 0.0)) throw ValidationError("heat model: alpha_sq must be positive");
  return std::make_unique<HeatModel>(mesh, alpha_sq);
}

std::unique_ptr<Model> build_burgers_model(const Mesh2D& mesh, double nu) {
  require_2d(mesh, "burgers model");
  if (!(nu > 0.0)) throw ValidationError("burgers model: nu must be positive");
  return std::make_unique<BurgersModel>(mesh, nu);
}

std::unique_ptr<Model> build_coupled_model(const Mesh2D& mesh, double nu) {
  require_2d(mesh, "coupled model");
  if (!(nu > 0.0)) throw ValidationError("coupled model: nu must be positive");
  return std::make_unique<CoupledModel>(mesh, nu);
}

std::unique_ptr<Model> build_cavity_model(const Mesh2D& mesh, double reynolds, double lid_speed) {
  require_2d(mesh, "cavity model");
  if (std::abs(mesh.dx - mesh.dy) > 1e-12 * mesh.dx) {
    throw ValidationError("cavity model needs a square mesh (dx == dy)");
  }
  if (!(reynolds > 0.0)) throw ValidationError("cavity model: Re must be positive");
  return std::make_unique<CavityModel>(mesh, reynolds, lid_speed);
}

std::unique_ptr<Model> build_scalar_model(double k0, double k1, double k2, double u0,
                                          std::function<double(double)> exact) {
  return std::make_unique<ScalarModel>(k0, k1, k2, u0, std::move(exact));
}

std::pair<std::vector<double>, std::vector<double>> cavity_velocities(const Mesh2D& mesh,
                                                                      std::span<const double> psi,
                                                                      double lid_speed) {
  std::vector<double> u(mesh.num_points(), 0.0), v(mesh.num_points(), 0.0);
  const double ih = 1.0 / (2.0 * mesh.dx);
  for (std::size_t j = 1; j + 1 < mesh.ny; ++j)
    for (std::size_t i = 1; i + 1 < mesh.nx; ++i) {
      const std::size_t k = mesh.index(i, j);
      u[k] = (psi[k + mesh.nx] - psi[k - mesh.nx]) * ih;
      v[k] = -(psi[k + 1] - psi[k - 1]) * ih;
    }
  for (std::size_t i = 0; i < mesh.nx; ++i) u[mesh.index(i, mesh.ny - 1)] = lid_speed;
  return {std::move(u), std::move(v)};
}

std::vector<double> poisson_residual(const Mesh2D& mesh, std::span<const double> omega,
                                     std::span<const double> psi) {
  std::vector<double> r(mesh.num_points(), 0.0);
  const double ih2 = 1.0 / (mesh.dx * mesh.dx);
  for (std::size_t j = 1; j + 1 < mesh.ny; ++j)
    for (std::size_t i = 1; i + 1 < mesh.nx; ++i) {
      const std::size_t k = mesh.index(i, j);
      r[k] = (psi[k + 1] + psi[k - 1] + psi[k + mesh.nx] + psi[k - mesh.nx] - 4.0 * psi[k]) * ih2 + omega[k];
    }
  return r;
}

}  // namespace qfode
