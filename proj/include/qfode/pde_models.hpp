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

// Semi-discrete right-hand sides u_t = f(u) for the test problems, together with
// boundary conditions, exact solutions and stable time scales.
//
// Every f here is a polynomial of degree <= 2 in the nodal values, so the Taylor
// coefficients of f(U(t)) follow exactly from truncated power-series arithmetic.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfode/grid.hpp"

namespace qfode {

inline constexpr double kDefaultCfl = 0.8;

/// Streams the time-series coefficients of f along a truncated expansion U(t) = sum_q U_q t^q.
/// After reset(), the q-th call to next() receives U_q and writes F_q, which depends on
/// U_0..U_q only. Entries on Dirichlet boundaries get F_q = 0 (frozen within a piece).
class SeriesEvaluator {
 public:
  virtual ~SeriesEvaluator() = default;
  virtual void reset() = 0;
  virtual void next(std::span<const double> u_q, std::span<double> f_q) = 0;
};

class Model {
 public:
  Model(std::string name, Mesh2D mesh, std::vector<std::string> components)
      : name_(std::move(name)), mesh_(mesh), components_(std::move(components)) {}
  virtual ~Model() = default;

  const std::string& name() const { return name_; }
  const Mesh2D& mesh() const { return mesh_; }
  const std::vector<std::string>& component_names() const { return components_; }
  std::size_t num_components() const { return components_.size(); }
  std::size_t state_size() const { return components_.size() * mesh_.num_points(); }
  GridField make_field() const { return GridField(components_, mesh_.num_points()); }

  /// Initial state with boundary conditions already applied.
  virtual GridField initial_condition() const = 0;
  /// Overwrites boundary entries for physical (or pseudo) time t; interior untouched.
  virtual void apply_bcs(GridField& field, double t) const = 0;
  /// Plain serial stencil evaluation of f(y); boundary rows are 0.
  virtual void rhs(const GridField& y, GridField& out) const = 0;
  virtual std::unique_ptr<SeriesEvaluator> series_evaluator() const = 0;
  /// Polynomial degree of f in the state.
  virtual int rhs_degree() const = 0;
  virtual std::optional<GridField> exact_solution(double /*t*/) const { return std::nullopt; }
  /// Minimum over the mesh of the local stable step for CFL number C.
  virtual double cfl_time_scale(const GridField& field, double cfl = kDefaultCfl) const = 0;
  /// Derived per-point quantities worth writing out (cavity velocities).
  virtual std::vector<std::pair<std::string, std::vector<double>>> diagnostic_fields(
      const GridField& /*field*/) const {
    return {};
  }
  /// Physical parameters for reports.
  virtual std::vector<std::pair<std::string, double>> parameters() const { return {}; }

 private:
  std::string name_;
  Mesh2D mesh_;
  std::vector<std::string> components_;
};

/// u_t = alpha^2 (u_xx + u_yy), u0 = sin(pi x) sin(pi y), u = 0 on the walls.
std::unique_ptr<Model> build_heat_model(const Mesh2D& mesh, double alpha_sq = 1.0);

/// u_t + u u_x + u u_y = nu lap u with the sigmoid exact solution as initial and boundary data.
/// The convective differences carry a 1/(2 dx) factor on the upwind difference of u^2.
std::unique_ptr<Model> build_burgers_model(const Mesh2D& mesh, double nu = 0.01);

/// Coupled (u, v) Burgers system with the exact pair 3/4 -+ 1/(4 + 4 exp((-4x+4y-t)/(32 nu)))
/// as initial and boundary data; same 1/(2 dx) upwind convention.
std::unique_ptr<Model> build_coupled_model(const Mesh2D& mesh, double nu = 0.01);

/// Lid-driven cavity in (omega, psi) form with pseudo-time relaxation of the Poisson equation:
///   omega_t = -(u domega/dx + v domega/dy) + lap(omega) / Re,
///   psi_t   = (sum of the 4 neighbours of psi + omega dh^2) / 4 - psi,
/// with u = psi_y, v = -psi_x. Requires dx == dy.
std::unique_ptr<Model> build_cavity_model(const Mesh2D& mesh, double reynolds = 100.0,
                                          double lid_speed = 1.0);

/// Scalar u' = k0 + k1 u + k2 u^2 on a one-point mesh, for pipeline checks.
std::unique_ptr<Model> build_scalar_model(double k0, double k1, double k2, double u0,
                                          std::function<double(double)> exact = {});

/// Cavity velocities by central differences of psi; wall values are the no-slip/lid values.
std::pair<std::vector<double>, std::vector<double>> cavity_velocities(const Mesh2D& mesh,
                                                                      std::span<const double> psi,
                                                                      double lid_speed);

/// psi_xx + psi_yy + omega at interior points, zero on walls.
std::vector<double> poisson_residual(const Mesh2D& mesh, std::span<const double> omega,
                                     std::span<const double> psi);

}  // namespace qfode
