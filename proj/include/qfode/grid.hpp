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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qfode {

/// Uniform tensor-product mesh on [x_min, x_max] x [y_min, y_max].
/// Point (i, j) has flat index j * nx + i, with i running along x.
struct Mesh2D {
  std::size_t nx = 1;
  std::size_t ny = 1;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  double dx = 0.0;
  double dy = 0.0;

  static Mesh2D uniform(std::size_t nx, std::size_t ny, double x_min = 0.0, double x_max = 1.0,
                        double y_min = 0.0, double y_max = 1.0);
  /// Degenerate one-point mesh used by scalar ODE models.
  static Mesh2D single_point();

  std::size_t num_points() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
  double y(std::size_t j) const { return y_min + static_cast<double>(j) * dy; }
  bool on_boundary(std::size_t i, std::size_t j) const {
    return nx > 1 && ny > 1 && (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny);
  }
  /// Index of the mesh column closest to x (clamped).
  std::size_t nearest_i(double x) const;
  std::size_t nearest_j(double y) const;
};

/// Named solution components stored component-major over the mesh points.
/// This is the flat ODE state vector u of u_t = f(u).
class GridField {
 public:
  GridField() = default;
  GridField(std::vector<std::string> names, std::size_t num_points);

  std::size_t num_components() const { return names_.size(); }
  std::size_t num_points() const { return num_points_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  /// Throws ValidationError if the name is unknown.
  std::size_t component_index(const std::string& name) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> component(std::size_t c) {
    return std::span<double>(values_).subspan(c * num_points_, num_points_);
  }
  std::span<const double> component(std::size_t c) const {
    return std::span<const double>(values_).subspan(c * num_points_, num_points_);
  }
  double& at(std::size_t c, std::size_t k) { return values_[c * num_points_ + k]; }
  double at(std::size_t c, std::size_t k) const { return values_[c * num_points_ + k]; }
  double& operator[](std::size_t e) { return values_[e]; }
  double operator[](std::size_t e) const { return values_[e]; }

  void fill(double v);
  bool same_shape(const GridField& other) const {
    return num_points_ == other.num_points_ && names_.size() == other.names_.size();
  }
  bool all_finite() const;
  double max_abs() const;

  friend bool operator==(const GridField&, const GridField&) = default;

 private:
  std::vector<std::string> names_;
  std::size_t num_points_ = 0;
  std::vector<double> values_;
};

}  // namespace qfode
