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

#include "qfode/grid.hpp"

#include <algorithm>
#include <cmath>

#include "qfode/errors.hpp"

namespace qfode {

Mesh2D Mesh2D::uniform(std::size_t nx, std::size_t ny, double x_min, double x_max, double y_min,
                       double y_max) {
  if (nx < 2 || ny < 2) throw ValidationError("mesh needs at least 2 points per direction");
  if (!(x_max > x_min) || !(y_max > y_min)) throw ValidationError("mesh bounds must be increasing");
  Mesh2D m;
  m.nx = nx;
  m.ny = ny;
  m.x_min = x_min;
  m.x_max = x_max;
  m.y_min = y_min;
  m.y_max = y_max;
  m.dx = (x_max - x_min) / static_cast<double>(nx - 1);
  m.dy = (y_max - y_min) / static_cast<double>(ny - 1);
  return m;
}

Mesh2D Mesh2D::single_point() { return Mesh2D{}; }

std::size_t Mesh2D::nearest_i(double xv) const {
  if (nx < 2) return 0;
  const double r = std::round((xv - x_min) / dx);
  return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(nx - 1)));
}

std::size_t Mesh2D::nearest_j(double yv) const {
  if (ny < 2) return 0;
  const double r = std::round((yv - y_min) / dy);
  return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(ny - 1)));
}

GridField::GridField(std::vector<std::string> names, std::size_t num_points)
    : names_(std::move(names)), num_points_(num_points), values_(names_.size() * num_points, 0.0) {}

std::size_t GridField::component_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ValidationError("unknown component '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

void GridField::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

bool GridField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double GridField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace qfode
