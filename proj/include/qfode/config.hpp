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

// Flat "key = value" run configuration. Lines starting with '#' are comments.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qfode/amplitude_estimation.hpp"
#include "qfode/fourier_quadrature.hpp"

namespace qfode {

/// Environment variable that replaces output_dir when set and non-empty.
inline constexpr const char* kOutputDirEnv = "QFODE_OUTPUT_DIR";

struct RunConfig {
  std::string name;
  /// heat | burgers | coupled | cavity
  std::string model = "heat";
  std::size_t nx = 41;
  std::size_t ny = 41;
  double alpha_sq = 1.0;
  double nu = 0.01;
  double reynolds = 100.0;
  double lid_speed = 1.0;

  double T = 0.07;
  double epsilon1 = 0.005;
  std::size_t n = 16;
  /// 0 selects k from epsilon1 and the CFL limit.
  std::size_t k = 0;
  /// Explicit sub-subinterval count; 0 means n^(k-1).
  std::size_t n_k = 0;

  /// Steady runs use a fixed subinterval length h and stop on the residual.
  bool steady = false;
  double h = 0.01;
  double steady_tol = 1e-10;
  std::size_t max_subintervals = 100000;

  int taylor_order = 2;
  std::size_t n_fourier = 10;
  Extension extension = Extension::SmoothPeriodic;
  Backend backend = Backend::Analytic;
  std::size_t n_index_qubits = 8;
  std::size_t m_eval_qubits = 8;
  GridConvention convention = GridConvention::Endpoint;
  double cfl = 0.8;

  bool reference = true;
  /// 0 uses the pipeline's h_bar.
  double reference_dt = 0.0;
  double reference_steady_tol = 1e-8;
  std::size_t reference_max_steps = 5000000;

  std::string output_dir = "out";
  std::uint64_t seed = 12345;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  /// output_dir, or the environment override.
  std::filesystem::path effective_output_dir() const;
  std::string label() const { return name.empty() ? model : name; }
  /// Sorted key/value pairs in the file format.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Applies one "key=value" assignment. Unknown keys and malformed values are ConfigErrors.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
void apply_override(RunConfig& config, const std::string& assignment);

RunConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");
RunConfig load_config(const std::filesystem::path& path);
std::string to_config_text(const RunConfig& config);

Extension parse_extension(const std::string& name);
std::string to_string(Extension e);
GridConvention parse_convention(const std::string& name);
std::string to_string(GridConvention c);

}  // namespace qfode
