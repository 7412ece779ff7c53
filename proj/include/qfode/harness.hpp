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

// Experiment drivers, classical reference integration and metrics.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfode/amplitude_estimation.hpp"
#include "qfode/config.hpp"
#include "qfode/csv.hpp"
#include "qfode/grid.hpp"
#include "qfode/pde_models.hpp"
#include "qfode/taylor_ode.hpp"

namespace qfode {

/// ||reference - candidate||_2 / ||reference||_2 over all entries. UndefinedMetricError on a
/// zero reference, ValidationError on a shape mismatch.
double relative_l2(const GridField& reference, const GridField& candidate);
double relative_l2(std::span<const double> reference, std::span<const double> candidate);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::unique_ptr<Model> build_model(const RunConfig& config);

/// Partition for a config: fixed (steady), explicit k or n_k, or selected from epsilon1 and
/// the CFL limit of the initial state. Explicit partitions that violate h_bar < dt_cfl are
/// ConfigErrors.
TimePartition partition_for(const RunConfig& config, const Model& model);

struct ReferenceResult {
  GridField field;
  double t = 0.0;
  std::size_t steps = 0;
  bool converged = true;
  double residual = 0.0;
};

/// Classical RK4 on the same semi-discrete system up to time T (step dt, shortened so the
/// last step lands on T). Boundary conditions are re-applied after every step.
ReferenceResult classical_reference_solve(const Model& model, double dt, double T);
/// RK4 until max |y_{s+1} - y_s| / dt < tol or max_steps.
ReferenceResult classical_steady_solve(const Model& model, double dt, double tol, std::size_t max_steps);

struct RunReport {
  std::string label;
  std::string model;
  TimePartition partition;
  double dt_cfl = 0.0;
  Solution solution;
  std::optional<GridField> exact;
  std::optional<ReferenceResult> reference;
  std::optional<double> error_vs_exact;
  std::optional<double> error_vs_reference;
  /// Extra scalar metrics (steady residuals, centerline differences).
  std::map<std::string, double> metrics;
  std::map<std::string, double> timings;
  std::vector<std::filesystem::path> files;
  std::filesystem::path directory;
};

struct RunOptions {
  bool write_files = true;
  /// Overrides config.reference when set.
  std::optional<bool> reference;
};

RunReport run_solve(const RunConfig& config, const RunOptions& options = {});
/// Classical reference only, written like a solve.
RunReport run_reference(const RunConfig& config, const RunOptions& options = {});

struct ConvergenceRow {
  std::size_t mesh = 0;
  double dx = 0.0;
  double error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
  std::filesystem::path csv;
};

/// Error against the exact solution on each square mesh; needs >= 3 meshes.
ConvergenceTable convergence_study(const RunConfig& base, const std::vector<std::size_t>& meshes,
                                   bool write_files = true);

struct SweepRow {
  std::size_t n_fourier = 0;
  double error = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::filesystem::path csv;
};

/// Error per truncation order: against the exact solution when the model has one, else
/// against one classical reference solve.
SweepTable nf_sweep(const RunConfig& base, const std::vector<std::size_t>& nf_list, bool write_files = true);

struct IntegralReport {
  SinSqIntegrand integrand;
  std::size_t n_index_qubits = 0;
  std::size_t m_eval_qubits = 0;
  Backend backend = Backend::Analytic;
  double closed_form = 0.0;
  double analytic = 0.0;
  double circuit = 0.0;
  double bound = 0.0;
  std::filesystem::path csv;
};

/// Closed form, both backends and the QAE bound (scaled by the interval length); prints a short
/// report to `log` and appends a row to <out_dir>/integrals.csv when out_dir is non-empty.
IntegralReport integrate_demo(const SinSqIntegrand& integrand, std::size_t n_index_qubits,
                              std::size_t m_eval_qubits, Backend backend,
                              const std::filesystem::path& out_dir, std::ostream& log);

/// Output directory for a run label.
std::filesystem::path run_directory(const RunConfig& config);

}  // namespace qfode
