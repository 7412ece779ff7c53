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

// Command-line front end. Exit codes: 0 ok, 2 configuration error, 3 divergence,
// 4 resource cap, 1 anything else.

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfode/config.hpp"
#include "qfode/csv.hpp"
#include "qfode/errors.hpp"
#include "qfode/harness.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kDivergence = 3, kResource = 4 };

qfode::RunConfig load(const std::string& path, const std::vector<std::string>& overrides) {
  qfode::RunConfig cfg = qfode::load_config(path);
  for (const auto& o : overrides) qfode::apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

void print_report(const qfode::RunReport& r) {
  const auto& p = r.partition;
  std::cout << r.label << " (" << r.model << ")\n"
            << "  partition: n=" << p.n << " k=" << p.k << " N_k=" << p.n_k << " h_bar=" << qfode::format_double(p.h_bar)
            << " dt_cfl=" << qfode::format_double(r.dt_cfl) << (p.adjusted ? " (k raised for CFL)" : "") << "\n"
            << "  final time " << qfode::format_double(r.solution.final_time) << " after "
            << r.solution.subintervals_run << " steps\n";
  if (r.error_vs_exact) std::cout << "  relative L2 vs exact: " << qfode::format_double(*r.error_vs_exact) << "\n";
  if (r.error_vs_reference) {
    std::cout << "  relative L2 vs classical reference: " << qfode::format_double(*r.error_vs_reference) << "\n";
  }
  for (const auto& [k, v] : r.metrics) std::cout << "  " << k << ": " << qfode::format_double(v) << "\n";
  if (!r.files.empty()) std::cout << "  output: " << r.directory.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Fourier ODE solver (simulated)"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::vector<std::size_t> meshes{41, 61, 81, 101};
  std::vector<std::size_t> nfs{1, 2, 5, 10, 15, 20};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override a config entry, key=value (repeatable)");
  };

  auto* solve = app.add_subcommand("solve", "Run the quantum Fourier ODE pipeline");
  add_common(solve);
  auto* reference = app.add_subcommand("reference", "Run the classical RK4 reference only");
  add_common(reference);
  auto* convergence = app.add_subcommand("convergence", "Mesh convergence study against the exact solution");
  add_common(convergence);
  convergence->add_option("--meshes", meshes, "Comma-separated mesh sizes")->delimiter(',');
  auto* sweep = app.add_subcommand("nf-sweep", "Error versus Fourier truncation order");
  add_common(sweep);
  sweep->add_option("--nf", nfs, "Comma-separated truncation orders")->delimiter(',');

  auto* integrate = app.add_subcommand("integrate", "Integrate sin^2(m z + c) by amplitude estimation");
  double m = -std::numbers::pi / 2.0, c = std::numbers::pi / 4.0, bmin = 0.0, bmax = 1.0;
  std::size_t nq = 8, meval = 8;
  std::string backend = "circuit";
  integrate->add_option("--m", m, "Slope m");
  integrate->add_option("--c", c, "Offset c");
  integrate->add_option("--bmin", bmin, "Lower bound");
  integrate->add_option("--bmax", bmax, "Upper bound");
  integrate->add_option("--nq", nq, "Index qubits");
  integrate->add_option("--meval", meval, "Evaluation qubits");
  integrate->add_option("--backend", backend, "circuit or analytic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) {
      print_report(qfode::run_solve(load(config_path, overrides)));
    } else if (*reference) {
      print_report(qfode::run_reference(load(config_path, overrides)));
    } else if (*convergence) {
      const auto t = qfode::convergence_study(load(config_path, overrides), meshes);
      std::cout << "mesh,dx,error\n";
      for (const auto& r : t.rows)
        std::cout << r.mesh << "," << qfode::format_double(r.dx) << "," << qfode::format_double(r.error) << "\n";
      std::cout << "fitted slope: " << qfode::format_double(t.slope) << "\nwritten: " << t.csv.string() << "\n";
    } else if (*sweep) {
      const auto t = qfode::nf_sweep(load(config_path, overrides), nfs);
      std::cout << "nf,error\n";
      for (const auto& r : t.rows) std::cout << r.n_fourier << "," << qfode::format_double(r.error) << "\n";
      std::cout << "written: " << t.csv.string() << "\n";
    } else if (*integrate) {
      qfode::Backend b;
      try {
        b = qfode::parse_backend(backend);
      } catch (const qfode::ValidationError& e) {
        throw qfode::ConfigError(e.what());
      }
      qfode::RunConfig defaults;
      const auto rep = qfode::integrate_demo({m, c, bmin, bmax}, nq, meval, b, defaults.effective_output_dir(), std::cout);
      std::cout << "  appended to " << rep.csv.string() << "\n";
    }
  } catch (const qfode::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const qfode::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const qfode::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << " (piece " << e.piece_index() << ")\n";
    return kDivergence;
  } catch (const qfode::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOk;
}
