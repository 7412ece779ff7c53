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

#include "qfode/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qfode/errors.hpp"

namespace qfode {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Classical RK4 with boundary rows frozen inside the step and refreshed after it.
class Rk4 {
 public:
  explicit Rk4(const Model& model)
      : model_(model), k1_(model.make_field()), k2_(k1_), k3_(k1_), k4_(k1_), tmp_(k1_) {}

  void step(GridField& y, double t, double dt) {
    const std::size_t n = y.size();
    model_.rhs(y, k1_);
    for (std::size_t e = 0; e < n; ++e) tmp_[e] = y[e] + 0.5 * dt * k1_[e];
    model_.rhs(tmp_, k2_);
    for (std::size_t e = 0; e < n; ++e) tmp_[e] = y[e] + 0.5 * dt * k2_[e];
    model_.rhs(tmp_, k3_);
    for (std::size_t e = 0; e < n; ++e) tmp_[e] = y[e] + dt * k3_[e];
    model_.rhs(tmp_, k4_);
    for (std::size_t e = 0; e < n; ++e) y[e] += dt / 6.0 * (k1_[e] + 2.0 * k2_[e] + 2.0 * k3_[e] + k4_[e]);
    model_.apply_bcs(y, t + dt);
  }

 private:
  const Model& model_;
  GridField k1_, k2_, k3_, k4_, tmp_;
};

std::string line_tag(char axis, double at) {
  std::ostringstream ss;
  ss << axis << at;
  return ss.str();
}

struct NamedValues {
  std::string name;
  std::vector<double> values;
};

std::vector<NamedValues> columns_of(const Model& model, const GridField& field) {
  std::vector<NamedValues> out;
  for (std::size_t c = 0; c < field.num_components(); ++c) {
    auto comp = field.component(c);
    out.push_back({field.names()[c], std::vector<double>(comp.begin(), comp.end())});
  }
  for (auto& [name, values] : model.diagnostic_fields(field)) out.push_back({name, std::move(values)});
  return out;
}

double max_abs_on_column(const Mesh2D& mesh, std::size_t i, const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < mesh.ny; ++j) m = std::max(m, std::abs(a[mesh.index(i, j)] - b[mesh.index(i, j)]));
  return m;
}

nlohmann::json partition_json(const TimePartition& p, double dt_cfl) {
  return {{"T", p.T},         {"n", p.n},           {"k", p.k},
          {"h", p.h},         {"n_k", p.n_k},       {"h_bar", p.h_bar},
          {"epsilon1", p.epsilon1}, {"dt_cfl", dt_cfl}, {"k_from_epsilon", p.k_from_epsilon},
          {"adjusted", p.adjusted}};
}

void add_model_metrics(const Model& model, const GridField& y, const std::string& prefix,
                       std::map<std::string, double>& metrics) {
  const Mesh2D& mesh = model.mesh();
  if (model.name() == "cavity") {
    const auto r = poisson_residual(mesh, y.component(0), y.component(1));
    double m = 0.0;
    for (double v : r) m = std::max(m, std::abs(v));
    metrics[prefix + "poisson_residual_max"] = m;
  } else if (model.name() == "coupled") {
    double m = 0.0;
    for (const double at : {0.1, 0.5}) {
      const std::size_t ic = mesh.nearest_i(at), jc = mesh.nearest_j(at);
      for (std::size_t j = 1; j + 1 < mesh.ny; ++j)
        m = std::max(m, std::abs(y.at(0, mesh.index(ic, j)) + y.at(1, mesh.index(ic, j)) - 1.5));
      for (std::size_t i = 1; i + 1 < mesh.nx; ++i)
        m = std::max(m, std::abs(y.at(0, mesh.index(i, jc)) + y.at(1, mesh.index(i, jc)) - 1.5));
    }
    metrics[prefix + "sum_identity_max_dev"] = m;
  }
}

// Writes field.csv, the line profiles and report.json.
void write_outputs(const RunConfig& config, const Model& model, RunReport& report,
                   const GridField& result) {
  const auto start = Clock::now();
  const Mesh2D& mesh = model.mesh();
  std::filesystem::create_directories(report.directory);

  std::vector<NamedValues> cols = columns_of(model, result);
  std::vector<NamedValues> exact_cols, ref_cols;
  if (report.exact) exact_cols = columns_of(model, *report.exact);
  if (report.reference) ref_cols = columns_of(model, report.reference->field);

  CsvTable field;
  field.header = {"x", "y"};
  for (const auto& c : cols) field.header.push_back(c.name);
  for (const auto& c : exact_cols) field.header.push_back("exact_" + c.name);
  for (const auto& c : ref_cols) field.header.push_back("reference_" + c.name);
  for (std::size_t j = 0; j < mesh.ny; ++j)
    for (std::size_t i = 0; i < mesh.nx; ++i) {
      const std::size_t k = mesh.index(i, j);
      std::vector<double> row = {mesh.x(i), mesh.y(j)};
      for (const std::vector<NamedValues>* group : {&cols, &exact_cols, &ref_cols})
        for (const auto& c : *group) row.push_back(c.values[k]);
      field.rows.push_back(std::move(row));
    }
  const auto field_path = report.directory / "field.csv";
  write_csv(field_path, field);
  report.files.push_back(field_path);

  // Centrelines plus the off-centre lines at 0.1.
  for (const double at : {0.5, 0.1}) {
    for (const char axis : {'x', 'y'}) {
      const bool vertical = axis == 'x';
      const std::size_t fixed = vertical ? mesh.nearest_i(at) : mesh.nearest_j(at);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const std::vector<double>* other = nullptr;
        if (!exact_cols.empty()) other = &exact_cols[c].values;
        else if (!ref_cols.empty()) other = &ref_cols[c].values;
        CsvTable prof;
        prof.header = {"coordinate", "value", "exact_or_reference"};
        const std::size_t count = vertical ? mesh.ny : mesh.nx;
        for (std::size_t s = 0; s < count; ++s) {
          const std::size_t k = vertical ? mesh.index(fixed, s) : mesh.index(s, fixed);
          prof.rows.push_back({vertical ? mesh.y(s) : mesh.x(s), cols[c].values[k],
                               other ? (*other)[k] : std::numeric_limits<double>::quiet_NaN()});
        }
        const auto path = report.directory / ("profile_" + line_tag(axis, at) + "_" + cols[c].name + ".csv");
        write_csv(path, prof);
        report.files.push_back(path);
      }
    }
  }

  report.timings["output"] = seconds_since(start);

  nlohmann::json j;
  j["label"] = report.label;
  j["model"] = report.model;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : config.entries()) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : model.parameters()) params[k] = v;
  j["parameters"] = params;
  j["partition"] = partition_json(report.partition, report.dt_cfl);
  const Solution& sol = report.solution;
  j["subintervals_run"] = sol.subintervals_run;
  j["final_time"] = sol.final_time;
  j["stopped_early"] = sol.stopped_early;
  j["last_residual"] = sol.last_residual;
  j["universal_integrals"] = {{"u1", sol.universal.u1}, {"u2", sol.universal.u2}};
  j["error_vs_exact"] = report.error_vs_exact ? nlohmann::json(*report.error_vs_exact) : nlohmann::json();
  j["error_vs_reference"] =
      report.error_vs_reference ? nlohmann::json(*report.error_vs_reference) : nlohmann::json();
  if (report.reference) {
    j["reference"] = {{"steps", report.reference->steps},
                      {"t", report.reference->t},
                      {"converged", report.reference->converged},
                      {"residual", report.reference->residual}};
  }
  j["metrics"] = report.metrics;
  j["timings_seconds"] = report.timings;
  std::vector<std::string> names;
  for (const auto& f : report.files) names.push_back(f.filename().string());
  names.push_back("report.json");
  j["files"] = names;
  const auto json_path = report.directory / "report.json";
  std::ofstream out(json_path);
  out << j.dump(2) << '\n';
  if (!out) throw ConfigError("cannot write " + json_path.string());
  report.files.push_back(json_path);
}

}  // namespace

double relative_l2(std::span<const double> reference, std::span<const double> candidate) {
  if (reference.size() != candidate.size()) throw ValidationError("relative_l2: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t e = 0; e < reference.size(); ++e) {
    const double d = reference[e] - candidate[e];
    num += d * d;
    den += reference[e] * reference[e];
  }
  if (den == 0.0) throw UndefinedMetricError("relative_l2: reference norm is zero");
  return std::sqrt(num / den);
}

double relative_l2(const GridField& reference, const GridField& candidate) {
  if (!reference.same_shape(candidate)) throw ValidationError("relative_l2: field shapes differ");
  return relative_l2(reference.values(), candidate.values());
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_loglog_slope: need >= 2 matching points");
  double sx = 0.0, sy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("fit_loglog_slope: values must be positive");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ValidationError("fit_loglog_slope: x values are all equal");
  return sxy / sxx;
}

std::unique_ptr<Model> build_model(const RunConfig& config) {
  config.validate();
  const Mesh2D mesh = Mesh2D::uniform(config.nx, config.ny);
  if (config.model == "heat") return build_heat_model(mesh, config.alpha_sq);
  if (config.model == "burgers") return build_burgers_model(mesh, config.nu);
  if (config.model == "coupled") return build_coupled_model(mesh, config.nu);
  if (config.model == "cavity") {
    try {
      return build_cavity_model(mesh, config.reynolds, config.lid_speed);
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown model '" + config.model + "'");
}

TimePartition partition_for(const RunConfig& config, const Model& model) {
  const double dt_cfl = model.cfl_time_scale(model.initial_condition(), config.cfl);
  auto check = [&](TimePartition p) {
    p.dt_cfl = dt_cfl;
    p.epsilon1 = config.epsilon1;
    if (!(p.h_bar < dt_cfl)) {
      throw ConfigError("h_bar = " + format_double(p.h_bar) + " is not below dt_cfl = " + format_double(dt_cfl));
    }
    return p;
  };
  if (config.steady) return check(fixed_partition(config.h, config.max_subintervals, config.n_k));
  if (config.k > 0) return check(make_partition(config.T, config.n, config.k));
  if (config.n_k > 0) {
    TimePartition p = fixed_partition(config.T / static_cast<double>(config.n), config.n, config.n_k);
    p.T = config.T;
    return check(p);
  }
  return select_partition(config.T, dt_cfl, config.epsilon1, config.n);
}

ReferenceResult classical_reference_solve(const Model& model, double dt, double T) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw ValidationError("classical_reference_solve: need dt > 0, T >= 0");
  ReferenceResult res{model.initial_condition()};
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  if (steps == 0) return res;
  const double step = T / static_cast<double>(steps);
  Rk4 rk(model);
  for (std::size_t s = 0; s < steps; ++s) {
    rk.step(res.field, static_cast<double>(s) * step, step);
    if (!res.field.all_finite()) throw DivergenceError("classical reference diverged at step " + std::to_string(s), s);
  }
  res.t = T;
  res.steps = steps;
  return res;
}

ReferenceResult classical_steady_solve(const Model& model, double dt, double tol, std::size_t max_steps) {
  if (!(dt > 0.0) || !(tol > 0.0)) throw ValidationError("classical_steady_solve: need dt > 0, tol > 0");
  ReferenceResult res{model.initial_condition()};
  res.converged = false;
  Rk4 rk(model);
  GridField prev = res.field;
  for (std::size_t s = 0; s < max_steps; ++s) {
    prev = res.field;
    rk.step(res.field, static_cast<double>(s) * dt, dt);
    if (!res.field.all_finite()) throw DivergenceError("classical steady solve diverged at step " + std::to_string(s), s);
    double change = 0.0;
    for (std::size_t e = 0; e < prev.size(); ++e) change = std::max(change, std::abs(res.field[e] - prev[e]));
    res.residual = change / dt;
    res.steps = s + 1;
    res.t = static_cast<double>(s + 1) * dt;
    if (res.residual < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

std::filesystem::path run_directory(const RunConfig& config) {
  return config.effective_output_dir() / config.label();
}

RunReport run_solve(const RunConfig& config, const RunOptions& options) {
  auto model = build_model(config);
  RunReport report;
  report.label = config.label();
  report.model = config.model;
  report.directory = run_directory(config);
  report.partition = partition_for(config, *model);
  report.dt_cfl = report.partition.dt_cfl;

  SolveOptions so;
  so.taylor_order = config.taylor_order;
  so.quad = {config.n_fourier, config.extension, config.backend, config.n_index_qubits, config.m_eval_qubits,
             config.convention};
  if (config.steady) {
    const double tol = config.steady_tol;
    so.observers.push_back([tol](const SubintervalInfo& info) { return !(info.residual < tol); });
  }
  UniversalIntegralCache cache;
  auto start = Clock::now();
  report.solution = solve(*model, report.partition, so, cache);
  report.timings["solve"] = seconds_since(start);
  const GridField& y = report.solution.final_state;
  if (config.steady) {
    report.metrics["steady_converged"] = report.solution.last_residual < config.steady_tol ? 1.0 : 0.0;
  }

  if (auto exact = model->exact_solution(report.solution.final_time)) {
    report.exact = std::move(*exact);
    report.error_vs_exact = relative_l2(*report.exact, y);
  }
  if (options.reference.value_or(config.reference)) {
    start = Clock::now();
    const double dt = config.reference_dt > 0.0 ? config.reference_dt : report.partition.h_bar;
    report.reference = config.steady ? classical_steady_solve(*model, dt, config.reference_steady_tol,
                                                              config.reference_max_steps)
                                     : classical_reference_solve(*model, dt, report.solution.final_time);
    report.timings["reference"] = seconds_since(start);
    report.error_vs_reference = relative_l2(report.reference->field, y);
    add_model_metrics(*model, report.reference->field, "reference_", report.metrics);
    if (model->name() == "cavity") {
      const Mesh2D& mesh = model->mesh();
      const auto [u, v] = cavity_velocities(mesh, y.component(1), config.lid_speed);
      const auto [ur, vr] = cavity_velocities(mesh, report.reference->field.component(1), config.lid_speed);
      report.metrics["centerline_u_max_diff"] = max_abs_on_column(mesh, mesh.nearest_i(0.5), u, ur);
    }
  }
  add_model_metrics(*model, y, "", report.metrics);

  if (options.write_files) write_outputs(config, *model, report, y);
  return report;
}

RunReport run_reference(const RunConfig& config, const RunOptions& options) {
  auto model = build_model(config);
  RunReport report;
  report.label = config.label();
  report.model = config.model;
  report.directory = run_directory(config) / "reference";
  report.partition = partition_for(config, *model);
  report.dt_cfl = report.partition.dt_cfl;
  const double dt = config.reference_dt > 0.0 ? config.reference_dt : report.partition.h_bar;
  const auto start = Clock::now();
  ReferenceResult ref = config.steady
                            ? classical_steady_solve(*model, dt, config.reference_steady_tol, config.reference_max_steps)
                            : classical_reference_solve(*model, dt, report.partition.T);
  report.timings["reference"] = seconds_since(start);
  report.solution.final_state = ref.field;
  report.solution.final_time = ref.t;
  report.solution.subintervals_run = ref.steps;
  report.solution.last_residual = ref.residual;
  report.metrics["steps"] = static_cast<double>(ref.steps);
  if (config.steady) report.metrics["steady_converged"] = ref.converged ? 1.0 : 0.0;
  if (auto exact = model->exact_solution(ref.t)) {
    report.exact = std::move(*exact);
    report.error_vs_exact = relative_l2(*report.exact, ref.field);
  }
  add_model_metrics(*model, ref.field, "", report.metrics);
  if (options.write_files) write_outputs(config, *model, report, ref.field);
  return report;
}

ConvergenceTable convergence_study(const RunConfig& base, const std::vector<std::size_t>& meshes, bool write_files) {
  if (meshes.size() < 3) throw ValidationError("convergence_study needs at least 3 meshes");
  ConvergenceTable table;
  std::vector<double> dx, err;
  for (const std::size_t m : meshes) {
    RunConfig cfg = base;
    cfg.nx = cfg.ny = m;
    const RunReport r = run_solve(cfg, {.write_files = false, .reference = false});
    if (!r.error_vs_exact) throw ConfigError("convergence_study needs a model with an exact solution");
    const double h = 1.0 / static_cast<double>(m - 1);
    table.rows.push_back({m, h, *r.error_vs_exact});
    dx.push_back(h);
    err.push_back(*r.error_vs_exact);
  }
  table.slope = fit_loglog_slope(dx, err);
  if (write_files) {
    CsvTable csv;
    csv.header = {"mesh", "dx", "error", "slope"};
    for (const auto& row : table.rows) csv.rows.push_back({static_cast<double>(row.mesh), row.dx, row.error, table.slope});
    table.csv = run_directory(base) / "convergence.csv";
    write_csv(table.csv, csv);
  }
  return table;
}

SweepTable nf_sweep(const RunConfig& base, const std::vector<std::size_t>& nf_list, bool write_files) {
  if (nf_list.empty()) throw ValidationError("nf_sweep needs at least one N_f");
  SweepTable table;
  std::optional<GridField> reference;
  for (const std::size_t nf : nf_list) {
    RunConfig cfg = base;
    cfg.n_fourier = nf;
    const RunReport r = run_solve(cfg, {.write_files = false, .reference = false});
    double error = 0.0;
    if (r.error_vs_exact) {
      error = *r.error_vs_exact;
    } else {
      if (!reference) {
        auto model = build_model(cfg);
        const double dt = cfg.reference_dt > 0.0 ? cfg.reference_dt : r.partition.h_bar;
        reference = cfg.steady ? classical_steady_solve(*model, dt, cfg.reference_steady_tol, cfg.reference_max_steps).field
                               : classical_reference_solve(*model, dt, r.solution.final_time).field;
      }
      error = relative_l2(*reference, r.solution.final_state);
    }
    table.rows.push_back({nf, error});
  }
  if (write_files) {
    CsvTable csv;
    csv.header = {"nf", "error"};
    for (const auto& row : table.rows) csv.rows.push_back({static_cast<double>(row.n_fourier), row.error});
    table.csv = run_directory(base) / "nf_sweep.csv";
    write_csv(table.csv, csv);
  }
  return table;
}

IntegralReport integrate_demo(const SinSqIntegrand& integrand, std::size_t n_index_qubits, std::size_t m_eval_qubits,
                              Backend backend, const std::filesystem::path& out_dir, std::ostream& log) {
  integrand.validate();
  IntegralReport rep;
  rep.integrand = integrand;
  rep.n_index_qubits = n_index_qubits;
  rep.m_eval_qubits = m_eval_qubits;
  rep.backend = backend;
  rep.closed_form = integrand.closed_form();
  rep.analytic = estimate_integral(integrand, n_index_qubits, m_eval_qubits, Backend::Analytic);
  rep.circuit = estimate_integral(integrand, n_index_qubits, m_eval_qubits, Backend::Circuit);
  rep.bound = (integrand.b_max - integrand.b_min) * qae_error_bound(m_eval_qubits);

  const double selected = backend == Backend::Circuit ? rep.circuit : rep.analytic;
  log << "integral of sin^2(" << format_double(integrand.m) << " z + " << format_double(integrand.c) << ") over ["
      << format_double(integrand.b_min) << ", " << format_double(integrand.b_max) << "]\n"
      << "  index qubits " << n_index_qubits << ", evaluation qubits " << m_eval_qubits << "\n"
      << "  closed form : " << format_double(rep.closed_form) << "\n"
      << "  analytic    : " << format_double(rep.analytic) << "\n"
      << "  circuit     : " << format_double(rep.circuit) << "\n"
      << "  QAE bound   : " << format_double(rep.bound) << "\n"
      << "  " << to_string(backend) << " estimate: " << format_double(selected) << "\n";
  if (!out_dir.empty()) {
    CsvTable row;
    row.header = {"m", "c", "closed_form", "analytic", "circuit", "bound"};
    row.rows.push_back({integrand.m, integrand.c, rep.closed_form, rep.analytic, rep.circuit, rep.bound});
    rep.csv = out_dir / "integrals.csv";
    write_csv(rep.csv, row, /*append=*/true);
  }
  return rep;
}

}  // namespace qfode
