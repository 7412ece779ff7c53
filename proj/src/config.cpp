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

#include "qfode/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "qfode/csv.hpp"
#include "qfode/errors.hpp"
#include "qfode/statevector.hpp"

namespace qfode {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0') throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
  return d;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  char* end = nullptr;
  if (v.empty() || v[0] == '-') throw ConfigError("'" + key + "': expected a non-negative integer, got '" + v + "'");
  const unsigned long long n = std::strtoull(v.c_str(), &end, 10);
  if (*end != '\0') throw ConfigError("'" + key + "': expected a non-negative integer, got '" + v + "'");
  return static_cast<std::size_t>(n);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "': expected a boolean, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto dbl = [&t](const char* key, double RunConfig::*field) {
      t[key] = [field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = to_double(k, v); };
    };
    auto sz = [&t](const char* key, std::size_t RunConfig::*field) {
      t[key] = [field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = to_size(k, v); };
    };
    auto bl = [&t](const char* key, bool RunConfig::*field) {
      t[key] = [field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = to_bool(k, v); };
    };
    t["name"] = [](RunConfig& c, const std::string&, const std::string& v) { c.name = v; };
    t["model"] = [](RunConfig& c, const std::string&, const std::string& v) {
      if (v != "heat" && v != "burgers" && v != "coupled" && v != "cavity") {
        throw ConfigError("'model': expected heat, burgers, coupled or cavity, got '" + v + "'");
      }
      c.model = v;
    };
    t["mesh"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.nx = c.ny = to_size(k, v); };
    sz("nx", &RunConfig::nx);
    sz("ny", &RunConfig::ny);
    dbl("alpha_sq", &RunConfig::alpha_sq);
    dbl("nu", &RunConfig::nu);
    dbl("reynolds", &RunConfig::reynolds);
    dbl("lid_speed", &RunConfig::lid_speed);
    dbl("T", &RunConfig::T);
    dbl("epsilon1", &RunConfig::epsilon1);
    sz("n", &RunConfig::n);
    sz("k", &RunConfig::k);
    sz("n_k", &RunConfig::n_k);
    bl("steady", &RunConfig::steady);
    dbl("h", &RunConfig::h);
    dbl("steady_tol", &RunConfig::steady_tol);
    sz("max_subintervals", &RunConfig::max_subintervals);
    t["taylor_order"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.taylor_order = static_cast<int>(to_size(k, v));
    };
    sz("n_fourier", &RunConfig::n_fourier);
    t["extension"] = [](RunConfig& c, const std::string&, const std::string& v) { c.extension = parse_extension(v); };
    t["backend"] = [](RunConfig& c, const std::string&, const std::string& v) {
      try {
        c.backend = parse_backend(v);
      } catch (const ValidationError& e) {
        throw ConfigError(e.what());
      }
    };
    sz("n_index_qubits", &RunConfig::n_index_qubits);
    sz("m_eval_qubits", &RunConfig::m_eval_qubits);
    t["grid_convention"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.convention = parse_convention(v);
    };
    dbl("cfl", &RunConfig::cfl);
    bl("reference", &RunConfig::reference);
    dbl("reference_dt", &RunConfig::reference_dt);
    dbl("reference_steady_tol", &RunConfig::reference_steady_tol);
    sz("reference_max_steps", &RunConfig::reference_max_steps);
    t["output_dir"] = [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; };
    t["seed"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = to_size(k, v); };
    return t;
  }();
  return table;
}

}  // namespace

Extension parse_extension(const std::string& name) {
  if (name == "smooth") return Extension::SmoothPeriodic;
  if (name == "zeropad") return Extension::ZeroPad;
  throw ConfigError("'extension': expected smooth or zeropad, got '" + name + "'");
}

std::string to_string(Extension e) { return e == Extension::SmoothPeriodic ? "smooth" : "zeropad"; }

GridConvention parse_convention(const std::string& name) {
  if (name == "endpoint") return GridConvention::Endpoint;
  if (name == "midpoint") return GridConvention::Midpoint;
  throw ConfigError("'grid_convention': expected endpoint or midpoint, got '" + name + "'");
}

std::string to_string(GridConvention c) { return c == GridConvention::Endpoint ? "endpoint" : "midpoint"; }

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(config, key, value);
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  apply_setting(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_setting(config, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(nx >= 3 && ny >= 3, "mesh needs at least 3 points per direction");
  require(nx <= 4097 && ny <= 4097, "mesh exceeds 4097 points per direction");
  require(alpha_sq > 0.0 && nu > 0.0 && reynolds > 0.0, "physical parameters must be positive");
  require(cfl > 0.0 && cfl < 1.0, "cfl must lie in (0, 1)");
  require(taylor_order >= 1 && taylor_order <= 6, "taylor_order must lie in 1..6");
  require(n_fourier <= 256, "n_fourier must be <= 256");
  require(n_index_qubits >= 1 && m_eval_qubits >= 1, "qubit counts must be positive");
  require(n_index_qubits + 1 + m_eval_qubits <= kDefaultQubitCap, "qubit counts exceed the statevector cap");
  if (steady) {
    require(h > 0.0 && n_k >= 1, "steady runs need h > 0 and n_k >= 1");
    require(max_subintervals >= 1 && steady_tol > 0.0, "steady runs need max_subintervals >= 1, steady_tol > 0");
  } else {
    require(T > 0.0, "T must be positive");
    require(n >= 1, "n must be >= 1");
    if (k == 0 && n_k == 0) {
      require(n >= 2, "n must be >= 2 when k is derived from epsilon1");
      require(epsilon1 > 0.0 && epsilon1 < 1.0, "epsilon1 must lie in (0, 1)");
    }
  }
  require(reference_dt >= 0.0 && reference_steady_tol > 0.0, "reference settings must be positive");
}

std::filesystem::path RunConfig::effective_output_dir() const {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return output_dir;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> e = {
      {"name", name},
      {"model", model},
      {"nx", std::to_string(nx)},
      {"ny", std::to_string(ny)},
      {"alpha_sq", format_double(alpha_sq)},
      {"nu", format_double(nu)},
      {"reynolds", format_double(reynolds)},
      {"lid_speed", format_double(lid_speed)},
      {"T", format_double(T)},
      {"epsilon1", format_double(epsilon1)},
      {"n", std::to_string(n)},
      {"k", std::to_string(k)},
      {"n_k", std::to_string(n_k)},
      {"steady", steady ? "true" : "false"},
      {"h", format_double(h)},
      {"steady_tol", format_double(steady_tol)},
      {"max_subintervals", std::to_string(max_subintervals)},
      {"taylor_order", std::to_string(taylor_order)},
      {"n_fourier", std::to_string(n_fourier)},
      {"extension", to_string(extension)},
      {"backend", std::string(to_string(backend))},
      {"n_index_qubits", std::to_string(n_index_qubits)},
      {"m_eval_qubits", std::to_string(m_eval_qubits)},
      {"grid_convention", to_string(convention)},
      {"cfl", format_double(cfl)},
      {"reference", reference ? "true" : "false"},
      {"reference_dt", format_double(reference_dt)},
      {"reference_steady_tol", format_double(reference_steady_tol)},
      {"reference_max_steps", std::to_string(reference_max_steps)},
      {"output_dir", output_dir},
      {"seed", std::to_string(seed)},
  };
  return e;
}

std::string to_config_text(const RunConfig& config) {
  std::string out;
  for (const auto& [k, v] : config.entries()) out += k + " = " + v + "\n";
  return out;
}

}  // namespace qfode
