#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "errors.hpp"

namespace skms {

namespace {

std::vector<ParamSpec> make_table() {
  std::vector<ParamSpec> t = {
      {"araki.fock_m", 5, true, 8, "modes for the Fock cross-check"},
      {"araki.fock_tol", 1e-9, false, 1, "Fock density vs Pfaffian"},
      {"araki.fock_words", 50, true, 10000, "words in the Fock cross-check"},
      {"araki.hand_tol", 1e-14, false, 1, "hand instance constants"},
      {"araki.instances", 20, true, 10000, "random CAR instances"},
      {"araki.invariant_tol", 1e-10, false, 1, "spectral split invariants"},
      {"araki.max_m", 8, true, 10, "largest mode count"},
      {"araki.powers_stormer_n", 16, true, 256, "matrix size for Powers-Stormer"},
      {"araki.powers_stormer_tol", 1e-10, false, 1, "slack allowed below zero"},
      {"araki.powers_stormer_trials", 100, true, 100000, "random pairs"},
      {"gibbs.boundary_tol", 1e-10, false, 1, "matrix boundary identity"},
      {"gibbs.hyperplane_tol", 1e-12, false, 1, "normalized weights on the hyperplane"},
      {"gibbs.instances", 20, true, 10000, "random graded summands"},
      {"gibbs.max_n", 16, true, 64, "largest summand size"},
      {"gibbs.span_tol", 1e-10, false, 1, "intertwiner against the grading"},
      {"gibbs.ungraded_tol", 1e-12, false, 1, "doubled summands give zero"},
      {"jordan.margin", 1e-6, false, 1, "strict increase required"},
      {"jordan.max_m", 4, true, 6, "largest mode count"},
      {"jordan.solve_tol", 1e-9, false, 1, "Fock density residual"},
      {"jordan.trials", 200, true, 100000, "random instances tried"},
      {"kernel.decomposition_tol", 1e-5, false, 1, "theta against vacuum plus T part"},
      {"kernel.identity_tol", 1e-8, false, 1, "PV cross-check and boson commutator"},
      {"kernel.normalization_tol", 1e-8, false, 1, "relative, anticommutator against l2 norm"},
      {"kernel.oracle_tol", 1e-9, false, 1, "against mpmath values"},
      {"kernel.pairs", 20, true, 10000, "random functions or pairs"},
      {"kernel.quad_rel_tol", 1e-10, false, 1e-2, "adaptive quadrature relative tolerance"},
      {"kernel.strip_tol", 1e-6, false, 1, "Cauchy-Riemann residual in the strip"},
      {"skms.boundary_tol", 1e-5, false, 1, "boundary identity residual"},
      {"skms.error_budget", 1e-8, false, 1, "propagated quadrature error on boundary values"},
      {"skms.eval_length", 8, true, 16, "word length for evaluator cross-check"},
      {"skms.eval_tol", 1e-10, false, 1, "recursive vs Pfaffian, relative"},
      {"skms.eval_words", 50, true, 10000, "words for evaluator cross-check"},
      {"skms.growth_points", 21, true, 1001, "grid points per strip line"},
      {"skms.max_degree", 6, true, 8, "total degree of boundary pairs"},
      {"skms.nonpositivity_budget", 200, true, 100000, "random tries for a negative value"},
      {"skms.nonpositivity_margin", 1e-6, false, 1, "required negativity"},
      {"skms.pairs", 20, true, 10000, "boundary pairs"},
      {"skms.s4_tol", 1e-6, false, 1, "delta invariance residual"},
      {"skms.s4_words", 50, true, 10000, "monomials for delta invariance"},
      {"skms.s5_step", 1e-3, false, 1, "central difference step"},
      {"skms.s5_tol", 1e-5, false, 1, "weak supersymmetry residual"},
      {"skms.s5_triples", 20, true, 10000, "triples for weak supersymmetry"},
      {"svir.cutoff", 12, true, 14, "Fock energy cutoff N"},
      {"svir.max_m", 3, true, 6, "largest |m| in the relation table"},
      {"svir.max_r2", 5, true, 11, "largest |2r| in the relation table"},
  };
  std::sort(t.begin(), t.end(), [](const ParamSpec& a, const ParamSpec& b) { return a.key < b.key; });
  return t;
}

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a = {
      {"rel_tol", "kernel.quad_rel_tol"},
      {"cutoff", "svir.cutoff"},
      {"N", "svir.cutoff"},
  };
  return a;
}

const ParamSpec& spec_for(const std::string& key) {
  for (const auto& p : param_table())
    if (p.key == key) return p;
  throw ConfigError("unknown parameter '" + key + "'");
}

}  // namespace

const std::vector<ParamSpec>& param_table() {
  static const std::vector<ParamSpec> table = make_table();
  return table;
}

std::string canonical_key(const std::string& key) {
  if (auto it = aliases().find(key); it != aliases().end()) return it->second;
  return spec_for(key).key;
}

RunConfig::RunConfig() {
  for (const auto& p : param_table()) params[p.key] = p.value;
}

double RunConfig::get(const std::string& key) const { return params.at(canonical_key(key)); }

int RunConfig::get_int(const std::string& key) const { return int(std::lround(get(key))); }

void RunConfig::set(const std::string& key, double value) {
  const ParamSpec& p = spec_for(canonical_key(key));
  if (!std::isfinite(value) || value <= 0.0) throw ConfigError(p.key + " must be > 0");
  if (value > p.max) throw ConfigError(p.key + " must be <= " + nlohmann::json(p.max).dump());
  if (p.integer && value != std::floor(value)) throw ConfigError(p.key + " must be an integer");
  params[p.key] = value;
}

void RunConfig::set(const std::string& key, const std::string& text) {
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number for " + key + ": '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("not a number for " + key + ": '" + text + "'");
  set(key, v);
}

void RunConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected KEY=VAL, got '" + assignment + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

KernelConfig RunConfig::kernel() const {
  KernelConfig k;
  k.quad_rel_tol = get("kernel.quad_rel_tol");
  return k;
}

double RunConfig::quad_tolerance(const std::string& key) const {
  return std::max(get(key), 10.0 * get("kernel.quad_rel_tol"));
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  j["seed"] = seed;
  if (!out_path.empty()) j["out"] = out_path;
  if (!csv_path.empty()) j["csv"] = csv_path;
  for (const auto& p : param_table()) {
    const double v = params.at(p.key);
    if (p.integer)
      j[p.key] = std::lround(v);
    else
      j[p.key] = v;
  }
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (!value.is_number_integer() || (!value.is_number_unsigned() && value.get<long long>() < 0))
        throw ConfigError("seed must be a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out" || key == "csv") {
      if (!value.is_string()) throw ConfigError(key + " must be a string");
      (key == "out" ? cfg.out_path : cfg.csv_path) = value.get<std::string>();
    } else if (value.is_number()) {
      cfg.set(key, value.get<double>());
    } else if (value.is_string()) {
      cfg.set(key, value.get<std::string>());
    } else {
      throw ConfigError("value for " + key + " must be a number");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

}  // namespace skms
