#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kernel.hpp"

namespace skms {

struct ParamSpec {
  std::string key;
  double value;   // default
  bool integer;   // counts and cutoffs
  double max;     // inclusive upper bound; every parameter is > 0
  std::string help;
};

// Every tunable with its embedded default, sorted by key.
const std::vector<ParamSpec>& param_table();

// Resolves short aliases ("rel_tol") to full keys; throws ConfigError on an
// unknown key.
std::string canonical_key(const std::string& key);

struct RunConfig {
  std::uint64_t seed = 42;
  std::map<std::string, double> params;  // always holds every key
  std::string out_path;
  std::string csv_path;

  RunConfig();

  double get(const std::string& key) const;
  int get_int(const std::string& key) const;
  // Both throw ConfigError on unknown keys or out-of-range values.
  void set(const std::string& key, double value);
  void set(const std::string& key, const std::string& text);
  // "KEY=VAL"
  void apply_override(const std::string& assignment);

  KernelConfig kernel() const;
  // Case tolerance for a quadrature-backed quantity: the pinned value, or
  // more when the quadrature tolerance has been loosened.
  double quad_tolerance(const std::string& key) const;

  nlohmann::json to_json() const;
};

// Flat object: "seed", "out", "csv" and parameter keys (aliases allowed),
// layered over the defaults.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace skms
