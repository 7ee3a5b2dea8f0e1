#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gibbs/potential.hpp"

namespace gibbs::cli {

/// Schema violations, all of them, one per line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialSpec {
  std::string kind = "power_law";
  double beta = 0.0;
  double q = 2.0;
  double amplitude = 1.0;
  double rate = 1.0;
  std::vector<double> table;
  std::optional<long> truncation_range;

  PairPotential build() const;
  std::string describe() const;
};

struct Numerics {
  double cutoff_rel_width = 1e-10;
  long max_cutoff = 400'000'000;
  long n_max = 64;
  double series_rel_tol = 1e-12;
  long dobrushin_truncation = 8;
  std::optional<double> alpha;
  std::optional<double> gamma_alpha;
  std::optional<double> gamma_K;
  double jop_lambda = 2.0;
  long empirical_window = 16;
  long empirical_max_range = 4;
  std::vector<long> gfun_windows;
};

struct Sampling {
  std::uint64_t seed = 20240601;
  long length = 100000;
  long truncation_range = 8;
  long coupling_blocks = 10;
};

struct RunConfig {
  PotentialSpec potential;
  /// Expanded: "all" becomes every experiment, in canonical order.
  std::vector<std::string> experiments;
  Numerics numerics;
  Sampling sampling;
  std::filesystem::path out_dir;
  /// The validated document with defaults filled in.
  nlohmann::json resolved;
};

/// Validates against the config schema, fills defaults and converts.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
/// A config with every default and the given potential.
RunConfig default_config(const nlohmann::json& potential);

}  // namespace gibbs::cli
