#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gibbs/cli/config.hpp"
#include "gibbs/interval.hpp"

namespace gibbs::cli {

struct RunResult {
  /// Deterministic for a given config: no clocks, no paths outside out_dir.
  nlohmann::json report;
  /// Seeds, cutoffs, version and the wall-clock timestamp.
  nlohmann::json manifest;
  /// Files written, relative to out_dir.
  std::vector<std::string> files;
};

/// Runs the configured experiments and writes report.json, manifest.json and
/// one CSV per computed series into cfg.out_dir. Progress goes to `log`.
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Finite doubles as numbers, non-finite ones as "inf", "-inf" or "nan".
nlohmann::json real(double x);
nlohmann::json interval_json(const Interval& x);

}  // namespace gibbs::cli
