#include "gibbs/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "gibbs/cli/schema.hpp"

namespace gibbs::cli {

using nlohmann::json;

PairPotential PotentialSpec::build() const {
  if (kind == "zero") return PairPotential(CouplingLaw::finite_table({}), beta, truncation_range);
  if (kind == "power_law") return PairPotential(CouplingLaw::power_law(q, amplitude), beta, truncation_range);
  if (kind == "exponential") return PairPotential(CouplingLaw::exponential(rate, amplitude), beta, truncation_range);
  if (kind == "finite_table") return PairPotential(CouplingLaw::finite_table(table), beta, truncation_range);
  throw ConfigError("unknown potential kind '" + kind + "'");
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind == "zero") os << "J = 0";
  else if (kind == "power_law") os << "J(n) = " << amplitude << " n^-" << q;
  else if (kind == "exponential") os << "J(n) = " << amplitude << " exp(-" << rate << " n)";
  else {
    os << "J = [";
    for (std::size_t i = 0; i < table.size(); ++i) os << (i ? ", " : "") << table[i];
    os << "]";
  }
  os << ", beta = " << beta;
  if (truncation_range) os << ", truncated at " << *truncation_range;
  return os.str();
}

namespace {

std::optional<double> opt_real(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

void throw_errors(const std::vector<std::string>& errors) {
  std::string msg = "config does not match the schema:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw ConfigError(msg);
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  const json& schema = config_schema();
  if (auto errors = validate(schema, doc); !errors.empty()) throw_errors(errors);
  json r = apply_defaults(schema, doc);
  if (auto errors = validate(schema, r); !errors.empty()) throw_errors(errors);

  RunConfig cfg;
  const json& p = r["potential"];
  cfg.potential.kind = p["kind"].get<std::string>();
  cfg.potential.beta = p["beta"].get<double>();
  cfg.potential.q = p["q"].get<double>();
  cfg.potential.amplitude = p["amplitude"].get<double>();
  cfg.potential.rate = p["rate"].get<double>();
  cfg.potential.table = p["table"].get<std::vector<double>>();
  if (!p["truncation_range"].is_null()) cfg.potential.truncation_range = p["truncation_range"].get<long>();

  static const std::vector<std::string> order{"criteria", "bounds", "gfun", "sample", "couple"};
  const auto wanted = r["experiments"].get<std::vector<std::string>>();
  for (const auto& e : order) {
    bool on = false;
    for (const auto& w : wanted) on = on || w == e || w == "all";
    if (on) cfg.experiments.push_back(e);
  }

  const json& n = r["numerics"];
  cfg.numerics.cutoff_rel_width = n["cutoff_rel_width"].get<double>();
  cfg.numerics.max_cutoff = n["max_cutoff"].get<long>();
  cfg.numerics.n_max = n["n_max"].get<long>();
  cfg.numerics.series_rel_tol = n["series_rel_tol"].get<double>();
  cfg.numerics.dobrushin_truncation = n["dobrushin_truncation"].get<long>();
  cfg.numerics.alpha = opt_real(n["alpha"]);
  cfg.numerics.gamma_alpha = opt_real(n["gamma_alpha"]);
  cfg.numerics.gamma_K = opt_real(n["gamma_K"]);
  if (cfg.numerics.gamma_alpha.has_value() != cfg.numerics.gamma_K.has_value())
    throw ConfigError("config does not match the schema:\n  /numerics: gamma_alpha and gamma_K go together");
  cfg.numerics.jop_lambda = n["jop_lambda"].get<double>();
  cfg.numerics.empirical_window = n["empirical_window"].get<long>();
  cfg.numerics.empirical_max_range = n["empirical_max_range"].get<long>();
  cfg.numerics.gfun_windows = n["gfun_windows"].get<std::vector<long>>();

  const json& s = r["sampling"];
  cfg.sampling.seed = s["seed"].get<std::uint64_t>();
  cfg.sampling.length = s["length"].get<long>();
  cfg.sampling.truncation_range = s["truncation_range"].get<long>();
  cfg.sampling.coupling_blocks = s["coupling_blocks"].get<long>();

  cfg.out_dir = r["output"]["dir"].get<std::string>();
  // Construct once so invalid combinations surface as config errors.
  try {
    (void)cfg.potential.build();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("config: ") + ex.what());
  }
  cfg.resolved = std::move(r);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& ex) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + ex.what());
  }
  return parse_config(doc);
}

RunConfig default_config(const nlohmann::json& potential) { return parse_config(json{{"potential", potential}}); }

}  // namespace gibbs::cli
