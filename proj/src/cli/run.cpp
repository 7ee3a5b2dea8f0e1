#include "gibbs/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include "gibbs/cli/schema.hpp"
#include "gibbs/criteria.hpp"
#include "gibbs/dynamics.hpp"
#include "gibbs/kernel.hpp"
#include "gibbs/simd/kernels.hpp"

#ifndef GIBBS_VERSION
#define GIBBS_VERSION "unknown"
#endif

namespace gibbs::cli {

using nlohmann::json;

json real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json interval_json(const Interval& x) { return json{{"lo", real(x.lo())}, {"hi", real(x.hi())}}; }

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name, RunResult& res) {
  std::ofstream os(cfg.out_dir / name, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + (cfg.out_dir / name).string());
  res.files.push_back(name);
  return os;
}

json potential_json(const RunConfig& cfg, const PairPotential& p) {
  const auto& s = cfg.potential;
  json j{{"kind", s.kind}, {"beta", s.beta}, {"description", s.describe()}};
  if (s.kind == "power_law") j["q"] = s.q;
  if (s.kind == "power_law" || s.kind == "exponential") j["amplitude"] = s.amplitude;
  if (s.kind == "exponential") j["rate"] = s.rate;
  if (s.kind == "finite_table") j["table"] = s.table;
  j["truncation_range"] = s.truncation_range ? json(*s.truncation_range) : json(nullptr);
  const auto r = p.range();
  j["range"] = r ? json(*r) : json(nullptr);
  return j;
}

json verdict_json(const Verdict& v) {
  return json{{"criterion", v.criterion},
              {"outcome", std::string(to_string(v.outcome))},
              {"margin", interval_json(v.margin)},
              {"value", v.value ? interval_json(*v.value) : json(nullptr)},
              {"certificate", v.certificate},
              {"conclusion_strength", std::string(to_string(v.strength))}};
}

TailOptions tail_options(const RunConfig& cfg) {
  TailOptions t;
  t.rel_width = cfg.numerics.cutoff_rel_width;
  t.max_cutoff = cfg.numerics.max_cutoff;
  return t;
}

SeriesOptions series_options(const RunConfig& cfg) {
  SeriesOptions s;
  s.rel_tol = cfg.numerics.series_rel_tol;
  return s;
}

json run_criteria(const RunConfig& cfg, const PairPotential& p) {
  CriteriaOptions opts;
  opts.alpha = cfg.numerics.alpha;
  opts.gamma_alpha = cfg.numerics.gamma_alpha;
  opts.gamma_K = cfg.numerics.gamma_K;
  opts.dobrushin_truncation = cfg.numerics.dobrushin_truncation;
  opts.jop_lambda = cfg.numerics.jop_lambda;
  opts.tail = tail_options(cfg);
  opts.series = series_options(cfg);
  const CriteriaReport rep = evaluate_all(p, opts);
  json verdicts = json::array();
  for (const auto& v : rep.verdicts) verdicts.push_back(verdict_json(v));
  return json{{"verdicts", verdicts},
              {"strongest_conclusion", rep.strongest ? json(std::string(to_string(*rep.strongest))) : json(nullptr)},
              {"strongest_by", rep.strongest_by}};
}

json run_bounds(const RunConfig& cfg, const PairPotential& p, RunResult& res) {
  const FSequence F = FSequence::from_potential(p, tail_options(cfg));
  const SeriesOptions sopts = series_options(cfg);
  const long n_max = cfg.numerics.n_max;
  const auto range = p.range();
  const bool empirical = range && *range <= cfg.numerics.empirical_max_range;
  const long window = cfg.numerics.empirical_window;

  auto os = open_out(cfg, "bounds.csv", res);
  os << "n,tail_variation_lo,tail_variation_hi,log_ratio_right_lo,log_ratio_right_hi,rn_lo,rn_hi,rn_divergent,"
        "log_r_bound_lo,log_r_bound_hi,empirical_log_r\n";
  const TailTable table = F.tail_table(n_max + 2);
  for (long n = 1; n <= n_max; ++n) {
    const Interval tv = table.at(n), lr = table.at(n + 1);
    const SeriesResult rn = rn_series(F, n, sopts);
    const Interval g = g_bound_from_series(rn);
    os << n << ',' << g17(tv.lo()) << ',' << g17(tv.hi()) << ',' << g17(lr.lo()) << ',' << g17(lr.hi()) << ','
       << g17(rn.value.lo()) << ',' << g17(rn.value.hi()) << ',' << (rn.divergent ? 1 : 0) << ',' << g17(g.lo()) << ','
       << g17(g.hi()) << ',';
    if (empirical) os << g17(empirical_g_variation(p, n, window));
    os << '\n';
  }
  json j{{"csv", "bounds.csv"}, {"rows", n_max}, {"empirical", empirical}};
  if (empirical) j["empirical_window"] = window;
  if (!p.is_zero() && !range) j["berbee_growth_slope"] = real(berbee_growth_slope(F));
  return j;
}

// Finite-range potential the g-function experiments run on.
PairPotential markov_source(const RunConfig& cfg, const PairPotential& p, bool& truncated) {
  truncated = !p.range().has_value();
  return truncated ? p.truncated(cfg.sampling.truncation_range) : p;
}

std::string past_string(std::size_t state, long R, const Alphabet& a) {
  // sites -R..-1, left to right; digit d of the state is the letter at -d
  std::string s;
  std::vector<int> letters(R);
  for (long d = 1; d <= R; ++d) {
    letters[R - d] = a.values[state % a.size()];
    state /= a.size();
  }
  for (int l : letters) s += l > 0 ? '+' : '-';
  return s;
}

json run_gfun(const RunConfig& cfg, const PairPotential& p, RunResult& res) {
  bool truncated = false;
  const PairPotential src = markov_source(cfg, p, truncated);
  const Alphabet a = Alphabet::spins();
  const MarkovG exact = g_exact_markov(src, a);
  const GFunction gx = GFunction::exact_markov(src, a);
  std::vector<GFunction> windows;
  for (long n : cfg.numerics.gfun_windows) windows.push_back(GFunction::window(src, n, 1, a));

  auto os = open_out(cfg, "gfun.csv", res);
  os << "state,past,g_exact_plus";
  for (long n : cfg.numerics.gfun_windows) os << ",g_window_" << n << "_plus";
  os << '\n';
  const std::size_t plus = a.index_of(1);
  std::vector<double> err(windows.size(), 0.0);
  for (std::size_t st = 0; st < gx.states(); ++st) {
    const double e = gx.law(st)[plus];
    os << st << ',' << past_string(st, gx.memory(), a) << ',' << g17(e);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const double v = windows[w].law(st)[plus];
      err[w] = std::max(err[w], std::fabs(v - e));
      os << ',' << g17(v);
    }
    os << '\n';
  }
  json errs = json::array();
  for (double e : err) errs.push_back(real(e));
  return json{{"csv", "gfun.csv"},
              {"memory", gx.memory()},
              {"source", gx.source()},
              {"truncated_from_infinite_range", truncated},
              {"eigen_residual", real(exact.eigen_residual())},
              {"windows", cfg.numerics.gfun_windows},
              {"max_error", errs}};
}

json run_sample(const RunConfig& cfg, const PairPotential& p, RunResult& res) {
  bool truncated = false;
  const GFunction g = GFunction::exact_markov(markov_source(cfg, p, truncated));
  const Word past = Word::constant(-g.memory(), g.memory(), 1);
  const ChainRun run = sample_chain(g, past, cfg.sampling.length, cfg.sampling.seed);
  auto os = open_out(cfg, "chain.csv", res);
  write_chain_csv(os, run);
  long repeats = 0, plus = 0;
  for (std::size_t t = 0; t < run.samples.size(); ++t) {
    if (run.samples[t] > 0) ++plus;
    if (t > 0 && run.samples[t] == run.samples[t - 1]) ++repeats;
  }
  const double N = static_cast<double>(run.samples.size());
  return json{{"csv", "chain.csv"},
              {"seed", cfg.sampling.seed},
              {"length", cfg.sampling.length},
              {"g_source", run.g_source},
              {"repeat_fraction", real(N > 1 ? repeats / (N - 1) : 0.0)},
              {"plus_fraction", real(N > 0 ? plus / N : 0.0)}};
}

json run_couple(const RunConfig& cfg, const PairPotential& p, RunResult& res) {
  bool truncated = false;
  const GFunction g = GFunction::exact_markov(markov_source(cfg, p, truncated));
  const Word a = Word::constant(-g.memory(), g.memory(), 1);
  const Word b = Word::constant(-g.memory(), g.memory(), -1);
  const CouplingRun run = couple_two_pasts(g, a, b, cfg.sampling.length, cfg.sampling.seed);
  auto os = open_out(cfg, "coupling.csv", res);
  write_coupling_csv(os, run);
  json dens = json::array();
  if (cfg.sampling.length > 0)
    for (double d : run.block_density(cfg.sampling.coupling_blocks)) dens.push_back(real(d));
  return json{{"csv", "coupling.csv"},
              {"seed", cfg.sampling.seed},
              {"length", cfg.sampling.length},
              {"g_source", run.a.g_source},
              {"coalescence", run.coalescence},
              {"block_density", dens}};
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunResult run(const RunConfig& cfg, std::ostream& log) {
  std::filesystem::create_directories(cfg.out_dir);
  RunResult res;
  const PairPotential p = cfg.potential.build();
  json report{{"toolkit", "gibbs"},
              {"version", GIBBS_VERSION},
              {"potential", potential_json(cfg, p)},
              {"experiments", cfg.experiments}};
  for (const auto& e : cfg.experiments) {
    log << "[gibbs] " << e << '\n';
    if (e == "criteria") report["criteria"] = run_criteria(cfg, p);
    else if (e == "bounds") report["bounds"] = run_bounds(cfg, p, res);
    else if (e == "gfun") report["gfun"] = run_gfun(cfg, p, res);
    else if (e == "sample") report["sample"] = run_sample(cfg, p, res);
    else if (e == "couple") report["couple"] = run_couple(cfg, p, res);
  }
  if (auto errors = validate(report_schema(), report); !errors.empty()) {
    std::string msg = "internal error: report violates its schema:";
    for (const auto& m : errors) msg += "\n  " + m;
    throw std::logic_error(msg);
  }
  {
    auto os = open_out(cfg, "report.json", res);
    os << report.dump(2) << '\n';
  }
  res.files.push_back("manifest.json");
  json manifest{{"toolkit", "gibbs"},
                {"version", GIBBS_VERSION},
                {"timestamp", utc_now()},
                {"simd", std::string(simd::isa_name(simd::active().isa))},
                {"seeds", {{"sampling", cfg.sampling.seed}}},
                {"cutoffs",
                 {{"cutoff_rel_width", cfg.numerics.cutoff_rel_width},
                  {"max_cutoff", cfg.numerics.max_cutoff},
                  {"series_rel_tol", cfg.numerics.series_rel_tol},
                  {"n_max", cfg.numerics.n_max}}},
                {"config", cfg.resolved},
                {"files", res.files}};
  {
    std::ofstream os(cfg.out_dir / "manifest.json", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (cfg.out_dir / "manifest.json").string());
    os << manifest.dump(2) << '\n';
  }
  res.report = std::move(report);
  res.manifest = std::move(manifest);
  return res;
}

}  // namespace gibbs::cli
