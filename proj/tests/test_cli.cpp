#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gibbs/cli/config.hpp"
#include "gibbs/cli/run.hpp"
#include "gibbs/cli/schema.hpp"

using namespace gibbs::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gibbs_test_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int tool(const std::string& args) {
  const std::string cmd = std::string(GIBBS_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path write_json(const fs::path& dir, const json& doc) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << doc.dump(2);
  return p;
}

RunResult quiet_run(const RunConfig& cfg) {
  std::ostringstream log;
  return run(cfg, log);
}

}  // namespace

TEST_CASE("schema subset") {
  const json schema = json::parse(R"({
    "type": "object", "additionalProperties": false, "required": ["a"],
    "properties": {
      "a": {"type": "integer", "minimum": 1, "maximum": 5},
      "b": {"enum": ["x", "y"], "default": "x"},
      "c": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
      "d": {"anyOf": [{"type": "null"}, {"$ref": "#/$defs/pos"}], "default": null}
    },
    "$defs": {"pos": {"type": "number", "exclusiveMinimum": 0}}
  })");
  CHECK(validate(schema, json::parse(R"({"a": 3})")).empty());
  CHECK(validate(schema, json::parse(R"({"a": 3.0})")).empty());
  CHECK(validate(schema, json::parse(R"({"a": 3.5})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({"a": 7})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({"a": 1, "zz": 1})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({"a": 1, "b": "q"})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({"a": 1, "c": []})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({"a": 1, "c": [1, 0]})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({"a": 1, "d": -2})")).size() == 1);
  CHECK(validate(schema, json::parse(R"({"a": 1, "d": 2})")).empty());
  const auto errs = validate(schema, json::parse(R"({"a": "s", "zz": 0})"));
  CHECK(errs.size() == 2);
  const json filled = apply_defaults(schema, json::parse(R"({"a": 2})"));
  CHECK(filled["b"] == "x");
  CHECK(filled["d"].is_null());
  CHECK_FALSE(filled.contains("c"));
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config(json::parse(R"({"potential": {"kind": "power_law", "beta": 0.3}})"));
  CHECK(cfg.potential.q == 2.0);
  CHECK(cfg.experiments == std::vector<std::string>{"criteria"});
  CHECK(cfg.numerics.cutoff_rel_width == 1e-10);
  CHECK(cfg.numerics.n_max == 64);
  CHECK(cfg.sampling.seed == 20240601u);
  CHECK(cfg.numerics.gfun_windows == std::vector<long>{4, 8, 16, 32});
  CHECK(cfg.resolved["numerics"]["dobrushin_truncation"] == 8);
  CHECK(validate(config_schema(), cfg.resolved).empty());

  const auto all = parse_config(json::parse(R"({"potential": {"kind": "zero", "beta": 1}, "experiments": ["couple", "all"]})"));
  CHECK(all.experiments == std::vector<std::string>{"criteria", "bounds", "gfun", "sample", "couple"});

  CHECK_THROWS_AS(parse_config(json::parse(R"({"potential": {"kind": "power_law", "beta": 0.3}, "extra": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"potential": {"kind": "power_law", "beta": 0.3, "qq": 2}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"potential": {"kind": "power_law"}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"potential": {"kind": "cubic", "beta": 1}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"potential": {"kind": "power_law", "beta": 1, "q": 0.5}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"potential": {"kind": "zero", "beta": 1}, "experiments": ["plot"]})")),
                  ConfigError);
  try {
    parse_config(json::parse(R"({"potential": {"kind": "zero", "beta": 1, "bogus": 1}, "numerics": {"n_max": -3}})"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& ex) {
    const std::string msg = ex.what();
    CHECK(msg.find("bogus") != std::string::npos);
    CHECK(msg.find("n_max") != std::string::npos);
  }
}

TEST_CASE("criteria report for q = 2, beta = 0.3") {
  auto cfg = parse_config(json::parse(R"({"potential": {"kind": "power_law", "q": 2, "beta": 0.3}})"));
  cfg.out_dir = scratch("q2");
  const auto res = quiet_run(cfg);
  const auto& verdicts = res.report["criteria"]["verdicts"];
  auto outcome = [&](const std::string& name) {
    for (const auto& v : verdicts)
      if (v["criterion"] == name) return v["outcome"].get<std::string>();
    return std::string("missing");
  };
  CHECK(outcome("berbee") == "fails-hypothesis");
  CHECK(outcome("thm_bern2") == "holds");
  CHECK(res.report["criteria"]["strongest_conclusion"] == "unique Gibbs state, T-invariant and Bernoulli");
  // schema round trip through the written file
  const json reread = json::parse(slurp(cfg.out_dir / "report.json"));
  CHECK(validate(report_schema(), reread).empty());
  CHECK(reread == res.report);
  CHECK(fs::exists(cfg.out_dir / "manifest.json"));
  const json manifest = json::parse(slurp(cfg.out_dir / "manifest.json"));
  CHECK(manifest.contains("timestamp"));
  CHECK(manifest["config"] == cfg.resolved);
}

TEST_CASE("zero potential, every experiment") {
  auto cfg = parse_config(json::parse(
      R"({"potential": {"kind": "zero", "beta": 1}, "experiments": ["all"], "sampling": {"length": 100000}})"));
  cfg.out_dir = scratch("zero");
  const auto res = quiet_run(cfg);
  for (const auto& v : res.report["criteria"]["verdicts"]) {
    CAPTURE(v["criterion"].get<std::string>());
    CHECK(v["outcome"] == "holds");
  }
  std::istringstream csv(slurp(cfg.out_dir / "bounds.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("n,tail_variation_lo,tail_variation_hi,", 0) == 0);
  long rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 11);
    CHECK(f[1] == "0");
    CHECK(f[2] == "0");
    CHECK(f[7] == "1");
    CHECK(f[9] == "0");
    CHECK(f[10] == "0");
  }
  CHECK(rows == 64);
  CHECK(std::fabs(res.report["sample"]["plus_fraction"].get<double>() - 0.5) <= 0.01);
  CHECK(res.report["couple"]["coalescence"] == 0);
  CHECK(validate(report_schema(), res.report).empty());
}

TEST_CASE("identical configs give byte-identical outputs") {
  const json doc = json::parse(R"({"potential": {"kind": "power_law", "q": 2.5, "beta": 0.4, "truncation_range": 5},
                                   "experiments": ["all"], "sampling": {"length": 5000}, "numerics": {"n_max": 24}})");
  auto a = parse_config(doc), b = parse_config(doc);
  a.out_dir = scratch("det_a");
  b.out_dir = scratch("det_b");
  const auto ra = quiet_run(a), rb = quiet_run(b);
  CHECK(ra.files == rb.files);
  for (const auto& f : ra.files) {
    if (f == "manifest.json") continue;
    CAPTURE(f);
    CHECK(slurp(a.out_dir / f) == slurp(b.out_dir / f));
  }
  CHECK(validate(report_schema(), ra.report).empty());
}

TEST_CASE("real() spells non-finite values") {
  CHECK(real(1.5) == json(1.5));
  CHECK(real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(real(std::nan("")) == "nan");
}

TEST_CASE("command line") {
  const fs::path dir = scratch("tool");
  const auto good = write_json(dir, json::parse(R"({"potential": {"kind": "power_law", "q": 2, "beta": 0.6}})"));
  // fails-hypothesis verdicts are results, not errors
  CHECK(tool("check --config " + good.string() + " --out " + (dir / "o1").string()) == 0);
  CHECK(fs::exists(dir / "o1" / "report.json"));
  CHECK(tool("bounds --config " + good.string() + " --out " + (dir / "o2").string() + " --n-max 8") == 0);
  {
    std::ifstream in(dir / "o2" / "bounds.csv");
    long lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    CHECK(lines == 9);
  }
  CHECK(tool("--version") == 0);
  CHECK(tool("") != 0);
  CHECK(tool("check") != 0);
  CHECK(tool("check --config " + (dir / "missing.json").string()) != 0);

  const fs::path bad_dir = scratch("tool_bad");
  const auto bad = write_json(bad_dir, json::parse(R"({"potential": {"kind": "power_law", "beta": 0.3}, "colour": 1})"));
  CHECK(tool("check --config " + bad.string()) == 2);

  const fs::path guard_dir = scratch("tool_guard");
  json big = json::parse(R"({"potential": {"kind": "finite_table", "beta": 0.3}})");
  big["potential"]["table"] = std::vector<double>(14, 0.1);
  const auto guard = write_json(guard_dir, big);
  CHECK(tool("gfun --config " + guard.string() + " --out " + (guard_dir / "o").string()) == 3);

  const auto seeded = write_json(scratch("tool_seed"), json::parse(R"({"potential": {"kind": "finite_table", "table": [1], "beta": 1},
                                                                         "sampling": {"length": 500}})"));
  const fs::path s1 = dir / "s1", s2 = dir / "s2";
  CHECK(tool("sample --config " + seeded.string() + " --out " + s1.string() + " --seed 7") == 0);
  CHECK(tool("sample --config " + seeded.string() + " --out " + s2.string() + " --seed 7") == 0);
  CHECK(slurp(s1 / "chain.csv") == slurp(s2 / "chain.csv"));
  CHECK(json::parse(slurp(s1 / "report.json"))["sample"]["seed"] == 7);
}

TEST_CASE("remove scratch directories") {
  fs::remove_all(fs::temp_directory_path() / ("gibbs_test_cli_" + std::to_string(::getpid())));
}
