#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "lsed/errors.hpp"
#include "lsed/io.hpp"

namespace fs = std::filesystem;
using lsed::Json;

namespace {

const std::string kCli = LSED_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "lsed_cli_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

}  // namespace

TEST_CASE("planck run passes and writes its artifacts") {
  const auto dir = fresh_dir("planck");
  CHECK(run("planck --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "planck.csv"));
  const Json s = lsed::read_json((dir / "summary.json").string());
  CHECK(s.at("experiment") == "planck");
  CHECK(s.at("schema") == 1);
  CHECK(s.at("pass") == true);
  const std::string csv = slurp(dir / "planck.csv");
  CHECK(csv.rfind("beta,rho,rho0,ratio,coth_half,cosh_half,discrepancy_vs_cosh", 0) == 0);
}

TEST_CASE("print-config short-circuits the run") {
  const auto dir = fresh_dir("printcfg");
  CHECK(run("planck --print-config --out " + dir.string()) == 0);
  CHECK(!fs::exists(dir / "summary.json"));
}

TEST_CASE("usage and config errors exit with 2") {
  const auto dir = fresh_dir("badcfg");
  CHECK(run("") == 2);                 // missing subcommand
  CHECK(run("no-such-command") == 2);  // unknown subcommand

  const auto broken = dir / "broken.json";
  spit(broken, "this is not json");
  CHECK(run("planck --out " + dir.string() + " --config " + broken.string()) == 2);

  const auto unknown = dir / "unknown.json";
  spit(unknown, "{\"bogus\": 1}");
  CHECK(run("planck --out " + dir.string() + " --config " + unknown.string()) == 2);

  CHECK(run("planck --out " + dir.string() + " --config " + (dir / "absent.json").string()) == 2);
}

TEST_CASE("field sampling is deterministic in the seed") {
  const auto dir_a = fresh_dir("field_a");
  const auto dir_b = fresh_dir("field_b");
  const auto cfg = dir_a / "cfg.json";
  spit(cfg, R"({"realizations": 2000, "lags": 20,
               "grid": {"omega_min": 0.0, "omega_max": 1.0, "n_modes": 32,
                        "spacing": "uniform"}})");
  CHECK(run("field-sample --seed 77 --config " + cfg.string() + " --out " + dir_a.string()) == 0);
  CHECK(run("field-sample --seed 77 --config " + cfg.string() + " --out " + dir_b.string()) == 0);
  CHECK(slurp(dir_a / "autocovariance.csv") == slurp(dir_b / "autocovariance.csv"));
  CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));

  const auto dir_c = fresh_dir("field_c");
  CHECK(run("field-sample --seed 78 --config " + cfg.string() + " --out " + dir_c.string()) == 0);
  CHECK(slurp(dir_a / "autocovariance.csv") != slurp(dir_c / "autocovariance.csv"));
}

TEST_CASE("self-consistent solve run validates against its reference") {
  const auto dir = fresh_dir("solve");
  CHECK(run("lsed-solve --out " + dir.string()) == 0);
  const Json s = lsed::read_json((dir / "summary.json").string());
  CHECK(s.at("experiment") == "lsed-solve");
  CHECK(s.at("pass") == true);
  CHECK(s.at("detail").at("max_level_error").get<double>() <= 1e-4);
  const Json sol = lsed::read_json((dir / "solve.json").string());
  CHECK(sol.at("N") == 20);
  CHECK(sol.at("omegas").size() == 20);
  CHECK(sol.at("energies").size() == 20);
  CHECK(sol.at("X_real").size() == 20);
}

TEST_CASE("report merges summaries and propagates failure") {
  const auto dir = fresh_dir("report");
  const auto a = dir / "a";
  fs::create_directories(a);
  REQUIRE(run("planck --out " + a.string()) == 0);

  CHECK(run("report --out " + dir.string() + " " + (a / "summary.json").string()) == 0);
  const Json rep = lsed::read_json((dir / "report.json").string());
  CHECK(rep.at("all_pass") == true);
  CHECK(rep.at("runs").size() == 1);
  CHECK(rep.at("runs")[0].at("experiment") == "planck");

  const auto failing = dir / "failing.json";
  spit(failing,
       "{\"experiment\": \"planck\", \"schema\": 1, \"seed\": 1, \"pass\": false, "
       "\"detail\": {}}");
  CHECK(run("report --out " + dir.string() + " " + (a / "summary.json").string() + " " +
            failing.string()) == 1);

  const auto wrong_schema = dir / "schema.json";
  spit(wrong_schema, "{\"experiment\": \"planck\", \"schema\": 2, \"pass\": true}");
  CHECK(run("report --out " + dir.string() + " " + wrong_schema.string()) == 2);
  CHECK(run("report --out " + dir.string()) == 2);  // no paths
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, 1.0, -0.1, 1.0 / 3.0, 6.626e-34, 12345.678901234567}) {
    const std::string s = lsed::format_number(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("csv escaping") {
  CHECK(lsed::csv_escape("plain") == "plain");
  CHECK(lsed::csv_escape("a,b") == "\"a,b\"");
  CHECK(lsed::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(lsed::csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("json writing round-trips through reading") {
  const auto dir = fresh_dir("io");
  Json doc;
  doc["name"] = "case";
  doc["values"] = Json{1.5, 2.5};
  doc["nested"] = Json{{"flag", true}};
  lsed::write_json((dir / "doc.json").string(), doc);
  CHECK(lsed::read_json((dir / "doc.json").string()) == doc);
  CHECK_THROWS_AS(lsed::read_json((dir / "missing.json").string()), lsed::ConfigError);
}
