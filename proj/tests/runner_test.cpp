#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mest/runner.hpp"

using namespace mest;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kSmallCompare = R"({
  "criterion": {"kind": "lad"},
  "grid": {"lo": 0.0, "hi": 1.0, "points": 7},
  "data": {"law": "uniform_pair", "n_ladder": [50, 100]},
  "run": {"replications": 300, "seed": 5, "model": "mc", "mc_samples": 5000}
})";

}  // namespace

TEST_CASE("config parsing fills defaults and validates") {
  const auto config = ExperimentConfig::from_string(kSmallCompare);
  CHECK(config.grid.size() == 7);
  CHECK(config.n_ladder == std::vector<std::size_t>{50, 100});
  CHECK(config.replications == 300);
  CHECK(config.seed == 5);
  CHECK(config.use_mc_model);
  CHECK(config.level == 0.1);
  CHECK(config.hash().size() == 16);
  CHECK(config.hash() == ExperimentConfig::from_string(kSmallCompare).hash());
}

TEST_CASE("config errors are reported as ConfigError") {
  CHECK_THROWS_AS(ExperimentConfig::from_string("not json"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string("[1,2]"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string(R"({"criterion":{"kind":"nope"}})"),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string(R"({"data":{"n":0}})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string(R"({"run":{"model":"magic"}})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string(R"({"test":{"level":1.5}})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string(R"({"data":{"n_ladder":[]}})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_string(R"({"rates":{"regime":"warp"}})"), ConfigError);
}

TEST_CASE("run directory honors the environment root and config hash") {
  const auto config = ExperimentConfig::from_string(kSmallCompare);
  const auto tmp = std::filesystem::temp_directory_path() / "mest_runner_test_root";
  setenv("MEST_RUN_ROOT", tmp.c_str(), 1);
  const auto dir = prepare_run_dir(config);
  unsetenv("MEST_RUN_ROOT");
  CHECK(dir == tmp / config.hash());
  CHECK(std::filesystem::exists(dir));
  std::filesystem::remove_all(tmp);
}

TEST_CASE("repeated runs produce byte-identical outputs") {
  const auto config = ExperimentConfig::from_string(kSmallCompare);
  const auto base = std::filesystem::temp_directory_path() / "mest_runner_test_out";
  std::filesystem::create_directories(base / "a");
  std::filesystem::create_directories(base / "b");
  std::ostringstream log_a, log_b;
  CHECK(cmd_compare(config, base / "a", log_a) == 0);
  CHECK(cmd_compare(config, base / "b", log_b) == 0);
  const std::string csv_a = slurp(base / "a" / "compare.csv");
  CHECK(csv_a == slurp(base / "b" / "compare.csv"));
  CHECK(slurp(base / "a" / "compare.json") == slurp(base / "b" / "compare.json"));
  CHECK(log_a.str() == log_b.str());
  // Header comment carries provenance.
  CHECK(csv_a.rfind("# config=" + config.hash() + " seed=5", 0) == 0);
  std::filesystem::remove_all(base);
}

TEST_CASE("degenerate tabulated criterion: TV zero at every ladder entry") {
  // A constant table makes both the estimator law and the MC-model Gaussian
  // law a point mass at cell 0.
  const char* cfg = R"({
    "criterion": {"kind": "tabulated", "table": [[1,1,1],[1,1,1]]},
    "grid": {"lo": 0.0, "hi": 1.0, "points": 2},
    "data": {"law": "uniform", "lo": 0.0, "hi": 2.4, "n_ladder": [5, 20]},
    "run": {"replications": 200, "seed": 2, "model": "mc", "mc_samples": 2000}
  })";
  const auto config = ExperimentConfig::from_string(cfg);
  const auto rows = run_compare(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].tv == 0.0);
  CHECK(rows[1].tv == 0.0);
  CHECK(rows[0].interval_ks == 0.0);
}

TEST_CASE("bootstrap command: single dataset omits the sd column") {
  const char* cfg = R"({
    "criterion": {"kind": "lad"},
    "grid": {"lo": 0.0, "hi": 1.0, "points": 5},
    "data": {"law": "uniform_pair", "n": 40},
    "run": {"replications": 200, "seed": 3, "datasets": 1, "model": "mc",
            "mc_samples": 3000}
  })";
  const auto config = ExperimentConfig::from_string(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "mest_runner_test_boot";
  std::filesystem::create_directories(dir);
  std::ostringstream log;
  CHECK(cmd_bootstrap(config, dir, log) == 0);
  const std::string csv = slurp(dir / "bootstrap.csv");
  CHECK(csv.find("mean_tv") != std::string::npos);
  CHECK(csv.find("sd_tv") == std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("rates and coherence commands round-trip through files") {
  const char* cfg = R"({
    "rates": {"regime": "infinite", "alpha": 0.5, "kappa": 0.25, "n": 10000},
    "coherence": {"c": 1.75, "delta": 0.1, "size": 6, "sigma_lower_sq": 0.1}
  })";
  const auto config = ExperimentConfig::from_string(cfg);
  const auto dir = std::filesystem::temp_directory_path() / "mest_runner_test_misc";
  std::filesystem::create_directories(dir);
  std::ostringstream log;
  CHECK(cmd_rates(config, dir, log) == 0);
  CHECK(cmd_coherence(config, dir, log) == 0);
  const std::string rates = slurp(dir / "rates.json");
  CHECK(rates.find("\"config_hash\"") != std::string::npos);
  CHECK(rates.find("0.5416") != std::string::npos);
  const std::string coh = slurp(dir / "coherence.json");
  CHECK(coh.find("\"pass\": true") != std::string::npos);
  std::filesystem::remove_all(dir);
}
