#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mixtest/errors.hpp"
#include "mixtest/experiments.hpp"
#include "mixtest/special.hpp"

using namespace mixtest;
namespace fs = std::filesystem;

extern std::string g_data_dir;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mixtest-test-" + std::to_string(RandomStream::mix({std::random_device{}()})));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("dataset simulation is deterministic per seed") {
  const SimSource src{Family::Poisson, Params{{4.0}}, 1000};
  TempDir tmp;
  const std::string p1 = (tmp.path / "a.csv").string();
  const std::string p2 = (tmp.path / "b.csv").string();
  write_dataset_csv(simulate_dataset(src, 7), p1, DataSchema::Iid);
  write_dataset_csv(simulate_dataset(src, 7), p2, DataSchema::Iid);
  CHECK(slurp(p1) == slurp(p2));
  write_dataset_csv(simulate_dataset(src, 8), p2, DataSchema::Iid);
  CHECK(slurp(p1) != slurp(p2));
}

TEST_CASE("geometric simulation has the number-of-failures mean") {
  const Dataset d = simulate_dataset({Family::GeometricFailures, Params{{0.1}}, 500}, 11);
  CHECK(mean_of(d.y) == doctest::Approx(9.0).epsilon(1.0 / 9.0));
}

TEST_CASE("benchmark regression design columns") {
  Eigen::VectorXd beta(4);
  beta << 2, -3, 0, 0;
  const Dataset d = simulate_regression_dataset(200, beta, 1.0, 12);
  for (int i = 0; i < 200; ++i) {
    CHECK(d.design(i, 0) == 1.0);
    CHECK((d.design(i, 2) == 0.0 || d.design(i, 2) == 1.0));
    CHECK(d.design(i, 3) > 10.0);
    CHECK(d.design(i, 3) < 11.0);
  }
}

TEST_CASE("iid csv round trips byte for byte") {
  TempDir tmp;
  const std::string p1 = (tmp.path / "sim.csv").string();
  const std::string p2 = (tmp.path / "again.csv").string();
  write_dataset_csv(simulate_dataset({Family::Normal, Params{{0.0, 1.0}}, 128}, 13), p1,
                    DataSchema::Iid);
  const Dataset loaded = ingest_csv(p1, DataSchema::Iid);
  CHECK(loaded.size() == 128);
  write_dataset_csv(loaded, p2, DataSchema::Iid);
  CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("binary regression ingestion reads the bundled fixture") {
  const Dataset pima = ingest_csv(g_data_dir + "/pima.csv", DataSchema::BinaryRegression);
  CHECK(pima.size() == 200);
  CHECK(pima.design.cols() == 2);
  CHECK(pima.design.col(0).minCoeff() == 1.0);
  for (double y : pima.y) CHECK((y == 0.0 || y == 1.0));
}

TEST_CASE("survival ingestion applies the negative log transform and validates") {
  TempDir tmp;
  const std::string good = (tmp.path / "good.csv").string();
  {
    std::ofstream out(good);
    out << "time,censored\n2.0,0\n0.5,1\n";
  }
  const Dataset d = ingest_csv(good, DataSchema::Survival);
  CHECK(d.y[0] == doctest::Approx(-std::log(2.0)));
  CHECK(d.y[1] == doctest::Approx(-std::log(0.5)));
  CHECK(d.censored == std::vector<std::uint8_t>{0, 1});

  const std::string bad = (tmp.path / "bad.csv").string();
  {
    std::ofstream out(bad);
    out << "time,censored\n2.0,0\n-1.0,0\n";
  }
  CHECK_THROWS_WITH_AS(ingest_csv(bad, DataSchema::Survival), doctest::Contains("line 3"),
                       ParseError);

  const std::string junk = (tmp.path / "junk.csv").string();
  {
    std::ofstream out(junk);
    out << "y\n1.0\nnot-a-number\n";
  }
  CHECK_THROWS_AS(ingest_csv(junk, DataSchema::Iid), ParseError);
  CHECK_THROWS_AS(ingest_csv((tmp.path / "missing.csv").string(), DataSchema::Iid), ParseError);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig cfg;
  cfg.test = "poisson-geometric";
  cfg.simulate = SimSource{Family::Poisson, Params{{4.0}}, 0};
  cfg.a0_grid = {};
  cfg.n_grid = {10};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.a0_grid = {0.5};
  cfg.n_grid = {};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.n_grid = {10};
  cfg.replicas = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.replicas = 1;
  CHECK_NOTHROW(cfg.validate());
  cfg.test = "bogus";
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("experiment config json round trip") {
  ExperimentConfig cfg;
  cfg.test = "normal-laplace";
  cfg.simulate = SimSource{Family::Normal, Params{{0.0, 0.7}}, 0};
  cfg.a0_grid = {0.1, 0.5};
  cfg.n_grid = {50, 100};
  cfg.replicas = 3;
  cfg.chain.iterations = 2000;
  cfg.chain.burn_in = 200;
  cfg.chain.seed = 5;
  const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
  CHECK(back.test == cfg.test);
  CHECK(back.a0_grid == cfg.a0_grid);
  CHECK(back.n_grid == cfg.n_grid);
  CHECK(back.replicas == cfg.replicas);
  CHECK(back.chain.iterations == cfg.chain.iterations);
  CHECK(back.simulate->family == Family::Normal);
}

TEST_CASE("experiments run deterministically and write atomic outputs") {
  TempDir tmp;
  ExperimentConfig cfg;
  cfg.test = "poisson-geometric";
  cfg.simulate = SimSource{Family::Poisson, Params{{4.0}}, 0};
  cfg.a0_grid = {0.5};
  cfg.n_grid = {40};
  cfg.replicas = 2;
  cfg.chain.iterations = 500;
  cfg.chain.burn_in = 50;
  cfg.chain.seed = 14;
  cfg.outputs = (tmp.path / "out").string();

  const ExperimentResult r1 = run_experiment(cfg);
  CHECK(fs::exists(r1.csv_path));
  CHECK(fs::exists(r1.json_path));
  CHECK_FALSE(fs::exists(r1.csv_path + ".tmp"));

  // 2 replicas x (median + mean + oracle)
  CHECK(r1.rows.size() == 6);
  for (const ResultRow& row : r1.rows) {
    CHECK(row.error.empty());
    CHECK(row.value >= 0.0);
    CHECK(row.value <= 1.0);
  }

  const std::string first = slurp(r1.csv_path);
  const ExperimentResult r2 = run_experiment(cfg);
  CHECK(slurp(r2.csv_path) == first);

  CHECK(r1.digest["cells"].size() == 1);
  CHECK(r1.digest["cells"][0]["errors"] == 0);
  CHECK(r1.digest["cells"][0].contains("median_alpha_mean"));
}

TEST_CASE("file-backed experiments use the file size as n") {
  TempDir tmp;
  const std::string data_path = (tmp.path / "data.csv").string();
  write_dataset_csv(simulate_dataset({Family::Poisson, Params{{4.0}}, 60}, 15), data_path,
                    DataSchema::Iid);
  ExperimentConfig cfg;
  cfg.test = "poisson-geometric";
  cfg.file = data_path;
  cfg.a0_grid = {0.5};
  cfg.replicas = 2;
  cfg.chain.iterations = 500;
  cfg.chain.burn_in = 50;
  cfg.outputs = (tmp.path / "out").string();
  const ExperimentResult r = run_experiment(cfg);
  for (const ResultRow& row : r.rows) CHECK(row.n == 60);
}

TEST_CASE("consistency harness emits one row per sample size") {
  ChainConfig chain;
  chain.iterations = 800;
  chain.burn_in = 80;
  chain.seed = 16;
  const auto rows = consistency_harness(PairKind::NormalVar1VsVar2, 0, {0.0}, {25}, 3, 0.5,
                                        chain);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 25);
  CHECK(rows[0].abs_err_q25 <= rows[0].abs_err_median);
  CHECK(rows[0].abs_err_median <= rows[0].abs_err_q75);
  CHECK(std::isfinite(rows[0].mean_logn_log1m_mean_weight));
  CHECK(std::isfinite(rows[0].mean_log1m_post_prob));
  const std::string csv = consistency_rows_to_csv(rows);
  CHECK(csv.find("abs_err_median") != std::string::npos);

  CHECK_THROWS_AS(consistency_harness(PairKind::NormalVar1VsVar2, 0, {0.0}, {}, 3, 0.5, chain),
                  ConfigError);
  CHECK_THROWS_AS(consistency_harness(PairKind::NormalVar1VsVar2, 2, {0.0}, {25}, 3, 0.5, chain),
                  ConfigError);
}

TEST_CASE("cell seeds are deterministic and well separated") {
  CHECK(cell_seed(1, 2, 3, 4) == cell_seed(1, 2, 3, 4));
  CHECK(cell_seed(1, 2, 3, 4) != cell_seed(1, 2, 3, 5));
  CHECK(cell_seed(1, 2, 3, 4) != cell_seed(1, 2, 4, 3));
  CHECK(cell_seed(1, 2, 3, 4) != cell_seed(2, 2, 3, 4));
}
