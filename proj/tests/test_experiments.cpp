#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plap/experiments.hpp"

using namespace plap;

namespace {

int data_rows(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  int rows = -1;  // skip the header
  while (std::getline(ss, line)) {
    if (!line.empty()) ++rows;
  }
  return rows;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = ExperimentConfig::from_json_text(R"({
    "n0": 40, "n1": 20, "r": 0.6, "ratios": [1, 5], "beta": 0.3,
    "p_list": ["2", "inf"], "trials": 7, "seed": 99, "threads": 2,
    "tolerance": 1e-8, "sweep": "jacobi", "initialization": "min_label"
  })");
  CHECK(cfg.n0 == 40);
  CHECK(cfg.n1 == 20);
  CHECK(cfg.ratios == std::vector<double>{1.0, 5.0});
  CHECK(cfg.p_list == std::vector<std::string>{"2", "inf"});
  CHECK(cfg.trials == 7);
  CHECK(cfg.seed == 99);
  CHECK(cfg.solver.tolerance == 1e-8);
  CHECK(cfg.solver.sweep == Sweep::jacobi);
  CHECK(cfg.solver.initialization == Initialization::min_label);

  CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"sweep": "diagonal"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::from_json_file("/nonexistent.json"),
                  std::invalid_argument);
}

TEST_CASE("sbm sweep shape and determinism") {
  ExperimentConfig cfg;
  cfg.n0 = 40;
  cfg.n1 = 40;
  cfg.r = 0.6;
  cfg.ratios = {1.0, 2.0, 5.0};
  cfg.beta = 0.3;
  cfg.p_list = {"2", "3"};
  cfg.trials = 3;
  cfg.seed = 17;

  cfg.threads = 1;
  const std::string serial = run_sbm_sweep(cfg);
  CHECK(data_rows(serial) == 6);
  CHECK(serial.rfind("ratio,p,mean_error,std_error,trials,suff_cond_frequency,threshold\n",
                     0) == 0);

  cfg.threads = 4;
  CHECK(run_sbm_sweep(cfg) == serial);

  cfg.seed = 18;
  cfg.threads = 1;
  CHECK(run_sbm_sweep(cfg) != serial);
}

TEST_CASE("sbm sweep validation") {
  ExperimentConfig cfg;
  cfg.ratios = {};
  cfg.p_list = {"2"};
  CHECK_THROWS_AS(run_sbm_sweep(cfg), std::invalid_argument);
  cfg.ratios = {0.5};
  CHECK_THROWS_AS(run_sbm_sweep(cfg), std::invalid_argument);
  cfg.ratios = {2.0};
  cfg.trials = 0;
  CHECK_THROWS_AS(run_sbm_sweep(cfg), std::invalid_argument);
}

TEST_CASE("geom experiment fully labeled cell has zero error") {
  ExperimentConfig cfg;
  cfg.dist = "two_moons";
  cfg.n = 200;
  cfg.noise = 0.08;
  cfg.knn = 8;
  cfg.labels_per_class = {100};
  cfg.p_list = {"2"};
  cfg.trials = 2;
  cfg.seed = 3;
  const std::string csv = run_geom_experiment(cfg);
  CHECK(csv.rfind("labels_per_class,p,mean_error,std_error,trials\n", 0) == 0);
  CHECK(data_rows(csv) == 1);
  CHECK(csv.find("100,2,0.000000,0.000000,2") != std::string::npos);
}

TEST_CASE("geom experiment determinism across threads") {
  ExperimentConfig cfg;
  cfg.dist = "uniform_box";
  cfg.n = 150;
  cfg.d = 2;
  cfg.eps = 0.25;
  cfg.labels_per_class = {8, 16};
  cfg.p_list = {"2", "2.5"};
  cfg.trials = 3;
  cfg.seed = 11;
  cfg.threads = 1;
  const std::string serial = run_geom_experiment(cfg);
  CHECK(data_rows(serial) == 4);
  cfg.threads = 4;
  CHECK(run_geom_experiment(cfg) == serial);
}

TEST_CASE("geom experiment bernoulli labeling mode") {
  ExperimentConfig cfg;
  cfg.dist = "two_moons";
  cfg.n = 200;
  cfg.noise = 0.08;
  cfg.knn = 8;
  cfg.label_beta = 0.25;
  cfg.p_list = {"3"};
  cfg.trials = 2;
  cfg.seed = 5;
  const std::string csv = run_geom_experiment(cfg);
  CHECK(data_rows(csv) == 1);
  CHECK(csv.find("beta=0.25,3,") != std::string::npos);
}

TEST_CASE("geom experiment validation") {
  ExperimentConfig cfg;
  cfg.p_list = {};
  CHECK_THROWS_AS(run_geom_experiment(cfg), std::invalid_argument);
  cfg.p_list = {"2"};
  cfg.labels_per_class = {};
  CHECK_THROWS_AS(run_geom_experiment(cfg), std::invalid_argument);
  cfg.labels_per_class = {4};
  cfg.dist = "swiss_roll";
  CHECK_THROWS_AS(run_geom_experiment(cfg), std::invalid_argument);
}

TEST_CASE("geom experiment feature file mode") {
  const std::string path = "/tmp/plap_test_feature_mode.csv";
  {
    std::ofstream out(path);
    out << "f0,f1,label\n";
    // Two nearby clusters of 12 points each; k close to n keeps the graph
    // connected.
    for (int i = 0; i < 12; ++i) {
      out << 0.1 * i << "," << 0.05 * i << ",0\n";
    }
    for (int i = 0; i < 12; ++i) {
      out << 2.0 + 0.1 * i << "," << 1.5 + 0.05 * i << ",1\n";
    }
  }
  ExperimentConfig cfg;
  cfg.features = path;
  cfg.metric = "euclidean";
  cfg.knn = 20;
  cfg.labels_per_class = {4};
  cfg.p_list = {"2"};
  cfg.trials = 2;
  cfg.seed = 1;
  const std::string csv = run_geom_experiment(cfg);
  CHECK(data_rows(csv) == 1);
  std::remove(path.c_str());
}
