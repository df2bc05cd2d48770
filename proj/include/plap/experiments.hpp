#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plap/builders.hpp"
#include "plap/solver.hpp"

namespace plap {

struct ExperimentConfig {
  // SBM sweep
  int n0 = 300;
  int n1 = 300;
  double r = 0.5;
  std::vector<double> ratios;  // r/q values, each >= 1
  double beta = 0.2;
  std::vector<std::string> p_list;  // parsed via PValue::parse
  int trials = 1;

  // Geometric experiment
  std::string dist = "two_moons";  // uniform_box | two_moons
  int n = 2000;
  int d = 2;
  double noise = 0.1;
  std::optional<double> eps;        // epsilon-graph when set
  std::optional<int> knn;           // k-NN graph when set (default 10)
  std::string kernel = "triangle";
  std::optional<std::string> features;  // feature CSV overrides `dist`
  std::string metric = "euclidean";     // angular | euclidean (features mode)
  std::vector<int> labels_per_class;    // fixed-count labeling mode
  std::optional<double> label_beta;     // Bernoulli labeling mode

  SolverConfig solver;
  std::uint64_t seed = 0;
  int threads = 1;
  int max_retries = 50;

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
};

// Both harnesses return the complete output CSV as a string; identical
// config + seed gives a byte-identical result regardless of `threads`.
// Per-trial seeds derive from (seed, cell_index, trial_index).
std::string run_sbm_sweep(const ExperimentConfig& cfg);
std::string run_geom_experiment(const ExperimentConfig& cfg);

}  // namespace plap
