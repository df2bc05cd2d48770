#include "plap/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "plap/consistency.hpp"
#include "plap/io.hpp"
#include "plap/rng.hpp"

namespace plap {

namespace {

using nlohmann::json;

void get_if_present(const json& j, const char* key, auto& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

// Runs fn(0..count-1) on a worker pool. Work items write to preallocated
// slots; callers aggregate in index order afterwards, so the schedule never
// shows in the output.
void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct TrialOutcome {
  double error = std::numeric_limits<double>::quiet_NaN();
  bool suff_cond = false;
  bool valid = false;
  int retries = 0;
};

double unlabeled_error(const LabelSet& labels, const std::vector<int>& predicted,
                       const std::vector<int>& truth) {
  long wrong = 0, total = 0;
  for (std::size_t x = 0; x < predicted.size(); ++x) {
    if (labels.is_labeled(static_cast<int>(x))) continue;
    ++total;
    if (predicted[x] != truth[x]) ++wrong;
  }
  return total == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(total);
}

struct CellStats {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
  double suff_freq = std::numeric_limits<double>::quiet_NaN();
  bool valid = false;
};

CellStats aggregate(const std::vector<TrialOutcome>& outcomes) {
  CellStats stats;
  double sum = 0.0, sum_sq = 0.0, suff = 0.0;
  long kept = 0;
  for (const auto& o : outcomes) {
    if (!o.valid) return stats;  // any failed trial invalidates the cell
    sum += o.error;
    sum_sq += o.error * o.error;
    suff += o.suff_cond ? 1.0 : 0.0;
    ++kept;
  }
  if (kept == 0) return stats;
  stats.valid = true;
  stats.mean = sum / kept;
  if (kept > 1) {
    const double var = std::max(0.0, (sum_sq - kept * stats.mean * stats.mean) / (kept - 1));
    stats.std_error = std::sqrt(var / kept);
  } else {
    stats.std_error = 0.0;
  }
  stats.suff_freq = suff / kept;
  return stats;
}

std::string format_row(std::initializer_list<std::string> fields) {
  std::string row;
  for (const auto& f : fields) {
    if (!row.empty()) row += ',';
    row += f;
  }
  row += '\n';
  return row;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt_param(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  get_if_present(j, "n0", cfg.n0);
  get_if_present(j, "n1", cfg.n1);
  get_if_present(j, "r", cfg.r);
  get_if_present(j, "ratios", cfg.ratios);
  get_if_present(j, "beta", cfg.beta);
  get_if_present(j, "p_list", cfg.p_list);
  get_if_present(j, "trials", cfg.trials);
  get_if_present(j, "dist", cfg.dist);
  get_if_present(j, "n", cfg.n);
  get_if_present(j, "d", cfg.d);
  get_if_present(j, "noise", cfg.noise);
  if (j.contains("eps")) cfg.eps = j.at("eps").get<double>();
  if (j.contains("knn")) cfg.knn = j.at("knn").get<int>();
  get_if_present(j, "kernel", cfg.kernel);
  if (j.contains("features")) cfg.features = j.at("features").get<std::string>();
  get_if_present(j, "metric", cfg.metric);
  get_if_present(j, "labels_per_class", cfg.labels_per_class);
  if (j.contains("label_beta")) cfg.label_beta = j.at("label_beta").get<double>();
  get_if_present(j, "seed", cfg.seed);
  get_if_present(j, "threads", cfg.threads);
  get_if_present(j, "max_retries", cfg.max_retries);
  get_if_present(j, "tolerance", cfg.solver.tolerance);
  get_if_present(j, "max_iterations", cfg.solver.max_iterations);
  if (j.contains("sweep")) {
    const auto s = j.at("sweep").get<std::string>();
    if (s == "jacobi") {
      cfg.solver.sweep = Sweep::jacobi;
    } else if (s == "gauss_seidel") {
      cfg.solver.sweep = Sweep::gauss_seidel;
    } else {
      throw std::invalid_argument("unknown sweep '" + s + "'");
    }
  }
  if (j.contains("initialization")) {
    const auto s = j.at("initialization").get<std::string>();
    if (s == "min_label") {
      cfg.solver.initialization = Initialization::min_label;
    } else if (s == "max_label") {
      cfg.solver.initialization = Initialization::max_label;
    } else if (s == "label_mean") {
      cfg.solver.initialization = Initialization::label_mean;
    } else {
      throw std::invalid_argument("unknown initialization '" + s + "'");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string run_sbm_sweep(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.ratios.empty() || cfg.p_list.empty()) {
    throw std::invalid_argument("sbm sweep needs nonempty ratio and p lists");
  }
  for (double ratio : cfg.ratios) {
    if (!(ratio >= 1.0)) throw std::invalid_argument("r/q ratios must be >= 1");
  }
  std::vector<PValue> pvals;
  for (const auto& s : cfg.p_list) pvals.push_back(PValue::parse(s));

  const long cells = static_cast<long>(cfg.ratios.size()) * pvals.size();
  std::vector<std::vector<TrialOutcome>> results(cells,
                                                 std::vector<TrialOutcome>(cfg.trials));

  parallel_for(cells * cfg.trials, cfg.threads, [&](long item) {
    const long cell = item / cfg.trials;
    const long trial = item % cfg.trials;
    const double ratio = cfg.ratios[cell / pvals.size()];
    const PValue& p = pvals[cell % pvals.size()];
    const std::uint64_t trial_seed = derive_seed(cfg.seed, cell, trial);

    TrialOutcome& out = results[cell][trial];
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
      const std::uint64_t s =
          attempt == 0 ? trial_seed : derive_seed(trial_seed, 0x5e7, attempt);
      SbmSpec spec{cfg.n0, cfg.n1, cfg.r, cfg.r / ratio, derive_seed(s, 0)};
      auto sbm = build_sbm_graph(spec);
      std::vector<double> truth_values(sbm.truth.begin(), sbm.truth.end());
      auto labels = sample_labels_bernoulli(truth_values, cfg.beta, derive_seed(s, 1));
      if (!sbm.graph.is_connected() || labels.empty()) {
        out.retries = attempt + 1;
        continue;
      }
      const auto solve = solve_dirichlet(sbm.graph, labels, p, cfg.solver);
      out.error = unlabeled_error(labels, classify(solve.u), sbm.truth);
      out.suff_cond = suff_condition_check(sbm_rates(sbm.graph, sbm.truth, labels));
      out.valid = true;
      break;
    }
  });

  std::string csv = "ratio,p,mean_error,std_error,trials,suff_cond_frequency,threshold\n";
  for (long cell = 0; cell < cells; ++cell) {
    const double ratio = cfg.ratios[cell / pvals.size()];
    const PValue& p = pvals[cell % pvals.size()];
    for (const auto& o : results[cell]) {
      if (o.retries > 0) {
        std::cerr << "sbm-sweep: ratio=" << ratio << " p=" << p.str() << ": " << o.retries
                  << " resample(s)\n";
      }
    }
    const CellStats stats = aggregate(results[cell]);
    SbmSpec spec{cfg.n0, cfg.n1, cfg.r, cfg.r / ratio, 0};
    const auto cert = sbm_threshold_check(spec, cfg.beta, 0.0, 0.0);
    csv += format_row({fmt_param(ratio), p.str(), fmt(stats.mean), fmt(stats.std_error),
                       std::to_string(cfg.trials), fmt(stats.suff_freq),
                       fmt(cert.threshold)});
  }
  return csv;
}

namespace {

struct GeomInstance {
  PointCloud points;
  std::vector<int> truth;
};

GeomInstance sample_geom_instance(const ExperimentConfig& cfg, std::uint64_t seed) {
  GeomInstance inst;
  if (cfg.dist == "two_moons") {
    auto moons = sample_two_moons(cfg.n, cfg.noise, seed);
    inst.points = std::move(moons.points);
    inst.truth = std::move(moons.truth);
  } else if (cfg.dist == "uniform_box") {
    inst.points = sample_uniform_box(cfg.n, cfg.d, seed);
    // Synthetic binary classes: split the box along the first coordinate.
    inst.truth.resize(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
      inst.truth[i] = inst.points.point(i)[0] >= 0.5 ? 1 : 0;
    }
  } else {
    throw std::invalid_argument("unknown dist '" + cfg.dist + "'");
  }
  return inst;
}

Graph build_geom_graph(const ExperimentConfig& cfg, const PointCloud& pc) {
  if (cfg.eps) {
    const Kernel kernel = Kernel::parse(cfg.kernel, pc.d);
    return build_epsilon_graph(pc, *cfg.eps, kernel);
  }
  const int kk = cfg.knn.value_or(10);
  const Kernel kernel = Kernel::parse(cfg.kernel, pc.d);
  return build_knn_graph(pc, kk, kernel, KnnMode::symmetric);
}

// Draw exactly `per_class` labels uniformly from each class.
LabelSet fixed_count_labels(std::span<const int> truth, int per_class, std::uint64_t seed) {
  const int n = static_cast<int>(truth.size());
  std::vector<int> class_members[2];
  for (int x = 0; x < n; ++x) class_members[truth[x]].push_back(x);
  Rng rng(seed);
  std::vector<int> gamma;
  std::vector<double> values;
  for (int c = 0; c < 2; ++c) {
    auto& members = class_members[c];
    if (static_cast<int>(members.size()) < per_class) {
      throw std::invalid_argument("class " + std::to_string(c) + " has fewer than " +
                                  std::to_string(per_class) + " points");
    }
    // Partial Fisher-Yates for the first per_class slots.
    for (int i = 0; i < per_class; ++i) {
      const int j = i + static_cast<int>(rng.next_below(members.size() - i));
      std::swap(members[i], members[j]);
      gamma.push_back(members[i]);
      values.push_back(static_cast<double>(c));
    }
  }
  std::vector<double> truth_values(truth.begin(), truth.end());
  return LabelSet(n, std::move(gamma), std::move(values), std::move(truth_values));
}

}  // namespace

std::string run_geom_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.p_list.empty()) throw std::invalid_argument("geom experiment needs a p list");
  const bool bernoulli_mode = cfg.label_beta.has_value();
  if (!bernoulli_mode && cfg.labels_per_class.empty()) {
    throw std::invalid_argument("geom experiment needs labels_per_class or label_beta");
  }
  std::vector<PValue> pvals;
  for (const auto& s : cfg.p_list) pvals.push_back(PValue::parse(s));

  // Bernoulli mode runs a single labeling cell per p.
  const std::vector<int> label_cells =
      bernoulli_mode ? std::vector<int>{-1} : cfg.labels_per_class;

  std::optional<FeatureTable> feature_table;
  std::optional<Graph> feature_graph;
  if (cfg.features) {
    feature_table = load_feature_csv(*cfg.features);
    if (!feature_table->labels) {
      throw std::invalid_argument("feature CSV needs a trailing `label` column");
    }
    for (int v : *feature_table->labels) {
      if (v != 0 && v != 1) {
        throw std::invalid_argument("feature labels must be 0 or 1");
      }
    }
    const FeatureMetric metric =
        cfg.metric == "angular" ? FeatureMetric::angular : FeatureMetric::euclidean;
    if (cfg.metric != "angular" && cfg.metric != "euclidean") {
      throw std::invalid_argument("unknown metric '" + cfg.metric + "'");
    }
    feature_graph = build_feature_knn_graph(feature_table->features, cfg.knn.value_or(10),
                                            metric);
  }

  const long cells = static_cast<long>(label_cells.size()) * pvals.size();
  std::vector<std::vector<TrialOutcome>> results(cells,
                                                 std::vector<TrialOutcome>(cfg.trials));

  parallel_for(cells * cfg.trials, cfg.threads, [&](long item) {
    const long cell = item / cfg.trials;
    const long trial = item % cfg.trials;
    const int per_class = label_cells[cell / pvals.size()];
    const PValue& p = pvals[cell % pvals.size()];
    const std::uint64_t trial_seed = derive_seed(cfg.seed, cell, trial);

    TrialOutcome& out = results[cell][trial];
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
      const std::uint64_t s =
          attempt == 0 ? trial_seed : derive_seed(trial_seed, 0x6e0, attempt);

      const Graph* graph = nullptr;
      std::optional<Graph> sampled_graph;
      std::vector<int> truth;
      if (feature_graph) {
        graph = &*feature_graph;
        truth = *feature_table->labels;
      } else {
        GeomInstance inst = sample_geom_instance(cfg, derive_seed(s, 0));
        sampled_graph = build_geom_graph(cfg, inst.points);
        graph = &*sampled_graph;
        truth = std::move(inst.truth);
      }
      if (!graph->is_connected()) {
        out.retries = attempt + 1;
        continue;
      }
      std::vector<double> truth_values(truth.begin(), truth.end());
      LabelSet labels =
          bernoulli_mode
              ? sample_labels_bernoulli(truth_values, *cfg.label_beta, derive_seed(s, 1))
              : fixed_count_labels(truth, per_class, derive_seed(s, 1));
      if (labels.empty()) {
        out.retries = attempt + 1;
        continue;
      }
      const auto solve = solve_dirichlet(*graph, labels, p, cfg.solver);
      out.error = unlabeled_error(labels, classify(solve.u), truth);
      out.valid = true;
      break;
    }
  });

  std::string csv = "labels_per_class,p,mean_error,std_error,trials\n";
  for (long cell = 0; cell < cells; ++cell) {
    const int per_class = label_cells[cell / pvals.size()];
    const PValue& p = pvals[cell % pvals.size()];
    for (const auto& o : results[cell]) {
      if (o.retries > 0) {
        std::cerr << "geom-experiment: cell " << cell << ": " << o.retries
                  << " resample(s)\n";
      }
    }
    const CellStats stats = aggregate(results[cell]);
    const std::string label_field =
        bernoulli_mode ? "beta=" + fmt_param(*cfg.label_beta) : std::to_string(per_class);
    csv += format_row({label_field, p.str(), fmt(stats.mean), fmt(stats.std_error),
                       std::to_string(cfg.trials)});
  }
  return csv;
}

}  // namespace plap
