#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plap/consistency.hpp"
#include "plap/experiments.hpp"
#include "plap/io.hpp"
#include "plap/rng.hpp"
#include "plap/tug_of_war.hpp"

namespace {

using nlohmann::json;
using namespace plap;

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open '" + out_path + "' for writing");
  out << text;
}

SolverConfig solver_config(double tol, long max_iter, const std::string& sweep,
                           const std::string& init) {
  SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.max_iterations = max_iter;
  if (sweep == "jacobi") {
    cfg.sweep = Sweep::jacobi;
  } else if (sweep == "gauss_seidel") {
    cfg.sweep = Sweep::gauss_seidel;
  } else {
    throw std::invalid_argument("unknown sweep '" + sweep + "'");
  }
  if (init == "min_label") {
    cfg.initialization = Initialization::min_label;
  } else if (init == "max_label") {
    cfg.initialization = Initialization::max_label;
  } else if (init == "label_mean") {
    cfg.initialization = Initialization::label_mean;
  } else {
    throw std::invalid_argument("unknown initialization '" + init + "'");
  }
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"Game-theoretic p-Laplacian semi-supervised learning on graphs"};
  app.require_subcommand(1);

  // build-graph
  auto* build = app.add_subcommand("build-graph", "Construct a graph and write an edge list");
  std::string bg_type = "epsilon", bg_dist = "uniform_box", bg_kernel = "triangle";
  std::string bg_mode = "symmetric", bg_out, bg_points_out, bg_truth_out;
  int bg_n = 100, bg_d = 2, bg_k = 10, bg_n0 = 50, bg_n1 = 50;
  double bg_eps = 0.3, bg_noise = 0.1, bg_r = 0.5, bg_q = 0.1;
  std::uint64_t bg_seed = 0;
  build->add_option("--type", bg_type, "epsilon | knn | sbm");
  build->add_option("--dist", bg_dist, "uniform_box | two_moons");
  build->add_option("--n", bg_n);
  build->add_option("--d", bg_d);
  build->add_option("--noise", bg_noise, "two_moons noise std dev");
  build->add_option("--eps", bg_eps);
  build->add_option("--k", bg_k);
  build->add_option("--kernel", bg_kernel, "uniform | triangle");
  build->add_option("--mode", bg_mode, "symmetric | mutual (knn)");
  build->add_option("--n0", bg_n0);
  build->add_option("--n1", bg_n1);
  build->add_option("--r", bg_r);
  build->add_option("--q", bg_q);
  build->add_option("--seed", bg_seed);
  build->add_option("--out", bg_out)->required();
  build->add_option("--points-out", bg_points_out);
  build->add_option("--truth-out", bg_truth_out);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve the Dirichlet problem");
  std::string sv_graph, sv_labels, sv_p = "2", sv_sweep = "gauss_seidel";
  std::string sv_init = "label_mean", sv_out;
  double sv_tol = 1e-10;
  long sv_max_iter = 1000000;
  solve_cmd->add_option("--graph", sv_graph)->required();
  solve_cmd->add_option("--labels", sv_labels)->required();
  solve_cmd->add_option("--p", sv_p, "p in [2,inf], e.g. 2, 2.5, inf");
  solve_cmd->add_option("--tol", sv_tol);
  solve_cmd->add_option("--max-iter", sv_max_iter);
  solve_cmd->add_option("--sweep", sv_sweep, "jacobi | gauss_seidel");
  solve_cmd->add_option("--init", sv_init, "min_label | max_label | label_mean");
  solve_cmd->add_option("--out", sv_out)->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "Tug-of-war trajectories / MC exit values");
  std::string sm_graph, sm_labels, sm_p = "2", sm_traj_out;
  int sm_start = 0;
  long sm_trials = 1000, sm_max_steps = 1000000;
  std::uint64_t sm_seed = 0;
  sim->add_option("--graph", sm_graph)->required();
  sim->add_option("--labels", sm_labels)->required();
  sim->add_option("--p", sm_p);
  sim->add_option("--start", sm_start)->required();
  sim->add_option("--trials", sm_trials);
  sim->add_option("--max-steps", sm_max_steps);
  sim->add_option("--seed", sm_seed);
  sim->add_option("--trajectory-out", sm_traj_out, "dump the first trajectory");

  // verify
  auto* verify = app.add_subcommand("verify", "Certificate report (JSON)");
  std::string vf_graph, vf_labels, vf_truth, vf_p = "2", vf_out;
  double vf_beta = 0.0;
  verify->add_option("--graph", vf_graph)->required();
  verify->add_option("--labels", vf_labels)->required();
  verify->add_option("--truth", vf_truth)->required();
  verify->add_option("--p", vf_p);
  verify->add_option("--beta", vf_beta, "nominal label rate for the delta/beta diagnostic");
  verify->add_option("--out", vf_out);

  // sweeps
  auto* sbm_sweep = app.add_subcommand("sbm-sweep", "SBM classification sweep");
  auto* geom = app.add_subcommand("geom-experiment", "Geometric-graph experiment");
  std::string sw_config, sw_out;
  std::optional<std::uint64_t> sw_seed;
  std::optional<int> sw_threads;
  for (auto* cmd : {sbm_sweep, geom}) {
    cmd->add_option("--config", sw_config, "JSON config")->required();
    cmd->add_option("--seed", sw_seed, "override config seed");
    cmd->add_option("--threads", sw_threads, "override config threads");
    cmd->add_option("--out", sw_out, "output CSV path (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (build->parsed()) {
    std::optional<std::vector<int>> truth;
    std::optional<PointCloud> points;
    std::optional<Graph> graph;
    if (bg_type == "sbm") {
      auto sbm = build_sbm_graph({bg_n0, bg_n1, bg_r, bg_q, bg_seed});
      graph = std::move(sbm.graph);
      truth = std::move(sbm.truth);
    } else {
      if (bg_dist == "two_moons") {
        auto moons = sample_two_moons(bg_n, bg_noise, bg_seed);
        points = std::move(moons.points);
        truth = std::move(moons.truth);
      } else if (bg_dist == "uniform_box") {
        points = sample_uniform_box(bg_n, bg_d, bg_seed);
      } else {
        throw std::invalid_argument("unknown dist '" + bg_dist + "'");
      }
      const Kernel kernel = Kernel::parse(bg_kernel, points->d);
      if (bg_type == "epsilon") {
        graph = build_epsilon_graph(*points, bg_eps, kernel);
      } else if (bg_type == "knn") {
        const KnnMode mode =
            bg_mode == "mutual" ? KnnMode::mutual : KnnMode::symmetric;
        if (bg_mode != "mutual" && bg_mode != "symmetric") {
          throw std::invalid_argument("unknown mode '" + bg_mode + "'");
        }
        graph = build_knn_graph(*points, bg_k, kernel, mode);
      } else {
        throw std::invalid_argument("unknown graph type '" + bg_type + "'");
      }
    }
    save_edge_list(*graph, bg_out);
    if (!graph->is_connected()) {
      std::cerr << "build-graph: warning: graph is disconnected\n";
    }
    if (!bg_points_out.empty() && points) save_point_cloud(*points, bg_points_out);
    if (!bg_truth_out.empty() && truth) {
      std::vector<double> tv(truth->begin(), truth->end());
      save_vertex_values(tv, bg_truth_out);
    }
    return 0;
  }

  if (solve_cmd->parsed()) {
    const Graph g = load_edge_list(sv_graph);
    const LabelSet labels = load_labels(sv_labels, g.size());
    const PValue p = PValue::parse(sv_p);
    const auto cfg = solver_config(sv_tol, sv_max_iter, sv_sweep, sv_init);
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = solve_dirichlet(g, labels, p, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cerr << "solve: iterations=" << result.iterations
              << " residual=" << result.residual << " wall_ms=" << ms << "\n";
    save_solution(result.u, sv_out);
    if (!result.converged) {
      std::cerr << "solve: warning: did not converge to tolerance\n";
    }
    return 0;
  }

  if (sim->parsed()) {
    const Graph g = load_edge_list(sm_graph);
    const LabelSet labels = load_labels(sm_labels, g.size());
    const PValue p = PValue::parse(sm_p);
    const auto result = solve_dirichlet(g, labels, p);
    if (!sm_traj_out.empty()) {
      save_trajectory(simulate_trajectory(g, labels, result.u, p, sm_start, sm_max_steps,
                                          derive_seed(sm_seed, 0)),
                      sm_traj_out);
    }
    const auto mc =
        mc_exit_value(g, labels, result.u, p, sm_start, sm_trials, sm_max_steps, sm_seed);
    std::cout << "mean=" << mc.mean << " std_error=" << mc.std_error
              << " truncated=" << mc.truncated_count << " trials=" << mc.trials << "\n";
    return 0;
  }

  if (verify->parsed()) {
    const Graph g = load_edge_list(vf_graph);
    const LabelSet labels = load_labels(vf_labels, g.size(), vf_truth);
    const PValue p = PValue::parse(vf_p);
    const auto result = solve_dirichlet(g, labels, p);

    json report = json::array();
    const bool a1 = check_a1(g, labels);
    report.push_back({{"name", "a1"},
                      {"applicable", true},
                      {"holds", a1},
                      {"bound", nullptr},
                      {"observed", a1 ? delta(g, labels) : 0.0},
                      {"parameters", {{"p", p.str()}}}});

    const auto th1 = th1_certificate(g, labels, result.u, p);
    report.push_back({{"name", "th1"},
                      {"applicable", th1.applicable},
                      {"holds", th1.holds},
                      {"bound", th1.bound},
                      {"observed", th1.max_violation},
                      {"parameters",
                       {{"p", p.str()},
                        {"delta", th1.delta_value},
                        {"grad_sup_norm", th1.grad_norm},
                        {"sup_norm", th1.sup_norm},
                        {"negative_log_term", th1.negative_log_term}}}});

    const auto th3 = th3_certificate(g, labels, result.u, p);
    report.push_back({{"name", "th3"},
                      {"applicable", th3.applicable},
                      {"holds", th3.holds},
                      {"bound", th3.bound},
                      {"observed", th3.max_edge_diff},
                      {"parameters", {{"p", p.str()}}}});

    bool binary = true;
    for (double v : labels.truth()) {
      if (v != 0.0 && v != 1.0) binary = false;
    }
    if (binary) {
      const auto th2 = th2_certificate(g, labels, result.u, p);
      report.push_back({{"name", "th2"},
                        {"applicable", th2.applicable},
                        {"holds", th2.holds},
                        {"bound", th2.kappa_value},
                        {"observed", static_cast<int>(th2.violations.size())},
                        {"parameters",
                         {{"p", p.str()}, {"band_size", static_cast<int>(th2.band.size())}}}});
      const auto truth = labels.binary_truth();
      const auto rates = sbm_rates(g, truth, labels);
      const bool suff = suff_condition_check(rates);
      report.push_back({{"name", "suff_cond"},
                        {"applicable", true},
                        {"holds", suff},
                        {"bound", rates.gamma_max >= 1.0
                                      ? nullptr
                                      : json(rates.gamma_max / (1.0 - rates.gamma_max))},
                        {"observed", rates.beta_min},
                        {"parameters", {{"gamma_max", rates.gamma_max}}}});
    }
    if (vf_beta > 0.0) {
      report.push_back({{"name", "delta_beta_ratio"},
                        {"applicable", true},
                        {"holds", delta_beta_ratio(g, labels, vf_beta) > 0.0},
                        {"bound", nullptr},
                        {"observed", delta_beta_ratio(g, labels, vf_beta)},
                        {"parameters", {{"beta", vf_beta}}}});
    }
    write_text(report.dump(2) + "\n", vf_out);
    return 0;
  }

  if (sbm_sweep->parsed() || geom->parsed()) {
    ExperimentConfig cfg = ExperimentConfig::from_json_file(sw_config);
    if (sw_seed) cfg.seed = *sw_seed;
    if (sw_threads) cfg.threads = *sw_threads;
    const std::string csv =
        sbm_sweep->parsed() ? run_sbm_sweep(cfg) : run_geom_experiment(cfg);
    write_text(csv, sw_out);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const plap::StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
