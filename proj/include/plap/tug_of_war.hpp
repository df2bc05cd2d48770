#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plap/graph.hpp"
#include "plap/solver.hpp"

namespace plap {

enum class MoveKind { random_walk, carol_max, paul_min, absorbed };

const char* move_kind_name(MoveKind kind);

// One realization of the tug-of-war process. moves[i] tags the transition
// that produced states[i+1]; a trajectory starting inside Gamma has no moves.
struct Trajectory {
  std::vector<int> states;
  std::vector<MoveKind> moves;
  int tau = 0;  // index of the first state in Gamma (only valid if !truncated)
  bool truncated = false;
  std::uint64_t seed = 0;
};

// Process steps from an unlabeled vertex: with probability alpha a random
// walk step (P(y) = w_xy/d_x), with probability (1-alpha)/2 Carol's argmax
// of u over N_x, with probability (1-alpha)/2 Paul's argmin of g over
// N_x intersect Gamma. Ties break to the smallest vertex index. Stops at the
// first Gamma hit or truncates at max_steps.
Trajectory simulate_trajectory(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p, int start,
                               long max_steps, std::uint64_t seed);

// Exact E[u(X_{i+1}) | X_i = x] under the process law:
// (alpha/d_x) sum_y w_xy u(y) + ((1-alpha)/2)(max_{N_x} u + min_{N_x cap Gamma} g).
// Requires x unlabeled and a labeled neighbor at x.
double one_step_expectation(const Graph& g, const LabelSet& labels,
                            std::span<const double> u, const PValue& p, int x);

struct McExitValue {
  double mean = 0.0;
  double std_error = 0.0;
  long truncated_count = 0;
  long trials = 0;
};

// Sample mean and standard error of g(X_tau) over independent trajectories;
// trial i runs on substream derive_seed(seed, i). Truncated trials are
// excluded from the mean and counted. Throws StructuralError if every trial
// truncates.
McExitValue mc_exit_value(const Graph& g, const LabelSet& labels,
                          std::span<const double> u, const PValue& p, int start,
                          long trials, long max_steps, std::uint64_t seed);

}  // namespace plap
