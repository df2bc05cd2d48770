#include "plap/tug_of_war.hpp"

#include <cmath>
#include <limits>

#include "plap/rng.hpp"

namespace plap {

const char* move_kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::random_walk: return "random_walk";
    case MoveKind::carol_max: return "carol_max";
    case MoveKind::paul_min: return "paul_min";
    case MoveKind::absorbed: return "absorbed";
  }
  return "?";
}

namespace {

// Neighbor lists are sorted ascending, so keeping the first strict improver
// breaks ties toward the smallest vertex index.
int carol_move(const Graph& g, std::span<const double> u, int x) {
  auto nb = g.neighbors(x);
  int best = nb[0];
  for (int y : nb) {
    if (u[y] > u[best]) best = y;
  }
  return best;
}

int paul_move(const Graph& g, const LabelSet& labels, int x) {
  int best = -1;
  for (int y : g.neighbors(x)) {
    if (!labels.is_labeled(y)) continue;
    if (best == -1 || labels.value(y) < labels.value(best)) best = y;
  }
  if (best == -1) {
    throw StructuralError("A1 violated: vertex " + std::to_string(x) +
                          " has no labeled neighbor");
  }
  return best;
}

int random_walk_move(const Graph& g, int x, Rng& rng) {
  auto nb = g.neighbors(x);
  auto wt = g.neighbor_weights(x);
  const double target = rng.next_double() * g.degree(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    acc += wt[i];
    if (target < acc) return nb[i];
  }
  return nb.back();  // guard against rounding in the final partial sum
}

}  // namespace

Trajectory simulate_trajectory(const Graph& g, const LabelSet& labels,
                               std::span<const double> u, const PValue& p, int start,
                               long max_steps, std::uint64_t seed) {
  g.check_vertex(start);
  if (labels.size() != g.size()) throw std::invalid_argument("label set size mismatch");
  if (static_cast<int>(u.size()) != g.size()) {
    throw std::invalid_argument("u must be defined on all vertices");
  }
  if (max_steps < 0) throw std::invalid_argument("max_steps must be nonnegative");

  Trajectory traj;
  traj.seed = seed;
  traj.states.push_back(start);
  Rng rng(seed);
  const double alpha = p.alpha();

  int x = start;
  for (long step = 0; !labels.is_labeled(x); ++step) {
    if (step >= max_steps) {
      traj.truncated = true;
      return traj;
    }
    const double coin = rng.next_double();
    int y;
    MoveKind kind;
    if (coin < alpha) {
      y = random_walk_move(g, x, rng);
      kind = MoveKind::random_walk;
    } else if (coin < alpha + 0.5 * (1.0 - alpha)) {
      y = carol_move(g, u, x);
      kind = MoveKind::carol_max;
    } else {
      y = paul_move(g, labels, x);
      kind = MoveKind::paul_min;
    }
    traj.states.push_back(y);
    traj.moves.push_back(kind);
    x = y;
  }
  traj.tau = static_cast<int>(traj.states.size()) - 1;
  return traj;
}

double one_step_expectation(const Graph& g, const LabelSet& labels,
                            std::span<const double> u, const PValue& p, int x) {
  g.check_vertex(x);
  if (labels.is_labeled(x)) {
    throw std::invalid_argument("one_step_expectation expects an unlabeled vertex");
  }
  auto nb = g.neighbors(x);
  auto wt = g.neighbor_weights(x);
  if (nb.empty()) throw StructuralError("isolated vertex " + std::to_string(x));

  double max_u = u[nb[0]];
  double min_g = std::numeric_limits<double>::infinity();
  double walk = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const int y = nb[i];
    max_u = std::max(max_u, u[y]);
    walk += wt[i] * u[y];
    if (labels.is_labeled(y)) min_g = std::min(min_g, labels.value(y));
  }
  if (!std::isfinite(min_g)) {
    throw StructuralError("A1 violated: vertex " + std::to_string(x) +
                          " has no labeled neighbor");
  }
  const double alpha = p.alpha();
  return alpha * walk / g.degree(x) + 0.5 * (1.0 - alpha) * (max_u + min_g);
}

McExitValue mc_exit_value(const Graph& g, const LabelSet& labels,
                          std::span<const double> u, const PValue& p, int start,
                          long trials, long max_steps, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  McExitValue out;
  out.trials = trials;
  double sum = 0.0, sum_sq = 0.0;
  long kept = 0;
  for (long t = 0; t < trials; ++t) {
    const Trajectory traj =
        simulate_trajectory(g, labels, u, p, start, max_steps,
                            derive_seed(seed, static_cast<std::uint64_t>(t)));
    if (traj.truncated) {
      ++out.truncated_count;
      continue;
    }
    const double v = labels.value(traj.states[traj.tau]);
    sum += v;
    sum_sq += v * v;
    ++kept;
  }
  if (kept == 0) {
    throw StructuralError("all trials truncated; exit value undefined");
  }
  out.mean = sum / kept;
  if (kept > 1) {
    const double var = std::max(0.0, (sum_sq - kept * out.mean * out.mean) / (kept - 1));
    out.std_error = std::sqrt(var / kept);
  }
  return out;
}

}  // namespace plap
