#include "plap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace plap {

PValue::PValue(double p, bool infinite) : p_(p), infinite_(infinite) {
  alpha_ = infinite_ ? 0.0 : 1.0 / (p_ - 1.0);
}

PValue PValue::finite(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must be a finite real >= 2");
  }
  return PValue(p, false);
}

PValue PValue::infinity() { return PValue(std::numeric_limits<double>::infinity(), true); }

PValue PValue::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return infinity();
  std::size_t pos = 0;
  double v = std::stod(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("cannot parse p value '" + text + "'");
  return finite(v);
}

double PValue::p() const {
  if (infinite_) throw std::invalid_argument("p is infinite");
  return p_;
}

std::string PValue::str() const {
  if (infinite_) return "inf";
  std::string s = std::to_string(p_);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

double apply_rw_laplacian(const Graph& g, std::span<const double> u, int x) {
  g.check_vertex(x);
  const double d = g.degree(x);
  if (d <= 0.0) throw StructuralError("isolated vertex " + std::to_string(x));
  auto nb = g.neighbors(x);
  auto wt = g.neighbor_weights(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) acc += wt[i] * (u[x] - u[nb[i]]);
  return acc / d;
}

namespace {

std::pair<double, double> neighbor_range(const Graph& g, std::span<const double> u, int x) {
  auto nb = g.neighbors(x);
  if (nb.empty()) throw StructuralError("isolated vertex " + std::to_string(x));
  double lo = u[nb[0]], hi = u[nb[0]];
  for (int y : nb) {
    lo = std::min(lo, u[y]);
    hi = std::max(hi, u[y]);
  }
  return {lo, hi};
}

}  // namespace

double apply_infty_laplacian(const Graph& g, std::span<const double> u, int x) {
  g.check_vertex(x);
  auto [lo, hi] = neighbor_range(g, u, x);
  return u[x] - 0.5 * (lo + hi);
}

double apply_game_p_laplacian(const Graph& g, std::span<const double> u, int x,
                              const PValue& p) {
  const double a = p.alpha();
  double out = 0.0;
  if (a > 0.0) out += a * apply_rw_laplacian(g, u, x);
  if (a < 1.0) out += (1.0 - a) * apply_infty_laplacian(g, u, x);
  return out;
}

double dpp_rhs(const Graph& g, std::span<const double> u, int x, const PValue& p) {
  g.check_vertex(x);
  const double a = p.alpha();
  auto nb = g.neighbors(x);
  auto wt = g.neighbor_weights(x);
  if (nb.empty()) throw StructuralError("isolated vertex " + std::to_string(x));
  double rhs = 0.0;
  if (a > 0.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) acc += wt[i] * u[nb[i]];
    rhs += a * acc / g.degree(x);
  }
  if (a < 1.0) {
    auto [lo, hi] = neighbor_range(g, u, x);
    rhs += 0.5 * (1.0 - a) * (lo + hi);
  }
  return rhs;
}

SolveResult solve_dirichlet(const Graph& g, const LabelSet& labels, const PValue& p,
                            const SolverConfig& cfg) {
  cfg.validate();
  if (labels.size() != g.size()) throw std::invalid_argument("label set size mismatch");
  if (labels.empty()) throw std::invalid_argument("label set is empty");

  // Every vertex must reach a labeled vertex.
  {
    std::vector<char> reached(g.size(), 0);
    std::deque<int> queue;
    for (int s : labels.gamma()) {
      reached[s] = 1;
      queue.push_back(s);
    }
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : g.neighbors(x)) {
        if (!reached[y]) {
          reached[y] = 1;
          queue.push_back(y);
        }
      }
    }
    for (int x = 0; x < g.size(); ++x) {
      if (!reached[x]) {
        throw StructuralError("component of vertex " + std::to_string(x) +
                              " contains no labeled vertex");
      }
    }
  }

  double g_min = labels.value(labels.gamma()[0]);
  double g_max = g_min;
  double g_sum = 0.0;
  for (int x : labels.gamma()) {
    const double v = labels.value(x);
    g_min = std::min(g_min, v);
    g_max = std::max(g_max, v);
    g_sum += v;
  }
  double init = g_sum / static_cast<double>(labels.gamma().size());
  if (cfg.initialization == Initialization::min_label) init = g_min;
  if (cfg.initialization == Initialization::max_label) init = g_max;

  SolveResult res;
  res.u.assign(g.size(), init);
  std::vector<int> unlabeled;
  for (int x = 0; x < g.size(); ++x) {
    if (labels.is_labeled(x)) {
      res.u[x] = labels.value(x);
    } else {
      unlabeled.push_back(x);
    }
  }

  if (unlabeled.empty()) {
    res.converged = true;
    return res;
  }

  std::vector<double> next(res.u);
  for (long it = 1; it <= cfg.max_iterations; ++it) {
    if (cfg.sweep == Sweep::jacobi) {
      for (int x : unlabeled) next[x] = dpp_rhs(g, res.u, x, p);
      std::swap(res.u, next);
    } else {
      for (int x : unlabeled) res.u[x] = dpp_rhs(g, res.u, x, p);
    }
    // Residual of L_p u over unlabeled vertices; iterate displacement can
    // stagnate near machine precision for alpha near 0.
    double residual = 0.0;
    for (int x : unlabeled) {
      residual = std::max(residual, std::abs(res.u[x] - dpp_rhs(g, res.u, x, p)));
    }
    res.iterations = it;
    res.residual = residual;
    if (residual <= cfg.tolerance) {
      res.converged = true;
      break;
    }
  }
  return res;
}

std::vector<int> classify(std::span<const double> u) {
  std::vector<int> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] >= 0.5 ? 1 : 0;
  return out;
}

}  // namespace plap
