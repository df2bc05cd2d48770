#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "plap/graph.hpp"
#include "plap/rng.hpp"
#include "plap/solver.hpp"

namespace test_util {

inline plap::Graph make_graph(int n, const std::vector<plap::Edge>& edges) {
  return plap::Graph::from_edges(n, edges);
}

inline plap::Graph path_graph(int n) {
  std::vector<plap::Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return make_graph(n, edges);
}

inline plap::Graph triangle_graph() {
  return make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

// Two unit triangles {0,1,2} and {3,4,5} joined by the single edge 2-3.
inline plap::Graph two_triangles() {
  return make_graph(6, {{0, 1, 1.0},
                        {0, 2, 1.0},
                        {1, 2, 1.0},
                        {3, 4, 1.0},
                        {3, 5, 1.0},
                        {4, 5, 1.0},
                        {2, 3, 1.0}});
}

// Random spanning tree plus extra edges; always connected.
inline plap::Graph random_connected(plap::Rng& rng, int n, double extra_prob = 0.3,
                                    bool random_weights = true) {
  std::vector<plap::Edge> edges;
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  auto weight = [&] { return random_weights ? 0.5 + rng.next_double() : 1.0; };
  for (int i = 1; i < n; ++i) {
    const int j = static_cast<int>(rng.next_below(i));
    edges.push_back({j, i, weight()});
    present[j][i] = 1;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!present[i][j] && rng.next_double() < extra_prob) {
        edges.push_back({i, j, weight()});
      }
    }
  }
  return make_graph(n, edges);
}

// Random nonempty label set with values in [0,1]; truth attached when
// requested (truth extends the boundary values to all vertices).
inline plap::LabelSet random_labels(plap::Rng& rng, int n, double beta,
                                    bool with_truth = false) {
  for (;;) {
    std::vector<double> truth(n);
    for (auto& v : truth) v = rng.next_double();
    std::vector<int> gamma;
    std::vector<double> values;
    for (int x = 0; x < n; ++x) {
      if (rng.next_double() < beta) {
        gamma.push_back(x);
        values.push_back(truth[x]);
      }
    }
    if (gamma.empty()) continue;
    if (with_truth) return plap::LabelSet(n, gamma, values, truth);
    return plap::LabelSet(n, gamma, values);
  }
}

// Dense Gaussian elimination solve of the p=2 harmonic extension:
// d_x u(x) = sum_y w_xy u(y) on unlabeled x, u = g on Gamma.
inline std::vector<double> harmonic_extension(const plap::Graph& g,
                                              const plap::LabelSet& labels) {
  const int n = g.size();
  std::vector<int> unlabeled;
  std::vector<int> slot(n, -1);
  for (int x = 0; x < n; ++x) {
    if (!labels.is_labeled(x)) {
      slot[x] = static_cast<int>(unlabeled.size());
      unlabeled.push_back(x);
    }
  }
  const int m = static_cast<int>(unlabeled.size());
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    const int x = unlabeled[i];
    a[i][i] = g.degree(x);
    auto nb = g.neighbors(x);
    auto wt = g.neighbor_weights(x);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (labels.is_labeled(nb[k])) {
        a[i][m] += wt[k] * labels.value(nb[k]);
      } else {
        a[i][slot[nb[k]]] -= wt[k];
      }
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int row = col + 1; row < m; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    std::swap(a[col], a[pivot]);
    for (int row = col + 1; row < m; ++row) {
      const double f = a[row][col] / a[col][col];
      for (int k = col; k <= m; ++k) a[row][k] -= f * a[col][k];
    }
  }
  std::vector<double> u(n, 0.0);
  for (int i = m - 1; i >= 0; --i) {
    double rhs = a[i][m];
    for (int k = i + 1; k < m; ++k) rhs -= a[i][k] * u[unlabeled[k]];
    u[unlabeled[i]] = rhs / a[i][i];
  }
  for (int x : labels.gamma()) u[x] = labels.value(x);
  return u;
}

}  // namespace test_util
