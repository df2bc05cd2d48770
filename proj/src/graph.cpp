#include "plap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace plap {

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
  Graph g;
  g.n_ = n;

  std::set<std::pair<int, int>> seen;
  std::vector<int> count(n, 0);
  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.src == e.dst) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.src));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weight must be positive and finite");
    }
    auto key = std::minmax(e.src, e.dst);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(key.first) +
                                  "-" + std::to_string(key.second));
    }
    ++count[e.src];
    ++count[e.dst];
  }

  g.offsets_.assign(n + 1, 0);
  for (int x = 0; x < n; ++x) g.offsets_[x + 1] = g.offsets_[x] + count[x];
  g.adj_.resize(g.offsets_[n]);
  g.wts_.resize(g.offsets_[n]);

  std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adj_[cursor[e.src]] = e.dst;
    g.wts_[cursor[e.src]++] = e.weight;
    g.adj_[cursor[e.dst]] = e.src;
    g.wts_[cursor[e.dst]++] = e.weight;
  }

  // Sort each neighbor list by vertex index.
  for (int x = 0; x < n; ++x) {
    const int lo = g.offsets_[x], hi = g.offsets_[x + 1];
    std::vector<std::pair<int, double>> nb(hi - lo);
    for (int i = lo; i < hi; ++i) nb[i - lo] = {g.adj_[i], g.wts_[i]};
    std::sort(nb.begin(), nb.end());
    for (int i = lo; i < hi; ++i) {
      g.adj_[i] = nb[i - lo].first;
      g.wts_[i] = nb[i - lo].second;
    }
  }

  g.deg_.assign(n, 0.0);
  for (int x = 0; x < n; ++x) {
    double d = 0.0;
    for (int i = g.offsets_[x]; i < g.offsets_[x + 1]; ++i) d += g.wts_[i];
    g.deg_[x] = d;
  }

  // Connectivity flag via BFS from vertex 0.
  std::vector<char> visited(n, 0);
  std::deque<int> queue{0};
  visited[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : g.neighbors(x)) {
      if (!visited[y]) {
        visited[y] = 1;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  g.connected_ = (reached == n);
  return g;
}

double Graph::weight(int x, int y) const {
  check_vertex(x);
  check_vertex(y);
  auto nb = neighbors(x);
  auto it = std::lower_bound(nb.begin(), nb.end(), y);
  if (it == nb.end() || *it != y) return 0.0;
  return wts_[offsets_[x] + static_cast<int>(it - nb.begin())];
}

LabelSet::LabelSet(int n, std::vector<int> gamma, std::vector<double> values,
                   std::optional<std::vector<double>> truth)
    : n_(n), gamma_(std::move(gamma)), values_(std::move(values)), truth_(std::move(truth)) {
  if (n_ <= 0) throw std::invalid_argument("label set needs positive vertex count");
  if (gamma_.size() != values_.size()) {
    throw std::invalid_argument("gamma and boundary values must align");
  }
  // Keep gamma sorted with values in lockstep.
  std::vector<std::pair<int, double>> pairs(gamma_.size());
  for (std::size_t i = 0; i < gamma_.size(); ++i) pairs[i] = {gamma_[i], values_[i]};
  std::sort(pairs.begin(), pairs.end());
  mask_.assign(n_, 0);
  dense_.assign(n_, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, v] = pairs[i];
    if (x < 0 || x >= n_) throw std::invalid_argument("labeled index out of range");
    if (mask_[x]) throw std::invalid_argument("duplicate labeled index " + std::to_string(x));
    mask_[x] = 1;
    dense_[x] = v;
    gamma_[i] = x;
    values_[i] = v;
  }
  if (truth_) {
    if (static_cast<int>(truth_->size()) != n_) {
      throw std::invalid_argument("truth must cover every vertex");
    }
    for (int x : gamma_) {
      if ((*truth_)[x] != dense_[x]) {
        throw std::invalid_argument("boundary values disagree with truth on gamma");
      }
    }
  }
}

double LabelSet::value(int x) const {
  if (x < 0 || x >= n_) throw std::invalid_argument("vertex out of range");
  if (!mask_[x]) throw std::invalid_argument("vertex " + std::to_string(x) + " is unlabeled");
  return dense_[x];
}

std::vector<int> LabelSet::binary_truth() const {
  if (!truth_) throw std::invalid_argument("label set carries no truth");
  std::vector<int> out(n_);
  for (int x = 0; x < n_; ++x) {
    double v = (*truth_)[x];
    if (v != 0.0 && v != 1.0) throw std::invalid_argument("truth is not binary");
    out[x] = static_cast<int>(v);
  }
  return out;
}

std::vector<int> distances_to_set(const Graph& g, std::span<const int> sources) {
  if (sources.empty()) throw std::invalid_argument("source set is empty");
  std::vector<int> dist(g.size(), kUnreachable);
  std::deque<int> queue;
  for (int s : sources) {
    g.check_vertex(s);
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : g.neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

int graph_distance(const Graph& g, int x, std::span<const int> targets) {
  g.check_vertex(x);
  if (targets.empty()) throw std::invalid_argument("target set is empty");
  std::vector<char> is_target(g.size(), 0);
  for (int t : targets) {
    g.check_vertex(t);
    is_target[t] = 1;
  }
  if (is_target[x]) return 0;
  std::vector<int> dist(g.size(), kUnreachable);
  std::deque<int> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int y : g.neighbors(v)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[v] + 1;
        if (is_target[y]) return dist[y];
        queue.push_back(y);
      }
    }
  }
  return kUnreachable;
}

double delta(const Graph& g, const LabelSet& labels) {
  if (labels.size() != g.size()) throw std::invalid_argument("label set size mismatch");
  double worst = 1.0;
  for (int x = 0; x < g.size(); ++x) {
    const double d = g.degree(x);
    if (d <= 0.0) {
      throw StructuralError("vertex " + std::to_string(x) + " has zero degree");
    }
    double labeled = 0.0;
    auto nb = g.neighbors(x);
    auto wt = g.neighbor_weights(x);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (labels.is_labeled(nb[i])) labeled += wt[i];
    }
    worst = std::min(worst, labeled / d);
  }
  return worst;
}

double grad_sup_norm(const Graph& g, std::span<const double> f) {
  if (static_cast<int>(f.size()) != g.size()) {
    throw std::invalid_argument("function must be defined on all vertices");
  }
  double sup = 0.0;
  g.for_each_edge([&](int x, int y, double) { sup = std::max(sup, std::abs(f[x] - f[y])); });
  return sup;
}

std::vector<int> boundary_band(const Graph& g, std::span<const int> truth, int m) {
  if (static_cast<int>(truth.size()) != g.size()) {
    throw std::invalid_argument("truth must cover every vertex");
  }
  if (m < 0) throw std::invalid_argument("band radius must be nonnegative");
  std::vector<int> class0, class1;
  for (int x = 0; x < g.size(); ++x) {
    if (truth[x] == 0) {
      class0.push_back(x);
    } else if (truth[x] == 1) {
      class1.push_back(x);
    } else {
      throw std::invalid_argument("truth is not binary");
    }
  }
  if (class0.empty() || class1.empty()) {
    throw std::invalid_argument("boundary band needs both classes nonempty");
  }
  const auto dist_to0 = distances_to_set(g, class0);
  const auto dist_to1 = distances_to_set(g, class1);
  std::vector<int> band;
  for (int x = 0; x < g.size(); ++x) {
    const int d = truth[x] == 0 ? dist_to1[x] : dist_to0[x];
    if (d <= m) band.push_back(x);
  }
  return band;
}

bool check_a1(const Graph& g, const LabelSet& labels) {
  if (labels.size() != g.size()) throw std::invalid_argument("label set size mismatch");
  for (int x = 0; x < g.size(); ++x) {
    bool found = false;
    for (int y : g.neighbors(x)) {
      if (labels.is_labeled(y)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace plap
