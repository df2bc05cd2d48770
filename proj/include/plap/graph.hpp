#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace plap {

// Thrown when the graph/label structure rules out the requested computation
// (zero-degree vertex, component without labels, A1 failure mid-walk).
// Argument errors use std::invalid_argument.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  int src;
  int dst;
  double weight;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Immutable weighted undirected graph in CSR form. Neighbor lists are sorted
// by vertex index so argmin/argmax tie-breaking is deterministic.
class Graph {
 public:
  // Each undirected edge appears once in `edges`. Rejects self-loops,
  // duplicate pairs, nonpositive weights and out-of-range indices.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int size() const { return n_; }
  int edge_count() const { return static_cast<int>(adj_.size()) / 2; }

  double degree(int x) const {
    check_vertex(x);
    return deg_[x];
  }

  std::span<const int> neighbors(int x) const {
    check_vertex(x);
    return {adj_.data() + offsets_[x], adj_.data() + offsets_[x + 1]};
  }

  std::span<const double> neighbor_weights(int x) const {
    check_vertex(x);
    return {wts_.data() + offsets_[x], wts_.data() + offsets_[x + 1]};
  }

  // Weight of edge {x,y}; 0 if absent.
  double weight(int x, int y) const;

  // True iff a BFS from vertex 0 reaches all n vertices.
  bool is_connected() const { return connected_; }

  // Visits each undirected edge once as (x, y, w) with x < y.
  template <class F>
  void for_each_edge(F&& f) const {
    for (int x = 0; x < n_; ++x) {
      for (int i = offsets_[x]; i < offsets_[x + 1]; ++i) {
        if (adj_[i] > x) f(x, adj_[i], wts_[i]);
      }
    }
  }

  void check_vertex(int x) const {
    if (x < 0 || x >= n_) {
      throw std::invalid_argument("vertex index " + std::to_string(x) +
                                  " out of range [0," + std::to_string(n_) + ")");
    }
  }

 private:
  Graph() = default;
  int n_ = 0;
  std::vector<int> offsets_;
  std::vector<int> adj_;
  std::vector<double> wts_;
  std::vector<double> deg_;
  bool connected_ = false;
};

// Labeled subset Gamma with boundary values g on Gamma and, optionally, the
// full ground-truth g on all vertices for certificate checks.
class LabelSet {
 public:
  LabelSet(int n, std::vector<int> gamma, std::vector<double> values,
           std::optional<std::vector<double>> truth = std::nullopt);

  int size() const { return n_; }
  std::span<const int> gamma() const { return gamma_; }
  bool empty() const { return gamma_.empty(); }
  bool is_labeled(int x) const { return mask_[static_cast<std::size_t>(x)] != 0; }

  double value(int x) const;  // boundary value; throws if x unlabeled

  bool has_truth() const { return truth_.has_value(); }
  std::span<const double> truth() const { return *truth_; }

  // Truth as {0,1} integers; throws if truth is absent or non-binary.
  std::vector<int> binary_truth() const;

 private:
  int n_ = 0;
  std::vector<int> gamma_;
  std::vector<double> values_;
  std::vector<char> mask_;
  std::vector<double> dense_;
  std::optional<std::vector<double>> truth_;
};

// Hop distance from x to the nearest vertex of `targets` (kUnreachable if
// none reachable). `targets` must be nonempty.
int graph_distance(const Graph& g, int x, std::span<const int> targets);

// Multi-source BFS: hop distance from every vertex to the source set.
std::vector<int> distances_to_set(const Graph& g, std::span<const int> sources);

// Smallest weighted ratio of labeled neighbors to neighbors over all
// vertices. Strictly positive iff A1 holds. Requires positive degrees.
double delta(const Graph& g, const LabelSet& labels);

// Max of |f(x)-f(y)| over edges.
double grad_sup_norm(const Graph& g, std::span<const double> f);

// A_m: vertices within hop distance m of the opposite class. `truth` is a
// {0,1} labeling with both classes nonempty.
std::vector<int> boundary_band(const Graph& g, std::span<const int> truth, int m);

// True iff every vertex has at least one labeled neighbor.
bool check_a1(const Graph& g, const LabelSet& labels);

}  // namespace plap
