#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plap/graph.hpp"
#include "plap/kernel.hpp"

namespace plap {

struct PointCloud {
  int d = 0;
  int n = 0;
  std::vector<double> coords;  // row-major, n*d
  std::string generator;
  std::uint64_t seed = 0;

  std::span<const double> point(int i) const {
    return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// arccos of cosine similarity; rejects zero vectors.
double angular_distance(std::span<const double> a, std::span<const double> b);

enum class PairScan { naive, grid };

// eps-graph: w_xy = eps^{-d} eta(|x-y|/eps), zero weights omitted.
// The grid scan buckets points into cells of side eps (d <= 3); its output
// matches the naive reference exactly.
Graph build_epsilon_graph(const PointCloud& pc, double eps, const Kernel& kernel,
                          PairScan scan = PairScan::naive);

enum class KnnMode { symmetric, mutual };

// Distance to the k-th nearest neighbor of every point (exact k-th order
// statistic of positive distances; ties all count).
std::vector<double> knn_radii(const PointCloud& pc, int kk);

// Symmetric (OR) or mutual (AND) k-NN graph with kernel weights scaled by
// the max (symmetric) or min (mutual) of the two k-NN radii.
Graph build_knn_graph(const PointCloud& pc, int kk, const Kernel& kernel, KnnMode mode);

struct SbmSpec {
  int n0 = 0;
  int n1 = 0;
  double r = 0.0;  // intra-class edge probability
  double q = 0.0;  // inter-class edge probability
  std::uint64_t seed = 0;

  void validate(bool allow_zero_q = false) const;
};

struct SbmGraph {
  Graph graph;
  std::vector<int> truth;  // 0 for vertices [0,n0), 1 for [n0,n0+n1)
};

// Two-block SBM: unit weights, independent Bernoulli edges with probability
// r intra-class and q inter-class. Vertices 0..n0-1 are class 0.
SbmGraph build_sbm_graph(const SbmSpec& spec);

PointCloud sample_uniform_box(int n, int d, std::uint64_t seed);

struct TwoMoons {
  PointCloud points;
  std::vector<int> truth;
};

// Two half-circles of radius 1 offset vertically by 0.5, with isotropic
// Gaussian noise of standard deviation `noise`.
TwoMoons sample_two_moons(int n, double noise, std::uint64_t seed);

// Bernoulli(beta) labeling per A3; boundary values copied from truth, truth
// retained. Gamma may come out empty; the caller decides (solver rejects it).
LabelSet sample_labels_bernoulli(std::span<const double> truth, double beta,
                                 std::uint64_t seed);

enum class FeatureMetric { angular, euclidean };

// Symmetric k-NN graph over arbitrary feature vectors under the chosen
// metric, with triangle-profile weights 1 - dist/radius (unnormalized; the
// solver only sees weight ratios).
Graph build_feature_knn_graph(const PointCloud& features, int kk, FeatureMetric metric);

}  // namespace plap
