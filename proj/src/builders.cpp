#include "plap/builders.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "plap/rng.hpp"

namespace plap {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double angular_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("angular distance undefined for zero vector");
  }
  const double c = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
  return std::acos(c);
}

namespace {

void check_cloud(const PointCloud& pc) {
  if (pc.n < 2) throw std::invalid_argument("point cloud needs at least two points");
  if (pc.d < 1) throw std::invalid_argument("point cloud dimension must be positive");
  if (static_cast<int>(pc.coords.size()) != pc.n * pc.d) {
    throw std::invalid_argument("point cloud storage size mismatch");
  }
  for (double v : pc.coords) {
    if (!std::isfinite(v)) throw std::invalid_argument("point coordinates must be finite");
  }
}

}  // namespace

Graph build_epsilon_graph(const PointCloud& pc, double eps, const Kernel& kernel,
                          PairScan scan) {
  check_cloud(pc);
  if (eps <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (kernel.dimension() != pc.d) {
    throw std::invalid_argument("kernel dimension does not match point cloud");
  }

  std::vector<Edge> edges;
  auto consider = [&](int i, int j) {
    const double w = kernel.scaled(euclidean_distance(pc.point(i), pc.point(j)), eps);
    if (w > 0.0) edges.push_back({i, j, w});
  };

  if (scan == PairScan::naive) {
    for (int i = 0; i < pc.n; ++i) {
      for (int j = i + 1; j < pc.n; ++j) consider(i, j);
    }
  } else {
    if (pc.d > 3) throw std::invalid_argument("grid scan supports d <= 3");
    // Bucket by cell of side eps; only 3^d neighboring cells can hold edges.
    std::map<std::array<std::int64_t, 3>, std::vector<int>> cells;
    auto cell_of = [&](int i) {
      std::array<std::int64_t, 3> c{0, 0, 0};
      auto p = pc.point(i);
      for (int k = 0; k < pc.d; ++k) {
        c[k] = static_cast<std::int64_t>(std::floor(p[k] / eps));
      }
      return c;
    };
    for (int i = 0; i < pc.n; ++i) cells[cell_of(i)].push_back(i);
    for (int i = 0; i < pc.n; ++i) {
      const auto base = cell_of(i);
      std::array<std::int64_t, 3> nc = base;
      const int r1 = pc.d >= 2 ? 1 : 0, r2 = pc.d >= 3 ? 1 : 0;
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -r1; dy <= r1; ++dy) {
          for (std::int64_t dz = -r2; dz <= r2; ++dz) {
            nc = {base[0] + dx, base[1] + dy, base[2] + dz};
            auto it = cells.find(nc);
            if (it == cells.end()) continue;
            for (int j : it->second) {
              if (j > i) consider(i, j);
            }
          }
        }
      }
    }
    // Edge order differs from the naive scan; normalize for determinism.
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  }
  return Graph::from_edges(pc.n, edges);
}

std::vector<double> knn_radii(const PointCloud& pc, int kk) {
  check_cloud(pc);
  if (kk < 1 || kk > pc.n - 1) throw std::invalid_argument("k out of range [1, n-1]");
  std::vector<double> radii(pc.n);
  std::vector<double> dists;
  for (int i = 0; i < pc.n; ++i) {
    dists.clear();
    for (int j = 0; j < pc.n; ++j) {
      if (j == i) continue;
      const double dij = euclidean_distance(pc.point(i), pc.point(j));
      if (dij > 0.0) dists.push_back(dij);  // coincident points do not count
    }
    if (static_cast<int>(dists.size()) < kk) {
      throw std::invalid_argument("k-NN radius undefined: too many coincident points");
    }
    std::nth_element(dists.begin(), dists.begin() + (kk - 1), dists.end());
    radii[i] = dists[kk - 1];
  }
  return radii;
}

Graph build_knn_graph(const PointCloud& pc, int kk, const Kernel& kernel, KnnMode mode) {
  if (kernel.dimension() != pc.d) {
    throw std::invalid_argument("kernel dimension does not match point cloud");
  }
  const auto radii = knn_radii(pc, kk);
  std::vector<Edge> edges;
  for (int i = 0; i < pc.n; ++i) {
    for (int j = i + 1; j < pc.n; ++j) {
      const double dij = euclidean_distance(pc.point(i), pc.point(j));
      const bool rel_i = dij <= radii[i];
      const bool rel_j = dij <= radii[j];
      double scale;
      if (mode == KnnMode::symmetric) {
        if (!rel_i && !rel_j) continue;
        scale = std::max(radii[i], radii[j]);
      } else {
        if (!rel_i || !rel_j) continue;
        scale = std::min(radii[i], radii[j]);
      }
      const double w = kernel.scaled(dij, scale);
      if (w > 0.0) edges.push_back({i, j, w});
    }
  }
  return Graph::from_edges(pc.n, edges);
}

void SbmSpec::validate(bool allow_zero_q) const {
  if (n0 < 2 || n1 < 2) throw std::invalid_argument("SBM block sizes must be >= 2");
  // r=1 is allowed so the deterministic complete-block limit is testable.
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in (0,1]");
  if (allow_zero_q) {
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in [0,1)");
  } else {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
  }
}

SbmGraph build_sbm_graph(const SbmSpec& spec) {
  spec.validate(/*allow_zero_q=*/true);
  const int n = spec.n0 + spec.n1;
  std::vector<int> truth(n);
  for (int i = spec.n0; i < n; ++i) truth[i] = 1;

  Rng rng(spec.seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double prob = truth[i] == truth[j] ? spec.r : spec.q;
      if (rng.next_bernoulli(prob)) edges.push_back({i, j, 1.0});
    }
  }
  return {Graph::from_edges(n, edges), std::move(truth)};
}

PointCloud sample_uniform_box(int n, int d, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least two points");
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  PointCloud pc;
  pc.n = n;
  pc.d = d;
  pc.generator = "uniform_box";
  pc.seed = seed;
  pc.coords.resize(static_cast<std::size_t>(n) * d);
  Rng rng(seed);
  for (double& v : pc.coords) v = rng.next_double();
  return pc;
}

TwoMoons sample_two_moons(int n, double noise, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least two points");
  if (noise < 0.0) throw std::invalid_argument("noise must be nonnegative");
  TwoMoons out;
  out.points.n = n;
  out.points.d = 2;
  out.points.generator = "two_moons";
  out.points.seed = seed;
  out.points.coords.resize(2 * static_cast<std::size_t>(n));
  out.truth.resize(n);
  Rng rng(seed);
  const int n0 = (n + 1) / 2;
  for (int i = 0; i < n; ++i) {
    const double t = M_PI * rng.next_double();
    double x, y;
    if (i < n0) {
      x = std::cos(t);
      y = std::sin(t);
      out.truth[i] = 0;
    } else {
      x = 1.0 - std::cos(t);
      y = 0.5 - std::sin(t);
      out.truth[i] = 1;
    }
    out.points.coords[2 * i] = x + noise * rng.next_normal();
    out.points.coords[2 * i + 1] = y + noise * rng.next_normal();
  }
  return out;
}

LabelSet sample_labels_bernoulli(std::span<const double> truth, double beta,
                                 std::uint64_t seed) {
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta must lie in [0,1]");
  const int n = static_cast<int>(truth.size());
  if (n < 1) throw std::invalid_argument("truth must be nonempty");
  Rng rng(seed);
  std::vector<int> gamma;
  std::vector<double> values;
  for (int x = 0; x < n; ++x) {
    if (rng.next_bernoulli(beta)) {
      gamma.push_back(x);
      values.push_back(truth[x]);
    }
  }
  return LabelSet(n, std::move(gamma), std::move(values),
                  std::vector<double>(truth.begin(), truth.end()));
}

Graph build_feature_knn_graph(const PointCloud& features, int kk, FeatureMetric metric) {
  check_cloud(features);
  const int n = features.n;
  if (kk < 1 || kk > n - 1) throw std::invalid_argument("k out of range [1, n-1]");

  auto dist = [&](int i, int j) {
    return metric == FeatureMetric::angular
               ? angular_distance(features.point(i), features.point(j))
               : euclidean_distance(features.point(i), features.point(j));
  };

  std::vector<double> dmat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dij = dist(i, j);
      dmat[static_cast<std::size_t>(i) * n + j] = dij;
      dmat[static_cast<std::size_t>(j) * n + i] = dij;
    }
  }

  std::vector<double> radii(n);
  std::vector<double> row;
  for (int i = 0; i < n; ++i) {
    row.clear();
    for (int j = 0; j < n; ++j) {
      const double dij = dmat[static_cast<std::size_t>(i) * n + j];
      if (j != i && dij > 0.0) row.push_back(dij);
    }
    if (static_cast<int>(row.size()) < kk) {
      throw std::invalid_argument("k-NN radius undefined: too many coincident features");
    }
    std::nth_element(row.begin(), row.begin() + (kk - 1), row.end());
    radii[i] = row[kk - 1];
  }

  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dij = dmat[static_cast<std::size_t>(i) * n + j];
      if (dij > radii[i] && dij > radii[j]) continue;
      const double scale = std::max(radii[i], radii[j]);
      const double w = 1.0 - dij / scale;
      if (w > 0.0) edges.push_back({i, j, w});
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace plap
