#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plap/builders.hpp"
#include "plap/graph.hpp"
#include "plap/tug_of_war.hpp"

namespace plap {

// Edge-list CSV: header `src,dst,weight`, 0-based indices, each undirected
// edge once. Rejects self-loops and duplicate pairs. Vertex count is
// 1 + max index unless given.
Graph load_edge_list(const std::string& path, std::optional<int> n = std::nullopt);
void save_edge_list(const Graph& g, const std::string& path);

// Label CSV: header `index,value`, one row per labeled vertex.
// Truth CSV: header `index,value`, one row per vertex.
LabelSet load_labels(const std::string& path, int n,
                     const std::optional<std::string>& truth_path = std::nullopt);
void save_labels(const LabelSet& labels, const std::string& path);
std::vector<double> load_vertex_values(const std::string& path, int n);
void save_vertex_values(const std::vector<double>& values, const std::string& path);

// Feature CSV: header row, float columns, optional trailing integer column
// named `label`.
struct FeatureTable {
  PointCloud features;
  std::optional<std::vector<int>> labels;
};
FeatureTable load_feature_csv(const std::string& path);

// Point-cloud CSV: header `x0,x1,...,x{d-1}`.
void save_point_cloud(const PointCloud& pc, const std::string& path);

// Solution CSV: header `index,u,label`.
void save_solution(const std::vector<double>& u, const std::string& path);

// Trajectory CSV: header `step,vertex,move_kind`.
void save_trajectory(const Trajectory& traj, const std::string& path);

}  // namespace plap
