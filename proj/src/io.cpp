#include "plap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "plap/solver.hpp"

namespace plap {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("non-numeric field '" + t + "'");
  }
  if (pos != t.size()) throw std::invalid_argument("non-numeric field '" + t + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != std::floor(v)) throw std::invalid_argument("expected integer, got '" + s + "'");
  return static_cast<int>(v);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  return out;
}

void expect_header(std::ifstream& in, const std::string& expected, const std::string& path) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != expected) {
    throw std::invalid_argument("'" + path + "': expected header '" + expected + "'");
  }
}

}  // namespace

Graph load_edge_list(const std::string& path, std::optional<int> n) {
  auto in = open_in(path);
  expect_header(in, "src,dst,weight", path);
  std::vector<Edge> edges;
  int max_index = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3) throw std::invalid_argument("'" + path + "': bad row '" + line + "'");
    Edge e{parse_int(fields[0]), parse_int(fields[1]), parse_double(fields[2])};
    max_index = std::max({max_index, e.src, e.dst});
    edges.push_back(e);
  }
  const int count = n.value_or(max_index + 1);
  return Graph::from_edges(count, edges);
}

void save_edge_list(const Graph& g, const std::string& path) {
  auto out = open_out(path);
  out << "src,dst,weight\n";
  char buf[64];
  g.for_each_edge([&](int x, int y, double w) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", x, y, w);
    out << buf;
  });
}

LabelSet load_labels(const std::string& path, int n,
                     const std::optional<std::string>& truth_path) {
  auto in = open_in(path);
  expect_header(in, "index,value", path);
  std::vector<int> gamma;
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) throw std::invalid_argument("'" + path + "': bad row '" + line + "'");
    gamma.push_back(parse_int(fields[0]));
    values.push_back(parse_double(fields[1]));
  }
  std::optional<std::vector<double>> truth;
  if (truth_path) truth = load_vertex_values(*truth_path, n);
  return LabelSet(n, std::move(gamma), std::move(values), std::move(truth));
}

void save_labels(const LabelSet& labels, const std::string& path) {
  auto out = open_out(path);
  out << "index,value\n";
  char buf[64];
  for (int x : labels.gamma()) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g\n", x, labels.value(x));
    out << buf;
  }
}

std::vector<double> load_vertex_values(const std::string& path, int n) {
  auto in = open_in(path);
  expect_header(in, "index,value", path);
  std::vector<double> values(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<char> seen(n, 0);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) throw std::invalid_argument("'" + path + "': bad row '" + line + "'");
    const int idx = parse_int(fields[0]);
    if (idx < 0 || idx >= n) throw std::invalid_argument("'" + path + "': index out of range");
    if (seen[idx]) throw std::invalid_argument("'" + path + "': duplicate index");
    seen[idx] = 1;
    values[idx] = parse_double(fields[1]);
  }
  for (int x = 0; x < n; ++x) {
    if (!seen[x]) throw std::invalid_argument("'" + path + "': missing row for vertex " +
                                              std::to_string(x));
  }
  return values;
}

void save_vertex_values(const std::vector<double>& values, const std::string& path) {
  auto out = open_out(path);
  out << "index,value\n";
  char buf[64];
  for (std::size_t x = 0; x < values.size(); ++x) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", x, values[x]);
    out << buf;
  }
}

FeatureTable load_feature_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("'" + path + "': empty file");
  auto header = split_csv_line(trim(line));
  if (header.empty()) throw std::invalid_argument("'" + path + "': empty header");
  const bool has_label = trim(header.back()) == "label";
  const int d = static_cast<int>(header.size()) - (has_label ? 1 : 0);
  if (d < 1) throw std::invalid_argument("'" + path + "': no feature columns");

  FeatureTable table;
  table.features.d = d;
  table.features.generator = "file:" + path;
  if (has_label) table.labels.emplace();
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != d + (has_label ? 1 : 0)) {
      throw std::invalid_argument("'" + path + "': ragged row '" + line + "'");
    }
    for (int i = 0; i < d; ++i) table.features.coords.push_back(parse_double(fields[i]));
    if (has_label) table.labels->push_back(parse_int(fields.back()));
    ++table.features.n;
  }
  if (table.features.n < 2) throw std::invalid_argument("'" + path + "': need at least two rows");
  return table;
}

void save_point_cloud(const PointCloud& pc, const std::string& path) {
  auto out = open_out(path);
  for (int k = 0; k < pc.d; ++k) out << (k ? ",x" : "x") << k;
  out << "\n";
  char buf[64];
  for (int i = 0; i < pc.n; ++i) {
    auto p = pc.point(i);
    for (int k = 0; k < pc.d; ++k) {
      std::snprintf(buf, sizeof(buf), "%s%.17g", k ? "," : "", p[k]);
      out << buf;
    }
    out << "\n";
  }
}

void save_solution(const std::vector<double>& u, const std::string& path) {
  auto out = open_out(path);
  out << "index,u,label\n";
  const auto labels = classify(u);
  char buf[80];
  for (std::size_t x = 0; x < u.size(); ++x) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%d\n", x, u[x], labels[x]);
    out << buf;
  }
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
  auto out = open_out(path);
  out << "step,vertex,move_kind\n";
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const char* kind = i == 0 ? "start" : move_kind_name(traj.moves[i - 1]);
    out << i << "," << traj.states[i] << "," << kind << "\n";
  }
}

}  // namespace plap
