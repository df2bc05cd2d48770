#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "plap/graph.hpp"
#include "plap/rng.hpp"
#include "test_util.hpp"

using namespace plap;
using test_util::make_graph;
using test_util::path_graph;
using test_util::random_connected;
using test_util::triangle_graph;
using test_util::two_triangles;

TEST_CASE("from_edges validation") {
  CHECK_THROWS_AS(make_graph(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(2, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(2, {{0, 2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(2, {{0, 1, -0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), std::invalid_argument);
}

TEST_CASE("csr structure and accessors") {
  const Graph g = make_graph(4, {{2, 0, 0.5}, {0, 1, 2.0}, {1, 2, 1.0}});
  CHECK(g.size() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(0) == doctest::Approx(2.5));
  CHECK(g.weight(0, 2) == doctest::Approx(0.5));
  CHECK(g.weight(2, 0) == doctest::Approx(0.5));
  CHECK(g.weight(0, 3) == 0.0);
  auto nb = g.neighbors(0);
  CHECK(std::is_sorted(nb.begin(), nb.end()));
  CHECK(!g.is_connected());  // vertex 3 isolated
  CHECK(path_graph(4).is_connected());
  CHECK_THROWS_AS(g.degree(7), std::invalid_argument);

  int visits = 0;
  g.for_each_edge([&](int x, int y, double) {
    CHECK(x < y);
    ++visits;
  });
  CHECK(visits == 3);
}

TEST_CASE("graph_distance") {
  const Graph g = path_graph(4);
  const std::vector<int> a{0};
  CHECK(graph_distance(g, 0, a) == 0);
  const std::vector<int> d{3};
  CHECK(graph_distance(g, 0, d) == 3);

  const Graph split = make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK(graph_distance(split, 0, d) == kUnreachable);
  CHECK_THROWS_AS(graph_distance(g, 0, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("graph_distance triangle inequality") {
  Rng rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    const Graph g = random_connected(rng, 3 + static_cast<int>(rng.next_below(10)));
    const int n = g.size();
    const int x = static_cast<int>(rng.next_below(n));
    const int y = static_cast<int>(rng.next_below(n));
    const int z = static_cast<int>(rng.next_below(n));
    const std::vector<int> ys{y}, zs{z};
    CHECK(graph_distance(g, x, zs) <= graph_distance(g, x, ys) + graph_distance(g, y, zs));
  }
}

TEST_CASE("delta examples") {
  const Graph tri = triangle_graph();
  CHECK(delta(tri, LabelSet(3, {0, 1, 2}, {0, 0, 0})) == doctest::Approx(1.0));
  CHECK(delta(tri, LabelSet(3, {0, 2}, {0, 1})) == doctest::Approx(0.5));
  const Graph path = path_graph(3);
  CHECK(delta(path, LabelSet(3, {0, 2}, {0, 1})) == doctest::Approx(0.0));

  const Graph iso = make_graph(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(delta(iso, LabelSet(3, {0}, {0.0})), StructuralError);
}

TEST_CASE("check_a1 examples") {
  CHECK(check_a1(triangle_graph(), LabelSet(3, {0, 1, 2}, {0, 0, 0})));
  CHECK(check_a1(triangle_graph(), LabelSet(3, {0, 2}, {0, 1})));
  CHECK(!check_a1(path_graph(3), LabelSet(3, {0, 2}, {0, 1})));
}

TEST_CASE("delta positive iff a1, exhaustive over labelings") {
  Rng rng(7);
  std::vector<Graph> graphs;
  graphs.push_back(path_graph(5));
  graphs.push_back(make_graph(6, {{0, 1, 1.0},
                                  {1, 2, 1.0},
                                  {2, 3, 1.0},
                                  {3, 4, 1.0},
                                  {4, 5, 1.0},
                                  {5, 0, 1.0}}));
  graphs.push_back(random_connected(rng, 6));
  for (const Graph& g : graphs) {
    const int n = g.size();
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> gamma;
      std::vector<double> values;
      for (int x = 0; x < n; ++x) {
        if (mask & (1 << x)) {
          gamma.push_back(x);
          values.push_back(0.0);
        }
      }
      const LabelSet labels(n, gamma, values);
      CHECK((delta(g, labels) > 0.0) == check_a1(g, labels));
    }
  }
}

TEST_CASE("grad_sup_norm") {
  const Graph tri = triangle_graph();
  CHECK(grad_sup_norm(tri, std::vector<double>{1.0, 1.0, 1.0}) == 0.0);
  CHECK(grad_sup_norm(tri, std::vector<double>{0.0, 0.5, 1.0}) == doctest::Approx(1.0));
  // No edge 0-2 on the path, so the 100 gap is seen via edge 1-2.
  const Graph path = path_graph(3);
  CHECK(grad_sup_norm(path, std::vector<double>{0.0, 0.0, 100.0}) == doctest::Approx(100.0));
  CHECK_THROWS_AS(grad_sup_norm(path, std::vector<double>{0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("grad_sup_norm zero iff componentwise constant") {
  const Graph split = make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK(grad_sup_norm(split, std::vector<double>{2.0, 2.0, -1.0, -1.0}) == 0.0);
  CHECK(grad_sup_norm(split, std::vector<double>{2.0, 2.0, -1.0, 0.0}) > 0.0);
}

TEST_CASE("boundary_band on joined triangles") {
  const Graph g = two_triangles();
  const std::vector<int> truth{0, 0, 0, 1, 1, 1};
  CHECK(boundary_band(g, truth, 1) == std::vector<int>{2, 3});
  CHECK(boundary_band(g, truth, 2) == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(boundary_band(g, truth, 10) == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(boundary_band(g, std::vector<int>{0, 0, 0, 0, 0, 0}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundary_band(g, truth, -1), std::invalid_argument);
}

TEST_CASE("boundary_band monotone and covers inter-class edges") {
  Rng rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const Graph g = random_connected(rng, 4 + static_cast<int>(rng.next_below(8)));
    const int n = g.size();
    std::vector<int> truth(n);
    truth[0] = 0;
    truth[1] = 1;
    for (int x = 2; x < n; ++x) truth[x] = rng.next_double() < 0.5 ? 1 : 0;
    std::vector<int> prev;
    for (int m = 0; m <= 4; ++m) {
      const auto band = boundary_band(g, truth, m);
      CHECK(std::includes(band.begin(), band.end(), prev.begin(), prev.end()));
      prev = band;
      if (m >= 1) {
        g.for_each_edge([&](int x, int y, double) {
          if (truth[x] != truth[y]) {
            CHECK(std::binary_search(band.begin(), band.end(), x));
            CHECK(std::binary_search(band.begin(), band.end(), y));
          }
        });
      }
    }
  }
}

TEST_CASE("label set validation") {
  CHECK_THROWS_AS(LabelSet(3, {0, 0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet(3, {3}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet(3, {0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(LabelSet(3, {0}, {1.0}, std::vector<double>{0.0, 0.0, 0.0}),
                  std::invalid_argument);

  const LabelSet labels(4, {2, 0}, {1.0, 0.0},
                        std::vector<double>{0.0, 1.0, 1.0, 0.0});
  CHECK(std::is_sorted(labels.gamma().begin(), labels.gamma().end()));
  CHECK(labels.value(2) == 1.0);
  CHECK_THROWS_AS(labels.value(1), std::invalid_argument);
  CHECK(labels.binary_truth() == std::vector<int>{0, 1, 1, 0});

  const LabelSet no_truth(2, {0}, {0.25});
  CHECK_THROWS_AS(no_truth.binary_truth(), std::invalid_argument);
  const LabelSet frac(2, {0}, {0.25}, std::vector<double>{0.25, 0.5});
  CHECK_THROWS_AS(frac.binary_truth(), std::invalid_argument);
}

TEST_CASE("distances_to_set") {
  const Graph g = two_triangles();
  const auto dist = distances_to_set(g, std::vector<int>{0});
  CHECK(dist == std::vector<int>{0, 1, 1, 2, 3, 3});
}
