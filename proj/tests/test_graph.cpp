#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pcmri/graph.hpp"
#include "pcmri/spectral.hpp"

using namespace pcmri;

TEST_SUITE("graph") {

TEST_CASE("representing graph of a matrix") {
  IncompletePCM pcm(4);
  pcm.set_comparison(0, 1, 2);
  pcm.set_comparison(1, 2, 4);
  pcm.set_comparison(2, 3, 2);
  pcm.set_comparison(0, 3, 5);
  const ComparisonGraph g = representing_graph(pcm);
  CHECK(g.edge_count() == 4);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(3, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.degree_sequence() == std::vector<int>{2, 2, 2, 2});
  CHECK(is_connected(g));
  const Matrix b = g.adjacency_matrix();
  CHECK(b.trace() == 0.0);
  CHECK((b - b.transpose()).norm() == 0.0);
  CHECK(format_degree_sequence(g.degree_sequence()) == "[2,2,2,2]");
}

TEST_CASE("edge list construction") {
  const Slot edges[] = {{0, 1}, {1, 2}};
  const ComparisonGraph g(3, edges);
  CHECK(g.edge_count() == 2);
  CHECK(g.max_degree() == 2);
  CHECK(g.min_degree() == 1);
  const Slot repeated[] = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(ComparisonGraph(3, repeated), std::invalid_argument);
  const Slot loop[] = {{1, 1}};
  CHECK_THROWS_AS(ComparisonGraph(3, loop), std::invalid_argument);
  CHECK_THROWS_AS(ComparisonGraph(0), std::invalid_argument);
  const Slot missing[] = {{0, 2}, {1, 3}};
  const auto c4 = ComparisonGraph::complete_minus(4, missing);
  CHECK(c4.edge_count() == 4);
  CHECK(c4.degree_sequence() == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("connectivity agrees with union-find on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    ComparisonGraph g(n);
    std::vector<Slot> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) {
          g.add_edge(i, j);
          edges.push_back({i, j});
        }
    CHECK(is_connected(g) == oracle::connected_union_find(n, edges));
  }
}

TEST_CASE("spectral radius of known graphs") {
  for (int n = 2; n <= 10; ++n)
    CHECK(spectral_radius(ComparisonGraph::complete_minus(n, {})) ==
          doctest::Approx(n - 1).epsilon(1e-12));
  const Slot c4_missing[] = {{0, 2}, {1, 3}};
  CHECK(spectral_radius(ComparisonGraph::complete_minus(4, c4_missing)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  const Slot c5[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  CHECK(spectral_radius(ComparisonGraph(5, c5)) == doctest::Approx(2.0).epsilon(1e-12));
  const Slot k5e[] = {{0, 1}};
  CHECK(spectral_radius(ComparisonGraph::complete_minus(5, k5e)) ==
        doctest::Approx(3.6457513).epsilon(1e-7));
  const Slot k6e[] = {{0, 1}};
  CHECK(spectral_radius(ComparisonGraph::complete_minus(6, k6e)) ==
        doctest::Approx(4.7015621).epsilon(1e-7));
  // Star K_{1,3}: sqrt(3).
  const Slot star[] = {{0, 1}, {0, 2}, {0, 3}};
  CHECK(spectral_radius(ComparisonGraph(4, star)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(spectral_radius(ComparisonGraph(3)) == 0.0);
}

TEST_CASE("spectral radius matches the QR spectrum and degree bounds") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    ComparisonGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 2) g.add_edge(i, j);
    const double rho = spectral_radius(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(g.adjacency_matrix()));
    const double expected = solver.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(rho == doctest::Approx(expected).epsilon(1e-10));
    const double average = 2.0 * g.edge_count() / n;
    CHECK(rho >= average - 1e-9);
    CHECK(rho <= g.max_degree() + 1e-9);
  }
}

}
