#include "doctest.h"

#include "dirlap/dense.hpp"
#include "dirlap/generators.hpp"
#include "dirlap/graph.hpp"

using namespace dirlap;

TEST_CASE("build merges parallel edges and drops zero weights") {
  auto g = build(3, {{0, 1, 1.0}, {0, 1, 2.0}, {1, 2, 0.0}, {2, 0, 1.5}});
  REQUIRE(g.num_edges() == 2);
  CHECK(g.edges()[0] == Edge{0, 1, 3.0});
  CHECK(g.out_degree() == Vec{3.0, 0.0, 1.5});
  CHECK(g.in_degree() == Vec{1.5, 3.0, 0.0});
}

TEST_CASE("build rejects bad input") {
  CHECK_THROWS_AS(build(2, {{0, 2, 1.0}}), Error);
  try {
    build(2, {{0, 1, -1.0}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveWeight);
  }
}

TEST_CASE("laplacian convention: L = D - A^T, self-loops cancel") {
  auto g = build(2, {{0, 1, 2.0}, {1, 0, 2.0}, {0, 0, 5.0}});
  auto l = oracle::laplacian(g);
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(1, 0) == doctest::Approx(-2.0));
  CHECK(g.out_degree()[0] == 7.0);
  // 1^T L = 0 always, L 1 = 0 for Eulerian.
  CHECK((Eigen::RowVectorXd::Ones(2) * l).norm() < 1e-14);
  CHECK((l * Eigen::VectorXd::Ones(2)).norm() < 1e-14);
}

TEST_CASE("undirectify halves directed weights, self-loops keep full weight") {
  auto g = build(3, {{0, 1, 2.0}, {1, 0, 4.0}, {1, 2, 1.0}, {2, 2, 3.0}});
  auto u = undirectify(g);
  REQUIRE(u.num_edges() == 3);
  CHECK(u.edges()[0] == UEdge{0, 1, 3.0});
  CHECK(u.edges()[1] == UEdge{1, 2, 0.5});
  CHECK(u.edges()[2] == UEdge{2, 2, 3.0});
  auto b = to_bidirected(u);
  CHECK(b.out_degree() == b.in_degree());
  CHECK(b.out_degree() == u.degree());
}

TEST_CASE("symmetrized Laplacian of an Eulerian graph equals the undirectification Laplacian") {
  auto g = random_eulerian(12, 5);
  auto u = oracle::laplacian(undirectify(g));
  auto s = oracle::symmetrization(oracle::laplacian(g));
  CHECK((u - s).norm() < 1e-12);
}

TEST_CASE("partial symmetrization adds beta U(G)") {
  auto g = directed_cycle(4);
  auto p = partial_symmetrize(g, 2.0);
  oracle::DenseMatrix want = oracle::laplacian(g) + 2.0 * oracle::laplacian(undirectify(g));
  CHECK((oracle::laplacian(p) - want).norm() < 1e-12);
  CHECK(p.out_degree() == Vec(4, 3.0));
  CHECK_THROWS_AS(partial_symmetrize(build(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 1.0), Error);
}

TEST_CASE("connectivity predicates") {
  CHECK(is_strongly_connected(directed_cycle(5)));
  auto path = build(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK_FALSE(is_strongly_connected(path));
  CHECK_FALSE(is_eulerian(path));
  CHECK(is_eulerian(directed_torus(3)));
  auto two = build(4, {{0, 1, 1.0}, {1, 0, 1.0}, {2, 3, 1.0}, {3, 2, 1.0}});
  CHECK(connected_components(undirectify(two)).size() == 2);
}

TEST_CASE("induced subgraph keeps internal edges and the vertex map") {
  auto g = directed_cycle(5);
  auto s = induced_subgraph(g, {1, 2, 4});
  CHECK(s.graph.n() == 3);
  CHECK(s.vertex_map == std::vector<Vertex>{1, 2, 4});
  REQUIRE(s.graph.num_edges() == 1);
  CHECK(s.graph.edges()[0] == Edge{0, 1, 1.0});
}

TEST_CASE("LaplacianView matches the dense oracle") {
  auto g = random_eulerian(15, 9);
  LaplacianView v(g);
  auto l = oracle::laplacian(g);
  Vec x(15);
  for (std::size_t i = 0; i < 15; ++i) x[i] = std::sin(0.7 * static_cast<double>(i));
  Eigen::Map<Eigen::VectorXd> xv(x.data(), 15);
  Vec y = v.apply(x), yt = v.apply_transpose(x);
  Eigen::VectorXd want = l * xv, want_t = l.transpose() * xv;
  for (Eigen::Index i = 0; i < 15; ++i) {
    CHECK(y[static_cast<std::size_t>(i)] == doctest::Approx(want(i)).epsilon(1e-12));
    CHECK(yt[static_cast<std::size_t>(i)] == doctest::Approx(want_t(i)).epsilon(1e-12));
  }
}

TEST_CASE("add, scale, reverse") {
  auto g = directed_cycle(3);
  auto r = reverse(g);
  CHECK(r.edges()[0] == Edge{0, 2, 1.0});
  auto s = add(g, scale(r, 2.0));
  CHECK(s.out_degree() == Vec(3, 3.0));
  CHECK(max_weight(s) == 2.0);
  CHECK(min_weight(s) == 1.0);
  CHECK_THROWS_AS(scale(g, 0.0), Error);
}
