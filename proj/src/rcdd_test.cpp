#include "doctest.h"

#include "dirlap/generators.hpp"
#include "dirlap/rcdd.hpp"

using namespace dirlap;

TEST_CASE("potential and score on the 5-cycle") {
  auto g = directed_cycle(5);
  CHECK(psi(g, {0, 1, 2, 3, 4}) == 5.0);
  CHECK(psi(g, {}) == 0.0);
  CHECK(psi(g, {1, 2, 3}) == 2.0);
  for (Vertex v = 0; v < 5; ++v) CHECK(score(g, v, {0, 1, 2, 3, 4}) == 1.0);
  CHECK_THROWS_AS(score(g, 0, {1, 2}), Error);
}

// Summing the definitions gives sum score = 2 Psi - |S|; the two agree only at S = V.
TEST_CASE("score sum identity") {
  auto g = random_eulerian(40, 3);
  std::vector<Vertex> s;
  for (Vertex v = 0; v < 40; v += 3) s.push_back(v);
  double total = 0.0;
  for (Vertex v : s) total += score(g, v, s);
  CHECK(total == doctest::Approx(2.0 * psi(g, s) - static_cast<double>(s.size())).epsilon(1e-10));
  std::vector<Vertex> all(40);
  for (Vertex v = 0; v < 40; ++v) all[v] = v;
  double full = 0.0;
  for (Vertex v : all) full += score(g, v, all);
  CHECK(full == doctest::Approx(psi(g, all)).epsilon(1e-12));
}

TEST_CASE("FindDD hand trace on the 5-cycle") {
  FindDDTrace t;
  auto s = find_dd(directed_cycle(5), &t);
  CHECK(t.eliminated == std::vector<Vertex>{0, 2});
  CHECK(t.stop_set == std::vector<Vertex>{1, 3, 4});
  CHECK(t.filtered == std::vector<Vertex>{4});
  CHECK(s == std::vector<Vertex>{1, 3});
}

TEST_CASE("FindDD potential drops and size bounds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_eulerian(80, seed);
    FindDDTrace t;
    auto s = find_dd(g, &t);
    CHECK(t.psi_trace.front() == doctest::Approx(80.0));
    // Each drop is score + 1 >= average score + 1 = 2 Psi / |S| > 1.
    for (std::size_t i = 1; i < t.psi_trace.size(); ++i) {
      double size = 80.0 - static_cast<double>(i - 1);
      CHECK(t.psi_trace[i - 1] - t.psi_trace[i] >= 2.0 * t.psi_trace[i - 1] / size - 1e-9);
    }
    CHECK(t.stop_set.size() * 2 >= 80);
    CHECK(s.size() * 4 >= t.stop_set.size());
  }
}

TEST_CASE("find_rcdd returns verified quarter-RCDD sets of size at least n/64") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_eulerian(64 + 7 * seed, seed);
    auto r = find_rcdd(g);
    CHECK(verify_rcdd(g, r.subset, 0.25));
    CHECK(r.rho >= 0.25);
    CHECK(r.subset.size() * 64 >= g.n());
  }
  auto c5 = find_rcdd(directed_cycle(5));
  CHECK(verify_rcdd(directed_cycle(5), c5.subset, 0.25));
  CHECK_FALSE(c5.subset.empty());
}

TEST_CASE("complete bidirected graph yields a large subset") {
  std::vector<Edge> es;
  for (Vertex i = 0; i < 8; ++i)
    for (Vertex j = 0; j < 8; ++j)
      if (i != j) es.push_back({i, j, 1.0});
  auto g = build(8, es);
  auto r = find_rcdd(g);
  CHECK(verify_rcdd(g, r.subset, 0.25));
  CHECK(r.subset.size() >= 2);
}

TEST_CASE("verify_rcdd edge cases") {
  auto g = directed_cycle(6);
  CHECK(verify_rcdd(g, {}, 0.25));
  CHECK_FALSE(verify_rcdd(g, {0, 1, 2, 3, 4, 5}, 0.25));
  CHECK(verify_rcdd(g, {0, 2, 4}, 1.0));
}

TEST_CASE("degenerate input") { CHECK_THROWS_AS(find_dd(build(3, {})), Error); }
