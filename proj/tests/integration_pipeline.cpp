// End-to-end library pipelines checked against the dense oracle.

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dirlap/chain.hpp"
#include "dirlap/dense.hpp"
#include "dirlap/generators.hpp"
#include "dirlap/io.hpp"
#include "dirlap/rcdd.hpp"
#include "dirlap/sparsify_directed.hpp"
#include "dirlap/sparsify_undirected.hpp"
#include "dirlap/square.hpp"

using namespace dirlap;
using oracle::DenseMatrix;

namespace {
std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "dirlap_pipeline";
  std::filesystem::create_directories(dir);
  return dir / name;
}

double rel_error(const DirectedGraph& g, const Vec& b, const Vec& x) {
  DenseMatrix l = oracle::laplacian(g);
  DenseMatrix u = oracle::symmetrization(l);
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXd xs = oracle::pseudoinverse(l) * (bv.array() - bv.mean()).matrix();
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd e = xv - xs;
  return std::sqrt(e.dot(u * e) / xs.dot(u * xs));
}
}  // namespace

TEST_CASE("file round trip then solve") {
  auto g = random_eulerian(64, 21);
  auto path = scratch("g.el");
  write_edge_list_file(path.string(), g);
  auto h = read_graph_file(path.string());
  REQUIRE(h == g);
  Vec b(h.n());
  for (std::size_t i = 0; i < h.n(); ++i) b[i] = static_cast<double>(i % 7) - 3.0;
  auto res = solve_eulerian(h, b, 1e-8);
  CHECK(rel_error(h, b, res.x) <= 1e-8);
  double sum = 0.0;
  for (double v : res.x) sum += v;
  CHECK(std::abs(sum) < 1e-9);
}

TEST_CASE("matrix market input solves like the edge list") {
  auto g = directed_torus(5);
  std::ostringstream mm;
  mm << "%%MatrixMarket matrix coordinate real general\n" << g.n() << ' ' << g.n() << ' '
     << g.num_edges() + g.n() << "\n";
  for (std::size_t v = 0; v < g.n(); ++v) mm << v + 1 << ' ' << v + 1 << ' ' << g.out_degree()[v] << "\n";
  for (const auto& e : g.edges()) mm << e.head + 1 << ' ' << e.tail + 1 << ' ' << -e.weight << "\n";
  auto path = scratch("torus.mtx");
  std::ofstream(path) << mm.str();
  auto h = read_graph_file(path.string());
  CHECK(h == g);
  Vec b(g.n(), 0.0);
  b[0] = 1.0;
  b[12] = -1.0;
  CHECK(rel_error(g, b, solve_eulerian(h, b, 1e-6).x) <= 1e-6);
}

TEST_CASE("weighted graphs with a wide weight spread") {
  auto g = add(scale(directed_cycle(40), 1000.0), random_eulerian(40, 3));
  Vec b(40);
  for (std::size_t i = 0; i < 40; ++i) b[i] = std::sin(static_cast<double>(i));
  auto res = solve_eulerian(g, b, 1e-6);
  CHECK(rel_error(g, b, res.x) <= 1e-6);
  CHECK(res.report.lambda_hat_heuristic);
}

TEST_CASE("user-supplied lambda_hat changes the depth of the chain") {
  auto g = directed_cycle(30);
  ChainParams p;
  p.lambda_hat = 0.3;
  auto shallow = build_chain(g, p);
  CHECK(shallow.k == 0);
  Vec b(30, 0.0);
  b[0] = 1.0;
  b[15] = -1.0;
  // k = 0 is a plain Richardson solve on the normalized Laplacian.
  auto res = solve_with_chain(shallow, g, b, 1e-6);
  CHECK(rel_error(g, b, res.x) <= 1e-6);
  p.lambda_hat = 0.0;
  auto deep = build_chain(g, p);
  CHECK(deep.k == 1);
}

TEST_CASE("two-level chain") {
  auto g = random_eulerian(24, 5);
  ChainParams p;
  p.max_levels = 2;
  p.d = 3;
  auto ch = build_chain(g, p);
  REQUIRE(ch.k == 2);
  CHECK(ch.levels[2].g0 == ch.levels[1].chain->graphs.back());
  Vec b(24);
  for (std::size_t i = 0; i < 24; ++i) b[i] = std::cos(2.0 * static_cast<double>(i));
  auto res = solve_with_chain(ch, g, b, 1e-4);
  CHECK(rel_error(g, b, res.x) <= 1e-4);
}

TEST_CASE("sparsifier outputs feed each other") {
  auto g = random_eulerian(50, 8, 30);
  auto r = sparsify_directed(g).r;
  CHECK(is_eulerian(r));
  auto h = sparsify_deg(undirectify(g), 4.0);
  auto g3 = add(scale(to_bidirected(h), 8.0), r);
  CHECK(is_eulerian(g3));
  auto sq = sparse_square(lazy_graph(g3, 0.25, g3.out_degree()), 0.25);
  CHECK(is_strongly_connected(sq));
  auto rc = find_rcdd(sq);
  CHECK(verify_rcdd(sq, rc.subset, 0.25));
}
