#include "doctest.h"

#include "dirlap/dense.hpp"
#include "dirlap/generators.hpp"
#include "dirlap/richardson.hpp"

using namespace dirlap;
using oracle::DenseMatrix;

namespace {
Vec probe(std::size_t n, double phase) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::cos(phase * static_cast<double>(i + 1));
  return v;
}
}  // namespace

TEST_CASE("exact pseudoinverse converges in one step") {
  auto g = random_eulerian(12, 4);
  Vec d = g.out_degree();
  DenseMatrix m = oracle::normalize(oracle::laplacian(g), d);
  std::vector<Vec> ker{sqrt_degree_kernel(d)};
  auto mop = from_dense(m, ker, "M");
  auto zop = from_dense(oracle::pseudoinverse(m), ker, "Z");
  Vec b = mop.apply(probe(12, 0.3));
  Vec x = richardson(mop, zop, b, {1.0, 1});
  Vec r = mop.apply(x);
  for (std::size_t i = 0; i < 12; ++i) CHECK(r[i] == doctest::Approx(b[i]).epsilon(1e-10));
  CHECK(std::abs(dot(x, ker[0])) < 1e-12);
}

TEST_CASE("error contracts by the preconditioner quality per step") {
  // M = L, Z = (1 + c)^{-1} L^+ has quality c/(1+c).
  auto g = random_eulerian(10, 8);
  DenseMatrix l = oracle::laplacian(g);
  std::vector<Vec> ker{Vec(10, 1.0 / std::sqrt(10.0))};
  auto mop = from_dense(l, ker);
  const double c = 0.5;
  DenseMatrix z = oracle::pseudoinverse(l) / (1.0 + c);
  double q = oracle::precond_quality(z, l, oracle::symmetrization(l));
  CHECK(q == doctest::Approx(c / (1.0 + c)));
  auto zop = from_dense(z, ker);
  Vec xs = project_out_kernel(probe(10, 1.1), ker);
  Vec b = mop.apply(xs);
  for (std::size_t n : {1, 3, 6}) {
    Vec x = richardson(mop, zop, b, {1.0, n});
    Vec e(10);
    for (std::size_t i = 0; i < 10; ++i) e[i] = x[i] - xs[i];
    CHECK(norm2(e) <= std::pow(q, static_cast<double>(n)) * norm2(xs) * (1 + 1e-9));
  }
}

TEST_CASE("as_operator is linear and counts applications") {
  auto g = directed_cycle(6);
  Vec d = g.out_degree();
  auto m = normalized_laplacian_operator(g, d);
  auto z = scaled_identity(6, 0.5, m.kernel_basis());
  auto op = as_operator(m, z, {1.0, 4});
  Vec x = probe(6, 0.4), y = probe(6, 2.2), s(6);
  for (std::size_t i = 0; i < 6; ++i) s[i] = 2.0 * x[i] + y[i];
  Vec ox = op.apply(x), oy = op.apply(y), os = op.apply(s);
  for (std::size_t i = 0; i < 6; ++i) CHECK(os[i] == doctest::Approx(2.0 * ox[i] + oy[i]).epsilon(1e-12));
  CHECK(op.applications() == 3);
  CHECK(z.applications() == 12);
}

TEST_CASE("normalized operator matches the dense oracle") {
  auto g = random_eulerian(9, 1);
  Vec d = g.out_degree();
  DenseMatrix want = oracle::normalize(oracle::laplacian(g), d);
  DenseMatrix got = materialize(normalized_laplacian_operator(g, d));
  CHECK((want - got).norm() < 1e-12);
  Vec k = sqrt_degree_kernel(d);
  Vec mk = normalized_laplacian_operator(g, d).apply(k);
  CHECK(norm2(mk) < 1e-12);
}

TEST_CASE("divergence is reported") {
  auto g = directed_cycle(5);
  auto m = normalized_laplacian_operator(g, g.out_degree());
  auto z = scaled_identity(5, 1.0, m.kernel_basis());
  // eta = 3 pushes the eigenvalue 2 of the cycle outside the stable region.
  Vec b = project_out_kernel(probe(5, 0.9), m.kernel_basis());
  CHECK_THROWS_AS(richardson(m, z, b, {3.0, 400}), Error);
  CHECK_THROWS_AS(richardson(m, z, b, {0.0, 1}), Error);
}
