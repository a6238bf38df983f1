#pragma once

#include <vector>

#include "dirlap/dense.hpp"
#include "dirlap/graph.hpp"

namespace dirlap {

// Masses of the bipartite product G(a,b); |a|_1 = |b|_1 = d.
struct BipartiteProduct {
  Vec a;
  Vec b;
  double d = 0.0;
  static BipartiteProduct make(Vec a, Vec b);
};

// Bipartite graphs live on na + nb vertices: left i -> i, right j -> na + j.
oracle::DenseMatrix bipartite_product_laplacian(const BipartiteProduct& p);
UndirectedGraph bipartite_product_graph(const BipartiteProduct& p);

// Greedy degree repair with degrees exactly (a - dA, b - dB).
UndirectedGraph patch_bipartite(const Vec& a, const Vec& b, const Vec& dA, const Vec& dB);

struct BipartiteOptions {
  bool force_template = false;      // skip the exact fallback
  std::size_t template_degree = 0;  // 0: ceil(1/eps'^2)
};

struct BipartiteReport {
  bool exact = true;
  double eps_inner = 0.0;
  std::size_t blocks_exact = 0;
  std::size_t blocks_template = 0;
  std::size_t template_degree = 0;
  double rescale = 1.0;
  std::size_t patch_edges = 0;
  std::size_t edges = 0;
};

bool exact_product_affordable(std::size_t nnz_a, std::size_t nnz_b, double eps);

UndirectedGraph sparse_bipartite(const Vec& a, const Vec& b, double eps, const BipartiteOptions& opts = {},
                                 BipartiteReport* report = nullptr);

// Directed product on max(|a|,|b|) vertices: edge i -> j with weight near
// a_i b_j / d, out-degrees a and in-degrees b. Uses sparse_bipartite at eps/128.
DirectedGraph sparse_product(const Vec& a, const Vec& b, double eps, const BipartiteOptions& opts = {},
                             BipartiteReport* report = nullptr);

struct SquareReport {
  std::size_t products_exact = 0;
  std::size_t products_template = 0;
  std::size_t edges_in = 0;
  std::size_t edges_out = 0;
};

// Adjacency A D^{-1} A: edge c -> r with weight sum_i w(c,i) w(i,r) / out(i).
DirectedGraph exact_square(const DirectedGraph& g);
DirectedGraph sparse_square(const DirectedGraph& g, double eps, const BipartiteOptions& opts = {},
                            SquareReport* report = nullptr);

}  // namespace dirlap
