#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dirlap/error.hpp"

namespace dirlap {

using Vertex = std::uint32_t;
using Vec = std::vector<double>;

struct Edge {
  Vertex tail;
  Vertex head;
  double weight;
  bool operator==(const Edge&) const = default;
};

struct UEdge {
  Vertex u;  // u <= v after canonicalization
  Vertex v;
  double weight;
  bool operator==(const UEdge&) const = default;
};

// Immutable weighted digraph. Edges are sorted by (tail, head) with parallel
// edges merged. Self-loops are stored but cancel in the Laplacian.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::size_t n) : n_(n), out_(n, 0.0), in_(n, 0.0) {}

  std::size_t n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vec& out_degree() const { return out_; }
  const Vec& in_degree() const { return in_; }
  double total_weight() const;
  bool operator==(const DirectedGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_ && out_ == o.out_ && in_ == o.in_;
  }

  // Trusted constructor for edges already sorted by (tail, head), unique, positive.
  static DirectedGraph from_sorted(std::size_t n, std::vector<Edge> edges);

 private:
  friend DirectedGraph build(std::size_t, std::vector<Edge>);
  void compute_degrees();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  Vec out_;
  Vec in_;
};

class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::size_t n) : n_(n), deg_(n, 0.0) {}

  std::size_t n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<UEdge>& edges() const { return edges_; }
  // Weighted degree; a self-loop of weight w adds w.
  const Vec& degree() const { return deg_; }
  bool operator==(const UndirectedGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_ && deg_ == o.deg_;
  }

 private:
  friend UndirectedGraph build_undirected(std::size_t, std::vector<UEdge>);
  std::size_t n_ = 0;
  std::vector<UEdge> edges_;
  Vec deg_;
};

// Weight-zero edges are dropped, parallel edges merged.
DirectedGraph build(std::size_t n, std::vector<Edge> edges);
UndirectedGraph build_undirected(std::size_t n, std::vector<UEdge> edges);

UndirectedGraph undirectify(const DirectedGraph& g);
// Each undirected edge {u,v} of weight w becomes u->v and v->u of weight w.
DirectedGraph to_bidirected(const UndirectedGraph& g);
// beta * U(g) + g.
DirectedGraph partial_symmetrize(const DirectedGraph& g, double beta, bool strict = true);

bool is_eulerian(const DirectedGraph& g, double tol = 1e-9);
bool is_strongly_connected(const DirectedGraph& g);
bool is_connected(const UndirectedGraph& g);
std::vector<std::vector<Vertex>> connected_components(const UndirectedGraph& g);

struct Subgraph {
  DirectedGraph graph;
  std::vector<Vertex> vertex_map;  // local index -> original index
};
Subgraph induced_subgraph(const DirectedGraph& g, const std::vector<Vertex>& s);

DirectedGraph add(const DirectedGraph& a, const DirectedGraph& b);
DirectedGraph scale(const DirectedGraph& a, double c);
DirectedGraph reverse(const DirectedGraph& g);
UndirectedGraph add(const UndirectedGraph& a, const UndirectedGraph& b);
UndirectedGraph scale(const UndirectedGraph& a, double c);

double max_weight(const DirectedGraph& g);
double min_weight(const DirectedGraph& g);

// Compiled row-compressed Laplacian for matvecs.
// directed: L = D - A^T with D = diag(out-degree). undirected: L = D - A.
class LaplacianView {
 public:
  explicit LaplacianView(const DirectedGraph& g);
  explicit LaplacianView(const UndirectedGraph& g);

  std::size_t n() const { return n_; }
  bool directed() const { return directed_; }
  const Vec& diagonal() const { return diag_; }

  void apply(const double* x, double* y) const;            // y = L x
  void apply_transpose(const double* x, double* y) const;  // y = L^T x
  Vec apply(const Vec& x) const;
  Vec apply_transpose(const Vec& x) const;
  // y = A^T x (directed) or A x (undirected), self-loops included.
  void adjacency_transpose(const double* x, double* y) const;
  void adjacency(const double* x, double* y) const;

 private:
  std::size_t n_ = 0;
  bool directed_ = true;
  Vec diag_;  // out-degree including self-loops
  // in_*: entries grouped by head (row of A^T); out_*: grouped by tail.
  std::vector<std::size_t> in_ptr_, out_ptr_;
  std::vector<Vertex> in_src_, out_dst_;
  Vec in_w_, out_w_;
};

}  // namespace dirlap
