#pragma once

#include <vector>

#include "dirlap/graph.hpp"

namespace dirlap {

// Partition of V into certified expanders.
struct ExpanderDecomposition {
  std::vector<std::vector<Vertex>> parts;  // each sorted, ordered by smallest member
  std::vector<double> certificates;        // per part; +inf for singletons
  double phi_certified = 0.5;              // min certificate, clamped to 1/2
  double cross_fraction = 0.0;             // sum of part boundaries / vol(V)
  double phi_used = 0.0;                   // threshold after any halving
  bool operator==(const ExpanderDecomposition&) const = default;
};

struct DecomposeOptions {
  double phi_target = 0.05;
  double max_cross = 0.5;
  // Parts above this size use power iteration and are never certified whole.
  std::size_t dense_limit = 2048;
};

// Graph G(d) on weights d_i d_j / |d|_1. Self-loops of weight d_i^2/|d|_1
// make the degrees equal d exactly; they do not change the Laplacian.
UndirectedGraph product_reference_graph(const Vec& d);

struct SandwichConstants {
  double lo;
  double hi;
};
// (phi^2/4, 4/phi^2) relating L_g to D - d d^T / |d|_1 for a phi-expander.
SandwichConstants expander_sandwich_constants(const UndirectedGraph& g, double phi);

// lambda_2(D^{-1/2} L D^{-1/2}) / 2; +inf for a single vertex.
double cheeger_certificate(const UndirectedGraph& g);

ExpanderDecomposition expander_decompose(const UndirectedGraph& g, const DecomposeOptions& opts = {});

// Sweep direction by deterministic power iteration on the normalized Laplacian.
Vec fiedler_power_iteration(const UndirectedGraph& g, std::size_t iterations = 0);

}  // namespace dirlap
