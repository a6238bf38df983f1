#pragma once

#include <limits>

#include "dirlap/graph.hpp"

namespace dirlap {

struct SparsifierReport {
  // Measured by the dense oracle on request; NaN otherwise.
  double kappa_measured = std::numeric_limits<double>::quiet_NaN();
  // Certified by the barrier invariants: lo L_g <= L_H <= hi L_g.
  double certified_lo = 1.0;
  double certified_hi = 1.0;
  std::size_t edges_in = 0;
  std::size_t edges_out = 0;
  std::size_t buckets = 0;
  std::size_t buckets_sparsified = 0;
  bool fast_path = true;
  // Before self-loop insertion: max_v (deg_g(v) - deg_H(v)).
  double degree_residual = 0.0;
  // After self-loop insertion: max_v |deg_out(v) - deg_g(v)|.
  double degree_error = 0.0;
};

// Barrier-method sparsifier with d = max(6, ((k+1)/(k-1))^2) steps per rank
// in each dyadic weight bucket, rescaled to the geometric centre of its bounds.
UndirectedGraph spectral_sparsify(const UndirectedGraph& g, double kappa_target, SparsifierReport* report = nullptr);

// H scaled below L_g, plus self-loops that restore every degree.
UndirectedGraph sparsify_deg(const UndirectedGraph& g, double kappa_target, SparsifierReport* report = nullptr);

}  // namespace dirlap
