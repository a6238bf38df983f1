#pragma once

#include <vector>

#include "dirlap/expander.hpp"
#include "dirlap/graph.hpp"

namespace dirlap {

struct BucketedGraph {
  std::vector<DirectedGraph> buckets;  // bucket i holds w in [w_min 2^i, w_min 2^{i+1})
  double w_min = 0.0;
  std::size_t P() const { return buckets.size(); }
};

BucketedGraph bucket_by_weight(const DirectedGraph& g);

// Degree-exact greedy patch: lowest index first, avoiding self-loops when another
// head is available.
DirectedGraph patch(const DirectedGraph& h);

struct DirectedSparsifyOptions {
  double phi_target = 0.05;
  std::size_t max_layers = 0;  // 0: 10 log2 n + 10
};

struct PatchedPart {
  std::size_t bucket;
  std::size_t layer;
  std::vector<Vertex> vertices;
  double certificate;
  std::size_t edges_in;
  std::size_t edges_out;
};

struct DirectedSparsifyReport {
  std::size_t buckets = 0;
  std::size_t max_layers_used = 0;
  std::vector<std::size_t> layers_per_bucket;
  std::size_t parts = 0;
  double phi_certified = 0.5;  // min over all decompositions used
  std::size_t edges_in = 0;
  std::size_t edges_out = 0;
  std::vector<PatchedPart> part_log;
  std::vector<std::vector<std::size_t>> remaining_per_layer;  // per bucket

  // 20 * 128 * P * layers / phi^2.
  double beta_budget() const;
};

struct DirectedSparsifyResult {
  DirectedGraph r;
  DirectedSparsifyReport report;
};

DirectedGraph sparsify_bucket(const DirectedGraph& g_i, const DirectedSparsifyOptions& opts,
                              DirectedSparsifyReport* report = nullptr, std::size_t bucket_index = 0);

DirectedSparsifyResult sparsify_directed(const DirectedGraph& g, const DirectedSparsifyOptions& opts = {});

}  // namespace dirlap
