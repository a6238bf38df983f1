#pragma once

#include <string>
#include <vector>

#include "dirlap/graph.hpp"

namespace dirlap {

// Sum over v in S of the in-weight of v arriving from S, relative to deg^-(v).
double psi(const DirectedGraph& g, const std::vector<Vertex>& s);
// Sum over S of score(., S) equals 2 Psi(S) - |S|; removing v lowers Psi by score(v, S) + 1.
double score(const DirectedGraph& g, Vertex v, const std::vector<Vertex>& s);

struct FindDDTrace {
  std::vector<Vertex> eliminated;   // in elimination order
  std::vector<double> psi_trace;    // Psi(S_0), Psi(S_1), ...
  std::vector<Vertex> stop_set;     // S at loop exit
  std::vector<Vertex> filtered;     // removed by the 3/4 filter
  std::vector<Vertex> zero_in;      // excluded up front (deg^- = 0)
};

// Greedy elimination by maximum score, lowest index on ties, then the 3/4 filter.
std::vector<Vertex> find_dd(const DirectedGraph& g, FindDDTrace* trace = nullptr);

struct RcddResult {
  std::vector<Vertex> subset;
  double rho = 0.0;  // measured minimum external fraction
  std::vector<double> psi_trace;         // first pass
  std::vector<double> psi_trace_second;  // second pass, on the reversed induced subgraph
  std::vector<Vertex> first_pass;
  FindDDTrace first_trace;
  FindDDTrace second_trace;
  std::vector<std::string> notes;
};

RcddResult find_rcdd(const DirectedGraph& g);

// Minimum over s in S of the in- and out-weight fraction of s outside S (1 if S is empty).
double rcdd_ratio(const DirectedGraph& g, const std::vector<Vertex>& s);
bool verify_rcdd(const DirectedGraph& g, const std::vector<Vertex>& s, double rho);

}  // namespace dirlap
