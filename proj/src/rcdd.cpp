#include "dirlap/rcdd.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace dirlap {

namespace {

struct Adjacency {
  std::vector<std::vector<std::pair<Vertex, double>>> out, in;
  explicit Adjacency(const DirectedGraph& g) : out(g.n()), in(g.n()) {
    for (const auto& e : g.edges()) {
      out[e.tail].push_back({e.head, e.weight});
      in[e.head].push_back({e.tail, e.weight});
    }
  }
};

std::vector<char> membership(std::size_t n, const std::vector<Vertex>& s) {
  std::vector<char> in(n, 0);
  for (Vertex v : s) {
    if (v >= n) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v));
    in[v] = 1;
  }
  return in;
}

// Internal in-weight is summed per vertex in the same edge order as deg^-, so
// each member of S = V contributes exactly 1.
double psi_of(const DirectedGraph& g, const std::vector<char>& in_s) {
  const Vec& din = g.in_degree();
  Vec internal(g.n(), 0.0);
  for (const auto& e : g.edges())
    if (in_s[e.tail] && in_s[e.head]) internal[e.head] += e.weight;
  double total = 0.0;
  for (std::size_t v = 0; v < g.n(); ++v)
    if (in_s[v] && internal[v] > 0.0) total += internal[v] / din[v];
  return total;
}

double score_of(const Adjacency& adj, const Vec& din, Vertex v, const std::vector<char>& in_s) {
  double s = 0.0;
  for (auto [u, w] : adj.out[v])
    if (in_s[u]) s += w / din[u];
  for (auto [u, w] : adj.in[v])
    if (!in_s[u]) s -= w / din[v];
  return s;
}

}  // namespace

double psi(const DirectedGraph& g, const std::vector<Vertex>& s) {
  auto in_s = membership(g.n(), s);
  for (Vertex v : s)
    if (!(g.in_degree()[v] > 0.0)) throw Error(ErrorCode::ZeroInDegree, "vertex " + std::to_string(v));
  return psi_of(g, in_s);
}

double score(const DirectedGraph& g, Vertex v, const std::vector<Vertex>& s) {
  auto in_s = membership(g.n(), s);
  if (v >= g.n() || !in_s[v]) throw Error(ErrorCode::NotMember, "vertex " + std::to_string(v) + " not in S");
  const Vec& din = g.in_degree();
  for (const auto& e : g.edges())
    if (in_s[e.head] && !(din[e.head] > 0.0)) throw Error(ErrorCode::ZeroInDegree, "vertex " + std::to_string(e.head));
  if (!(din[v] > 0.0)) {
    bool has_in = false;
    for (const auto& e : g.edges()) has_in = has_in || e.head == v;
    if (has_in) throw Error(ErrorCode::ZeroInDegree, "vertex " + std::to_string(v));
  }
  Adjacency adj(g);
  return score_of(adj, din, v, in_s);
}

std::vector<Vertex> find_dd(const DirectedGraph& g, FindDDTrace* trace) {
  const std::size_t n = g.n();
  if (g.num_edges() == 0) throw Error(ErrorCode::ZeroInDegree, "graph has no edges");
  const Vec& din = g.in_degree();
  Adjacency adj(g);
  FindDDTrace local;
  FindDDTrace& t = trace ? *trace : local;
  t = FindDDTrace{};

  std::vector<char> in_s(n, 0);
  std::size_t size = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (din[v] > 0.0) {
      in_s[v] = 1;
      ++size;
    } else {
      t.zero_in.push_back(static_cast<Vertex>(v));
    }
  }
  if (size == 0) throw Error(ErrorCode::ZeroInDegree, "every vertex has zero in-degree");

  // Ordered by (-score, index): begin() is the argmax with the lowest index.
  std::vector<double> sc(n, 0.0);
  std::set<std::pair<double, Vertex>> order;
  for (std::size_t v = 0; v < n; ++v)
    if (in_s[v]) {
      sc[v] = score_of(adj, din, static_cast<Vertex>(v), in_s);
      order.insert({-sc[v], static_cast<Vertex>(v)});
    }

  double p = psi_of(g, in_s);
  t.psi_trace.push_back(p);
  const std::size_t max_steps = n / 2 + 1;
  while (p > 0.5 * static_cast<double>(size)) {
    if (t.eliminated.size() >= max_steps)
      throw Error(ErrorCode::CertificationFailed, "FindDD exceeded n/2 eliminations");
    Vertex x = order.begin()->second;
    order.erase(order.begin());
    in_s[x] = 0;
    --size;
    t.eliminated.push_back(x);
    std::vector<Vertex> touched;
    for (auto [u, w] : adj.out[x])
      if (in_s[u]) touched.push_back(u);
    for (auto [u, w] : adj.in[x])
      if (in_s[u]) touched.push_back(u);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (Vertex u : touched) {
      order.erase({-sc[u], u});
      sc[u] = score_of(adj, din, u, in_s);
      order.insert({-sc[u], u});
    }
    p = psi_of(g, in_s);
    t.psi_trace.push_back(p);
  }

  std::vector<Vertex> result;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_s[v]) continue;
    t.stop_set.push_back(static_cast<Vertex>(v));
    double internal = 0.0;
    for (auto [u, w] : adj.in[v])
      if (in_s[u]) internal += w;
    if (internal / din[v] > 0.75)
      t.filtered.push_back(static_cast<Vertex>(v));
    else
      result.push_back(static_cast<Vertex>(v));
  }
  return result;
}

RcddResult find_rcdd(const DirectedGraph& g) {
  if (g.n() == 0) throw Error(ErrorCode::BadParams, "empty graph");
  if (!is_eulerian(g)) throw Error(ErrorCode::NotEulerian, "find_rcdd input is not Eulerian");
  RcddResult res;
  res.first_pass = find_dd(g, &res.first_trace);
  res.psi_trace = res.first_trace.psi_trace;

  Subgraph sub = induced_subgraph(g, res.first_pass);
  DirectedGraph rev = reverse(sub.graph);
  std::vector<Vertex> second;
  if (rev.num_edges() == 0) {
    // No internal edges: every first-pass vertex already sends all its out-weight outside.
    second.resize(rev.n());
    for (std::size_t i = 0; i < rev.n(); ++i) second[i] = static_cast<Vertex>(i);
    res.notes.push_back("second pass skipped: induced subgraph has no edges");
  } else {
    second = find_dd(rev, &res.second_trace);
    res.psi_trace_second = res.second_trace.psi_trace;
    if (!res.second_trace.zero_in.empty())
      res.notes.push_back(std::to_string(res.second_trace.zero_in.size()) +
                          " vertices with zero in-degree in the reversed induced subgraph were dropped");
  }
  for (Vertex v : second) res.subset.push_back(sub.vertex_map[v]);
  std::sort(res.subset.begin(), res.subset.end());
  res.rho = rcdd_ratio(g, res.subset);
  return res;
}

double rcdd_ratio(const DirectedGraph& g, const std::vector<Vertex>& s) {
  auto in_s = membership(g.n(), s);
  Vec ext_in(g.n(), 0.0), ext_out(g.n(), 0.0);
  for (const auto& e : g.edges()) {
    if (in_s[e.head] && !in_s[e.tail]) ext_in[e.head] += e.weight;
    if (in_s[e.tail] && !in_s[e.head]) ext_out[e.tail] += e.weight;
  }
  double rho = 1.0;
  for (Vertex v : s) {
    double din = g.in_degree()[v], dout = g.out_degree()[v];
    rho = std::min(rho, din > 0.0 ? ext_in[v] / din : 0.0);
    rho = std::min(rho, dout > 0.0 ? ext_out[v] / dout : 0.0);
  }
  return rho;
}

bool verify_rcdd(const DirectedGraph& g, const std::vector<Vertex>& s, double rho) {
  auto in_s = membership(g.n(), s);
  Vec ext_in(g.n(), 0.0), ext_out(g.n(), 0.0);
  for (const auto& e : g.edges()) {
    if (in_s[e.head] && !in_s[e.tail]) ext_in[e.head] += e.weight;
    if (in_s[e.tail] && !in_s[e.head]) ext_out[e.tail] += e.weight;
  }
  for (Vertex v : s) {
    if (ext_in[v] < rho * g.in_degree()[v] * (1.0 - 1e-12)) return false;
    if (ext_out[v] < rho * g.out_degree()[v] * (1.0 - 1e-12)) return false;
  }
  return true;
}

}  // namespace dirlap
