#include "dirlap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dirlap {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotEulerian: return "NotEulerian";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::KernelViolation: return "KernelViolation";
    case ErrorCode::KernelMismatch: return "KernelMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::WeightSpreadTooLarge: return "WeightSpreadTooLarge";
    case ErrorCode::DegreeImbalance: return "DegreeImbalance";
    case ErrorCode::LayerBudgetExceeded: return "LayerBudgetExceeded";
    case ErrorCode::MassImbalance: return "MassImbalance";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::ZeroDegree: return "ZeroDegree";
    case ErrorCode::ZeroInDegree: return "ZeroInDegree";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

double DirectedGraph::total_weight() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.weight;
  return s;
}

void DirectedGraph::compute_degrees() {
  out_.assign(n_, 0.0);
  in_.assign(n_, 0.0);
  for (const auto& e : edges_) {
    out_[e.tail] += e.weight;
    in_[e.head] += e.weight;
  }
}

DirectedGraph DirectedGraph::from_sorted(std::size_t n, std::vector<Edge> edges) {
  DirectedGraph g(n);
  g.edges_ = std::move(edges);
  g.compute_degrees();
  return g;
}

DirectedGraph build(std::size_t n, std::vector<Edge> edges) {
  for (const auto& e : edges) {
    if (e.tail >= n || e.head >= n)
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) +
                      ") with n=" + std::to_string(n));
    if (!std::isfinite(e.weight)) throw Error(ErrorCode::NonFinite, "edge weight");
    if (e.weight < 0.0) throw Error(ErrorCode::NonPositiveWeight, "negative edge weight");
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  std::vector<Edge> merged;
  merged.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.weight == 0.0) continue;
    if (!merged.empty() && merged.back().tail == e.tail && merged.back().head == e.head)
      merged.back().weight += e.weight;
    else
      merged.push_back(e);
  }
  return DirectedGraph::from_sorted(n, std::move(merged));
}

UndirectedGraph build_undirected(std::size_t n, std::vector<UEdge> edges) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw Error(ErrorCode::IndexOutOfRange, "undirected edge endpoint");
    if (!std::isfinite(e.weight)) throw Error(ErrorCode::NonFinite, "edge weight");
    if (e.weight < 0.0) throw Error(ErrorCode::NonPositiveWeight, "negative edge weight");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::stable_sort(edges.begin(), edges.end(), [](const UEdge& a, const UEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  UndirectedGraph g(n);
  for (const auto& e : edges) {
    if (e.weight == 0.0) continue;
    if (!g.edges_.empty() && g.edges_.back().u == e.u && g.edges_.back().v == e.v)
      g.edges_.back().weight += e.weight;
    else
      g.edges_.push_back(e);
  }
  for (const auto& e : g.edges_) {
    g.deg_[e.u] += e.weight;
    if (e.v != e.u) g.deg_[e.v] += e.weight;
  }
  return g;
}

UndirectedGraph undirectify(const DirectedGraph& g) {
  std::vector<UEdge> es;
  es.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    // A self-loop keeps its full weight: (w + w) / 2.
    double w = e.tail == e.head ? e.weight : 0.5 * e.weight;
    es.push_back({e.tail, e.head, w});
  }
  return build_undirected(g.n(), std::move(es));
}

DirectedGraph to_bidirected(const UndirectedGraph& g) {
  std::vector<Edge> es;
  es.reserve(2 * g.num_edges());
  for (const auto& e : g.edges()) {
    es.push_back({e.u, e.v, e.weight});
    if (e.u != e.v) es.push_back({e.v, e.u, e.weight});
  }
  return build(g.n(), std::move(es));
}

DirectedGraph partial_symmetrize(const DirectedGraph& g, double beta, bool strict) {
  if (!(beta >= 0.0)) throw Error(ErrorCode::BadParams, "beta must be nonnegative");
  if (strict && !is_eulerian(g)) throw Error(ErrorCode::NotEulerian, "partial_symmetrize input");
  if (beta == 0.0) return g;
  return add(g, scale(to_bidirected(undirectify(g)), beta));
}

bool is_eulerian(const DirectedGraph& g, double tol) {
  double maxdeg = 1.0, maxdiff = 0.0;
  for (std::size_t v = 0; v < g.n(); ++v) {
    maxdeg = std::max({maxdeg, g.out_degree()[v], g.in_degree()[v]});
    maxdiff = std::max(maxdiff, std::abs(g.out_degree()[v] - g.in_degree()[v]));
  }
  return maxdiff <= tol * maxdeg;
}

namespace {

std::size_t reach_count(std::size_t n, const std::vector<std::size_t>& ptr,
                        const std::vector<Vertex>& adj) {
  if (n == 0) return 0;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (std::size_t k = ptr[v]; k < ptr[v + 1]; ++k) {
      Vertex u = adj[k];
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count;
}

void adjacency_lists(const DirectedGraph& g, bool reversed, std::vector<std::size_t>& ptr,
                     std::vector<Vertex>& adj) {
  ptr.assign(g.n() + 1, 0);
  for (const auto& e : g.edges()) ++ptr[(reversed ? e.head : e.tail) + 1];
  for (std::size_t v = 0; v < g.n(); ++v) ptr[v + 1] += ptr[v];
  adj.resize(g.num_edges());
  std::vector<std::size_t> pos(ptr.begin(), ptr.end() - 1);
  for (const auto& e : g.edges()) {
    if (reversed)
      adj[pos[e.head]++] = e.tail;
    else
      adj[pos[e.tail]++] = e.head;
  }
}

}  // namespace

bool is_strongly_connected(const DirectedGraph& g) {
  if (g.n() <= 1) return true;
  std::vector<std::size_t> ptr;
  std::vector<Vertex> adj;
  adjacency_lists(g, false, ptr, adj);
  if (reach_count(g.n(), ptr, adj) != g.n()) return false;
  adjacency_lists(g, true, ptr, adj);
  return reach_count(g.n(), ptr, adj) == g.n();
}

std::vector<std::vector<Vertex>> connected_components(const UndirectedGraph& g) {
  const std::size_t n = g.n();
  std::vector<std::size_t> ptr(n + 1, 0);
  for (const auto& e : g.edges()) {
    ++ptr[e.u + 1];
    ++ptr[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) ptr[v + 1] += ptr[v];
  std::vector<Vertex> adj(ptr[n]);
  std::vector<std::size_t> pos(ptr.begin(), ptr.end() - 1);
  for (const auto& e : g.edges()) {
    adj[pos[e.u]++] = e.v;
    adj[pos[e.v]++] = e.u;
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> members{static_cast<Vertex>(s)};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      Vertex v = members[i];
      for (std::size_t k = ptr[v]; k < ptr[v + 1]; ++k) {
        if (comp[adj[k]] < 0) {
          comp[adj[k]] = comp[s];
          members.push_back(adj[k]);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_connected(const UndirectedGraph& g) { return connected_components(g).size() <= 1; }

Subgraph induced_subgraph(const DirectedGraph& g, const std::vector<Vertex>& s) {
  std::vector<std::int64_t> local(g.n(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= g.n()) throw Error(ErrorCode::IndexOutOfRange, "induced_subgraph vertex");
    local[s[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Edge> es;
  for (const auto& e : g.edges()) {
    if (local[e.tail] >= 0 && local[e.head] >= 0)
      es.push_back({static_cast<Vertex>(local[e.tail]), static_cast<Vertex>(local[e.head]), e.weight});
  }
  return {build(s.size(), std::move(es)), s};
}

DirectedGraph add(const DirectedGraph& a, const DirectedGraph& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "add: vertex counts differ");
  std::vector<Edge> es(a.edges());
  es.insert(es.end(), b.edges().begin(), b.edges().end());
  return build(a.n(), std::move(es));
}

DirectedGraph scale(const DirectedGraph& a, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::BadParams, "scale factor must be positive");
  std::vector<Edge> es(a.edges());
  for (auto& e : es) e.weight *= c;
  return DirectedGraph::from_sorted(a.n(), std::move(es));
}

DirectedGraph reverse(const DirectedGraph& g) {
  std::vector<Edge> es;
  es.reserve(g.num_edges());
  for (const auto& e : g.edges()) es.push_back({e.head, e.tail, e.weight});
  return build(g.n(), std::move(es));
}

UndirectedGraph add(const UndirectedGraph& a, const UndirectedGraph& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "add: vertex counts differ");
  std::vector<UEdge> es(a.edges());
  es.insert(es.end(), b.edges().begin(), b.edges().end());
  return build_undirected(a.n(), std::move(es));
}

UndirectedGraph scale(const UndirectedGraph& a, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::BadParams, "scale factor must be positive");
  std::vector<UEdge> es(a.edges());
  for (auto& e : es) e.weight *= c;
  return build_undirected(a.n(), std::move(es));
}

double max_weight(const DirectedGraph& g) {
  double m = 0.0;
  for (const auto& e : g.edges()) m = std::max(m, e.weight);
  return m;
}

double min_weight(const DirectedGraph& g) {
  double m = 0.0;
  for (const auto& e : g.edges())
    if (m == 0.0 || e.weight < m) m = e.weight;
  return m;
}

LaplacianView::LaplacianView(const DirectedGraph& g) : n_(g.n()), directed_(true) {
  diag_ = g.out_degree();
  out_ptr_.assign(n_ + 1, 0);
  in_ptr_.assign(n_ + 1, 0);
  for (const auto& e : g.edges()) {
    ++out_ptr_[e.tail + 1];
    ++in_ptr_[e.head + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) {
    out_ptr_[v + 1] += out_ptr_[v];
    in_ptr_[v + 1] += in_ptr_[v];
  }
  out_dst_.resize(g.num_edges());
  out_w_.resize(g.num_edges());
  in_src_.resize(g.num_edges());
  in_w_.resize(g.num_edges());
  std::vector<std::size_t> op(out_ptr_.begin(), out_ptr_.end() - 1);
  std::vector<std::size_t> ip(in_ptr_.begin(), in_ptr_.end() - 1);
  for (const auto& e : g.edges()) {
    out_dst_[op[e.tail]] = e.head;
    out_w_[op[e.tail]++] = e.weight;
    in_src_[ip[e.head]] = e.tail;
    in_w_[ip[e.head]++] = e.weight;
  }
}

LaplacianView::LaplacianView(const UndirectedGraph& g) : n_(g.n()), directed_(false) {
  diag_ = g.degree();
  in_ptr_.assign(n_ + 1, 0);
  for (const auto& e : g.edges()) {
    ++in_ptr_[e.u + 1];
    if (e.u != e.v) ++in_ptr_[e.v + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) in_ptr_[v + 1] += in_ptr_[v];
  in_src_.resize(in_ptr_[n_]);
  in_w_.resize(in_ptr_[n_]);
  std::vector<std::size_t> ip(in_ptr_.begin(), in_ptr_.end() - 1);
  for (const auto& e : g.edges()) {
    in_src_[ip[e.u]] = e.v;
    in_w_[ip[e.u]++] = e.weight;
    if (e.u != e.v) {
      in_src_[ip[e.v]] = e.u;
      in_w_[ip[e.v]++] = e.weight;
    }
  }
  out_ptr_ = in_ptr_;
  out_dst_ = in_src_;
  out_w_ = in_w_;
}

void LaplacianView::adjacency_transpose(const double* x, double* y) const {
  for (std::size_t v = 0; v < n_; ++v) {
    double s = 0.0;
    for (std::size_t k = in_ptr_[v]; k < in_ptr_[v + 1]; ++k) s += in_w_[k] * x[in_src_[k]];
    y[v] = s;
  }
}

void LaplacianView::adjacency(const double* x, double* y) const {
  for (std::size_t v = 0; v < n_; ++v) {
    double s = 0.0;
    for (std::size_t k = out_ptr_[v]; k < out_ptr_[v + 1]; ++k) s += out_w_[k] * x[out_dst_[k]];
    y[v] = s;
  }
}

void LaplacianView::apply(const double* x, double* y) const {
  adjacency_transpose(x, y);
  for (std::size_t v = 0; v < n_; ++v) y[v] = diag_[v] * x[v] - y[v];
}

void LaplacianView::apply_transpose(const double* x, double* y) const {
  adjacency(x, y);
  for (std::size_t v = 0; v < n_; ++v) y[v] = diag_[v] * x[v] - y[v];
}

Vec LaplacianView::apply(const Vec& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "LaplacianView::apply");
  Vec y(n_);
  apply(x.data(), y.data());
  return y;
}

Vec LaplacianView::apply_transpose(const Vec& x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "LaplacianView::apply_transpose");
  Vec y(n_);
  apply_transpose(x.data(), y.data());
  return y;
}

}  // namespace dirlap
