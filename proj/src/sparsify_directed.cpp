#include "dirlap/sparsify_directed.hpp"

#include <algorithm>
#include <cmath>

namespace dirlap {

double DirectedSparsifyReport::beta_budget() const {
  double phi = std::max(phi_certified, 1e-300);
  return 20.0 * 128.0 * static_cast<double>(std::max<std::size_t>(buckets, 1)) *
         static_cast<double>(std::max<std::size_t>(max_layers_used, 1)) / (phi * phi);
}

BucketedGraph bucket_by_weight(const DirectedGraph& g) {
  BucketedGraph out;
  out.w_min = min_weight(g);
  if (g.num_edges() == 0) return out;
  std::vector<std::vector<Edge>> lists;
  for (const auto& e : g.edges()) {
    std::size_t i = static_cast<std::size_t>(std::floor(std::log2(e.weight / out.w_min)));
    while (i > 0 && e.weight < std::ldexp(out.w_min, static_cast<int>(i))) --i;
    while (e.weight >= std::ldexp(out.w_min, static_cast<int>(i + 1))) ++i;
    if (lists.size() <= i) lists.resize(i + 1);
    lists[i].push_back(e);
  }
  for (auto& l : lists) out.buckets.push_back(DirectedGraph::from_sorted(g.n(), std::move(l)));
  return out;
}

DirectedGraph patch(const DirectedGraph& h) {
  const std::size_t n = h.n();
  Vec a = h.out_degree(), b = h.in_degree();
  double total = 0.0;
  for (double x : a) total += x;
  std::vector<Edge> es;
  std::size_t i = 0, j = 0;
  auto next_pos = [&](const Vec& v, std::size_t k) {
    while (k < n && v[k] <= 0.0) ++k;
    return k;
  };
  i = next_pos(a, 0);
  j = next_pos(b, 0);
  while (i < n && j < n) {
    std::size_t jj = j;
    if (jj == i) {
      std::size_t alt = next_pos(b, i + 1);
      if (alt < n) jj = alt;
    }
    double w = std::min(a[i], b[jj]);
    es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(jj), w});
    if (w == a[i]) {
      a[i] = 0.0;
      b[jj] -= w;
    } else {
      b[jj] = 0.0;
      a[i] -= w;
    }
    i = next_pos(a, i);
    j = next_pos(b, j);
  }
  double residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) residual += a[k] + b[k];
  if (residual > 1e-9 * std::max(total, 1.0))
    throw Error(ErrorCode::DegreeImbalance, "patch residual " + std::to_string(residual));
  return build(n, std::move(es));
}

DirectedGraph sparsify_bucket(const DirectedGraph& g_i, const DirectedSparsifyOptions& opts,
                              DirectedSparsifyReport* report, std::size_t bucket_index) {
  const std::size_t n = g_i.n();
  std::size_t max_layers = opts.max_layers;
  if (max_layers == 0) max_layers = static_cast<std::size_t>(10.0 * std::log2(std::max<double>(2.0, n)) + 10.0);
  std::vector<Edge> remaining = g_i.edges();
  std::vector<Edge> result;
  std::vector<std::size_t> remaining_log;
  std::size_t layer = 0;
  DecomposeOptions dopts;
  dopts.phi_target = opts.phi_target;
  while (!remaining.empty()) {
    if (layer == max_layers)
      throw Error(ErrorCode::LayerBudgetExceeded, std::to_string(remaining.size()) + " edges left after " +
                                                      std::to_string(max_layers) + " layers");
    remaining_log.push_back(remaining.size());
    std::vector<UEdge> support;
    for (const auto& e : remaining)
      if (e.tail != e.head) support.push_back({e.tail, e.head, 1.0});
    UndirectedGraph h = build_undirected(n, std::move(support));
    std::vector<UEdge> unit(h.edges());
    for (auto& e : unit) e.weight = 1.0;
    h = build_undirected(n, std::move(unit));
    ExpanderDecomposition dec = expander_decompose(h, dopts);
    std::vector<std::size_t> part_of(n);
    for (std::size_t p = 0; p < dec.parts.size(); ++p)
      for (Vertex v : dec.parts[p]) part_of[v] = p;
    std::vector<std::vector<Edge>> inside(dec.parts.size());
    std::vector<Edge> rest;
    for (const auto& e : remaining) {
      if (part_of[e.tail] == part_of[e.head])
        inside[part_of[e.tail]].push_back(e);
      else
        rest.push_back(e);
    }
    std::vector<std::int64_t> local(n, -1);
    for (std::size_t p = 0; p < dec.parts.size(); ++p) {
      if (inside[p].empty()) continue;
      const auto& verts = dec.parts[p];
      for (std::size_t k = 0; k < verts.size(); ++k) local[verts[k]] = static_cast<std::int64_t>(k);
      std::vector<Edge> loc;
      for (const auto& e : inside[p])
        loc.push_back({static_cast<Vertex>(local[e.tail]), static_cast<Vertex>(local[e.head]), e.weight});
      DirectedGraph patched = patch(build(verts.size(), std::move(loc)));
      for (const auto& e : patched.edges()) result.push_back({verts[e.tail], verts[e.head], e.weight});
      if (report) {
        report->parts++;
        if (verts.size() > 1) report->phi_certified = std::min(report->phi_certified, dec.certificates[p]);
        report->part_log.push_back({bucket_index, layer, verts, dec.certificates[p], inside[p].size(),
                                    patched.num_edges()});
      }
      for (Vertex v : verts) local[v] = -1;
    }
    remaining = std::move(rest);
    ++layer;
  }
  if (report) {
    report->layers_per_bucket.push_back(layer);
    report->max_layers_used = std::max(report->max_layers_used, layer);
    report->remaining_per_layer.push_back(std::move(remaining_log));
  }
  return build(n, std::move(result));
}

DirectedSparsifyResult sparsify_directed(const DirectedGraph& g, const DirectedSparsifyOptions& opts) {
  if (!is_eulerian(g)) throw Error(ErrorCode::NotEulerian, "sparsify_directed input");
  if (!is_strongly_connected(g)) throw Error(ErrorCode::NotStronglyConnected, "sparsify_directed input");
  DirectedSparsifyResult res;
  res.report.edges_in = g.num_edges();
  BucketedGraph bg = bucket_by_weight(g);
  res.report.buckets = bg.P();
  std::vector<Edge> all;
  for (std::size_t i = 0; i < bg.P(); ++i) {
    DirectedGraph part = sparsify_bucket(bg.buckets[i], opts, &res.report, i);
    all.insert(all.end(), part.edges().begin(), part.edges().end());
  }
  res.r = build(g.n(), std::move(all));
  res.report.edges_out = res.r.num_edges();
  return res;
}

}  // namespace dirlap
