#include "dirlap/square.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dirlap/parallel.hpp"

namespace dirlap {

BipartiteProduct BipartiteProduct::make(Vec a, Vec b) {
  double sa = 0.0, sb = 0.0;
  for (double x : a) {
    if (!(x >= 0.0)) throw Error(ErrorCode::NonPositiveWeight, "product masses must be nonnegative");
    sa += x;
  }
  for (double x : b) {
    if (!(x >= 0.0)) throw Error(ErrorCode::NonPositiveWeight, "product masses must be nonnegative");
    sb += x;
  }
  if (std::abs(sa - sb) > 1e-9 * std::max({sa, sb, 1e-300}))
    throw Error(ErrorCode::MassImbalance, "|a|_1 != |b|_1");
  return {std::move(a), std::move(b), sb};
}

oracle::DenseMatrix bipartite_product_laplacian(const BipartiteProduct& p) {
  const auto na = static_cast<Eigen::Index>(p.a.size()), nb = static_cast<Eigen::Index>(p.b.size());
  oracle::DenseMatrix l = oracle::DenseMatrix::Zero(na + nb, na + nb);
  for (Eigen::Index i = 0; i < na; ++i) l(i, i) = p.a[i];
  for (Eigen::Index j = 0; j < nb; ++j) l(na + j, na + j) = p.b[j];
  if (p.d <= 0.0) return l;
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < nb; ++j) {
      l(i, na + j) = -p.a[i] * p.b[j] / p.d;
      l(na + j, i) = l(i, na + j);
    }
  return l;
}

UndirectedGraph bipartite_product_graph(const BipartiteProduct& p) {
  const std::size_t na = p.a.size();
  std::vector<UEdge> es;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < p.b.size(); ++j)
      if (p.a[i] > 0 && p.b[j] > 0)
        es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(na + j), p.a[i] * p.b[j] / p.d});
  return build_undirected(na + p.b.size(), std::move(es));
}

UndirectedGraph patch_bipartite(const Vec& a, const Vec& b, const Vec& dA, const Vec& dB) {
  const std::size_t na = a.size(), nb = b.size();
  if (dA.size() != na || dB.size() != nb) throw Error(ErrorCode::DimensionMismatch, "patch_bipartite");
  Vec ra(na), rb(nb);
  double ta = 0.0, tb = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    ra[i] = a[i] - dA[i];
    scale = std::max(scale, a[i]);
    if (ra[i] < -1e-12 * std::max(a[i], 1e-300)) throw Error(ErrorCode::MassImbalance, "dA exceeds a");
    ra[i] = std::max(ra[i], 0.0);
    ta += ra[i];
  }
  for (std::size_t j = 0; j < nb; ++j) {
    rb[j] = b[j] - dB[j];
    scale = std::max(scale, b[j]);
    if (rb[j] < -1e-12 * std::max(b[j], 1e-300)) throw Error(ErrorCode::MassImbalance, "dB exceeds b");
    rb[j] = std::max(rb[j], 0.0);
    tb += rb[j];
  }
  double total_a = std::accumulate(a.begin(), a.end(), 0.0);
  if (std::abs(ta - tb) > 1e-9 * std::max(total_a, 1e-300))
    throw Error(ErrorCode::MassImbalance, "residual masses differ");
  std::vector<UEdge> es;
  std::size_t i = 0, j = 0;
  while (true) {
    while (i < na && ra[i] <= 0.0) ++i;
    while (j < nb && rb[j] <= 0.0) ++j;
    if (i == na || j == nb) break;
    double w = std::min(ra[i], rb[j]);
    es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(na + j), w});
    if (w == ra[i]) {
      ra[i] = 0.0;
      rb[j] -= w;
    } else {
      rb[j] = 0.0;
      ra[i] -= w;
    }
  }
  return build_undirected(na + nb, std::move(es));
}

bool exact_product_affordable(std::size_t nnz_a, std::size_t nnz_b, double eps) {
  double lhs = static_cast<double>(nnz_a) * static_cast<double>(nnz_b);
  double rhs = 4.0 * static_cast<double>(nnz_a + nnz_b) / std::pow(eps, 4.0);
  return lhs <= rhs;
}

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0, 1/2]");
}

std::vector<std::vector<std::size_t>> dyadic_groups(const Vec& x) {
  double top = 0.0;
  for (double v : x) top = std::max(top, v);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) continue;
    std::size_t k = static_cast<std::size_t>(std::floor(std::log2(top / x[i])));
    if (groups.size() <= k) groups.resize(k + 1);
    groups[k].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

// Up to k distinct offsets t^2 mod q, topped up with the smallest unused values.
std::vector<std::size_t> residue_offsets(std::size_t q, std::size_t k) {
  std::vector<char> used(q, 0);
  std::vector<std::size_t> offs;
  for (std::size_t t = 0; t < q && offs.size() < k; ++t) {
    std::size_t o = (t * t) % q;
    if (!used[o]) {
      used[o] = 1;
      offs.push_back(o);
    }
  }
  for (std::size_t o = 0; o < q && offs.size() < k; ++o)
    if (!used[o]) {
      used[o] = 1;
      offs.push_back(o);
    }
  std::sort(offs.begin(), offs.end());
  return offs;
}

}  // namespace

UndirectedGraph sparse_bipartite(const Vec& a, const Vec& b, double eps, const BipartiteOptions& opts,
                                 BipartiteReport* report) {
  check_eps(eps);
  BipartiteProduct p = BipartiteProduct::make(a, b);
  const std::size_t na = a.size(), nb = b.size();
  BipartiteReport rep;
  rep.eps_inner = eps / 128.0;
  std::size_t nnz_a = 0, nnz_b = 0;
  for (double x : a) nnz_a += x > 0;
  for (double x : b) nnz_b += x > 0;
  if (p.d == 0.0 || (!opts.force_template && exact_product_affordable(nnz_a, nnz_b, eps))) {
    UndirectedGraph g = bipartite_product_graph(p);
    rep.edges = g.num_edges();
    rep.blocks_exact = 1;
    if (report) *report = rep;
    return g;
  }
  rep.exact = false;
  const double ep = rep.eps_inner;
  std::size_t k = opts.template_degree ? opts.template_degree
                                       : static_cast<std::size_t>(std::ceil(1.0 / (ep * ep)));
  rep.template_degree = k;
  auto ga = dyadic_groups(a), gb = dyadic_groups(b);
  std::vector<UEdge> h1;
  for (const auto& pa : ga)
    for (const auto& qb : gb) {
      // Orient so the template walks the larger side.
      const bool left_small = pa.size() <= qb.size();
      const auto& small = left_small ? pa : qb;
      const auto& large = left_small ? qb : pa;
      const std::size_t q = large.size();
      const std::size_t deg = std::min(k, q);
      auto emit = [&](std::size_t s, std::size_t l, double mult) {
        std::size_t i = left_small ? s : l, j = left_small ? l : s;
        h1.push_back({static_cast<Vertex>(i), static_cast<Vertex>(na + j), a[i] * b[j] / p.d * mult});
      };
      if (deg == q) {
        for (std::size_t s : small)
          for (std::size_t l : large) emit(s, l, 1.0);
        rep.blocks_exact++;
        continue;
      }
      rep.blocks_template++;
      auto offs = residue_offsets(q, deg);
      const double mult = static_cast<double>(q) / static_cast<double>(deg);
      for (std::size_t si = 0; si < small.size(); ++si) {
        std::size_t base = si * q / small.size();
        for (std::size_t o : offs) emit(small[si], large[(base + o) % q], mult);
      }
    }
  UndirectedGraph g1 = build_undirected(na + nb, std::move(h1));
  // H2 = H1 / (1 + eps'), shrunk further if any degree would overshoot.
  double c = 1.0 / (1.0 + ep);
  for (std::size_t i = 0; i < na; ++i)
    if (g1.degree()[i] > 0) c = std::min(c, a[i] / g1.degree()[i]);
  for (std::size_t j = 0; j < nb; ++j)
    if (g1.degree()[na + j] > 0) c = std::min(c, b[j] / g1.degree()[na + j]);
  rep.rescale = c;
  std::vector<UEdge> h2(g1.edges());
  for (auto& e : h2) e.weight *= c;
  UndirectedGraph g2 = build_undirected(na + nb, h2);
  Vec dA(g2.degree().begin(), g2.degree().begin() + static_cast<std::ptrdiff_t>(na));
  Vec dB(g2.degree().begin() + static_cast<std::ptrdiff_t>(na), g2.degree().end());
  for (std::size_t i = 0; i < na; ++i) dA[i] = std::min(dA[i], a[i]);
  for (std::size_t j = 0; j < nb; ++j) dB[j] = std::min(dB[j], b[j]);
  UndirectedGraph r = patch_bipartite(a, b, dA, dB);
  rep.patch_edges = r.num_edges();
  h2.insert(h2.end(), r.edges().begin(), r.edges().end());
  UndirectedGraph out = build_undirected(na + nb, std::move(h2));
  rep.edges = out.num_edges();
  if (report) *report = rep;
  return out;
}

DirectedGraph sparse_product(const Vec& a, const Vec& b, double eps, const BipartiteOptions& opts,
                             BipartiteReport* report) {
  check_eps(eps);
  const std::size_t na = a.size(), nb = b.size();
  UndirectedGraph bip = sparse_bipartite(a, b, eps / 128.0, opts, report);
  std::vector<Edge> es;
  es.reserve(bip.num_edges());
  for (const auto& e : bip.edges()) es.push_back({e.u, static_cast<Vertex>(e.v - na), e.weight});
  return build(std::max(na, nb), std::move(es));
}

namespace {

struct Product {
  bool exact = true;
  std::vector<Edge> edges;  // global indices, sorted by tail then head
};

DirectedGraph square_impl(const DirectedGraph& g, double eps, const BipartiteOptions& opts, bool force_exact,
                          SquareReport* report) {
  const std::size_t n = g.n();
  for (std::size_t v = 0; v < n; ++v)
    if ((g.in_degree()[v] > 0 || g.out_degree()[v] > 0) && !(g.out_degree()[v] > 0))
      throw Error(ErrorCode::ZeroDegree, "vertex " + std::to_string(v) + " has zero out-degree");
  // in-lists grouped by head, ordered by tail.
  std::vector<std::size_t> in_ptr(n + 1, 0), out_ptr(n + 1, 0);
  for (const auto& e : g.edges()) {
    ++in_ptr[e.head + 1];
    ++out_ptr[e.tail + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    in_ptr[v + 1] += in_ptr[v];
    out_ptr[v + 1] += out_ptr[v];
  }
  std::vector<Edge> in_edges(g.num_edges());
  {
    std::vector<std::size_t> pos(in_ptr.begin(), in_ptr.end() - 1);
    for (const auto& e : g.edges()) in_edges[pos[e.head]++] = e;
  }
  const auto& out_edges = g.edges();
  std::vector<Product> products(n);
  SquareReport rep;
  rep.edges_in = g.num_edges();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t ni = in_ptr[i + 1] - in_ptr[i], no = out_ptr[i + 1] - out_ptr[i];
    if (ni == 0 || no == 0) continue;
    if (force_exact || (!opts.force_template && exact_product_affordable(ni, no, eps / 128.0))) {
      rep.products_exact++;
      continue;
    }
    Vec a(ni), b(no);
    for (std::size_t k = 0; k < ni; ++k) a[k] = in_edges[in_ptr[i] + k].weight;
    for (std::size_t k = 0; k < no; ++k) b[k] = out_edges[out_ptr[i] + k].weight;
    // Masses agree up to rounding for Eulerian input.
    double sa = std::accumulate(a.begin(), a.end(), 0.0), sb = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(sa - sb) > 1e-9 * sa) throw Error(ErrorCode::NotEulerian, "sparse_square input");
    UndirectedGraph bip = sparse_bipartite(a, b, eps / 128.0, opts);
    Product& p = products[i];
    p.exact = false;
    for (const auto& e : bip.edges())
      p.edges.push_back({in_edges[in_ptr[i] + e.u].tail, out_edges[out_ptr[i] + (e.v - ni)].head, e.weight});
    std::sort(p.edges.begin(), p.edges.end(),
              [](const Edge& x, const Edge& y) { return x.tail != y.tail ? x.tail < y.tail : x.head < y.head; });
    rep.products_template++;
  }
  std::vector<std::vector<Edge>> chunk_edges(worker_count());
  parallel_chunks(n, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    Vec acc(n, 0.0);
    std::vector<char> touched(n, 0);
    std::vector<Vertex> list;
    auto& out = chunk_edges[w];
    for (std::size_t c = lo; c < hi; ++c) {
      list.clear();
      for (std::size_t k = out_ptr[c]; k < out_ptr[c + 1]; ++k) {
        const Edge& e1 = out_edges[k];
        const std::size_t i = e1.head;
        const Product& p = products[i];
        if (p.exact) {
          const double f = e1.weight / g.out_degree()[i];
          for (std::size_t q = out_ptr[i]; q < out_ptr[i + 1]; ++q) {
            const Edge& e2 = out_edges[q];
            if (!touched[e2.head]) {
              touched[e2.head] = 1;
              list.push_back(e2.head);
            }
            acc[e2.head] += f * e2.weight;
          }
        } else {
          auto it = std::lower_bound(p.edges.begin(), p.edges.end(), c,
                                     [](const Edge& x, std::size_t t) { return x.tail < t; });
          for (; it != p.edges.end() && it->tail == c; ++it) {
            if (!touched[it->head]) {
              touched[it->head] = 1;
              list.push_back(it->head);
            }
            acc[it->head] += it->weight;
          }
        }
      }
      std::sort(list.begin(), list.end());
      for (Vertex r : list) {
        if (acc[r] > 0.0) out.push_back({static_cast<Vertex>(c), r, acc[r]});
        acc[r] = 0.0;
        touched[r] = 0;
      }
    }
  });
  std::vector<Edge> all;
  for (auto& ce : chunk_edges) all.insert(all.end(), ce.begin(), ce.end());
  DirectedGraph out = DirectedGraph::from_sorted(n, std::move(all));
  rep.edges_out = out.num_edges();
  if (report) *report = rep;
  return out;
}

}  // namespace

DirectedGraph exact_square(const DirectedGraph& g) { return square_impl(g, 0.5, {}, true, nullptr); }

DirectedGraph sparse_square(const DirectedGraph& g, double eps, const BipartiteOptions& opts, SquareReport* report) {
  check_eps(eps);
  if (!is_eulerian(g)) throw Error(ErrorCode::NotEulerian, "sparse_square input");
  return square_impl(g, eps, opts, false, report);
}

}  // namespace dirlap
