#include "dirlap/expander.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "dirlap/dense.hpp"

namespace dirlap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

UndirectedGraph induced(const UndirectedGraph& g, const std::vector<Vertex>& s, std::vector<std::int64_t>& local) {
  for (std::size_t i = 0; i < s.size(); ++i) local[s[i]] = static_cast<std::int64_t>(i);
  std::vector<UEdge> es;
  for (const auto& e : g.edges())
    if (local[e.u] >= 0 && local[e.v] >= 0 && e.u != e.v)
      es.push_back({static_cast<Vertex>(local[e.u]), static_cast<Vertex>(local[e.v]), e.weight});
  for (Vertex v : s) local[v] = -1;
  return build_undirected(s.size(), std::move(es));
}

Eigen::MatrixXd normalized_laplacian(const UndirectedGraph& g) {
  Eigen::MatrixXd l = oracle::laplacian(g);
  Eigen::VectorXd s(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) s(i) = g.degree()[i] > 0 ? 1.0 / std::sqrt(g.degree()[i]) : 0.0;
  return s.asDiagonal() * l * s.asDiagonal();
}

void canonical_sign(Vec& x) {
  for (double v : x) {
    if (std::abs(v) > 1e-12) {
      if (v < 0) for (double& y : x) y = -y;
      return;
    }
  }
}

// Best prefix of the order sorted by f; returns the prefix length.
std::size_t sweep_cut(const UndirectedGraph& h, const Vec& f) {
  const std::size_t n = h.n();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });
  std::vector<std::size_t> ptr(n + 1, 0);
  for (const auto& e : h.edges()) {
    ++ptr[e.u + 1];
    ++ptr[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) ptr[v + 1] += ptr[v];
  std::vector<Vertex> adj(ptr[n]);
  Vec wts(ptr[n]);
  std::vector<std::size_t> pos(ptr.begin(), ptr.end() - 1);
  for (const auto& e : h.edges()) {
    adj[pos[e.u]] = e.v;
    wts[pos[e.u]++] = e.weight;
    adj[pos[e.v]] = e.u;
    wts[pos[e.v]++] = e.weight;
  }
  double vol_all = 0.0;
  for (double d : h.degree()) vol_all += d;
  std::vector<char> in(n, 0);
  double cut = 0.0, vol = 0.0, best = kInf;
  std::size_t best_k = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Vertex v = order[k];
    double inner = 0.0;
    for (std::size_t p = ptr[v]; p < ptr[v + 1]; ++p)
      if (in[adj[p]]) inner += wts[p];
    in[v] = 1;
    cut += h.degree()[v] - 2.0 * inner;
    vol += h.degree()[v];
    double denom = std::min(vol, vol_all - vol);
    double phi = denom > 0 ? cut / denom : kInf;
    if (phi < best) {
      best = phi;
      best_k = k + 1;
    }
  }
  // Keep the side holding the smallest index first for a stable recursion order.
  return best_k;
}

struct Decomposer {
  const UndirectedGraph& g;
  const DecomposeOptions& opts;
  double phi;
  std::vector<std::int64_t> local;
  std::vector<std::pair<std::vector<Vertex>, double>> out;

  void run(const std::vector<Vertex>& s) {
    if (s.size() == 1) {
      out.push_back({s, kInf});
      return;
    }
    UndirectedGraph h = induced(g, s, local);
    auto comps = connected_components(h);
    if (comps.size() > 1) {
      for (const auto& c : comps) {
        std::vector<Vertex> sub;
        for (Vertex v : c) sub.push_back(s[v]);
        run(sub);
      }
      return;
    }
    Vec f(h.n());
    if (h.n() <= opts.dense_limit) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian(h));
      double lambda2 = es.eigenvalues()(1);
      if (lambda2 / 2.0 >= phi) {
        out.push_back({s, lambda2 / 2.0});
        return;
      }
      for (std::size_t i = 0; i < h.n(); ++i)
        f[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), 1) / std::sqrt(h.degree()[i]);
    } else {
      f = fiedler_power_iteration(h);
    }
    canonical_sign(f);
    std::size_t k = sweep_cut(h, f);
    std::vector<Vertex> order(h.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });
    std::vector<Vertex> left, right;
    for (std::size_t i = 0; i < order.size(); ++i) (i < k ? left : right).push_back(s[order[i]]);
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    if (left.front() > right.front()) std::swap(left, right);
    run(left);
    run(right);
  }
};

}  // namespace

UndirectedGraph product_reference_graph(const Vec& d) {
  double total = 0.0;
  for (double x : d) {
    if (!(x > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "product_reference_graph needs d > 0");
    total += x;
  }
  std::vector<UEdge> es;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i; j < d.size(); ++j)
      es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), d[i] * d[j] / total});
  return build_undirected(d.size(), std::move(es));
}

SandwichConstants expander_sandwich_constants(const UndirectedGraph&, double phi) {
  if (!(phi > 0.0 && phi <= 0.5)) throw Error(ErrorCode::BadParams, "phi must lie in (0, 1/2]");
  return {phi * phi / 4.0, 4.0 / (phi * phi)};
}

double cheeger_certificate(const UndirectedGraph& g) {
  if (g.n() <= 1) return kInf;
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "cheeger_certificate needs a connected graph");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian(g), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(1) / 2.0;
}

Vec fiedler_power_iteration(const UndirectedGraph& g, std::size_t iterations) {
  const std::size_t n = g.n();
  if (iterations == 0) iterations = static_cast<std::size_t>(200.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
  LaplacianView view(g);
  Vec sq(n), inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    sq[i] = std::sqrt(g.degree()[i]);
    inv[i] = sq[i] > 0 ? 1.0 / sq[i] : 0.0;
  }
  double sqn = 0.0;
  for (double v : sq) sqn += v * v;
  auto deflate = [&](Vec& x) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += x[i] * sq[i];
    for (std::size_t i = 0; i < n; ++i) x[i] -= c * sq[i] / sqn;
  };
  Vec x(n), t(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1);
  deflate(x);
  for (std::size_t it = 0; it < iterations; ++it) {
    // y = (2I - N) x with N = D^{-1/2} L D^{-1/2}.
    for (std::size_t i = 0; i < n; ++i) t[i] = inv[i] * x[i];
    view.apply(t.data(), y.data());
    for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 * x[i] - inv[i] * y[i];
    deflate(y);
    double nrm = 0.0;
    for (double v : y) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
  }
  for (std::size_t i = 0; i < n; ++i) x[i] *= inv[i];
  return x;
}

ExpanderDecomposition expander_decompose(const UndirectedGraph& g, const DecomposeOptions& opts) {
  if (!(opts.phi_target > 0.0)) throw Error(ErrorCode::BadParams, "phi_target must be positive");
  double vol = 0.0;
  for (const auto& e : g.edges())
    if (e.u != e.v) vol += 2.0 * e.weight;
  double phi = opts.phi_target;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Decomposer dec{g, opts, phi, std::vector<std::int64_t>(g.n(), -1), {}};
    for (const auto& comp : connected_components(g)) dec.run(comp);
    std::sort(dec.out.begin(), dec.out.end(),
              [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });
    std::vector<std::size_t> part_of(g.n());
    for (std::size_t p = 0; p < dec.out.size(); ++p)
      for (Vertex v : dec.out[p].first) part_of[v] = p;
    double cross = 0.0;
    for (const auto& e : g.edges())
      if (part_of[e.u] != part_of[e.v]) cross += 2.0 * e.weight;
    double frac = vol > 0 ? cross / vol : 0.0;
    if (frac <= opts.max_cross) {
      ExpanderDecomposition res;
      res.cross_fraction = frac;
      res.phi_used = phi;
      res.phi_certified = 0.5;
      for (auto& [part, cert] : dec.out) {
        res.phi_certified = std::min(res.phi_certified, cert);
        res.parts.push_back(std::move(part));
        res.certificates.push_back(cert);
      }
      return res;
    }
    phi /= 2.0;
  }
  throw Error(ErrorCode::CertificationFailed, "cross volume bound not reached");
}

}  // namespace dirlap
