#include "dirlap/sparsify_undirected.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dirlap/dense.hpp"

namespace dirlap {

namespace {

struct BssResult {
  std::vector<UEdge> edges;
  double lo;
  double hi;
};

// Twice-Ramanujan barrier sparsification of one bucket.
BssResult barrier_sparsify(const UndirectedGraph& b, double d) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const std::size_t n = b.n();
  MatrixXd l = oracle::laplacian(b);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(l);
  double top = es.eigenvalues().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > oracle::kCutoff * top) keep.push_back(i);
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index m = static_cast<Eigen::Index>(b.num_edges());
  MatrixXd w(r, static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < r; ++k)
    w.row(k) = es.eigenvectors().col(keep[k]).transpose() / std::sqrt(es.eigenvalues()(keep[k]));
  MatrixXd v(r, m);
  for (Eigen::Index e = 0; e < m; ++e) {
    const auto& ed = b.edges()[e];
    v.col(e) = std::sqrt(ed.weight) * (w.col(ed.u) - w.col(ed.v));
  }

  const double sd = std::sqrt(d);
  const double delta_l = 1.0, eps_l = 1.0 / sd;
  const double delta_u = (sd + 1.0) / (sd - 1.0), eps_u = (sd - 1.0) / (d + sd);
  double lower = -static_cast<double>(r) / eps_l;
  double upper = static_cast<double>(r) / eps_u;
  MatrixXd a = MatrixXd::Zero(r, r);
  VectorXd s = VectorXd::Zero(m);
  const std::size_t steps = static_cast<std::size_t>(std::ceil(d * static_cast<double>(r)));
  const MatrixXd id = MatrixXd::Identity(r, r);
  for (std::size_t step = 0; step < steps; ++step) {
    const double up = upper + delta_u, lp = lower + delta_l;
    MatrixXd iu_new = (up * id - a).llt().solve(id);
    MatrixXd iu_old = (upper * id - a).llt().solve(id);
    MatrixXd il_new = (a - lp * id).llt().solve(id);
    MatrixXd il_old = (a - lower * id).llt().solve(id);
    const double phi_u = iu_old.trace() - iu_new.trace();
    const double phi_l = il_new.trace() - il_old.trace();
    MatrixXd mu = iu_new * v;
    MatrixXd ml = il_new * v;
    Eigen::Index best = -1;
    double best_gap = -std::numeric_limits<double>::infinity(), best_u = 0, best_l = 0;
    for (Eigen::Index e = 0; e < m; ++e) {
      double u1 = v.col(e).dot(mu.col(e)), u2 = mu.col(e).squaredNorm();
      double l1 = v.col(e).dot(ml.col(e)), l2 = ml.col(e).squaredNorm();
      double uval = u2 / phi_u + u1;
      double lval = l2 / phi_l - l1;
      if (uval <= 0.0) continue;
      if (lval - uval > best_gap) {
        best_gap = lval - uval;
        best = e;
        best_u = uval;
        best_l = lval;
      }
    }
    if (best < 0 || best_gap < -1e-12 * std::abs(best_u))
      throw Error(ErrorCode::CertificationFailed, "barrier step found no admissible edge");
    double t = best_l > best_u ? 2.0 / (best_u + best_l) : 1.0 / best_u;
    s(best) += t;
    a.noalias() += t * v.col(best) * v.col(best).transpose();
    upper = up;
    lower = lp;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> fin(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  BssResult res;
  res.lo = fin.eigenvalues().minCoeff();
  res.hi = fin.eigenvalues().maxCoeff();
  if (!(res.lo > 0.0)) throw Error(ErrorCode::CertificationFailed, "sparsifier lost rank");
  for (Eigen::Index e = 0; e < m; ++e)
    if (s(e) > 0.0) {
      auto ed = b.edges()[e];
      ed.weight *= s(e);
      res.edges.push_back(ed);
    }
  return res;
}

}  // namespace

UndirectedGraph spectral_sparsify(const UndirectedGraph& g, double kappa_target, SparsifierReport* report) {
  if (!(kappa_target >= 1.0)) throw Error(ErrorCode::BadParams, "kappa_target must be >= 1");
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "spectral_sparsify needs a connected graph");
  double wmin = 0.0, wmax = 0.0;
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    wmax = std::max(wmax, e.weight);
    wmin = wmin == 0.0 ? e.weight : std::min(wmin, e.weight);
  }
  if (wmin > 0.0 && wmax / wmin > 1e12) throw Error(ErrorCode::WeightSpreadTooLarge, "weight ratio above 1e12");
  SparsifierReport rep;
  rep.edges_in = g.num_edges();
  const double d = kappa_target > 1.0
                       ? std::max(6.0, std::ceil(std::pow((kappa_target + 1.0) / (kappa_target - 1.0), 2.0)))
                       : 0.0;
  std::vector<std::vector<UEdge>> buckets;
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;  // self-loops do not enter the Laplacian
    std::size_t i = static_cast<std::size_t>(std::floor(std::log2(e.weight / wmin)));
    while (i > 0 && e.weight < std::ldexp(wmin, static_cast<int>(i))) --i;
    while (e.weight >= std::ldexp(wmin, static_cast<int>(i + 1))) ++i;
    if (buckets.size() <= i) buckets.resize(i + 1);
    buckets[i].push_back(e);
  }
  rep.buckets = buckets.size();
  std::vector<UEdge> out;
  double lo = 1.0, hi = 1.0;
  for (auto& list : buckets) {
    if (list.empty()) continue;
    UndirectedGraph bg = build_undirected(g.n(), list);
    std::size_t rank = g.n() - connected_components(bg).size();
    if (d == 0.0 || static_cast<double>(bg.num_edges()) <= d * static_cast<double>(rank)) {
      out.insert(out.end(), bg.edges().begin(), bg.edges().end());
      continue;
    }
    BssResult r = barrier_sparsify(bg, d);
    double c = 1.0 / std::sqrt(r.lo * r.hi);
    for (auto& e : r.edges) e.weight *= c;
    lo = std::min(lo, r.lo * c);
    hi = std::max(hi, r.hi * c);
    out.insert(out.end(), r.edges.begin(), r.edges.end());
    rep.buckets_sparsified++;
  }
  rep.fast_path = rep.buckets_sparsified == 0;
  UndirectedGraph h = rep.fast_path ? g : build_undirected(g.n(), std::move(out));
  rep.certified_lo = lo;
  rep.certified_hi = hi;
  rep.edges_out = h.num_edges();
  if (report) *report = rep;
  return h;
}

UndirectedGraph sparsify_deg(const UndirectedGraph& g, double kappa_target, SparsifierReport* report) {
  SparsifierReport rep;
  UndirectedGraph h = spectral_sparsify(g, kappa_target, &rep);
  if (rep.fast_path) {
    if (report) *report = rep;
    return g;
  }
  std::vector<UEdge> es;
  for (const auto& e : h.edges())
    if (e.u != e.v) es.push_back({e.u, e.v, e.weight / rep.certified_hi});
  UndirectedGraph scaled = build_undirected(g.n(), es);
  rep.certified_lo /= rep.certified_hi;
  rep.certified_hi = 1.0;
  rep.degree_residual = 0.0;
  for (std::size_t v = 0; v < g.n(); ++v) {
    double r = g.degree()[v] - scaled.degree()[v];
    rep.degree_residual = std::max(rep.degree_residual, r);
    if (r > 0.0) es.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v), r});
  }
  UndirectedGraph out = build_undirected(g.n(), std::move(es));
  for (std::size_t v = 0; v < g.n(); ++v)
    rep.degree_error = std::max(rep.degree_error, std::abs(out.degree()[v] - g.degree()[v]));
  rep.edges_out = out.num_edges();
  if (report) *report = rep;
  return out;
}

}  // namespace dirlap
