#include "dirlap/chain.hpp"

#include "dirlap/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dirlap {

void ChainParams::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::BadParams, what); };
  if (!(alpha > 0.0 && alpha < 1.0)) bad("alpha must lie in (0,1)");
  if (!(beta > 0.0)) bad("beta must be positive");
  if (eta < 0.0 || eta > 1.0) bad("eta must lie in (0,1] or be 0 for auto");
  if (eps0 < 0.0 || eps0 >= 1.0) bad("eps0 must lie in (0,1) or be 0 for auto");
  if (!(kappa_target > 1.0)) bad("kappa_target must exceed 1");
  if (!(phi_target > 0.0 && phi_target <= 0.5)) bad("phi_target must lie in (0,1/2]");
  if (lambda_hat < 0.0 || lambda_hat > 2.0) bad("lambda_hat must lie in (0,2] or be 0 for auto");
  if (d == 0) bad("d must be positive");
  if (!auto_k && k > 64) bad("k too large");
  if (max_levels == 0) bad("max_levels must be positive");
  if (!(stage_target > 0.0 && stage_target < 1.0)) bad("stage_target must lie in (0,1)");
  if (!(leaf_target > 0.0 && leaf_target < 1.0)) bad("leaf_target must lie in (0,1)");
  if (max_stage_iterations == 0 || max_outer_iterations == 0) bad("iteration caps must be positive");
  if (probes == 0) bad("probes must be positive");
  if (!(gamma > 0.0 && gamma < 1.0) || !(delta > 0.0 && delta < 1.0)) bad("gamma and delta must lie in (0,1)");
}

double default_eps0(std::size_t d) {
  return std::min(1.0 / (30.0 * std::exp(5.0 * static_cast<double>(d))), 1e-4);
}

std::size_t squarings_needed(double lambda_hat, double eps0) {
  if (lambda_hat >= 0.25) return 0;
  double rate = std::log(1.25 * (1.0 - eps0));
  return static_cast<std::size_t>(std::ceil(std::log(1.0 / (4.0 * lambda_hat)) / rate - 1e-12));
}

double fallback_lambda_hat(const DirectedGraph& g) {
  double spread = max_weight(g) / min_weight(g);
  return 1.0 / (8.0 * static_cast<double>(g.n()) * spread);
}

ChainParams paper_parameters(std::size_t n, double lambda_hat, double gamma) {
  ChainParams p;
  double logn = std::log(static_cast<double>(std::max<std::size_t>(n, 3)));
  p.gamma = gamma;
  p.paper_mode = true;
  p.d = static_cast<std::size_t>(std::ceil(std::cbrt(logn)));
  p.eps0 = 1.0 / (30.0 * std::exp(5.0 * static_cast<double>(p.d)));
  p.beta = std::exp(2.0 * std::pow(logn, gamma));
  p.eta = std::exp(-3.0 * std::pow(logn, gamma));
  p.lambda_hat = lambda_hat;
  p.auto_k = false;
  std::size_t s = squarings_needed(lambda_hat, p.eps0);
  p.k = (s + p.d - 1) / p.d;
  p.max_levels = std::max<std::size_t>(p.k, 1);
  return p;
}

SparsificationQuadruple build_quadruple(const DirectedGraph& g0, const ChainParams& params) {
  if (!is_eulerian(g0)) throw Error(ErrorCode::NotEulerian, "quadruple input is not Eulerian");
  if (!is_strongly_connected(g0)) throw Error(ErrorCode::NotStronglyConnected, "quadruple input");
  SparsificationQuadruple q;
  q.beta = params.beta;
  q.g0 = g0;
  q.g1 = partial_symmetrize(g0, params.beta);

  DirectedSparsifyOptions dopts;
  dopts.phi_target = params.phi_target;
  auto dres = sparsify_directed(g0, dopts);
  q.r = std::move(dres.r);
  q.directed_report = std::move(dres.report);

  UndirectedGraph u = undirectify(g0);
  q.g2 = add(scale(to_bidirected(u), params.beta), q.r);

  UndirectedGraph tilde = sparsify_deg(u, params.kappa_target, &q.undirected_report);
  q.eta = params.eta > 0.0 ? params.eta : std::min(1.0, q.undirected_report.certified_lo);
  q.g3 = add(scale(to_bidirected(tilde), params.beta / q.eta), q.r);
  return q;
}

DirectedGraph lazy_graph(const DirectedGraph& g, double alpha, const Vec& degrees) {
  if (degrees.size() != g.n()) throw Error(ErrorCode::DimensionMismatch, "lazy_graph degrees");
  std::vector<Edge> loops;
  loops.reserve(g.n());
  for (std::size_t v = 0; v < g.n(); ++v)
    if (degrees[v] > 0.0) loops.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v), alpha * degrees[v]});
  return add(scale(g, 1.0 - alpha), build(g.n(), std::move(loops)));
}

SquareChain build_square_chain(const DirectedGraph& g3_scaled, std::size_t d, double alpha, double eps0,
                               const Vec& degrees) {
  SquareChain c;
  c.degrees = degrees;
  c.alpha = alpha;
  c.eps0 = eps0;
  c.graphs.reserve(d + 1);
  c.graphs.push_back(g3_scaled);
  for (std::size_t j = 1; j <= d; ++j) {
    SquareReport rep;
    c.graphs.push_back(sparse_square(lazy_graph(c.graphs.back(), alpha, degrees), eps0, {}, &rep));
    c.reports.push_back(rep);
  }
  return c;
}

PseudoinverseChain build_chain(const DirectedGraph& g, const ChainParams& params) {
  params.validate();
  if (g.n() < 2) throw Error(ErrorCode::BadParams, "chain needs at least two vertices");
  if (!is_eulerian(g)) throw Error(ErrorCode::NotEulerian, "chain input is not Eulerian");
  if (!is_strongly_connected(g)) throw Error(ErrorCode::NotStronglyConnected, "chain input");

  PseudoinverseChain ch;
  ch.params = params;
  ch.degrees = g.out_degree();
  if (params.lambda_hat > 0.0) {
    ch.lambda_hat = params.lambda_hat;
  } else {
    ch.lambda_hat = fallback_lambda_hat(g);
    ch.lambda_hat_heuristic = true;
    ch.notes.push_back("lambda_hat from heuristic 1/(8 n w_max/w_min); not a certified bound");
  }

  std::size_t d = params.d;
  std::size_t k = params.k;
  double eps0 = params.eps0 > 0.0 ? params.eps0 : default_eps0(d);
  if (params.auto_k) {
    std::size_t s = squarings_needed(ch.lambda_hat, eps0);
    if (s == 0) {
      k = 0;
    } else {
      k = std::min((s + d - 1) / d, params.max_levels);
      d = std::max(d, (s + k - 1) / k);
    }
    if (params.eps0 == 0.0) eps0 = default_eps0(d);
  }
  ch.k = k;
  ch.d = d;
  ch.eps0 = eps0;
  ch.params.d = d;
  ch.params.k = k;
  ch.params.eps0 = eps0;

  ch.levels.resize(k + 1);
  ch.levels[0].g0 = g;
  std::size_t built = params.build_last_level ? k + 1 : k;
  for (std::size_t l = 0; l < built; ++l) {
    auto& lvl = ch.levels[l];
    lvl.quad = build_quadruple(lvl.g0, ch.params);
    double s = 1.0 + lvl.quad->beta / lvl.quad->eta;
    lvl.chain = build_square_chain(scale(lvl.quad->g3, 1.0 / s), d, params.alpha, eps0, ch.degrees);
    if (l + 1 <= k) ch.levels[l + 1].g0 = lvl.chain->graphs.back();
  }
  return ch;
}

SquareChainSpectra square_chain_spectra(const SquareChain& c) {
  SquareChainSpectra out;
  std::vector<oracle::DenseMatrix> sym;
  for (const auto& g : c.graphs) {
    sym.push_back(oracle::symmetrization(oracle::normalize(oracle::laplacian(g), c.degrees)));
    out.lambda_star.push_back(oracle::lambda_min_nonzero(sym.back()));
  }
  for (std::size_t j = 1; j < sym.size(); ++j) {
    auto s = oracle::loewner_sandwich(sym[j], sym[j - 1]);
    out.kappa.push_back(s.hi / s.lo);
  }
  return out;
}

void MatvecBudget::charge(std::uint64_t n) {
  used += n;
  if (cap != 0 && used > cap)
    throw Error(ErrorCode::BudgetExceeded, "matvec budget of " + std::to_string(cap) + " exceeded");
}

namespace {

// D^{+/2} L D^{+/2} charged against the budget.
LinearOperator budgeted_laplacian(const DirectedGraph& g, const Vec& d, std::shared_ptr<MatvecBudget> budget,
                                  std::string label) {
  LinearOperator m = normalized_laplacian_operator(g, d, label);
  return LinearOperator(
      m.dim(),
      [m, budget](const Vec& x, Vec& y) {
        budget->charge();
        m.apply(x, y);
      },
      m.kernel_basis(), std::move(label));
}

struct Calibration {
  double eta = 1.0;
  std::size_t iterations = 0;
  double ratio = std::numeric_limits<double>::infinity();
  bool reached = false;
};

double unorm(const LinearOperator& m, const Vec& y) {
  Vec my;
  m.apply(y, my);
  return std::sqrt(std::max(dot(y, my), 0.0));
}

std::vector<Vec> probe_vectors(std::size_t n, std::size_t count, const std::vector<Vec>& kernel) {
  std::vector<Vec> out;
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  for (std::size_t p = 0; p < count; ++p) {
    Vec v(n);
    if (p % 2 == 1) {
      // Smooth in index order: slow modes of cycle-like graphs.
      for (std::size_t i = 0; i < n; ++i)
        v[i] = std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n) + 0.37 * static_cast<double>(p)) +
               static_cast<double>(i) / static_cast<double>(n);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        v[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
      }
    }
    out.push_back(project_out_kernel(v, kernel));
  }
  return out;
}

// Smallest iteration count per step size whose worst probe error ratio in the
// symmetrized norm of m is at most target.
Calibration calibrate(const LinearOperator& m, const LinearOperator& z, double target, const std::vector<double>& etas,
                      std::size_t cap, std::size_t probes) {
  const std::size_t n = m.dim();
  auto xs = probe_vectors(n, probes, m.kernel_basis());
  std::vector<Vec> bs(xs.size());
  std::vector<double> xnorm(xs.size());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    m.apply(xs[p], bs[p]);
    xnorm[p] = unorm(m, xs[p]);
  }
  Calibration best;
  for (double eta : etas) {
    std::size_t limit = best.reached ? best.iterations : cap;
    std::vector<Vec> x(xs.size(), Vec(n, 0.0));
    Vec mx, zr, r(n), e(n);
    double worst_last = std::numeric_limits<double>::infinity();
    bool diverged = false;
    for (std::size_t it = 1; it <= limit; ++it) {
      double worst = 0.0;
      for (std::size_t p = 0; p < xs.size(); ++p) {
        m.apply(x[p], mx);
        for (std::size_t i = 0; i < n; ++i) r[i] = bs[p][i] - mx[i];
        z.apply(r, zr);
        for (std::size_t i = 0; i < n; ++i) x[p][i] += eta * zr[i];
        for (std::size_t i = 0; i < n; ++i) e[i] = x[p][i] - xs[p][i];
        double ratio = xnorm[p] > 0.0 ? unorm(m, e) / xnorm[p] : 0.0;
        if (!std::isfinite(ratio)) ratio = std::numeric_limits<double>::infinity();
        worst = std::max(worst, ratio);
      }
      worst_last = worst;
      if (worst > 1e6) {
        diverged = true;
        break;
      }
      if (worst <= target) {
        if (!best.reached || it < best.iterations) best = {eta, it, worst, true};
        break;
      }
    }
    if (!best.reached && !diverged && worst_last < best.ratio) best = {eta, limit, worst_last, false};
  }
  return best;
}

LinearOperator calibrated_stage(const LinearOperator& m, const LinearOperator& z, double target,
                                const std::vector<double>& etas, const ChainParams& params, std::size_t level,
                                int stage, SolveReport* report, const std::string& label) {
  Calibration c = calibrate(m, z, target, etas, params.max_stage_iterations, params.probes);
  if (!c.reached && !(c.ratio < 1.0)) {
    std::ostringstream os;
    os << "stage " << stage << " at level " << level << " does not contract (ratio " << c.ratio << " after "
       << c.iterations << " iterations)";
    throw Error(ErrorCode::BudgetExceeded, os.str());
  }
  if (report) {
    StageStats s;
    s.level = level;
    s.stage = stage;
    s.eta = c.eta;
    s.iterations = c.iterations;
    s.measured_ratio = c.ratio;
    s.target = target;
    report->stages.push_back(s);
  }
  return as_operator(m, z, {c.eta, c.iterations}, label);
}

// (1 - alpha)^d / s * Z_next (I + B_{d-1}) ... (I + B_0), B_j = (1-alpha) A_j + alpha I normalized.
LinearOperator chain_operator(const SquareChain& sc, std::size_t d, const LinearOperator& z_next, double s,
                              std::shared_ptr<MatvecBudget> budget) {
  auto views = std::make_shared<std::vector<LaplacianView>>();
  for (std::size_t j = 0; j < d; ++j) views->emplace_back(sc.graphs[j]);
  const std::size_t n = sc.degrees.size();
  Vec isq(n), sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    sq[i] = std::sqrt(sc.degrees[i]);
    isq[i] = sc.degrees[i] > 0.0 ? 1.0 / sq[i] : 0.0;
  }
  double alpha = sc.alpha;
  double scale_factor = std::pow(1.0 - alpha, static_cast<double>(d)) / s;
  auto kernel = z_next.kernel_basis();
  return LinearOperator(
      n,
      [views, isq, alpha, scale_factor, z_next, budget, n, kernel](const Vec& x, Vec& y) {
        Vec cur = project_out_kernel(x, kernel), t(n), at(n);
        for (const auto& v : *views) {
          budget->charge();
          for (std::size_t i = 0; i < n; ++i) t[i] = isq[i] * cur[i];
          v.adjacency_transpose(t.data(), at.data());
          for (std::size_t i = 0; i < n; ++i)
            cur[i] = cur[i] + (1.0 - alpha) * isq[i] * at[i] + alpha * cur[i];
        }
        z_next.apply(cur, y);
        for (double& val : y) val *= scale_factor;
      },
      kernel, "square-chain");
}

}  // namespace

namespace {

LinearOperator solve_level(const PseudoinverseChain& chain, std::size_t level, double eps, SolveReport* report,
                           std::shared_ptr<MatvecBudget> budget) {
  const auto& lvl = chain.levels.at(level);
  const auto& params = chain.params;
  const Vec& d = chain.degrees;
  const std::size_t n = d.size();
  auto kernel = std::vector<Vec>{sqrt_degree_kernel(d)};
  std::string tag = "@" + std::to_string(level);

  if (level == chain.k) {
    LinearOperator m = budgeted_laplacian(lvl.g0, d, budget, "leaf" + tag);
    return calibrated_stage(m, scaled_identity(n, 1.0, kernel), eps, {1.0, 0.5, 0.25, 1.0 / 16.0}, params, level,
                            -1, report, "Z_leaf" + tag);
  }
  if (!lvl.quad || !lvl.chain) throw Error(ErrorCode::BadParams, "chain level " + std::to_string(level) + " not built");
  const auto& q = *lvl.quad;
  double next_eps = level + 1 == chain.k ? params.leaf_target : params.stage_target;
  LinearOperator z_next = solve_level(chain, level + 1, next_eps, report, budget);

  double s = 1.0 + q.beta / q.eta;
  LinearOperator zc = chain_operator(*lvl.chain, chain.d, z_next, s, budget);
  LinearOperator m3 = budgeted_laplacian(q.g3, d, budget, "M3" + tag);
  LinearOperator m2 = budgeted_laplacian(q.g2, d, budget, "M2" + tag);
  LinearOperator m1 = budgeted_laplacian(q.g1, d, budget, "M1" + tag);
  LinearOperator m0 = budgeted_laplacian(q.g0, d, budget, "M0" + tag);

  const double t = params.stage_target;
  LinearOperator z3 = calibrated_stage(m3, zc, t, {1.0}, params, level, 3, report, "Z3" + tag);
  LinearOperator z2 = calibrated_stage(m2, z3, t, {1.0}, params, level, 2, report, "Z2" + tag);
  LinearOperator z1 = calibrated_stage(m1, z2, t, {1.0}, params, level, 1, report, "Z1" + tag);
  double b = q.beta;
  std::vector<double> etas = {2.0 * (1.0 + b) / (2.0 + b), 1.0, (1.0 + b) / 2.0, 1.0 + b};
  return calibrated_stage(m0, z1, eps, etas, params, level, 0, report, "Z0" + tag);
}

void fill_report_header(const PseudoinverseChain& chain, SolveReport& r) {
  r.k = chain.k;
  r.d = chain.d;
  r.beta = chain.params.beta;
  r.lambda_hat = chain.lambda_hat;
  r.lambda_hat_heuristic = chain.lambda_hat_heuristic;
  r.eta_per_level.clear();
  r.edges_per_level.clear();
  for (const auto& l : chain.levels) {
    r.edges_per_level.push_back(l.g0.num_edges());
    if (l.quad) r.eta_per_level.push_back(l.quad->eta);
  }
}

}  // namespace

LinearOperator solve_chain(const PseudoinverseChain& chain, std::size_t level, double eps, SolveReport* report,
                           std::shared_ptr<MatvecBudget> budget) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0,1)");
  if (level > chain.k) throw Error(ErrorCode::BadParams, "level beyond chain depth");
  if (!budget) {
    budget = std::make_shared<MatvecBudget>();
    budget->cap = chain.params.max_matvecs;
  }
  return solve_level(chain, level, eps, report, budget);
}

SolveResult solve_with_chain(const PseudoinverseChain& chain, const DirectedGraph& g, const Vec& b, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::EpsOutOfRange, "eps must lie in (0,1)");
  const std::size_t n = g.n();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  for (double v : b)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "right-hand side");

  SolveResult res;
  fill_report_header(chain, res.report);
  res.x.assign(n, 0.0);

  const Vec& d = chain.degrees;
  Vec sq(n), isq(n);
  for (std::size_t i = 0; i < n; ++i) {
    sq[i] = std::sqrt(d[i]);
    isq[i] = 1.0 / sq[i];
  }
  // 1^T b = 0 is required; remove the component along 1.
  Vec bb = b;
  double mean = 0.0;
  for (double v : bb) mean += v;
  mean /= static_cast<double>(n);
  double bmax = 0.0;
  for (double& v : bb) {
    v -= mean;
    bmax = std::max(bmax, std::abs(v));
  }
  double bscale = 0.0;
  for (double v : b) bscale = std::max(bscale, std::abs(v));
  if (bmax <= 1e-14 * std::max(bscale, 1e-300)) {
    res.report.input_in_kernel = true;
    return res;
  }

  auto budget = std::make_shared<MatvecBudget>();
  budget->cap = chain.params.max_matvecs;
  LinearOperator z0 = solve_level(chain, 0, chain.params.stage_target, &res.report, budget);
  LinearOperator m0 = budgeted_laplacian(g, d, budget, "M0-outer");

  Vec bt(n);
  for (std::size_t i = 0; i < n; ++i) bt[i] = isq[i] * bb[i];
  Vec y(n, 0.0), my, r(n), zr;
  const double tol = 0.25 * eps;
  double ratio = 1.0;
  std::size_t it = 0;
  for (; it < chain.params.max_outer_iterations; ++it) {
    m0.apply(y, my);
    for (std::size_t i = 0; i < n; ++i) r[i] = bt[i] - my[i];
    z0.apply(r, zr);
    for (std::size_t i = 0; i < n; ++i) y[i] += zr[i];
    double dn = unorm(m0, zr), yn = unorm(m0, y);
    if (!std::isfinite(dn) || !std::isfinite(yn)) throw Error(ErrorCode::NonFinite, "outer iteration diverged");
    ratio = yn > 0.0 ? dn / yn : 0.0;
    if (ratio <= tol) {
      ++it;
      break;
    }
  }
  res.report.outer_iterations = it;
  res.report.final_update_ratio = ratio;
  res.report.matvecs = budget->used;
  if (ratio > tol)
    throw Error(ErrorCode::BudgetExceeded, "outer iteration cap reached with update ratio " + std::to_string(ratio));

  y = project_out_kernel(y, {sqrt_degree_kernel(d)});
  for (std::size_t i = 0; i < n; ++i) res.x[i] = isq[i] * y[i];
  double xm = 0.0;
  for (double v : res.x) xm += v;
  xm /= static_cast<double>(n);
  for (double& v : res.x) v -= xm;
  return res;
}

SolveResult solve_eulerian(const DirectedGraph& g, const Vec& b, double eps, const ChainParams& params) {
  PseudoinverseChain chain = build_chain(g, params);
  return solve_with_chain(chain, g, b, eps);
}

}  // namespace dirlap
