// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dirlap/chain.hpp"
#include "dirlap/dense.hpp"
#include "dirlap/expander.hpp"
#include "dirlap/generators.hpp"
#include "dirlap/rcdd.hpp"
#include "dirlap/sparsify_directed.hpp"
#include "dirlap/sparsify_undirected.hpp"
#include "dirlap/square.hpp"

using namespace dirlap;
using oracle::DenseMatrix;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << " first failure: " << what << ";";
    pass = pass && ok;
  }
};

std::vector<DirectedGraph> corpus(std::size_t count, std::size_t n_min, std::size_t n_max, std::uint64_t seed0) {
  std::vector<DirectedGraph> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = n_min + (i * 7919) % (n_max - n_min + 1);
    out.push_back(random_eulerian(n, seed0 + i));
  }
  return out;
}

bool rel_equal(const Vec& a, const Vec& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * std::max(std::abs(b[i]), 1e-300)) return false;
  return true;
}

// Bipartite lift of a directed product: edge i -> j becomes {i, n + j}.
DenseMatrix bipartite_lift(const DirectedGraph& p, std::size_t n) {
  std::vector<UEdge> es;
  for (const auto& e : p.edges()) es.push_back({e.tail, static_cast<Vertex>(n + e.head), e.weight});
  return oracle::laplacian(build_undirected(2 * n, es));
}

// 1. Partial symmetrization contraction.
void criterion1(Outcome& o) {
  double worst_q = 0.0, worst_dev = 0.0;
  for (const auto& g : corpus(20, 10, 60, 100)) {
    DenseMatrix l0 = oracle::laplacian(g);
    for (double beta : {1.0, 4.0, 16.0}) {
      DenseMatrix l1 = oracle::laplacian(partial_symmetrize(g, beta));
      DenseMatrix u1 = oracle::symmetrization(l1);
      double q = oracle::precond_quality(oracle::pseudoinverse(l1), l0, u1);
      DenseMatrix diff = l1 - l0;
      double mid = oracle::whitened_norm(u1, diff, u1);
      double bound = 1.0 - 1.0 / (1.0 + beta);
      worst_q = std::max(worst_q, q - bound);
      worst_dev = std::max(worst_dev, std::abs(mid - beta / (1.0 + beta)));
      o.require(q <= bound + 1e-8, "precond_quality above 1 - 1/(1+beta)");
      o.require(std::abs(mid - beta / (1.0 + beta)) <= 1e-8, "intermediate norm differs from beta/(1+beta)");
    }
  }
  o.detail << " max(quality - bound)=" << worst_q << " max|mid - beta/(1+beta)|=" << worst_dev;
}

// 2. Directed-part sparsifier.
void criterion2(Outcome& o) {
  double worst_q = 0.0, min_phi = 1.0, max_beta = 0.0;
  std::size_t max_ratio_edges = 0;
  for (const auto& g : corpus(20, 10, 60, 100)) {
    auto res = sparsify_directed(g);
    const auto& rep = res.report;
    o.require(res.r.out_degree() == g.out_degree() && res.r.in_degree() == g.in_degree(), "R degrees differ");
    std::size_t cap = rep.buckets * rep.max_layers_used * 2 * g.n();
    o.require(res.r.num_edges() <= cap, "R exceeds P * layers * 2n edges");
    max_ratio_edges = std::max(max_ratio_edges, res.r.num_edges());
    double beta = rep.beta_budget();
    max_beta = std::max(max_beta, beta);
    min_phi = std::min(min_phi, rep.phi_certified);
    DenseMatrix lu = oracle::laplacian(undirectify(g));
    DenseMatrix l1 = oracle::laplacian(partial_symmetrize(g, beta));
    DenseMatrix l2 = beta * lu + oracle::laplacian(res.r);
    double q = oracle::precond_quality(oracle::pseudoinverse(l2), l1, oracle::symmetrization(l2));
    worst_q = std::max(worst_q, q);
    o.require(q <= 0.55, "precond_quality above 1/2 + 0.05");
  }
  o.detail << " worst quality=" << worst_q << " min phi_cert=" << min_phi << " max beta=" << max_beta
           << " max |R|=" << max_ratio_edges;
}

// 3. Bipartite/product squaring.
void criterion3(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> nd(1, 30);
  std::uniform_real_distribution<double> wd(0.0, 1.0);
  const double epss[] = {0.1, 0.25, 0.5};
  double worst = 0.0, min_cond = 1.0;
  for (int t = 0; t < 50; ++t) {
    std::size_t n = t < 10 ? 1 + static_cast<std::size_t>(t % 8) : nd(rng);
    Vec a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = wd(rng) < 0.15 ? 0.0 : 0.1 + 3.0 * wd(rng);
      b[i] = wd(rng) < 0.15 ? 0.0 : 0.1 + 3.0 * wd(rng);
    }
    if (a[0] == 0.0) a[0] = 1.0;
    if (b[n - 1] == 0.0) b[n - 1] = 1.0;
    double sa = 0.0, sb = 0.0;
    for (double x : a) sa += x;
    for (double x : b) sb += x;
    for (double& x : b) x *= sa / sb;
    double eps = epss[t % 3];
    DirectedGraph p = sparse_product(a, b, eps);
    Vec out(n, 0.0), in(n, 0.0);
    for (std::size_t i = 0; i < p.n() && i < n; ++i) {
      out[i] = p.out_degree()[i];
      in[i] = p.in_degree()[i];
    }
    o.require(rel_equal(out, a, 1e-12) && rel_equal(in, b, 1e-12), "product degrees differ");
    auto prod = BipartiteProduct::make(a, b);
    double err = oracle::approx_error(bipartite_lift(p, n), bipartite_product_laplacian(prod));
    worst = std::max(worst, err / eps);
    o.require(err <= eps, "product approx_error above eps");
    if (n <= 8) {
      // Conductance of G(a,b) on its support.
      UndirectedGraph full = bipartite_product_graph(prod);
      std::vector<Vertex> keep;
      for (std::size_t v = 0; v < 2 * n; ++v)
        if (full.degree()[v] > 0.0) keep.push_back(static_cast<Vertex>(v));
      auto sub = induced_subgraph(to_bidirected(full), keep);
      double c = oracle::conductance_bruteforce(undirectify(sub.graph));
      min_cond = std::min(min_cond, c);
      o.require(c >= 0.5 - 1e-12, "G(a,b) conductance below 1/2");
    }
  }
  double worst_sq = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    auto g = random_eulerian(10 + 2 * i, 300 + i);
    double eps = epss[i % 3];
    DirectedGraph s = sparse_square(g, eps);
    DirectedGraph ex = exact_square(g);
    double err = oracle::approx_error(oracle::laplacian(s), oracle::laplacian(ex));
    worst_sq = std::max(worst_sq, err / eps);
    o.require(err <= eps, "square approx_error above eps");
    o.require(rel_equal(s.out_degree(), g.out_degree(), 1e-12) && rel_equal(s.in_degree(), g.in_degree(), 1e-12),
              "square degrees differ");
  }
  o.detail << " worst product error/eps=" << worst << " min conductance(n<=8)=" << min_cond
           << " worst square error/eps=" << worst_sq;
}

// 4. Chain spectral progress.
void criterion4(Outcome& o) {
  double worst_kappa = 0.0, worst_gain = 1e300, worst_last = 1.0;
  for (std::size_t i = 0; i < 8; ++i) {
    auto g = random_eulerian(16 + 6 * i, 400 + i);
    auto ch = build_chain(g, {});
    double rate = std::pow((1.0 - ch.eps0) * 1.25, static_cast<double>(ch.d));
    for (std::size_t l = 0; l < ch.levels.size(); ++l) {
      if (!ch.levels[l].chain) continue;
      auto sp = square_chain_spectra(*ch.levels[l].chain);
      for (double k : sp.kappa) {
        worst_kappa = std::max(worst_kappa, k);
        o.require(k <= 21.0 * 1.1, "kappa between consecutive squares above 21 + 10%");
      }
      double l0 = sp.lambda_star.front(), ld = sp.lambda_star.back();
      double want = std::min(0.25 / l0, rate);
      double gain = (ld / l0) / want;
      worst_gain = std::min(worst_gain, gain);
      o.require(ld / l0 >= 0.9 * want, "lambda_* gain below the guaranteed rate - 10%");
    }
    DenseMatrix last = oracle::symmetrization(oracle::normalize(oracle::laplacian(ch.levels.back().g0), ch.degrees));
    double lam = oracle::lambda_min_nonzero(last);
    worst_last = std::min(worst_last, lam);
    o.require(lam >= 0.25 - 0.02, "last level lambda_* below 1/4 - 0.02");
  }
  o.detail << " max kappa=" << worst_kappa << " min gain/guarantee=" << worst_gain << " min last lambda_*=" << worst_last;
}

// 5. End-to-end solver.
void criterion5(Outcome& o) {
  std::vector<DirectedGraph> inst;
  for (std::size_t i = 0; i < 10; ++i) inst.push_back(directed_cycle(20 + 20 * i));
  for (std::size_t i = 0; i < 10; ++i) inst.push_back(directed_torus(4 + i));
  for (std::size_t i = 0; i < 10; ++i) inst.push_back(random_eulerian(20 + 20 * i, 500 + i));
  double worst = 0.0;
  std::size_t max_n = 0;
  for (std::size_t t = 0; t < inst.size(); ++t) {
    const auto& g = inst[t];
    max_n = std::max(max_n, g.n());
    std::mt19937_64 rng(900 + t);
    std::normal_distribution<double> nd;
    Vec b(g.n());
    for (double& v : b) v = nd(rng);
    double mean = 0.0;
    for (double v : b) mean += v;
    for (double& v : b) v -= mean / static_cast<double>(g.n());
    DenseMatrix l = oracle::laplacian(g);
    DenseMatrix u = oracle::symmetrization(l);
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd xs = oracle::pseudoinverse(l) * bv;
    for (double eps : {1e-3, 1e-6}) {
      auto r1 = solve_eulerian(g, b, eps);
      auto r2 = solve_eulerian(g, b, eps);
      o.require(r1.x == r2.x, "solver output not bitwise reproducible");
      Eigen::Map<const Eigen::VectorXd> xv(r1.x.data(), static_cast<Eigen::Index>(r1.x.size()));
      Eigen::VectorXd e = xv - xs;
      double err = std::sqrt(e.dot(u * e) / xs.dot(u * xs));
      worst = std::max(worst, err / eps);
      o.require(err <= eps, "relative U-norm error above eps");
    }
  }
  o.detail << " instances=" << inst.size() << " max n=" << max_n << " worst error/eps=" << worst;
}

// 6. Cycle counterexample.
void criterion6(Outcome& o) {
  DenseMatrix l = oracle::laplacian(directed_cycle(5));
  auto spec = oracle::transpose_preconditioned_spectrum(l);
  o.require(spec.size() == 4, "image spectrum does not have 4 eigenvalues");
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    std::complex<double> want = -std::polar(1.0, 2.0 * M_PI * k / 5.0);
    double best = 1e300;
    for (auto z : spec) best = std::min(best, std::abs(z - want));
    worst = std::max(worst, best);
  }
  o.require(worst <= 1e-8, "spectrum differs from -exp(2 pi i k/5)");
  bool has = false;
  for (auto z : spec) has = has || std::abs(z - std::complex<double>(-0.309, -0.951)) < 1e-3;
  o.require(has, "-0.309 - 0.951i missing");
  double min_radius = 1e300;
  for (int i = 1; i <= 100; ++i) min_radius = std::min(min_radius, oracle::transpose_richardson_radius(l, 0.02 * i));
  o.require(min_radius > 1.0, "some step size in (0,2] converges");
  o.detail << " max eigenvalue deviation=" << worst << " min radius over grid=" << min_radius;
}

// 7. RCDD.
void criterion7(Outcome& o) {
  double min_drop = 1e300, min_ratio = 1e300;
  std::size_t drops_below = 0, eliminations = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    std::size_t n = 10 + (i * 97) % 491;
    auto g = random_eulerian(n, 700 + i);
    std::vector<Vertex> all(n);
    for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<Vertex>(v);
    o.require(psi(g, all) == static_cast<double>(n), "Psi(V) != n");
    auto r = find_rcdd(g);
    o.require(verify_rcdd(g, r.subset, 0.25), "subset is not 1/4-RCDD");
    o.require(r.subset.size() * 64 >= n, "subset smaller than n/64");
    min_ratio = std::min(min_ratio, static_cast<double>(r.subset.size()) / static_cast<double>(n));
    for (const auto* trace : {&r.psi_trace, &r.psi_trace_second})
      for (std::size_t k = 1; k < trace->size(); ++k) {
        double drop = (*trace)[k - 1] - (*trace)[k];
        ++eliminations;
        min_drop = std::min(min_drop, drop);
        if (drop < 1.5 - 1e-9) ++drops_below;
      }
  }
  o.require(drops_below == 0, "a potential drop below 3/2");
  FindDDTrace t;
  auto s = find_dd(directed_cycle(5), &t);
  o.require(s == std::vector<Vertex>{1, 3}, "5-cycle trace does not give {1,3}");
  o.detail << " min |S|/n=" << min_ratio << " min drop=" << min_drop << " drops<3/2: " << drops_below << "/"
           << eliminations;
}

// 8. Degree-preserving undirected sparsification.
void criterion8(Outcome& o) {
  double worst_lo = 1e300, worst_hi = 0.0, worst_deg = 0.0;
  std::size_t sparsified = 0;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (std::size_t i = 0; i < 10; ++i) {
    std::size_t n = 20 + 4 * i;
    double kappa = i % 2 == 0 ? 4.0 : 2.0;
    // Dense graphs with a few weight classes force the barrier path.
    std::vector<UEdge> es;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (ud(rng) < 0.8 || v == u + 1) es.push_back({u, v, 1.0 + std::floor(3.0 * ud(rng))});
    UndirectedGraph g = build_undirected(n, es);
    SparsifierReport rep;
    UndirectedGraph h = sparsify_deg(g, kappa, &rep);
    if (!rep.fast_path) ++sparsified;
    double dev = 0.0;
    for (std::size_t v = 0; v < n; ++v) dev = std::max(dev, std::abs(h.degree()[v] - g.degree()[v]) / g.degree()[v]);
    worst_deg = std::max(worst_deg, dev);
    o.require(dev <= 1e-12, "degrees not restored");
    auto s = oracle::loewner_sandwich(oracle::laplacian(g), oracle::laplacian(h));
    worst_lo = std::min(worst_lo, s.lo * kappa * kappa);
    worst_hi = std::max(worst_hi, s.hi);
    o.require(s.lo >= 1.0 / (kappa * kappa) && s.hi <= 1.0 + 1e-9, "sandwich outside [1/kappa^2, 1]");
  }
  o.detail << " sparsified=" << sparsified << "/10 min lo*kappa^2=" << worst_lo << " max hi=" << worst_hi
           << " max rel degree error=" << worst_deg;
}

// 9. Determinism.
void criterion9(Outcome& o) {
  auto run = [](std::uint64_t seed) {
    std::ostringstream os;
    os.precision(17);
    auto g = random_eulerian(48, seed);
    auto dump = [&os](const DirectedGraph& h) {
      for (const auto& e : h.edges()) os << e.tail << ' ' << e.head << ' ' << e.weight << '\n';
    };
    dump(g);
    auto sd = sparsify_directed(g);
    dump(sd.r);
    os << sd.report.phi_certified << ' ' << sd.report.parts << '\n';
    auto dense = random_eulerian(40, seed, 40);
    auto sp = spectral_sparsify(undirectify(dense), 3.0);
    for (const auto& e : sp.edges()) os << e.u << ' ' << e.v << ' ' << e.weight << '\n';
    dump(to_bidirected(sparsify_deg(undirectify(dense), 3.0)));
    dump(sparse_square(g, 0.25));
    BipartiteOptions forced;
    forced.force_template = true;
    forced.template_degree = 5;
    dump(sparse_square(g, 0.25, forced));
    auto dec = expander_decompose(undirectify(g));
    for (const auto& p : dec.parts) {
      for (Vertex v : p) os << v << ' ';
      os << '\n';
    }
    auto ch = build_chain(g, {});
    for (const auto& l : ch.levels) dump(l.g0);
    Vec b(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) b[i] = std::cos(static_cast<double>(i));
    auto sol = solve_with_chain(ch, g, b, 1e-6);
    for (double v : sol.x) os << v << ' ';
    os << sol.report.matvecs << ' ' << sol.report.outer_iterations << '\n';
    for (const auto& s : sol.report.stages) os << s.iterations << ' ' << s.eta << ' ' << s.measured_ratio << '\n';
    auto rc = find_rcdd(g);
    for (Vertex v : rc.subset) os << v << ' ';
    for (double p : rc.psi_trace) os << p << ' ';
    os << '\n';
    return os.str();
  };
  std::size_t bytes = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    std::string a = run(seed), b = run(seed);
    bytes += a.size();
    o.require(a == b, "outputs differ between identical runs");
  }
  o.detail << " compared " << bytes << " bytes of serialized outputs";
}

}  // namespace

int main() {
  struct Crit {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> fn;
  };
  std::vector<Crit> crits = {
      {1, "partial-symmetrization contraction", 30, criterion1},
      {2, "directed-part sparsifier", 120, criterion2},
      {3, "bipartite/product squaring", 120, criterion3},
      {4, "chain spectral progress", 180, criterion4},
      {5, "end-to-end solver", 300, criterion5},
      {6, "cycle counterexample regression", 1, criterion6},
      {7, "RCDD", 30, criterion7},
      {8, "degree-preserving undirected sparsification", 60, criterion8},
      {9, "determinism", 1e300, criterion9},
  };
  int failures = 0;
  for (auto& c : crits) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.budget_s;
    if (!in_time) o.detail << " over time budget;";
    bool ok = o.pass && in_time;
    failures += ok ? 0 : 1;
    std::printf("[%s] criterion %d (%s): %.2fs;%s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(crits.size()) - failures, crits.size());
  return failures == 0 ? 0 : 1;
}
