// dirlap command-line front end.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dirlap/chain.hpp"
#include "dirlap/dense.hpp"
#include "dirlap/expander.hpp"
#include "dirlap/generators.hpp"
#include "dirlap/io.hpp"
#include "dirlap/parallel.hpp"
#include "dirlap/rcdd.hpp"
#include "dirlap/sparsify_directed.hpp"
#include "dirlap/sparsify_undirected.hpp"
#include "dirlap/square.hpp"

using json = nlohmann::ordered_json;
using namespace dirlap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

// Size limit for dense oracle checks.
constexpr std::size_t kOracleLimit = 1500;

class Timer {
 public:
  void phase(const std::string& name) {
    auto now = std::chrono::steady_clock::now();
    if (!current_.empty()) times_[current_] = std::chrono::duration<double>(now - start_).count();
    current_ = name;
    start_ = now;
  }
  json finish() {
    phase("");
    json j = json::object();
    for (const auto& [k, v] : times_) j[k] = v;
    return j;
  }

 private:
  std::string current_;
  std::chrono::steady_clock::time_point start_;
  std::map<std::string, double> times_;
};

struct Common {
  std::string input;
  std::string output;
  std::string report;
  bool check = false;
};

void add_common(CLI::App* sub, Common& c, bool needs_input = true) {
  auto* opt = sub->add_option("-i,--input", c.input, "Graph file (edge list, or Matrix Market with .mtx)");
  if (needs_input) opt->required();
  sub->add_option("-o,--output", c.output, "Output file");
  sub->add_option("-r,--report", c.report, "Write the JSON report here instead of stdout");
  sub->add_flag("--check", c.check, "Verify against the dense oracle (small graphs only)");
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << j.dump(2) << "\n";
}

void write_graph(const std::string& path, const DirectedGraph& g) {
  if (path.empty())
    write_edge_list(std::cout, g);
  else
    write_edge_list_file(path, g);
}

json graph_summary(const DirectedGraph& g) {
  return {{"n", g.n()}, {"edges", g.num_edges()}, {"total_weight", g.total_weight()}};
}

void require_oracle_size(std::size_t n) {
  if (n > kOracleLimit)
    throw Error(ErrorCode::TooLarge, "--check needs n <= " + std::to_string(kOracleLimit));
}

json stage_json(const StageStats& s) {
  return {{"level", s.level},       {"stage", s.stage},   {"eta", s.eta},
          {"iterations", s.iterations}, {"measured_ratio", s.measured_ratio},
          {"ratio_norm", "symmetrized normalized Laplacian seminorm, worst probe"},
          {"target", s.target}};
}

json params_json(const ChainParams& p) {
  return {{"d", p.d},
          {"k", p.k},
          {"auto_k", p.auto_k},
          {"max_levels", p.max_levels},
          {"alpha", p.alpha},
          {"eps0", p.eps0},
          {"beta", p.beta},
          {"eta", p.eta},
          {"kappa_target", p.kappa_target},
          {"phi_target", p.phi_target},
          {"lambda_hat", p.lambda_hat},
          {"paper_mode", p.paper_mode},
          {"stage_target", p.stage_target},
          {"leaf_target", p.leaf_target},
          {"max_stage_iterations", p.max_stage_iterations},
          {"max_outer_iterations", p.max_outer_iterations},
          {"max_matvecs", p.max_matvecs}};
}

void add_chain_options(CLI::App* sub, ChainParams& p) {
  sub->add_option("--beta", p.beta, "Partial symmetrization weight");
  sub->add_option("--alpha", p.alpha, "Laziness of each squaring step");
  sub->add_option("--d", p.d, "Squarings per level (minimum when levels are automatic)");
  sub->add_option("--max-levels", p.max_levels, "Upper bound on chain levels");
  sub->add_option("--lambda-hat", p.lambda_hat, "Lower bound on lambda_* of the normalized Laplacian");
  sub->add_option("--eta", p.eta, "Undirected sparsifier scale (0 = certified lower constant)");
  sub->add_option("--kappa", p.kappa_target, "Undirected sparsifier target condition number");
  sub->add_option("--phi", p.phi_target, "Expander conductance target");
  sub->add_option("--max-matvecs", p.max_matvecs, "Matrix-vector product budget");
}

Vec random_rhs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec b(n);
  for (double& v : b) v = nd(rng);
  double mean = 0.0;
  for (double v : b) mean += v;
  mean /= static_cast<double>(n);
  for (double& v : b) v -= mean;
  return b;
}

// ||x - L^+ b||_U / ||L^+ b||_U with U = (L + L^T)/2.
double oracle_solve_error(const DirectedGraph& g, const Vec& b, const Vec& x) {
  oracle::DenseMatrix l = oracle::laplacian(g);
  oracle::DenseMatrix u = oracle::symmetrization(l);
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXd bb = bv.array() - bv.mean();
  Eigen::VectorXd xs = oracle::pseudoinverse(l) * bb;
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd e = xv - xs;
  double den = xs.dot(u * xs);
  return den > 0.0 ? std::sqrt(std::max(e.dot(u * e), 0.0) / den) : std::sqrt(std::max(e.dot(u * e), 0.0));
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::CertificationFailed:
    case ErrorCode::LayerBudgetExceeded:
    case ErrorCode::NonFinite:
    case ErrorCode::NotPSD:
    case ErrorCode::KernelViolation:
    case ErrorCode::KernelMismatch:
    case ErrorCode::DegreeImbalance:
    case ErrorCode::MassImbalance:
      return kExitSolver;
    default:
      return kExitInput;
  }
}

// Subcommands.

int cmd_generate(const std::string& kind, std::size_t n, std::uint64_t seed, const Common& c) {
  DirectedGraph g = generate(kind, n, seed);
  write_graph(c.output, g);
  if (!c.report.empty())
    emit({{"command", "generate"}, {"params", {{"kind", kind}, {"n", n}, {"seed", seed}}}, {"graph", graph_summary(g)},
          {"output", c.output}},
         c.report);
  return kExitOk;
}

int cmd_solve(const Common& c, const std::string& b_file, std::optional<std::uint64_t> b_seed, double eps,
              const ChainParams& params) {
  Timer t;
  t.phase("read");
  DirectedGraph g = read_graph_file(c.input);
  Vec b;
  if (!b_file.empty()) {
    b = read_vector_file(b_file);
  } else {
    b = random_rhs(g.n(), b_seed.value_or(1));
  }
  if (b.size() != g.n()) throw Error(ErrorCode::DimensionMismatch, "b has " + std::to_string(b.size()) + " entries");
  for (double v : b)
    if (!std::isfinite(v)) throw Error(ErrorCode::ParseError, "b contains a non-finite entry");
  if (c.check) require_oracle_size(g.n());

  json rep = {{"command", "solve"}, {"input", c.input}};
  rep["params"] = params_json(params);
  rep["params"]["eps"] = eps;
  if (b_seed) rep["params"]["b_random_seed"] = *b_seed;
  if (!b_file.empty()) rep["params"]["b_file"] = b_file;

  t.phase("build_chain");
  PseudoinverseChain chain = build_chain(g, params);
  t.phase("solve");
  SolveResult res = solve_with_chain(chain, g, b, eps);
  t.phase("output");
  if (!c.output.empty()) {
    std::ofstream f(c.output);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + c.output);
    write_vector(f, res.x);
  }

  json chain_j = {{"k", chain.k}, {"d", chain.d}, {"eps0", chain.eps0}, {"lambda_hat", chain.lambda_hat},
                  {"lambda_hat_heuristic", chain.lambda_hat_heuristic}, {"notes", chain.notes},
                  {"edges_per_level", res.report.edges_per_level}, {"eta_per_level", res.report.eta_per_level}};
  rep["chain"] = chain_j;
  json stages = json::array();
  for (const auto& s : res.report.stages) stages.push_back(stage_json(s));
  rep["stages"] = stages;
  rep["applications"] = {{"matvecs", res.report.matvecs}, {"outer_iterations", res.report.outer_iterations}};
  rep["final_update_ratio"] = res.report.final_update_ratio;
  rep["input_in_kernel"] = res.report.input_in_kernel;
  if (c.check) {
    t.phase("check");
    double err = oracle_solve_error(g, b, res.x);
    rep["measured"] = {{"relative_error", err}, {"norm", "U_L seminorm, U_L = (L + L^T)/2"}, {"pass", err <= eps}};
  }
  rep["output"] = c.output;
  rep["timings"] = t.finish();
  emit(rep, c.report);
  if (c.check && !(rep["measured"]["relative_error"].get<double>() <= eps)) return kExitSolver;
  return kExitOk;
}

int cmd_sparsify(const Common& c, bool directed, double kappa, double phi, bool deg) {
  Timer t;
  t.phase("read");
  DirectedGraph g = read_graph_file(c.input);
  if (c.check) require_oracle_size(g.n());
  json rep = {{"command", "sparsify"}, {"input", c.input}};
  if (directed) {
    rep["params"] = {{"mode", "directed"}, {"phi_target", phi}};
    t.phase("sparsify");
    DirectedSparsifyOptions o;
    o.phi_target = phi;
    auto res = sparsify_directed(g, o);
    t.phase("output");
    write_graph(c.output, res.r);
    const auto& r = res.report;
    rep["result"] = {{"edges_in", r.edges_in},   {"edges_out", r.edges_out},       {"buckets", r.buckets},
                     {"parts", r.parts},         {"max_layers_used", r.max_layers_used},
                     {"phi_certified", r.phi_certified}, {"beta_budget", r.beta_budget()},
                     {"layers_per_bucket", r.layers_per_bucket}};
    if (c.check) {
      t.phase("check");
      bool deg_ok = res.r.out_degree() == g.out_degree() && res.r.in_degree() == g.in_degree();
      double beta = r.beta_budget();
      UndirectedGraph u = undirectify(g);
      oracle::DenseMatrix lu = oracle::laplacian(u);
      oracle::DenseMatrix l1 = oracle::laplacian(partial_symmetrize(g, beta));
      oracle::DenseMatrix l2 = beta * lu + oracle::laplacian(res.r);
      double q = oracle::precond_quality(oracle::pseudoinverse(l2), l1, oracle::symmetrization(l2));
      rep["measured"] = {{"degrees_exact", deg_ok},
                         {"beta", beta},
                         {"precond_quality", q},
                         {"norm", "U_{G2} operator norm, G2 = beta U(G) + R"}};
    }
  } else {
    rep["params"] = {{"mode", deg ? "undirected-degree-preserving" : "undirected"}, {"kappa_target", kappa}};
    t.phase("sparsify");
    UndirectedGraph u = undirectify(g);
    SparsifierReport sr;
    UndirectedGraph h = deg ? sparsify_deg(u, kappa, &sr) : spectral_sparsify(u, kappa, &sr);
    t.phase("output");
    write_graph(c.output, to_bidirected(h));
    rep["result"] = {{"edges_in", sr.edges_in},
                     {"edges_out", sr.edges_out},
                     {"certified_lo", sr.certified_lo},
                     {"certified_hi", sr.certified_hi},
                     {"fast_path", sr.fast_path},
                     {"buckets", sr.buckets},
                     {"buckets_sparsified", sr.buckets_sparsified},
                     {"degree_residual", sr.degree_residual},
                     {"degree_error", sr.degree_error}};
    if (c.check) {
      t.phase("check");
      auto s = oracle::loewner_sandwich(oracle::laplacian(u), oracle::laplacian(h));
      rep["measured"] = {{"sandwich_lo", s.lo}, {"sandwich_hi", s.hi}, {"kappa", s.hi / s.lo},
                         {"norm", "Loewner order on the common image"}};
    }
  }
  rep["output"] = c.output;
  rep["timings"] = t.finish();
  emit(rep, c.report);
  return kExitOk;
}

int cmd_square(const Common& c, double eps) {
  Timer t;
  t.phase("read");
  DirectedGraph g = read_graph_file(c.input);
  if (c.check) require_oracle_size(g.n());
  t.phase("square");
  SquareReport sr;
  DirectedGraph sq = sparse_square(g, eps, {}, &sr);
  t.phase("output");
  write_graph(c.output, sq);
  json rep = {{"command", "square"}, {"input", c.input}, {"params", {{"eps", eps}}}};
  rep["result"] = {{"edges_in", sr.edges_in},
                   {"edges_out", sr.edges_out},
                   {"products_exact", sr.products_exact},
                   {"products_template", sr.products_template}};
  if (c.check) {
    t.phase("check");
    DirectedGraph ex = exact_square(g);
    double err = oracle::approx_error(oracle::laplacian(sq), oracle::laplacian(ex));
    double deg_err = 0.0;
    for (std::size_t v = 0; v < g.n(); ++v) {
      deg_err = std::max(deg_err, std::abs(sq.out_degree()[v] - g.out_degree()[v]) / g.out_degree()[v]);
      deg_err = std::max(deg_err, std::abs(sq.in_degree()[v] - g.in_degree()[v]) / g.in_degree()[v]);
    }
    rep["measured"] = {{"approx_error", err},
                       {"norm", "U_{exact square} whitened spectral norm"},
                       {"max_relative_degree_error", deg_err}};
  }
  rep["output"] = c.output;
  rep["timings"] = t.finish();
  emit(rep, c.report);
  return kExitOk;
}

int cmd_rcdd(const Common& c) {
  Timer t;
  t.phase("read");
  DirectedGraph g = read_graph_file(c.input);
  t.phase("rcdd");
  RcddResult r = find_rcdd(g);
  t.phase("output");
  if (c.output.empty()) {
    for (Vertex v : r.subset) std::cout << v << "\n";
  } else {
    std::ofstream f(c.output);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + c.output);
    for (Vertex v : r.subset) f << v << "\n";
  }
  bool ok = verify_rcdd(g, r.subset, 0.25);
  json rep = {{"command", "rcdd"},
              {"input", c.input},
              {"size", r.subset.size()},
              {"rho", r.rho},
              {"verified_quarter", ok},
              {"first_pass_size", r.first_pass.size()},
              {"eliminated_first", r.first_trace.eliminated},
              {"psi_trace", r.psi_trace},
              {"psi_trace_second", r.psi_trace_second},
              {"notes", r.notes},
              {"output", c.output}};
  rep["timings"] = t.finish();
  // The subset goes to stdout when no output file is given; keep the trace on stderr then.
  if (c.report.empty() && c.output.empty())
    std::cerr << rep.dump(2) << "\n";
  else
    emit(rep, c.report);
  return ok ? kExitOk : kExitSolver;
}

int cmd_decompose(const Common& c, double phi) {
  Timer t;
  t.phase("read");
  DirectedGraph g = read_graph_file(c.input);
  t.phase("decompose");
  DecomposeOptions o;
  o.phi_target = phi;
  auto dec = expander_decompose(undirectify(g), o);
  json parts = json::array();
  for (std::size_t i = 0; i < dec.parts.size(); ++i) {
    double cert = dec.certificates[i];
    parts.push_back({{"vertices", dec.parts[i]}, {"certificate", std::isfinite(cert) ? json(cert) : json("inf")}});
  }
  json rep = {{"command", "decompose"},
              {"input", c.input},
              {"params", {{"phi_target", phi}}},
              {"phi_certified", dec.phi_certified},
              {"phi_used", dec.phi_used},
              {"cross_fraction", dec.cross_fraction},
              {"parts", parts}};
  rep["timings"] = t.finish();
  emit(rep, c.report.empty() ? c.output : c.report);
  return kExitOk;
}

int cmd_chain(const Common& c, const ChainParams& params) {
  Timer t;
  t.phase("read");
  DirectedGraph g = read_graph_file(c.input);
  if (c.check) require_oracle_size(g.n());
  t.phase("build_chain");
  PseudoinverseChain ch = build_chain(g, params);
  json rep = {{"command", "chain"}, {"input", c.input}, {"params", params_json(params)}};
  rep["resolved"] = {{"k", ch.k}, {"d", ch.d}, {"eps0", ch.eps0}, {"lambda_hat", ch.lambda_hat},
                     {"lambda_hat_heuristic", ch.lambda_hat_heuristic}, {"notes", ch.notes}};
  json levels = json::array();
  for (std::size_t l = 0; l < ch.levels.size(); ++l) {
    const auto& lvl = ch.levels[l];
    json j = {{"level", l}, {"g0", graph_summary(lvl.g0)}};
    if (lvl.quad) {
      j["eta"] = lvl.quad->eta;
      j["beta"] = lvl.quad->beta;
      j["r_edges"] = lvl.quad->r.num_edges();
      j["g3_edges"] = lvl.quad->g3.num_edges();
      j["undirected_certified"] = {lvl.quad->undirected_report.certified_lo, lvl.quad->undirected_report.certified_hi};
    }
    if (lvl.chain) {
      json edges = json::array();
      for (const auto& gg : lvl.chain->graphs) edges.push_back(gg.num_edges());
      j["square_chain_edges"] = edges;
      if (c.check) {
        auto sp = square_chain_spectra(*lvl.chain);
        j["lambda_star"] = sp.lambda_star;
        j["kappa_consecutive"] = sp.kappa;
        j["measured_norm"] = "symmetrized normalized Laplacians, Loewner order";
      }
    }
    levels.push_back(j);
  }
  rep["levels"] = levels;
  rep["timings"] = t.finish();
  emit(rep, c.report.empty() ? c.output : c.report);
  return kExitOk;
}

int cmd_check(const std::string& target, const std::string& report) {
  json rep = {{"command", "check"}, {"target", target}};
  if (target != "cycle5") {
    DirectedGraph g = read_graph_file(target);
    bool eul = is_eulerian(g), sc = is_strongly_connected(g);
    rep["graph"] = graph_summary(g);
    rep["eulerian"] = eul;
    rep["strongly_connected"] = sc;
    emit(rep, report);
    return eul && sc ? kExitOk : kExitInput;
  }
  oracle::DenseMatrix l = oracle::laplacian(directed_cycle(5));
  auto spec = oracle::transpose_preconditioned_spectrum(l);
  // Expected: -exp(2 pi i k / 5), k = 1..4.
  std::vector<std::complex<double>> expected;
  for (int k = 1; k <= 4; ++k) expected.push_back(-std::polar(1.0, 2.0 * std::numbers::pi * k / 5.0));
  double worst = 0.0;
  for (const auto& e : expected) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : spec) best = std::min(best, std::abs(s - e));
    worst = std::max(worst, best);
  }
  bool has_point = false;
  for (const auto& s : spec) has_point = has_point || std::abs(s - std::complex<double>(-0.309, -0.951)) < 1e-3;
  double min_radius = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) min_radius = std::min(min_radius, oracle::transpose_richardson_radius(l, 0.02 * i));
  json ev = json::array();
  for (const auto& s : spec) ev.push_back({s.real(), s.imag()});
  bool ok = spec.size() == 4 && worst <= 1e-8 && has_point && min_radius > 1.0;
  rep["spectrum"] = ev;
  rep["max_deviation"] = worst;
  rep["contains_-0.309-0.951i"] = has_point;
  rep["min_radius_over_eta_grid"] = min_radius;
  rep["reproduced"] = ok;
  emit(rep, report);
  return ok ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dirlap: Eulerian Laplacian solver and graph tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dirlap 1.0");
  app.footer("Environment: DIRLAP_THREADS caps worker threads. Exit codes: 0 ok, 1 input error, 2 solver failure.");

  Common gen_c, solve_c, sp_c, sq_c, rc_c, de_c, ch_c;
  std::string kind = "random-eulerian";
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("generate", "Generate a strongly connected Eulerian graph");
  gen->add_option("kind", kind, "cycle | torus | random-eulerian | de-bruijn")
      ->check(CLI::IsMember({"cycle", "torus", "random-eulerian", "de-bruijn"}));
  gen->add_option("-n,--n", gen_n, "Number of vertices")->required();
  gen->add_option("--seed", gen_seed, "Random seed");
  add_common(gen, gen_c, false);
  gen->remove_option(gen->get_option("--check"));
  gen->remove_option(gen->get_option("--input"));

  std::string b_file;
  std::uint64_t b_seed_value = 0;
  double eps = 1e-6;
  ChainParams solve_params;
  auto* solve = app.add_subcommand("solve", "Solve L x = b for an Eulerian Laplacian");
  add_common(solve, solve_c);
  auto* b_opt = solve->add_option("--b", b_file, "Right-hand side file, one value per line");
  auto* b_rand = solve->add_option("--b-random", b_seed_value, "Seed for a random right-hand side");
  b_opt->excludes(b_rand);
  solve->add_option("--eps", eps, "Target relative error in the U_L seminorm");
  add_chain_options(solve, solve_params);

  bool directed = false, undirected = false, no_deg = false;
  double kappa = 4.0, phi = 0.05;
  auto* sp = app.add_subcommand("sparsify", "Directed or degree-preserving undirected sparsification");
  add_common(sp, sp_c);
  auto* dflag = sp->add_flag("--directed", directed, "Patched expander sparsifier of a directed Eulerian graph");
  auto* uflag = sp->add_flag("--undirected", undirected, "Barrier sparsifier of the undirectification");
  dflag->excludes(uflag);
  sp->add_flag("--no-degree-patch", no_deg, "Undirected mode: skip the self-loop degree patch");
  sp->add_option("--kappa", kappa, "Undirected target condition number");
  sp->add_option("--phi", phi, "Directed expander conductance target");

  double sq_eps = 0.25;
  auto* sq = app.add_subcommand("square", "Sparse square of an Eulerian graph");
  add_common(sq, sq_c);
  sq->add_option("--eps", sq_eps, "Approximation target");

  auto* rc = app.add_subcommand("rcdd", "Find a 1/4-RCDD vertex subset");
  add_common(rc, rc_c);
  rc->remove_option(rc->get_option("--check"));

  double de_phi = 0.05;
  auto* de = app.add_subcommand("decompose", "Expander decomposition of the undirectification");
  add_common(de, de_c);
  de->remove_option(de->get_option("--check"));
  de->add_option("--phi", de_phi, "Conductance target");

  ChainParams chain_params;
  auto* ch = app.add_subcommand("chain", "Build a pseudoinverse chain and report its levels");
  add_common(ch, ch_c);
  add_chain_options(ch, chain_params);

  std::string check_target, check_report;
  auto* chk = app.add_subcommand("check", "Regression checks: 'cycle5' or a graph file");
  chk->add_option("target", check_target, "cycle5 or a graph path")->required();
  chk->add_option("-r,--report", check_report, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc_code = app.exit(e);
    return rc_code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen) return cmd_generate(kind, gen_n, gen_seed, gen_c);
    if (*solve) {
      std::optional<std::uint64_t> seed;
      if (b_rand->count() > 0) seed = b_seed_value;
      if (b_file.empty() && !seed) seed = 1;
      return cmd_solve(solve_c, b_file, seed, eps, solve_params);
    }
    if (*sp) {
      if (!directed && !undirected) throw Error(ErrorCode::BadParams, "choose --directed or --undirected");
      return cmd_sparsify(sp_c, directed, kappa, phi, !no_deg);
    }
    if (*sq) return cmd_square(sq_c, sq_eps);
    if (*rc) return cmd_rcdd(rc_c);
    if (*de) return cmd_decompose(de_c, de_phi);
    if (*ch) return cmd_chain(ch_c, chain_params);
    if (*chk) return cmd_check(check_target, check_report);
  } catch (const Error& e) {
    std::cerr << "dirlap: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "dirlap: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
