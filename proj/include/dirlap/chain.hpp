#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dirlap/graph.hpp"
#include "dirlap/richardson.hpp"
#include "dirlap/sparsify_directed.hpp"
#include "dirlap/sparsify_undirected.hpp"
#include "dirlap/square.hpp"

namespace dirlap {

struct ChainParams {
  double gamma = 0.5;
  double delta = 0.5;
  std::size_t d = 3;         // squarings per level (a minimum under auto_k)
  std::size_t k = 1;         // levels below the top; used when auto_k is false
  bool auto_k = true;
  std::size_t max_levels = 1;
  double alpha = 0.25;
  double eps0 = 0.0;         // 0: min(1/(30 e^{5d}), 1e-4)
  double beta = 8.0;
  double eta = 0.0;          // 0: certified lower constant of the undirected sparsifier
  double kappa_target = 4.0;
  double phi_target = 0.05;
  double lambda_hat = 0.0;   // 0: heuristic fallback 1/(8 n w_max/w_min)
  bool paper_mode = false;
  bool build_last_level = false;

  // Solver budgets.
  double stage_target = 0.1;
  double leaf_target = 0.01;
  std::size_t max_stage_iterations = 300;
  std::size_t max_outer_iterations = 200;
  std::size_t probes = 2;
  std::uint64_t max_matvecs = 2'000'000'000ULL;

  void validate() const;
};

// Parameter formulas of the asymptotic analysis, for auditing.
ChainParams paper_parameters(std::size_t n, double lambda_hat, double gamma = 0.5);

double default_eps0(std::size_t d);
// Squarings needed to lift lambda_hat to 1/4 at the guaranteed per-square rate.
std::size_t squarings_needed(double lambda_hat, double eps0);
double fallback_lambda_hat(const DirectedGraph& g);

struct SparsificationQuadruple {
  DirectedGraph g0, g1, g2, g3;
  DirectedGraph r;
  double beta = 0.0;
  double eta = 0.0;
  DirectedSparsifyReport directed_report;
  SparsifierReport undirected_report;
};

SparsificationQuadruple build_quadruple(const DirectedGraph& g0, const ChainParams& params);

// (1 - alpha) g + alpha G_D with G_D the self-loops of weight D.
DirectedGraph lazy_graph(const DirectedGraph& g, double alpha, const Vec& degrees);

struct SquareChain {
  std::vector<DirectedGraph> graphs;  // graphs[0] = scaled G3, graphs[j] = square of lazy graphs[j-1]
  Vec degrees;
  double alpha = 0.25;
  double eps0 = 0.0;
  std::vector<SquareReport> reports;
};

SquareChain build_square_chain(const DirectedGraph& g3_scaled, std::size_t d, double alpha, double eps0,
                               const Vec& degrees);

struct ChainLevel {
  DirectedGraph g0;
  std::optional<SparsificationQuadruple> quad;
  std::optional<SquareChain> chain;
};

struct PseudoinverseChain {
  std::vector<ChainLevel> levels;  // levels.size() == k + 1
  Vec degrees;
  ChainParams params;  // resolved values
  std::size_t k = 0;
  std::size_t d = 0;
  double eps0 = 0.0;
  double lambda_hat = 0.0;
  bool lambda_hat_heuristic = false;
  std::vector<std::string> notes;
};

PseudoinverseChain build_chain(const DirectedGraph& g, const ChainParams& params);

// Dense oracle measurements of one square chain, normalized by its degrees.
struct SquareChainSpectra {
  std::vector<double> lambda_star;  // lambda_*(U_{I - A_j}) for j = 0..d
  std::vector<double> kappa;        // kappa(I - A_j, I - A_{j-1}) for j = 1..d
};
SquareChainSpectra square_chain_spectra(const SquareChain& c);

struct StageStats {
  std::size_t level = 0;
  int stage = 0;  // 0..3 for peel stages, -1 for the leaf
  double eta = 1.0;
  std::size_t iterations = 0;
  double measured_ratio = 0.0;  // worst probe error ratio after `iterations`
  double target = 0.0;
  std::uint64_t applications = 0;
};

struct SolveReport {
  std::vector<StageStats> stages;
  std::size_t outer_iterations = 0;
  double final_update_ratio = 0.0;
  std::uint64_t matvecs = 0;
  bool input_in_kernel = false;
  std::size_t k = 0;
  std::size_t d = 0;
  double beta = 0.0;
  std::vector<double> eta_per_level;
  double lambda_hat = 0.0;
  bool lambda_hat_heuristic = false;
  std::vector<std::size_t> edges_per_level;
};

// Shared work counter that throws BudgetExceeded past the cap.
struct MatvecBudget {
  std::uint64_t used = 0;
  std::uint64_t cap = 0;
  void charge(std::uint64_t n = 1);
};

// Operator Z_0^{(level)} approximating (D^{+/2} L_{G_0^{(level)}} D^{+/2})^+ to eps.
LinearOperator solve_chain(const PseudoinverseChain& chain, std::size_t level, double eps,
                           SolveReport* report = nullptr, std::shared_ptr<MatvecBudget> budget = nullptr);

struct SolveResult {
  Vec x;
  SolveReport report;
};

SolveResult solve_eulerian(const DirectedGraph& g, const Vec& b, double eps, const ChainParams& params = {});
SolveResult solve_with_chain(const PseudoinverseChain& chain, const DirectedGraph& g, const Vec& b, double eps);

}  // namespace dirlap
