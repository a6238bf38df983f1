#include "dirlap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dirlap {

DirectedGraph directed_cycle(std::size_t n, double weight) {
  if (n < 2) throw Error(ErrorCode::BadParams, "cycle needs n >= 2");
  std::vector<Edge> es;
  for (std::size_t v = 0; v < n; ++v)
    es.push_back({static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n), weight});
  return build(n, std::move(es));
}

DirectedGraph directed_torus(std::size_t side) {
  if (side < 2) throw Error(ErrorCode::BadParams, "torus needs side >= 2");
  std::vector<Edge> es;
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t c = 0; c < side; ++c) {
      auto id = [&](std::size_t rr, std::size_t cc) { return static_cast<Vertex>(rr * side + cc); };
      es.push_back({id(r, c), id(r, (c + 1) % side), 1.0});
      es.push_back({id(r, c), id((r + 1) % side, c), 1.0});
    }
  return build(side * side, std::move(es));
}

DirectedGraph random_eulerian(std::size_t n, std::uint64_t seed, std::size_t cycles, int max_weight) {
  if (n < 2) throw Error(ErrorCode::BadParams, "random_eulerian needs n >= 2");
  if (max_weight < 1) throw Error(ErrorCode::BadParams, "max_weight must be >= 1");
  std::mt19937_64 rng(seed);
  if (cycles == 0) cycles = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))));
  std::uniform_int_distribution<int> wdist(1, max_weight);
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Edge> es;
  auto add_cycle = [&](const std::vector<Vertex>& vs) {
    double w = wdist(rng);
    for (std::size_t i = 0; i < vs.size(); ++i) es.push_back({vs[i], vs[(i + 1) % vs.size()], w});
  };
  std::shuffle(perm.begin(), perm.end(), rng);
  add_cycle(perm);
  std::uniform_int_distribution<std::size_t> len(2, std::max<std::size_t>(2, n));
  for (std::size_t c = 0; c < cycles; ++c) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Vertex> vs(perm.begin(), perm.begin() + len(rng));
    add_cycle(vs);
  }
  return build(n, std::move(es));
}

DirectedGraph de_bruijn(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadParams, "de_bruijn needs n >= 2");
  std::size_t m = 1;
  while (2 * m <= n) m *= 2;
  std::vector<Edge> es;
  for (std::size_t v = 0; v < m; ++v)
    for (std::size_t b = 0; b < 2; ++b)
      es.push_back({static_cast<Vertex>(v), static_cast<Vertex>((2 * v + b) % m), 1.0});
  return build(m, std::move(es));
}

DirectedGraph generate(const std::string& kind, std::size_t n, std::uint64_t seed) {
  if (kind == "cycle") return directed_cycle(n);
  if (kind == "torus") {
    std::size_t side = 1;
    while ((side + 1) * (side + 1) <= n) ++side;
    return directed_torus(side);
  }
  if (kind == "random-eulerian") return random_eulerian(n, seed);
  if (kind == "de-bruijn") return de_bruijn(n);
  throw Error(ErrorCode::BadParams, "unknown generator kind '" + kind + "'");
}

}  // namespace dirlap
