#pragma once

#include <cstdint>
#include <string>

#include "dirlap/graph.hpp"

namespace dirlap {

DirectedGraph directed_cycle(std::size_t n, double weight = 1.0);
// side x side torus with unit edges right and down.
DirectedGraph directed_torus(std::size_t side);
// Superposition of `cycles` random directed cycles over random vertex subsets
// plus one Hamiltonian cycle; integer weights in [1, max_weight].
// cycles = 0 selects ceil(log2 n).
DirectedGraph random_eulerian(std::size_t n, std::uint64_t seed, std::size_t cycles = 0,
                              int max_weight = 4);
// de Bruijn graph on binary strings, n rounded down to a power of two.
DirectedGraph de_bruijn(std::size_t n);

DirectedGraph generate(const std::string& kind, std::size_t n, std::uint64_t seed);

}  // namespace dirlap
