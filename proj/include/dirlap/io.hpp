#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dirlap/graph.hpp"

namespace dirlap {

// Edge list: "tail head weight" per line, 0-indexed, '#' comments.
// n is max index + 1 unless a "# n <count>" header is present.
DirectedGraph read_edge_list(std::istream& in);
DirectedGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const DirectedGraph& g);
void write_edge_list_file(const std::string& path, const DirectedGraph& g);

// Matrix Market coordinate real general holding L = D - A^T.
// Entry -w at (row, col), row != col, becomes edge col -> row.
DirectedGraph read_matrix_market(std::istream& in);

// Dispatches on the ".mtx" suffix.
DirectedGraph read_graph_file(const std::string& path);

Vec read_vector_file(const std::string& path);
void write_vector(std::ostream& out, const Vec& v);

}  // namespace dirlap
