#include "dirlap/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace dirlap {

DirectedGraph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  bool have_n = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream hdr(line.substr(hash + 1));
      std::string key;
      std::size_t count = 0;
      if (hdr >> key && key == "n" && hdr >> count) {
        n = count;
        have_n = true;
      }
      line.resize(hash);
    }
    std::istringstream ls(line);
    long long t = 0, h = 0;
    double w = 0.0;
    if (!(ls >> t)) continue;
    if (!(ls >> h >> w)) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno));
    if (t < 0 || h < 0) throw Error(ErrorCode::IndexOutOfRange, "negative index on line " + std::to_string(lineno));
    edges.push_back({static_cast<Vertex>(t), static_cast<Vertex>(h), w});
    if (!have_n) n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(t, h)) + 1);
  }
  return build(n, std::move(edges));
}

DirectedGraph read_edge_list_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_edge_list(f);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
  out << "# n " << g.n() << "\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : g.edges()) out << e.tail << ' ' << e.head << ' ' << e.weight << '\n';
}

void write_edge_list_file(const std::string& path, const DirectedGraph& g) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_edge_list(f, g);
}

DirectedGraph read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw Error(ErrorCode::ParseError, "missing MatrixMarket banner");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (format != "coordinate") throw Error(ErrorCode::ParseError, "only coordinate format supported");
  if (field == "complex" || field == "pattern") throw Error(ErrorCode::ParseError, "field must be real or integer");
  bool symmetric = symmetry == "symmetric";
  while (std::getline(in, line) && (line.empty() || line[0] == '%')) {}
  std::istringstream size_line(line);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols >> nnz) || rows != cols)
    throw Error(ErrorCode::ParseError, "bad size line or non-square matrix");
  std::vector<Edge> edges;
  Vec colsum(cols, 0.0);
  double scale = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0, c = 0;
    double v = 0.0;
    if (!(in >> r >> c >> v)) throw Error(ErrorCode::ParseError, "truncated entry list");
    if (r < 1 || c < 1 || r > rows || c > cols) throw Error(ErrorCode::IndexOutOfRange, "matrix entry");
    --r;
    --c;
    scale = std::max(scale, std::abs(v));
    colsum[c] += v;
    if (symmetric && r != c) colsum[r] += v;
    if (r == c) continue;
    if (v > 0.0) throw Error(ErrorCode::ParseError, "positive off-diagonal entry in Laplacian");
    edges.push_back({static_cast<Vertex>(c), static_cast<Vertex>(r), -v});
    if (symmetric) edges.push_back({static_cast<Vertex>(r), static_cast<Vertex>(c), -v});
  }
  for (double s : colsum)
    if (std::abs(s) > 1e-9 * std::max(1.0, scale))
      throw Error(ErrorCode::ParseError, "column sums of a directed Laplacian must vanish");
  return build(rows, std::move(edges));
}

DirectedGraph read_graph_file(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".mtx") {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::IoError, "cannot open " + path);
    return read_matrix_market(f);
  }
  return read_edge_list_file(path);
}

Vec read_vector_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path);
  Vec v;
  double x;
  while (f >> x) v.push_back(x);
  if (!f.eof()) throw Error(ErrorCode::ParseError, "non-numeric token in " + path);
  return v;
}

void write_vector(std::ostream& out, const Vec& v) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (double x : v) out << x << '\n';
}

}  // namespace dirlap
