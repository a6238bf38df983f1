#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dirlap/dense.hpp"
#include "dirlap/graph.hpp"

namespace dirlap {

// Linear map on R^dim whose left and right kernels are span(kernel_basis).
// kernel_basis vectors are orthonormal.
class LinearOperator {
 public:
  using ApplyFn = std::function<void(const Vec&, Vec&)>;

  LinearOperator() = default;
  LinearOperator(std::size_t dim, ApplyFn fn, std::vector<Vec> kernel_basis = {}, std::string label = "");

  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& kernel_basis() const { return kernel_; }
  const std::string& label() const { return label_; }
  // Number of apply() calls made on this operator or its copies.
  std::uint64_t applications() const { return *count_; }

  Vec apply(const Vec& x) const;
  void apply(const Vec& x, Vec& y) const;

 private:
  std::size_t dim_ = 0;
  std::shared_ptr<const ApplyFn> fn_;
  std::vector<Vec> kernel_;
  std::string label_;
  std::shared_ptr<std::uint64_t> count_ = std::make_shared<std::uint64_t>(0);
};

struct RichardsonConfig {
  double eta = 1.0;
  std::size_t iterations = 1;
};

Vec project_out_kernel(const Vec& b, const std::vector<Vec>& kernel_basis);

// x_{i+1} = x_i + eta Z (b - M x_i), x_0 = 0.
Vec richardson(const LinearOperator& m, const LinearOperator& z, const Vec& b, const RichardsonConfig& cfg);

// The operator b -> x_N of the iteration above.
LinearOperator as_operator(const LinearOperator& m, const LinearOperator& z, const RichardsonConfig& cfg,
                           std::string label = "richardson");

// Operator helpers.
LinearOperator from_dense(const oracle::DenseMatrix& m, std::vector<Vec> kernel_basis = {}, std::string label = "dense");
oracle::DenseMatrix materialize(const LinearOperator& op);
LinearOperator scaled_identity(std::size_t dim, double c, std::vector<Vec> kernel_basis = {});
LinearOperator scaled(const LinearOperator& op, double c);

// D^{+/2} L D^{+/2} for the directed Laplacian of g and the degree vector d.
LinearOperator normalized_laplacian_operator(const DirectedGraph& g, const Vec& d, std::string label = "M");
// Unit vector along d^{1/2}.
Vec sqrt_degree_kernel(const Vec& d);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

}  // namespace dirlap
