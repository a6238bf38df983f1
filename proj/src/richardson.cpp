#include "dirlap/richardson.hpp"

#include <cmath>

namespace dirlap {

LinearOperator::LinearOperator(std::size_t dim, ApplyFn fn, std::vector<Vec> kernel_basis, std::string label)
    : dim_(dim), fn_(std::make_shared<const ApplyFn>(std::move(fn))), kernel_(std::move(kernel_basis)),
      label_(std::move(label)) {}

void LinearOperator::apply(const Vec& x, Vec& y) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "operator " + label_);
  y.assign(dim_, 0.0);
  if (fn_) (*fn_)(x, y);
  ++*count_;
}

Vec LinearOperator::apply(const Vec& x) const {
  Vec y;
  apply(x, y);
  return y;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec project_out_kernel(const Vec& b, const std::vector<Vec>& kernel_basis) {
  Vec x = b;
  for (const auto& k : kernel_basis) {
    double c = dot(x, k);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * k[i];
  }
  return x;
}

namespace {

void check_config(const RichardsonConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw Error(ErrorCode::BadParams, "Richardson step size must be positive");
}

}  // namespace

Vec richardson(const LinearOperator& m, const LinearOperator& z, const Vec& b, const RichardsonConfig& cfg) {
  check_config(cfg);
  const std::size_t n = m.dim();
  if (b.size() != n || z.dim() != n) throw Error(ErrorCode::DimensionMismatch, "richardson");
  Vec x(n, 0.0), r(n), mx, zr;
  double bnorm = norm2(b);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    if (it == 0) {
      r = b;
    } else {
      m.apply(x, mx);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - mx[i];
    }
    z.apply(r, zr);
    for (std::size_t i = 0; i < n; ++i) x[i] += cfg.eta * zr[i];
    double xn = norm2(x);
    if (!std::isfinite(xn) || xn > 1e12 * std::max(bnorm, 1e-300))
      throw Error(ErrorCode::NonFinite, "Richardson diverged at iteration " + std::to_string(it + 1) +
                                            " (|x|=" + std::to_string(xn) + ", |b|=" + std::to_string(bnorm) +
                                            ") with preconditioner " + z.label());
  }
  return project_out_kernel(x, m.kernel_basis());
}

LinearOperator as_operator(const LinearOperator& m, const LinearOperator& z, const RichardsonConfig& cfg,
                           std::string label) {
  check_config(cfg);
  return LinearOperator(
      m.dim(), [m, z, cfg](const Vec& b, Vec& y) { y = richardson(m, z, b, cfg); }, m.kernel_basis(),
      std::move(label));
}

LinearOperator from_dense(const oracle::DenseMatrix& mat, std::vector<Vec> kernel_basis, std::string label) {
  auto shared = std::make_shared<oracle::DenseMatrix>(mat);
  return LinearOperator(
      static_cast<std::size_t>(mat.cols()),
      [shared](const Vec& x, Vec& y) {
        Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
        Eigen::VectorXd r = (*shared) * xv;
        y.assign(r.data(), r.data() + r.size());
      },
      std::move(kernel_basis), std::move(label));
}

oracle::DenseMatrix materialize(const LinearOperator& op) {
  const std::size_t n = op.dim();
  oracle::DenseMatrix out(n, n);
  Vec e(n, 0.0), y;
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, y);
    for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = y[i];
    e[j] = 0.0;
  }
  return out;
}

LinearOperator scaled_identity(std::size_t dim, double c, std::vector<Vec> kernel_basis) {
  auto ker = kernel_basis;
  return LinearOperator(
      dim,
      [c, ker](const Vec& x, Vec& y) {
        y = project_out_kernel(x, ker);
        for (double& v : y) v *= c;
      },
      std::move(kernel_basis), "scaled-identity");
}

LinearOperator scaled(const LinearOperator& op, double c) {
  return LinearOperator(
      op.dim(),
      [op, c](const Vec& x, Vec& y) {
        op.apply(x, y);
        for (double& v : y) v *= c;
      },
      op.kernel_basis(), op.label());
}

Vec sqrt_degree_kernel(const Vec& d) {
  Vec k(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) k[i] = std::sqrt(std::max(d[i], 0.0));
  double nk = norm2(k);
  for (double& v : k) v /= nk;
  return k;
}

LinearOperator normalized_laplacian_operator(const DirectedGraph& g, const Vec& d, std::string label) {
  auto view = std::make_shared<LaplacianView>(g);
  Vec inv_sqrt(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) inv_sqrt[i] = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  return LinearOperator(
      g.n(),
      [view, inv_sqrt](const Vec& x, Vec& y) {
        Vec t(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) t[i] = inv_sqrt[i] * x[i];
        view->apply(t.data(), y.data());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] *= inv_sqrt[i];
      },
      {sqrt_degree_kernel(d)}, std::move(label));
}

}  // namespace dirlap
