#include "dirlap/dense.hpp"

#include <algorithm>
#include <cmath>

namespace dirlap::oracle {

namespace {

void require_finite(const DenseMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, what);
}

Eigen::SelfAdjointEigenSolver<DenseMatrix> sym_eigen(const DenseMatrix& m) {
  require_finite(m, "symmetric eigenproblem");
  DenseMatrix s = 0.5 * (m + m.transpose());
  return Eigen::SelfAdjointEigenSolver<DenseMatrix>(s);
}

// Eigenvalues clamped at zero; throws NotPSD past tolerance.
DenseVector psd_values(const Eigen::SelfAdjointEigenSolver<DenseMatrix>& es) {
  DenseVector ev = es.eigenvalues();
  double top = ev.size() ? std::max(ev.cwiseAbs().maxCoeff(), 1e-300) : 1.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-9 * top) throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(ev(i)));
    if (ev(i) <= kCutoff * top) ev(i) = 0.0;
  }
  return ev;
}

DenseMatrix psd_function(const DenseMatrix& m, double (*f)(double)) {
  auto es = sym_eigen(m);
  DenseVector ev = psd_values(es);
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > 0.0 ? f(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

void check_kernel_compat(const DenseMatrix& diff, const DenseMatrix& ker, double scale) {
  if (ker.cols() == 0) return;
  double tol = 1e-8 * std::max(1.0, scale);
  if ((diff * ker).norm() > tol || (diff.transpose() * ker).norm() > tol)
    throw Error(ErrorCode::KernelViolation, "difference does not vanish on ker U");
}

}  // namespace

DenseMatrix laplacian(const DirectedGraph& g) {
  DenseMatrix l = DenseMatrix::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) {
    l(e.tail, e.tail) += e.weight;
    l(e.head, e.tail) -= e.weight;
  }
  return l;
}

DenseMatrix laplacian(const UndirectedGraph& g) {
  DenseMatrix l = DenseMatrix::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    l(e.u, e.u) += e.weight;
    l(e.v, e.v) += e.weight;
    l(e.u, e.v) -= e.weight;
    l(e.v, e.u) -= e.weight;
  }
  return l;
}

DenseMatrix adjacency(const DirectedGraph& g) {
  DenseMatrix a = DenseMatrix::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) a(e.tail, e.head) += e.weight;
  return a;
}

DenseMatrix symmetrization(const DenseMatrix& m) { return 0.5 * (m + m.transpose()); }

DenseMatrix normalize(const DenseMatrix& m, const Vec& d) {
  DenseVector s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s(i) = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  return s.asDiagonal() * m * s.asDiagonal();
}

DenseMatrix pseudoinverse(const DenseMatrix& m) {
  require_finite(m, "pseudoinverse");
  Eigen::BDCSVD<DenseMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  DenseVector sv = svd.singularValues();
  double top = sv.size() ? sv(0) : 0.0;
  DenseVector inv = DenseVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kCutoff * top) inv(i) = 1.0 / sv(i);
  return svd.matrixV().leftCols(sv.size()) * inv.asDiagonal() * svd.matrixU().leftCols(sv.size()).transpose();
}

DenseMatrix sqrt_psd(const DenseMatrix& m) {
  return psd_function(m, [](double x) { return std::sqrt(x); });
}

DenseMatrix pinv_sqrt_psd(const DenseMatrix& m) {
  return psd_function(m, [](double x) { return 1.0 / std::sqrt(x); });
}

DenseMatrix psd_kernel(const DenseMatrix& m) {
  auto es = sym_eigen(m);
  DenseVector ev = psd_values(es);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) == 0.0) idx.push_back(i);
  DenseMatrix k(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(idx[j]);
  return k;
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  require_finite(m, "spectral_norm");
  DenseMatrix g = m.rows() >= m.cols() ? DenseMatrix(m.transpose() * m) : DenseMatrix(m * m.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double lambda_min_nonzero(const DenseMatrix& m) {
  DenseVector ev = psd_values(sym_eigen(m));
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0) return ev(i);
  return 0.0;
}

double lambda_max(const DenseMatrix& m) {
  DenseVector ev = sym_eigen(m).eigenvalues();
  return ev.size() ? ev.maxCoeff() : 0.0;
}

double approx_error(const DenseMatrix& a_tilde, const DenseMatrix& a) {
  if (a_tilde.rows() != a.rows() || a_tilde.cols() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "approx_error");
  DenseMatrix u = symmetrization(a);
  DenseMatrix diff = a_tilde - a;
  check_kernel_compat(diff, psd_kernel(u), a.cwiseAbs().maxCoeff());
  DenseMatrix w = pinv_sqrt_psd(u);
  return spectral_norm(w * diff * w);
}

double precond_quality(const DenseMatrix& z, const DenseMatrix& m, const DenseMatrix& u) {
  DenseMatrix ker = psd_kernel(u);
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (ker.cols() > 0 && ((m * ker).norm() > 1e-8 * scale || (m.transpose() * ker).norm() > 1e-8 * scale))
    throw Error(ErrorCode::KernelViolation, "ker U is not contained in ker M");
  DenseMatrix proj = m * pseudoinverse(m);
  DenseMatrix e = proj - z * m;
  return spectral_norm(sqrt_psd(u) * e * pinv_sqrt_psd(u));
}

double operator_norm_in(const DenseMatrix& x, const DenseMatrix& h) {
  return spectral_norm(sqrt_psd(h) * x * pinv_sqrt_psd(h));
}

double whitened_norm(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& n) {
  return spectral_norm(pinv_sqrt_psd(m) * a * pinv_sqrt_psd(n));
}

Sandwich loewner_sandwich(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix ka = psd_kernel(a), kb = psd_kernel(b);
  double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  if (ka.cols() != kb.cols() || (ka.cols() > 0 && (b * ka).norm() > 1e-7 * scale))
    throw Error(ErrorCode::KernelMismatch, "loewner_sandwich operands have different kernels");
  DenseMatrix w = pinv_sqrt_psd(a);
  DenseMatrix c = symmetrization(w * b * w);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(c);
  DenseVector ev = es.eigenvalues();
  // Drop the kernel directions, which carry the smallest |values| in this basis.
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    DenseVector v = es.eigenvectors().col(i);
    if (ka.cols() > 0 && (ka.transpose() * v).norm() > 0.5) continue;
    vals.push_back(ev(i));
  }
  if (vals.empty()) return {1.0, 1.0};
  auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  return {*lo, *hi};
}

double conductance_of_cut(const UndirectedGraph& g, const std::vector<Vertex>& s) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : s) {
    if (v >= g.n()) throw Error(ErrorCode::IndexOutOfRange, "cut vertex");
    in[v] = 1;
  }
  double cut = 0.0, vol_s = 0.0, vol_all = 0.0;
  for (std::size_t v = 0; v < g.n(); ++v) {
    vol_all += g.degree()[v];
    if (in[v]) vol_s += g.degree()[v];
  }
  for (const auto& e : g.edges())
    if (in[e.u] != in[e.v]) cut += e.weight;
  double denom = std::min(vol_s, vol_all - vol_s);
  if (denom <= 0.0) return cut > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return cut / denom;
}

double conductance_bruteforce(const UndirectedGraph& g) {
  const std::size_t n = g.n();
  if (n > 20) throw Error(ErrorCode::TooLarge, "brute-force conductance needs n <= 20");
  if (n < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  // Vertex n-1 stays outside S so each cut is visited once.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<Vertex> s;
    for (std::size_t v = 0; v + 1 < n; ++v)
      if (mask >> v & 1) s.push_back(static_cast<Vertex>(v));
    best = std::min(best, conductance_of_cut(g, s));
  }
  return best;
}

double block_diag_norm_check(const std::vector<DenseMatrix>& blocks) {
  double best = 0.0;
  for (const auto& b : blocks) best = std::max(best, spectral_norm(b));
  return best;
}

std::vector<std::complex<double>> complex_spectrum(const DenseMatrix& m) {
  require_finite(m, "complex_spectrum");
  Eigen::EigenSolver<DenseMatrix> es(m, false);
  std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  return out;
}

DenseMatrix psd_image(const DenseMatrix& m) {
  auto es = sym_eigen(m);
  DenseVector ev = psd_values(es);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) != 0.0) idx.push_back(i);
  DenseMatrix q(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) q.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(idx[j]);
  return q;
}

namespace {

DenseMatrix restricted_transpose_product(const DenseMatrix& l) {
  DenseMatrix q = psd_image(symmetrization(l));
  DenseMatrix p = pseudoinverse(DenseMatrix(l.transpose())) * l;
  return q.transpose() * p * q;
}

}  // namespace

std::vector<std::complex<double>> transpose_preconditioned_spectrum(const DenseMatrix& l) {
  auto ev = complex_spectrum(restricted_transpose_product(l));
  std::sort(ev.begin(), ev.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

double transpose_richardson_radius(const DenseMatrix& l, double eta) {
  DenseMatrix r = restricted_transpose_product(l);
  DenseMatrix it = DenseMatrix::Identity(r.rows(), r.cols()) - eta * r;
  double rho = 0.0;
  for (const auto& z : complex_spectrum(it)) rho = std::max(rho, std::abs(z));
  return rho;
}

}  // namespace dirlap::oracle
