#pragma once

// Dense reference linear algebra for tests and the `check` command.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dirlap/graph.hpp"

namespace dirlap::oracle {

using DenseMatrix = Eigen::MatrixXd;
using DenseVector = Eigen::VectorXd;

inline constexpr double kCutoff = 1e-10;

DenseMatrix laplacian(const DirectedGraph& g);    // D - A^T
DenseMatrix laplacian(const UndirectedGraph& g);  // D - A
DenseMatrix adjacency(const DirectedGraph& g);    // A(i,j) = w(i -> j)
DenseMatrix symmetrization(const DenseMatrix& m);
// D^{+/2} M D^{+/2} for a degree vector d.
DenseMatrix normalize(const DenseMatrix& m, const Vec& d);

DenseMatrix pseudoinverse(const DenseMatrix& m);
DenseMatrix sqrt_psd(const DenseMatrix& m);
DenseMatrix pinv_sqrt_psd(const DenseMatrix& m);
// Orthonormal basis of the numerical kernel of a symmetric PSD matrix.
DenseMatrix psd_kernel(const DenseMatrix& m);

double spectral_norm(const DenseMatrix& m);
double lambda_min_nonzero(const DenseMatrix& m);
double lambda_max(const DenseMatrix& m);

// ||U_A^{+/2} (A_tilde - A) U_A^{+/2}||_2 with U_A = (A + A^T)/2.
double approx_error(const DenseMatrix& a_tilde, const DenseMatrix& a);
// ||U^{1/2} (I_im(M) - Z M) U^{+/2}||_2.
double precond_quality(const DenseMatrix& z, const DenseMatrix& m, const DenseMatrix& u);
// ||H^{1/2} X H^{+/2}||_2.
double operator_norm_in(const DenseMatrix& x, const DenseMatrix& h);
// ||M^{+/2} A N^{+/2}||_2.
double whitened_norm(const DenseMatrix& m, const DenseMatrix& a, const DenseMatrix& n);

struct Sandwich {
  double lo;
  double hi;
};
// Tight lo * a <= b <= hi * a on the common image.
Sandwich loewner_sandwich(const DenseMatrix& a, const DenseMatrix& b);

double conductance_of_cut(const UndirectedGraph& g, const std::vector<Vertex>& s);
double conductance_bruteforce(const UndirectedGraph& g);

double block_diag_norm_check(const std::vector<DenseMatrix>& blocks);

std::vector<std::complex<double>> complex_spectrum(const DenseMatrix& m);

// Orthonormal basis of the complement of psd_kernel(m).
DenseMatrix psd_image(const DenseMatrix& m);
// Spectrum of (L^T)^+ L restricted to the image of (L + L^T)/2, sorted by (real, imag).
std::vector<std::complex<double>> transpose_preconditioned_spectrum(const DenseMatrix& l);
// Spectral radius of I - eta (L^T)^+ L on that image.
double transpose_richardson_radius(const DenseMatrix& l, double eta);

}  // namespace dirlap::oracle
