#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "divlab/errors.hpp"
#include "divlab/tolerances.hpp"

namespace divlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, columns
};

// max |M_ij - conj(M_ji)| <= herm_rel * ||M||_F
bool is_hermitian(const Matrix& m);

// Hermitian eigendecomposition, eigenvalues ascending. Throws
// NotHermitian / NoConvergence.
EigenDecomposition eigh(const Matrix& m);

// Support projector of a PSD matrix: sum of eigenprojectors with
// eigenvalue > support_rel * lambda_max.
Matrix support_projector(const Matrix& psd);

// V f(diag lambda) V^dag for PSD input. With on_support, f acts only on
// eigenvalues above the support cut and zero eigenvalues map to 0; without
// it, clipped-negative eigenvalues are an error for f's domain to decide,
// so evaluation below -psd slack throws DomainError.
Matrix matfun(const Matrix& psd, const std::function<double(double)>& f,
              bool on_support = false);

// x^p with the pseudo-inverse convention (always on the support).
Matrix matpow(const Matrix& psd, double p);
Matrix matlog_support(const Matrix& psd);
Matrix matsqrt(const Matrix& psd);

// exp of a Hermitian (not necessarily PSD) matrix.
Matrix matexp_hermitian(const Matrix& h);

// Nearest PSD matrix in Frobenius norm (eigenvalue clipping).
Matrix psd_project(const Matrix& hermitian);

enum class PTraceSide {
  in_factor,   // trace out the first tensor factor, result dim_second x dim_second
  out_factor,  // trace out the second tensor factor, result dim_first x dim_first
};

// Partial trace over one factor of C^{dim_first} (x) C^{dim_second} with the
// fixed index convention (i,j) -> i*dim_second + j.
Matrix partial_trace(const Matrix& m, Eigen::Index dim_first,
                     Eigen::Index dim_second, PTraceSide side);

// Kronecker product with the fixed (i,j) -> i*cols(b)+j convention.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = decltype(typename DerivedA::Scalar{} * typename DerivedB::Scalar{});
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Block-diagonal direct sum.
template <typename DerivedA, typename DerivedB>
auto dirsum(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = decltype(typename DerivedA::Scalar{} + typename DerivedB::Scalar{});
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(a.rows() + b.rows(),
                                                                  a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// 0.5 (M + M^dag), used before eigensolves on nominally Hermitian data.
inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace divlab
