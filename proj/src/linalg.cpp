#include "divlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace divlab {

bool is_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.norm();
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol::herm_rel * std::max(scale, 1e-300);
}

EigenDecomposition eigh(const Matrix& m) {
  if (m.rows() != m.cols())
    throw validation_error("DimensionMismatch", "eigh needs a square matrix");
  if (!is_hermitian(m)) throw validation_error("NotHermitian", "eigh input fails the hermiticity predicate");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success)
    throw numerical_error("NoConvergence", "Hermitian eigensolver did not converge");
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix support_projector(const Matrix& psd) {
  const auto ed = eigh(psd);
  const double cut = tol::support_rel * std::max(ed.eigenvalues.cwiseAbs().maxCoeff(), 0.0);
  Matrix p = Matrix::Zero(psd.rows(), psd.cols());
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i)
    if (ed.eigenvalues(i) > cut)
      p += ed.eigenvectors.col(i) * ed.eigenvectors.col(i).adjoint();
  return p;
}

Matrix matfun(const Matrix& psd, const std::function<double(double)>& f, bool on_support) {
  const auto ed = eigh(psd);
  const double lmax = ed.eigenvalues.size() ? ed.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double psd_slack = tol::psd_rel * std::max(psd.norm(), 1e-300);
  const double cut = tol::support_rel * lmax;
  RealVector fx(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
    double lambda = ed.eigenvalues(i);
    if (lambda < -psd_slack)
      throw validation_error("DomainError", "matfun input is not PSD within tolerance");
    if (on_support) {
      fx(i) = lambda > cut ? f(lambda) : 0.0;
    } else {
      fx(i) = f(std::max(lambda, 0.0));
    }
  }
  return ed.eigenvectors * fx.asDiagonal() * ed.eigenvectors.adjoint();
}

Matrix matpow(const Matrix& psd, double p) {
  return matfun(psd, [p](double x) { return std::pow(x, p); }, true);
}

Matrix matlog_support(const Matrix& psd) {
  return matfun(psd, [](double x) { return std::log(x); }, true);
}

Matrix matsqrt(const Matrix& psd) {
  return matfun(psd, [](double x) { return std::sqrt(x); }, true);
}

Matrix matexp_hermitian(const Matrix& h) {
  const auto ed = eigh(h);
  RealVector ex(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < ex.size(); ++i) ex(i) = std::exp(ed.eigenvalues(i));
  return ed.eigenvectors * ex.asDiagonal() * ed.eigenvectors.adjoint();
}

Matrix psd_project(const Matrix& hermitian) {
  if (!is_hermitian(hermitian))
    throw validation_error("NotHermitian", "psd_project input fails the hermiticity predicate");
  const auto ed = eigh(hermitian);
  RealVector clipped = ed.eigenvalues.cwiseMax(0.0);
  return ed.eigenvectors * clipped.asDiagonal() * ed.eigenvectors.adjoint();
}

Matrix partial_trace(const Matrix& m, Eigen::Index dim_first, Eigen::Index dim_second,
                     PTraceSide side) {
  if (m.rows() != m.cols() || m.rows() != dim_first * dim_second)
    throw validation_error("DimensionMismatch", "partial_trace dims do not factor the matrix");
  if (side == PTraceSide::out_factor) {
    Matrix out = Matrix::Zero(dim_first, dim_first);
    for (Eigen::Index i = 0; i < dim_first; ++i)
      for (Eigen::Index k = 0; k < dim_first; ++k)
        for (Eigen::Index j = 0; j < dim_second; ++j)
          out(i, k) += m(i * dim_second + j, k * dim_second + j);
    return out;
  }
  Matrix out = Matrix::Zero(dim_second, dim_second);
  for (Eigen::Index j = 0; j < dim_second; ++j)
    for (Eigen::Index l = 0; l < dim_second; ++l)
      for (Eigen::Index i = 0; i < dim_first; ++i)
        out(j, l) += m(i * dim_second + j, i * dim_second + l);
  return out;
}

}  // namespace divlab
