#include "divlab/quantum.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace divlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw validation_error("DimensionMismatch", "operators differ in dimension");
}

// tr rho (1 - P_sigma) relative to tr rho; decides supp rho <= supp sigma.
bool support_dominated(const Matrix& rho, const Matrix& sigma) {
  const Matrix p = support_projector(sigma);
  const double leak = ((Matrix::Identity(rho.rows(), rho.cols()) - p) * rho).trace().real();
  return leak <= tol::support_rel * std::max(rho.trace().real(), 1e-300) * 10.0;
}

double trace_real(const Matrix& m) { return m.trace().real(); }

}  // namespace

bool AlphaZParam::valid() const {
  if (!(alpha > 0.0) || alpha == 1.0 || !(z > 0.0)) return false;
  if (alpha < 1.0) return z >= std::max(alpha, 1.0 - alpha) - tol::param_tol;
  return z >= std::max(alpha / 2.0, alpha - 1.0) - tol::param_tol && z <= alpha + tol::param_tol;
}

void validate(const AlphaZParam& p) {
  if (!p.valid())
    throw validation_error("ParamError",
                           "(alpha,z) outside the monotone region of the alpha-z family");
}

void validate(const StagedParam& p, int arity) {
  validate(p.alphaz);
  if (p.outer_weights.size() < 1 ||
      static_cast<size_t>(p.outer_weights.size()) != p.inner_weights.size())
    throw validation_error("ParamError", "staged outer/inner weight shapes disagree");
  auto check_prob = [](const RealVector& w, const char* what) {
    if (w.minCoeff() < -tol::param_tol || std::abs(w.sum() - 1.0) > tol::param_tol)
      throw validation_error("ParamError", std::string(what) + " is not a probability vector");
  };
  check_prob(p.outer_weights, "staged outer weight");
  for (const auto& w : p.inner_weights) {
    if (w.size() != arity)
      throw validation_error("ParamError", "staged inner weight length must equal the arity");
    check_prob(w, "staged inner weight");
  }
}

double d_alpha_z(const AlphaZParam& par, const Matrix& rho, const Matrix& sigma) {
  check_same_dim(rho, sigma);
  const double a = par.alpha, z = par.z;
  if (a > 1.0 && !support_dominated(rho, sigma)) return kInf;
  const Matrix rho_pow = matpow(rho, a / (2.0 * z));
  const Matrix sigma_pow = matpow(sigma, (1.0 - a) / z);
  const Matrix core = hermitize(rho_pow * sigma_pow * rho_pow);
  const double value = trace_real(matpow(core, z));
  if (value <= 0.0) return kInf;
  return std::log(value) / (a - 1.0);
}

double d_umegaki(const Matrix& rho, const Matrix& sigma) {
  check_same_dim(rho, sigma);
  if (!support_dominated(rho, sigma)) return kInf;
  return trace_real(rho * (matlog_support(rho) - matlog_support(sigma)));
}

double d_kubo_ando(double alpha, const Matrix& rho, const Matrix& sigma) {
  check_same_dim(rho, sigma);
  if (alpha < 0.0 || alpha > 2.0 || alpha == 1.0)
    throw validation_error("AlphaOutOfRange",
                           "Kubo-Ando alpha must lie in [0,2] with alpha = 1 excluded");
  const Matrix sig_half = matsqrt(sigma);
  const Matrix sig_inv_half = matpow(sigma, -0.5);
  const Matrix rel = hermitize(sig_inv_half * rho * sig_inv_half);
  const double value = trace_real(sig_half * matpow(rel, alpha) * sig_half);
  if (value <= 0.0) return kInf;
  return std::log(value) / (alpha - 1.0);
}

double d_bs(const Matrix& rho, const Matrix& sigma) {
  check_same_dim(rho, sigma);
  const Matrix sig_inv_half = matpow(sigma, -0.5);
  const Matrix rel = hermitize(sig_inv_half * rho * sig_inv_half);
  return -trace_real(sigma * matlog_support(rel));
}

double max_relative_lambda(const Matrix& rho, const Matrix& sigma) {
  check_same_dim(rho, sigma);
  if (!support_dominated(rho, sigma)) return kInf;
  const Matrix sig_inv_half = matpow(sigma, -0.5);
  const auto ed = eigh(hermitize(sig_inv_half * rho * sig_inv_half));
  return ed.eigenvalues.size() ? std::max(ed.eigenvalues.maxCoeff(), 0.0) : 0.0;
}

double d_max(const Matrix& rho, const Matrix& sigma) {
  const double lambda = max_relative_lambda(rho, sigma);
  if (std::isinf(lambda)) return kInf;
  return std::max(std::log(lambda), 0.0);
}

Matrix karcher_mean(const RealVector& weights, const std::vector<Matrix>& rhos, double tol,
                    int max_iter) {
  if (rhos.empty() || weights.size() != static_cast<Eigen::Index>(rhos.size()))
    throw validation_error("ParamError", "karcher weights/operators shapes disagree");
  if (weights.minCoeff() < -tol::param_tol || std::abs(weights.sum() - 1.0) > tol::param_tol)
    throw validation_error("ParamError", "karcher weights must form a probability vector");
  for (const auto& m : rhos) check_same_dim(m, rhos.front());

  // Work inside the common support so rank-deficient tuples stay well posed.
  Matrix acc = Matrix::Zero(rhos.front().rows(), rhos.front().cols());
  for (size_t k = 0; k < rhos.size(); ++k) acc += rhos[k];
  const auto ed = eigh(acc);
  const double cut = tol::support_rel * std::max(ed.eigenvalues.cwiseAbs().maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i)
    if (ed.eigenvalues(i) > cut) keep.push_back(i);
  Matrix basis(acc.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = ed.eigenvectors.col(keep[i]);

  std::vector<Matrix> compressed;
  compressed.reserve(rhos.size());
  for (const auto& m : rhos) compressed.push_back(hermitize(basis.adjoint() * m * basis));

  auto objective = [&](const Matrix& g) {
    const Matrix g_inv_half = matpow(g, -0.5);
    double acc2 = 0.0;
    for (size_t k = 0; k < compressed.size(); ++k) {
      const auto rel = eigh(hermitize(g_inv_half * compressed[k] * g_inv_half));
      for (Eigen::Index i = 0; i < rel.eigenvalues.size(); ++i) {
        const double lg = std::log(std::max(rel.eigenvalues(i), 1e-300));
        acc2 += weights(static_cast<Eigen::Index>(k)) * lg * lg;
      }
    }
    return acc2;
  };

  Matrix g = Matrix::Zero(compressed.front().rows(), compressed.front().cols());
  for (size_t k = 0; k < compressed.size(); ++k) g += weights(static_cast<Eigen::Index>(k)) * compressed[k];
  g = hermitize(g);
  double obj = objective(g);

  for (int iter = 0; iter < max_iter; ++iter) {
    const Matrix g_half = matsqrt(g);
    const Matrix g_inv_half = matpow(g, -0.5);
    Matrix direction = Matrix::Zero(g.rows(), g.cols());
    for (size_t k = 0; k < compressed.size(); ++k)
      direction += weights(static_cast<Eigen::Index>(k)) *
                   matlog_support(hermitize(g_inv_half * compressed[k] * g_inv_half));
    direction = hermitize(direction);
    const double step_norm = direction.norm();
    if (step_norm < tol) return hermitize(basis * g * basis.adjoint());

    double damping = 1.0;
    while (true) {
      const Matrix step = matexp_hermitian(damping * direction);
      const Matrix candidate = hermitize(g_half * step * g_half);
      const double cand_obj = objective(candidate);
      if (cand_obj < obj || damping < 1e-4) {
        g = candidate;
        obj = cand_obj;
        break;
      }
      damping *= 0.5;
    }
  }
  throw numerical_error("NoConvergence", "karcher_mean exceeded the iteration budget");
}

double d_matrix_mean(const RealVector& weights, const QuantumExperiment& x) {
  if (weights.size() != x.arity())
    throw validation_error("ParamError", "weight length must equal the experiment arity");
  if (weights.minCoeff() < -tol::param_tol || std::abs(weights.sum() - 1.0) > tol::param_tol)
    throw validation_error("ParamError", "weights must form a probability vector");
  const double wmax = weights.maxCoeff();
  if (wmax >= 1.0 - tol::param_tol)
    throw validation_error("ExtremeWeights", "matrix-mean weights must be non-extreme");
  const Matrix g = karcher_mean(weights, x.components);
  const double value = g.trace().real();
  if (value <= 0.0) return kInf;
  return std::log(value) / (wmax - 1.0);
}

double d_staged(const StagedParam& par, const QuantumExperiment& x) {
  validate(par, x.arity());
  std::vector<Matrix> inner_means;
  inner_means.reserve(par.inner_weights.size());
  for (const auto& w : par.inner_weights) inner_means.push_back(karcher_mean(w, x.components));
  const Matrix outer = karcher_mean(par.outer_weights, inner_means);
  return d_alpha_z(par.alphaz, x.components.front(), outer);
}

Matrix Channel::apply(const Matrix& rho) const {
  if (rho.rows() != dim_in || rho.cols() != dim_in)
    throw validation_error("DimensionError", "channel input dimension mismatch");
  const Matrix lifted = isometry * rho * isometry.adjoint();
  return partial_trace(lifted, dim_out, env_dim, PTraceSide::out_factor);
}

QuantumExperiment Channel::apply(const QuantumExperiment& x) const {
  QuantumExperiment out;
  out.components.reserve(x.components.size());
  for (const auto& m : x.components) out.components.push_back(apply(m));
  return out;
}

Matrix Channel::choi() const {
  Matrix j = Matrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (Eigen::Index i = 0; i < dim_in; ++i)
    for (Eigen::Index k = 0; k < dim_in; ++k) {
      Matrix unit = Matrix::Zero(dim_in, dim_in);
      unit(i, k) = 1.0;
      const Matrix img = apply(unit);
      for (Eigen::Index a = 0; a < dim_out; ++a)
        for (Eigen::Index b = 0; b < dim_out; ++b)
          j(i * dim_out + a, k * dim_out + b) = img(a, b);
    }
  return j;
}

Channel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index env_dim,
                       std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || env_dim < 1 || dim_out * env_dim < dim_in)
    throw validation_error("DimensionError", "Stinespring dims need dim_out*env_dim >= dim_in");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix raw(dim_out * env_dim, dim_in);
  for (Eigen::Index i = 0; i < raw.rows(); ++i)
    for (Eigen::Index j = 0; j < raw.cols(); ++j) raw(i, j) = Complex(gauss(rng), gauss(rng));
  // Gram-Schmidt keeps the construction deterministic across Eigen versions.
  Matrix v = raw;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k) v.col(j) -= v.col(k).dot(v.col(j)) * v.col(k);
    const double nrm = v.col(j).norm();
    if (nrm < 1e-12) throw numerical_error("NumericalBreakdown", "degenerate random isometry");
    v.col(j) /= nrm;
  }
  return Channel{std::move(v), dim_in, dim_out, env_dim};
}

}  // namespace divlab
