#pragma once

#include <cstdint>
#include <vector>

#include "divlab/experiments.hpp"

namespace divlab {

// Parameter region of the alpha-z family where the data processing
// inequality holds:
//   0 < alpha < 1 and z >= max{alpha, 1-alpha}, or
//   alpha > 1 and max{alpha/2, alpha-1} <= z <= alpha.
struct AlphaZParam {
  double alpha = 0.5;
  double z = 1.0;

  bool valid() const;
};

void validate(const AlphaZParam& p);

// Two-stage Karcher composition: an outer weight over a finite index set,
// one inner d-vector of weights per index.
struct StagedParam {
  AlphaZParam alphaz;
  RealVector outer_weights;
  std::vector<RealVector> inner_weights;
};

void validate(const StagedParam& p, int arity);

// (1/(alpha-1)) log tr (rho^{a/2z} sigma^{(1-a)/z} rho^{a/2z})^z with
// support-restricted powers; +inf when alpha > 1 and supp rho is not
// contained in supp sigma.
double d_alpha_z(const AlphaZParam& par, const Matrix& rho, const Matrix& sigma);

// tr rho (log rho - log sigma) on the support; +inf on support violation.
double d_umegaki(const Matrix& rho, const Matrix& sigma);

// (1/(alpha-1)) log tr sigma^{1/2} (sigma^{-1/2} rho sigma^{-1/2})^alpha sigma^{1/2},
// alpha in [0,2] with alpha = 1 rejected (use d_bs for the limit).
double d_kubo_ando(double alpha, const Matrix& rho, const Matrix& sigma);

// -tr sigma log(sigma^{-1/2} rho sigma^{-1/2}).
double d_bs(const Matrix& rho, const Matrix& sigma);

// inf{lambda >= 0 : rho <= e^lambda sigma}; +inf on support violation.
double d_max(const Matrix& rho, const Matrix& sigma);

// Raw tropical homomorphism behind d_max: lambda_max of the support-
// compressed relative operator, without the lambda >= 0 clamp.
double max_relative_lambda(const Matrix& rho, const Matrix& sigma);

// Weighted Karcher mean: the positive fixed point of
//   G <- G^{1/2} exp(sum_k w_k log(G^{-1/2} rho_k G^{-1/2})) G^{1/2},
// damped on non-decreasing objective. Inputs must share a common support.
Matrix karcher_mean(const RealVector& weights, const std::vector<Matrix>& rhos,
                    double tol = tol::karcher_tol, int max_iter = tol::karcher_max_iter);

// (1/(max_k w_k - 1)) log tr G_w(rho) for a non-extreme probability vector w.
double d_matrix_mean(const RealVector& weights, const QuantumExperiment& x);

// alpha-z divergence between the first component and the two-stage mean.
double d_staged(const StagedParam& par, const QuantumExperiment& x);

// Stinespring channel with a seeded Gaussian isometry; deterministic in the
// seed. apply() is trace preserving and completely positive by construction.
struct Channel {
  Matrix isometry;  // (dim_out * env_dim) x dim_in, orthonormal columns
  Eigen::Index dim_in = 0, dim_out = 0, env_dim = 0;

  Matrix apply(const Matrix& rho) const;
  QuantumExperiment apply(const QuantumExperiment& x) const;
  Matrix choi() const;
};

Channel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index env_dim,
                       std::uint64_t seed);

}  // namespace divlab
