#pragma once

#include <vector>

#include "divlab/experiments.hpp"

namespace divlab {

enum class TemperateRegion { a_plus, a_k };

// alpha on the Sum(alpha)=1 hyperplane; either the closed-face simplex with
// every alpha_k < 1 (a_plus) or one alpha_k > 1 and the rest <= 0 (a_k).
struct TemperateParam {
  RealVector alpha;

  TemperateRegion region() const;  // throws on parameters outside both regions
  int distinguished_index() const;  // the k of a_k, -1 for a_plus
};

// beta sums to zero, beta_k > 0, beta_l <= 0 otherwise.
struct TropicalParam {
  RealVector beta;
  int k = 0;
};

// Nonnegative gamma weights for sum_l gamma_l KL(p^k || p^l).
struct DerivationParam {
  int k = 0;
  RealVector gamma;
};

void validate(const TemperateParam& p);
void validate(const TropicalParam& p);
void validate(const DerivationParam& p, int arity);

// Kullback-Leibler divergence, natural log, +inf when supp p is not
// contained in supp q. Accepts non-normalized vectors.
double kl(const RealVector& p, const RealVector& q);

// Bivariate Renyi relative entropy; alpha in [0, inf], including the
// alpha = 0 support branch, alpha = 1 (KL) and alpha = inf (max) limits.
double renyi(double alpha, const RealVector& p, const RealVector& q);

// Generalized Renyi entropies over alpha in [-inf, inf], support-restricted.
double entropy_renyi(double alpha, const RealVector& p);

// log sum_i prod_k (p_i^(k))^{alpha_k}, summed over the common support.
double phi_temperate(const RealVector& alpha, const ClassicalExperiment& x);

// max_i log prod_k (p_i^(k))^{beta_k} over the common support.
double phi_tropical(const RealVector& beta, const ClassicalExperiment& x);

// Unnormalized derivation sum_l gamma_l KL(p^(k) || p^(l)).
double derivation_unnormalized(const DerivationParam& par, const ClassicalExperiment& x);

// Normalized test-spectrum members; each satisfies D(u) = 1 and throws
// DegenerateReference when the normalization at u underflows denom_tol.
double D_temperate(const TemperateParam& par, const ClassicalExperiment& x, const Reference& u);
double D_tropical(const TropicalParam& par, const ClassicalExperiment& x, const Reference& u);
double D_derivation(const DerivationParam& par, const ClassicalExperiment& x, const Reference& u);

}  // namespace divlab
