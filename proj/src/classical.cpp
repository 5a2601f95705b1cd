#include "divlab/classical.hpp"

#include <cmath>
#include <limits>

namespace divlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool on_support(double v, double cut) { return v > cut; }

double support_cut(const RealVector& v) {
  return tol::support_rel * std::max(v.size() ? v.cwiseAbs().maxCoeff() : 0.0, 0.0);
}

}  // namespace

TemperateRegion TemperateParam::region() const {
  validate(*this);
  for (Eigen::Index k = 0; k < alpha.size(); ++k)
    if (alpha(k) > 1.0) return TemperateRegion::a_k;
  return TemperateRegion::a_plus;
}

int TemperateParam::distinguished_index() const {
  for (Eigen::Index k = 0; k < alpha.size(); ++k)
    if (alpha(k) > 1.0) return static_cast<int>(k);
  return -1;
}

void validate(const TemperateParam& p) {
  if (p.alpha.size() < 1) throw validation_error("ParamError", "temperate alpha is empty");
  if (std::abs(p.alpha.sum() - 1.0) > tol::param_tol)
    throw validation_error("ParamError", "temperate alpha must sum to 1");
  int above_one = -1;
  for (Eigen::Index k = 0; k < p.alpha.size(); ++k)
    if (p.alpha(k) > 1.0) {
      if (above_one >= 0) throw validation_error("ParamError", "more than one alpha_k above 1");
      above_one = static_cast<int>(k);
    }
  if (above_one < 0) {
    for (Eigen::Index k = 0; k < p.alpha.size(); ++k)
      if (p.alpha(k) < -tol::param_tol || p.alpha(k) >= 1.0)
        throw validation_error("ParamError", "A+ requires 0 <= alpha_k < 1 for every k");
  } else {
    for (Eigen::Index k = 0; k < p.alpha.size(); ++k)
      if (static_cast<int>(k) != above_one && p.alpha(k) > tol::param_tol)
        throw validation_error("ParamError", "A_k requires alpha_l <= 0 off the distinguished index");
  }
}

void validate(const TropicalParam& p) {
  if (p.beta.size() < 1) throw validation_error("ParamError", "tropical beta is empty");
  if (std::abs(p.beta.sum()) > tol::param_tol)
    throw validation_error("ParamError", "tropical beta must sum to 0");
  if (p.k < 0 || p.k >= p.beta.size())
    throw validation_error("ParamError", "tropical index k out of range");
  if (p.beta(p.k) <= 0.0)
    throw validation_error("ParamError", "tropical beta_k must be positive");
  for (Eigen::Index l = 0; l < p.beta.size(); ++l)
    if (static_cast<int>(l) != p.k && p.beta(l) > tol::param_tol)
      throw validation_error("ParamError", "tropical beta_l must be <= 0 off k");
}

void validate(const DerivationParam& p, int arity) {
  if (p.k < 0 || p.k >= arity)
    throw validation_error("ParamError", "derivation index k out of range");
  if (p.gamma.size() != arity)
    throw validation_error("ParamError", "derivation gamma length must equal the arity");
  if (p.gamma.minCoeff() < 0.0)
    throw validation_error("ParamError", "derivation gamma must be nonnegative");
  if (p.gamma.sum() <= 0.0)
    throw validation_error("ParamError", "derivation gamma must not be all zero");
}

double kl(const RealVector& p, const RealVector& q) {
  if (p.size() != q.size())
    throw validation_error("DimensionMismatch", "kl needs vectors of equal length");
  const double pcut = support_cut(p), qcut = support_cut(q);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!on_support(p(i), pcut)) continue;
    if (!on_support(q(i), qcut)) return kInf;
    acc += p(i) * std::log(p(i) / q(i));
  }
  return acc;
}

double renyi(double alpha, const RealVector& p, const RealVector& q) {
  if (p.size() != q.size())
    throw validation_error("DimensionMismatch", "renyi needs vectors of equal length");
  if (alpha < 0.0) throw validation_error("ParamError", "renyi alpha must be >= 0");
  const double pcut = support_cut(p), qcut = support_cut(q);
  bool abs_continuous = true;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (on_support(p(i), pcut) && !on_support(q(i), qcut)) abs_continuous = false;

  if (alpha == 0.0) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (on_support(p(i), pcut)) mass += q(i);
    return -std::log(mass);
  }
  if (alpha == 1.0) return kl(p, q);
  if (std::isinf(alpha)) {
    if (!abs_continuous) return kInf;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (on_support(q(i), qcut)) worst = std::max(worst, p(i) / q(i));
    return std::log(worst);
  }
  if (alpha > 1.0 && !abs_continuous) return kInf;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const bool ip = on_support(p(i), pcut), iq = on_support(q(i), qcut);
    if (!ip && !iq) continue;
    if (!ip) continue;  // p_i^alpha = 0 for alpha > 0
    if (!iq) continue;  // only reachable for alpha < 1: q^{1-alpha} with q=0 contributes 0
    acc += std::pow(p(i), alpha) * std::pow(q(i), 1.0 - alpha);
  }
  if (acc == 0.0) return kInf;  // disjoint supports at alpha < 1
  return std::log(acc) / (alpha - 1.0);
}

double entropy_renyi(double alpha, const RealVector& p) {
  const double cut = support_cut(p);
  std::vector<double> s;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (on_support(p(i), cut)) s.push_back(p(i));
  if (s.empty()) throw validation_error("ZeroExperiment", "entropy of the zero vector");

  if (std::isinf(alpha)) {
    double m = alpha > 0 ? *std::max_element(s.begin(), s.end())
                         : *std::min_element(s.begin(), s.end());
    return -std::log(m);
  }
  if (alpha == 0.0) {
    double acc = 0.0;
    for (double v : s) acc += std::log(v);
    return acc;
  }
  if (alpha == 1.0) {
    double acc = 0.0;
    for (double v : s) acc -= v * std::log(v);
    return acc;
  }
  double acc = 0.0;
  for (double v : s) acc += std::pow(v, alpha);
  return std::log(acc) / (1.0 - alpha);
}

double phi_temperate(const RealVector& alpha, const ClassicalExperiment& x) {
  if (x.is_zero()) throw validation_error("ZeroExperiment", "divergence of the zero experiment");
  if (alpha.size() != x.arity())
    throw validation_error("ArityMismatch", "alpha length must equal the experiment arity");
  std::vector<double> cuts;
  cuts.reserve(x.components.size());
  for (const auto& v : x.components) cuts.push_back(support_cut(v));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!on_support(x.components[0](i), cuts[0])) continue;
    double term = 1.0;
    for (int k = 0; k < x.arity(); ++k)
      if (alpha(k) != 0.0) term *= std::pow(x.components[static_cast<size_t>(k)](i), alpha(k));
    acc += term;
  }
  return std::log(acc);
}

double phi_tropical(const RealVector& beta, const ClassicalExperiment& x) {
  if (x.is_zero()) throw validation_error("ZeroExperiment", "divergence of the zero experiment");
  if (beta.size() != x.arity())
    throw validation_error("ArityMismatch", "beta length must equal the experiment arity");
  std::vector<double> cuts;
  cuts.reserve(x.components.size());
  for (const auto& v : x.components) cuts.push_back(support_cut(v));
  double best = -kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!on_support(x.components[0](i), cuts[0])) continue;
    double lg = 0.0;
    for (int k = 0; k < x.arity(); ++k)
      if (beta(k) != 0.0) lg += beta(k) * std::log(x.components[static_cast<size_t>(k)](i));
    best = std::max(best, lg);
  }
  return best;
}

double derivation_unnormalized(const DerivationParam& par, const ClassicalExperiment& x) {
  validate(par, x.arity());
  double acc = 0.0;
  for (int l = 0; l < x.arity(); ++l)
    if (par.gamma(l) > 0.0)
      acc += par.gamma(l) *
             kl(x.components[static_cast<size_t>(par.k)], x.components[static_cast<size_t>(l)]);
  return acc;
}

double D_temperate(const TemperateParam& par, const ClassicalExperiment& x, const Reference& u) {
  validate(par);
  const double den = phi_temperate(par.alpha, u.classical);
  if (std::abs(den) <= tol::denom_tol)
    throw validation_error("DegenerateReference", "temperate normalization underflow at u");
  return phi_temperate(par.alpha, x) / den;
}

double D_tropical(const TropicalParam& par, const ClassicalExperiment& x, const Reference& u) {
  validate(par);
  const double den = phi_tropical(par.beta, u.classical);
  if (!(den > tol::denom_tol))
    throw validation_error("DegenerateReference",
                           "tropical normalization at u is non-positive or underflows");
  return phi_tropical(par.beta, x) / den;
}

double D_derivation(const DerivationParam& par, const ClassicalExperiment& x, const Reference& u) {
  validate(par, u.d);
  const double den = derivation_unnormalized(par, u.classical);
  if (std::abs(den) <= tol::denom_tol)
    throw validation_error("DegenerateReference", "derivation normalization underflow at u");
  const double norm_k = x.components[static_cast<size_t>(par.k)].sum();
  if (norm_k <= 0.0) throw validation_error("ZeroExperiment", "zero component norm");
  return derivation_unnormalized(par, x) / (norm_k * den);
}

}  // namespace divlab
