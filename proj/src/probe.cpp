#include "divlab/probe.hpp"

#include <cmath>
#include <random>

namespace divlab {

std::string tag_name(SpectrumTag tag) {
  switch (tag) {
    case SpectrumTag::tropical_op: return "TropicalOp";
    case SpectrumTag::temperate_op: return "TemperateOp";
    case SpectrumTag::derivation: return "Derivation";
    case SpectrumTag::temperate: return "Temperate";
    case SpectrumTag::tropical: return "Tropical";
  }
  throw validation_error("ParamError", "unknown spectrum tag");
}

SpectrumClass half_mix_probe(const FamilySpec& spec, const Reference& u) {
  const Kind kind = spec.is_quantum() ? Kind::quantum : Kind::classical;
  const Experiment u_exp = kind == Kind::classical ? Experiment{u.classical} : Experiment{u.quantum};
  const double at_u = eval_raw(spec, u_exp, u);
  if (!(std::abs(at_u) > tol::denom_tol))
    throw validation_error("DegenerateReference", "family value at u underflows the probe");
  const double value = eval_raw(spec, half_mixture(u, kind), u) / at_u;

  SpectrumClass out;
  out.probe_value = value;
  const double t = tol::class_tol;
  if (std::abs(value) <= t) out.tag = SpectrumTag::tropical_op;
  else if (std::abs(value - 0.5) <= t) out.tag = SpectrumTag::derivation;
  else if (std::abs(value - 1.0) <= t) out.tag = SpectrumTag::tropical;
  else if (value > t && value < 0.5 - t) out.tag = SpectrumTag::temperate_op;
  else if (value > 0.5 + t && value < 1.0 - t) out.tag = SpectrumTag::temperate;
  else
    throw numerical_error("Unclassifiable", "probe value " + std::to_string(value) +
                                                " outside the bucket structure");
  return out;
}

ClassicalExperiment random_classical(int d, Eigen::Index n, std::uint64_t seed, bool normalized) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  ClassicalExperiment x;
  for (int k = 0; k < d; ++k) {
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = unif(rng);
    if (normalized) v /= v.sum();
    x.components.push_back(std::move(v));
  }
  return x;
}

QuantumExperiment random_quantum(int d, Eigen::Index dim, std::uint64_t seed, bool normalized) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  QuantumExperiment x;
  for (int k = 0; k < d; ++k) {
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix m = g * g.adjoint() + 0.05 * Matrix::Identity(dim, dim);
    if (normalized) m /= m.trace().real();
    x.components.push_back(std::move(m));
  }
  return x;
}

RealMatrix random_stochastic(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  RealMatrix t(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      t(i, j) = unif(rng);
      sum += t(i, j);
    }
    t.col(j) /= sum;
  }
  return t;
}

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max({std::abs(got), std::abs(want), 1.0});
}

Experiment random_pair_element(Kind kind, int d, std::uint64_t seed) {
  // Non-normalized inputs: scale components by seeded factors in [0.5, 1.5].
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  if (kind == Kind::classical) {
    ClassicalExperiment x = random_classical(d, 3, seed);
    for (auto& v : x.components) v *= unif(rng);
    return x;
  }
  QuantumExperiment x = random_quantum(d, 2, seed);
  for (auto& m : x.components) m *= unif(rng);
  return x;
}

}  // namespace

AxiomReport nd_axiom_battery(const FamilySpec& spec, int trials, std::uint64_t seed,
                             const Reference& u) {
  const Kind kind = spec.is_quantum() ? Kind::quantum : Kind::classical;
  const int d = u.d;
  AxiomReport report;

  // (ND3): Phi(1,...,1) = 1.
  Experiment unit;
  if (kind == Kind::classical) {
    ClassicalExperiment e;
    e.components.assign(static_cast<size_t>(d), RealVector::Ones(1));
    unit = e;
  } else {
    QuantumExperiment e;
    e.components.assign(static_cast<size_t>(d), Matrix::Identity(1, 1));
    unit = e;
  }
  report.unit = std::abs(phi_value(spec, unit) - 1.0);

  // Branch detection and per-axiom violations over the batch.
  const Experiment u_exp = kind == Kind::classical ? Experiment{u.classical} : Experiment{u.quantum};
  const double phi_u = phi_value(spec, u_exp);
  const double direction = std::log(std::max(phi_u, 1e-300));

  double add_acc = 0.0, max_acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Experiment x = random_pair_element(kind, d, seed + 2 * static_cast<std::uint64_t>(t));
    const Experiment y = random_pair_element(kind, d, seed + 2 * static_cast<std::uint64_t>(t) + 1);
    const double px = phi_value(spec, x);
    const double py = phi_value(spec, y);

    const double p_plus = phi_value(spec, boxplus(x, y));
    add_acc = std::max(add_acc, rel_err(p_plus, px + py));
    max_acc = std::max(max_acc, rel_err(p_plus, std::max(px, py)));

    const double p_times = phi_value(spec, boxtimes(x, y));
    report.boxtimes = std::max(report.boxtimes, rel_err(p_times, px * py));

    // (ND4): monotone toward the sign of log Phi(u).
    const Experiment image = kind == Kind::classical
        ? Experiment{apply_stochastic(
              random_stochastic(3, 3, seed + 7919 * static_cast<std::uint64_t>(t)),
              std::get<ClassicalExperiment>(x))}
        : Experiment{random_channel(2, 2, 2, seed + 7919 * static_cast<std::uint64_t>(t))
                         .apply(std::get<QuantumExperiment>(x))};
    const double pimg = phi_value(spec, image);
    const double signed_gap = direction >= 0 ? pimg - px : px - pimg;
    report.monotone =
        std::max(report.monotone, std::max(0.0, signed_gap) / std::max({px, pimg, 1.0}));
  }
  report.boxplus_additive = add_acc;
  report.boxplus_max = max_acc;
  report.additive_branch = add_acc <= max_acc;
  return report;
}

DerivationReport derivation_axiom_battery(const FamilySpec& spec, int trials, std::uint64_t seed,
                                          const Reference& u) {
  const Kind kind = spec.is_quantum() ? Kind::quantum : Kind::classical;
  const int d = u.d;
  DerivationReport report;
  for (int t = 0; t < trials; ++t) {
    const Experiment x = random_pair_element(kind, d, seed + 2 * static_cast<std::uint64_t>(t));
    const Experiment y = random_pair_element(kind, d, seed + 2 * static_cast<std::uint64_t>(t) + 1);
    const double dx = derivation_prime(spec, x, u);
    const double dy = derivation_prime(spec, y, u);

    const double d_plus = derivation_prime(spec, boxplus(x, y), u);
    report.additivity = std::max(report.additivity, rel_err(d_plus, dx + dy));

    const double nk_x = norm_vector(x)(spec.k);
    const double nk_y = norm_vector(y)(spec.k);
    const double d_times = derivation_prime(spec, boxtimes(x, y), u);
    report.leibniz = std::max(report.leibniz, rel_err(d_times, dx * nk_y + nk_x * dy));
  }
  return report;
}

}  // namespace divlab
