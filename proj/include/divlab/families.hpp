#pragma once

#include <string>
#include <variant>
#include <vector>

#include "divlab/classical.hpp"
#include "divlab/quantum.hpp"

namespace divlab {

// Every divergence family the laboratory evaluates, classical and quantum.
enum class Family {
  temperate,    // classical D_alpha, normalized at u
  tropical,     // classical tropical D^T_beta, normalized at u
  derivation,   // classical Delta^(k)_gamma, normalized at u
  kl,           // raw bivariate Kullback-Leibler
  renyi,        // raw bivariate Renyi, parameter alpha in [0, inf]
  alpha_z,
  umegaki,      // as the multivariate derivation sum_l gamma_l D_U(rho^k || rho^l) / tr rho^k
  kubo_ando,
  bs,           // Belavkin-Staszewski, same derivation generalization as umegaki
  max,
  matrix_mean,
  staged,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Parameter bag; each family reads only its own fields.
struct FamilySpec {
  Family family = Family::kl;
  RealVector alpha_vec;   // temperate alpha / matrix-mean weights
  RealVector beta;        // tropical
  int k = 0;              // tropical / derivation / umegaki / bs distinguished index
  RealVector gamma;       // derivation / umegaki / bs mixing weights (empty -> e_2 at d=2)
  double alpha = 0.5;     // renyi / kubo-ando scalars
  AlphaZParam alphaz;     // alpha-z / staged
  StagedParam staged;

  bool is_quantum() const;
};

// Validates the family's parameter invariants for an experiment of the
// given arity. Throws validation errors with family-specific codes.
void validate(const FamilySpec& spec, int arity);

// One named-quantum element of the test spectrum.
struct NamedQuantumPoint {
  FamilySpec spec;
};

using SpectrumPoint = std::variant<TemperateParam, TropicalParam, DerivationParam, NamedQuantumPoint>;

// Raw family value on an experiment. Classical spectrum families carry
// their normalization at u; bivariate raw families (kl, renyi, quantum)
// ignore u. Quantum families require a quantum experiment, classical ones a
// classical experiment.
double eval_raw(const FamilySpec& spec, const Experiment& x, const Reference& u);

// The underlying monotone homomorphism Phi on (possibly non-normalized)
// experiments: exp of the additive part for temperate-type families, the
// max-product / relative-lambda for tropical ones, exp(raw value) for
// derivation-type families which are not homomorphisms at all.
double phi_value(const FamilySpec& spec, const Experiment& x);

// Unnormalized derivation candidate Delta'(x) = eval_raw(x) * ||x||_(k).
double derivation_prime(const FamilySpec& spec, const Experiment& x, const Reference& u);

// Normalized test-spectrum member value Delta(x) with Delta(u) = 1.
double spectrum_value(const SpectrumPoint& pt, const Experiment& x, const Reference& u);

FamilySpec spec_of(const SpectrumPoint& pt);

// The classical test-spectrum grid:
//  - A+ simplex lattice i/(resolution+1), corners excluded, faces kept;
//  - one ray per A_k, alpha = e_k + t (e_k - uniform), t log-spaced (0, r_max];
//  - B_k directions on the unit sphere of the zero-sum hyperplane inside the
//    sign-pattern cone, radii log-spaced (0, r_max];
//  - derivation corners gamma = e_l for every ordered pair (k, l), l != k.
std::vector<SpectrumPoint> spectrum_grid(int d, int resolution, double r_max = 30.0);

// Deterministic cardinalities per part, in grid order: {A+, A_k, B_k, deriv}.
struct GridCounts {
  int a_plus = 0, a_k = 0, b_k = 0, derivation = 0;
  int total() const { return a_plus + a_k + b_k + derivation; }
};
GridCounts spectrum_grid_counts(int d, int resolution);

// (u boxplus 1) / 2 in the requested kind: the evaluation point of the
// separation probe.
Experiment half_mixture(const Reference& u, Kind kind);

}  // namespace divlab
