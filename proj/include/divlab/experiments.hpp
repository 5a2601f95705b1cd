#pragma once

#include <variant>
#include <vector>

#include "divlab/linalg.hpp"

namespace divlab {

// d-tuple of nonnegative vectors of common length (element of the classical
// majorization semiring once the common-support predicate holds).
struct ClassicalExperiment {
  std::vector<RealVector> components;

  int arity() const { return static_cast<int>(components.size()); }
  Eigen::Index size() const { return components.empty() ? 0 : components.front().size(); }
  bool is_zero() const;
};

// d-tuple of PSD Hermitian matrices of common dimension.
struct QuantumExperiment {
  std::vector<Matrix> components;

  int arity() const { return static_cast<int>(components.size()); }
  Eigen::Index dim() const { return components.empty() ? 0 : components.front().rows(); }
  bool is_zero() const;
};

using Experiment = std::variant<ClassicalExperiment, QuantumExperiment>;

enum class Kind { classical, quantum };

Kind kind_of(const Experiment& x);
int arity_of(const Experiment& x);

// Structural checks: nonnegativity/PSD-ness, matching sizes. With
// require_common_support also the equal-support predicate of the semiring
// carrier types. Majorization solvers accept tuples without a common
// support, divergence evaluation on semiring elements does not.
enum class SupportPolicy { any, require_common };
void validate(const ClassicalExperiment& x, SupportPolicy policy);
void validate(const QuantumExperiment& x, SupportPolicy policy);
void validate(const Experiment& x, SupportPolicy policy);

bool has_common_support(const ClassicalExperiment& x);
bool has_common_support(const QuantumExperiment& x);

// Componentwise direct sum; norm adds.
ClassicalExperiment boxplus(const ClassicalExperiment& x, const ClassicalExperiment& y);
QuantumExperiment boxplus(const QuantumExperiment& x, const QuantumExperiment& y);
Experiment boxplus(const Experiment& x, const Experiment& y);

// Componentwise tensor product; norm multiplies.
ClassicalExperiment boxtimes(const ClassicalExperiment& x, const ClassicalExperiment& y);
QuantumExperiment boxtimes(const QuantumExperiment& x, const QuantumExperiment& y);
Experiment boxtimes(const Experiment& x, const Experiment& y);

// Scalar rescaling of every component (multiplication by (c,...,c)).
ClassicalExperiment scale(const ClassicalExperiment& x, double c);
QuantumExperiment scale(const QuantumExperiment& x, double c);

// n-fold boxtimes power; n = 0 gives the multiplicative unit (1,...,1).
Experiment boxpower(const Experiment& x, int n);

// Entrywise 1-norms (classical) or traces (quantum): the degeneracy
// homomorphism of the semiring.
RealVector norm_vector(const ClassicalExperiment& x);
RealVector norm_vector(const QuantumExperiment& x);
RealVector norm_vector(const Experiment& x);

// Equal norm vectors within norm_tol.
bool equivalent(const Experiment& x, const Experiment& y);

// Rescales component k by 1/||x||_(k). Throws ZeroExperiment on 0.
ClassicalExperiment normalize(const ClassicalExperiment& x);
QuantumExperiment normalize(const QuantumExperiment& x);
Experiment normalize(const Experiment& x);

// Power universal predicate: all components of unit norm, pairwise distinct.
bool is_power_universal(const Experiment& x);

// Vectors on the diagonal.
QuantumExperiment embed_classical(const ClassicalExperiment& x);

// Joint diagonalization of a commuting tuple; throws NotCommuting when any
// pairwise commutator exceeds comm_rel * max ||rho_k||_F.
ClassicalExperiment reduce_commuting(const QuantumExperiment& x);

// A fixed power universal with validated spectrum denominators. Holds both
// the classical tuple and its diagonal embedding so that classical and
// quantum evaluations normalize against the same reference.
struct Reference {
  int d = 0;
  ClassicalExperiment classical;
  QuantumExperiment quantum;
};

// Classical components u^(k)_i = (1 + [i==k]) / (d+2) on alphabet d+1.
Reference default_reference(int d);

}  // namespace divlab
