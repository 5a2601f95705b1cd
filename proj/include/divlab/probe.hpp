#pragma once

#include <cstdint>
#include <string>

#include "divlab/majorization.hpp"

namespace divlab {

// Where a normalized divergence lands when evaluated at (u + 1)/2:
//   0        -> opposite-tropical homomorphism
//   (0, 1/2) -> opposite-temperate homomorphism
//   1/2      -> derivation
//   (1/2, 1) -> temperate homomorphism
//   1        -> tropical homomorphism
enum class SpectrumTag { tropical_op, temperate_op, derivation, temperate, tropical };

std::string tag_name(SpectrumTag tag);

struct SpectrumClass {
  SpectrumTag tag = SpectrumTag::derivation;
  double probe_value = 0.0;
};

// Evaluates D((u+1)/2) / D(u) and classifies into the bucket structure with
// class_tol point windows. Throws Unclassifiable outside [0 - tol, 1 + tol]
// and DegenerateReference when D(u) underflows.
SpectrumClass half_mix_probe(const FamilySpec& spec, const Reference& u);

struct AxiomReport {
  // Maximum relative violations over the trial batch.
  double boxplus_additive = 0.0;  // (ND1), additive branch
  double boxplus_max = 0.0;       // (ND1), max branch
  double boxtimes = 0.0;          // (ND2)
  double unit = 0.0;              // (ND3)
  double monotone = 0.0;          // (ND4)
  bool additive_branch = true;    // branch detected for (ND1)
};

// Random non-normalized experiment pairs; reports per-axiom max violations
// of the homomorphism laws for Phi behind the family.
AxiomReport nd_axiom_battery(const FamilySpec& spec, int trials, std::uint64_t seed,
                             const Reference& u);

struct DerivationReport {
  double additivity = 0.0;  // (k1)
  double leibniz = 0.0;     // (k2)
};

// Same harness for the unnormalized derivation laws.
DerivationReport derivation_axiom_battery(const FamilySpec& spec, int trials, std::uint64_t seed,
                                          const Reference& u);

// Deterministic random experiments for the batteries and tests.
ClassicalExperiment random_classical(int d, Eigen::Index n, std::uint64_t seed,
                                     bool normalized = true);
QuantumExperiment random_quantum(int d, Eigen::Index dim, std::uint64_t seed,
                                 bool normalized = true);
RealMatrix random_stochastic(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

}  // namespace divlab
