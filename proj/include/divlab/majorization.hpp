#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "divlab/families.hpp"

namespace divlab {

enum class FeasStatus { feasible, infeasible, no_witness_found };

// Outcome of a feasibility solve. The LP path certifies both directions;
// the projection path can only ever report feasible-with-witness or
// no-witness-found with the final residual.
struct MajorizationVerdict {
  FeasStatus status = FeasStatus::no_witness_found;
  std::optional<RealMatrix> stochastic_witness;  // classical channel T, rows x cols
  std::optional<Matrix> choi_witness;            // quantum channel Choi matrix
  double residual = 0.0;
};

struct LpResult {
  bool feasible = false;
  RealVector x;
  double phase1_objective = 0.0;
};

// Phase-I simplex with Bland's rule on A x = b, lo <= x <= hi (hi may be
// +inf). Feasible solutions satisfy ||Ax-b||_inf <= feas_tol.
LpResult lp_feasible(const RealMatrix& A, const RealVector& b,
                     const std::vector<std::pair<double, double>>& bounds);

// Column-stochastic T with T p^(k) = q^(k) for every k; certified verdict.
MajorizationVerdict majorizes_classical(const ClassicalExperiment& x,
                                        const ClassicalExperiment& y);

// Sorted-partial-sums majorization test on probability vectors (condition
// (a)); the doubly-stochastic LP (condition (b)) lives in the test suite as
// the cross-check oracle.
bool majorizes_bistochastic(const RealVector& p, const RealVector& q);

// Dykstra alternating projections between the PSD cone and the affine set
// of trace-preserving Choi matrices with the prescribed action. Never
// certifies infeasibility.
MajorizationVerdict majorizes_quantum(const QuantumExperiment& x, const QuantumExperiment& y,
                                      int max_iter = tol::choi_max_iter,
                                      double tol = tol::choi_tol);

struct LargeSampleBudget {
  int n_max = 6;
  int k_max = 3;
  Eigen::Index dim_cap = 100;
};

struct LargeSampleReport {
  bool all_strict = false;
  double margin = 0.0;  // minimal Delta(x) - Delta(y) over the grid
  std::vector<SpectrumPoint> violating_points;
  std::optional<std::pair<int, int>> verified;  // (n, k) with an LP witness
  bool catalyst_verified = false;  // x (x) z >= y (x) z for the Theorem-1(b) candidate
};

// Evaluates the grid margins and, for all-strict classical pairs, searches
// tensor powers x^n u^k vs y^n u^k for an LP-certified witness within the
// budget. Throws BudgetExceeded when no candidate power fits dim_cap.
LargeSampleReport large_sample_check(const Experiment& x, const Experiment& y,
                                     const std::vector<SpectrumPoint>& grid, const Reference& u,
                                     const LargeSampleBudget& budget = {});

// z = u^k boxtimes (boxplus_{l=0..n} x^l y^{n-l}), the catalyst candidate.
Experiment theorem_catalyst(const Experiment& x, const Experiment& y, const Reference& u, int n,
                            int k);

// Applies a column-stochastic matrix to every component.
ClassicalExperiment apply_stochastic(const RealMatrix& t, const ClassicalExperiment& x);

using ChannelOrStochastic = std::variant<RealMatrix, Channel>;

// (D(x), D(image)) for the data-processing cross-check harness.
std::pair<double, double> dpi_oracle(const FamilySpec& spec, const Experiment& x,
                                     const ChannelOrStochastic& map, const Reference& u);

}  // namespace divlab
