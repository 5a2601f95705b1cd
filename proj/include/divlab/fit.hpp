#pragma once

#include <cstdint>
#include <functional>

#include "divlab/families.hpp"

namespace divlab {

struct FitProblem {
  std::vector<SpectrumPoint> grid;
  std::vector<Experiment> samples;       // normalized experiments
  std::vector<double> target_values;     // target divergence at the samples
  bool include_offsets = false;          // fit the a_1..a_d transition coefficients
};

struct FitResult {
  RealVector weights;       // nonnegative, one per grid point
  RealVector offsets;       // d transition coefficients (zero when pinned)
  double residual_rms = 0;  // on the held-out split
  double weight_sum = 0;
};

struct DesignMatrix {
  RealMatrix m;                      // usable samples x grid points
  std::vector<int> usable_samples;   // row -> original sample index
  int dropped = 0;                   // rows rejected for infinite entries
};

// M[j][i] = Delta_i(x_j); rows with any infinite entry are dropped
// (SampleUnusable) rather than losing the grid column.
DesignMatrix evaluate_design(const FitProblem& problem, const Reference& u);

// min ||M w - b||^2 + reg ||w||^2 over w >= 0, Lawson-Hanson active set.
RealVector nnls(const RealMatrix& m, const RealVector& b, double reg = 1e-8);

// NNLS weights over the grid plus optional free offsets, residual on a
// seeded 80/20 held-out split.
FitResult fit_barycentric(const FitProblem& problem, const Reference& u, double reg = 1e-8,
                          std::uint64_t split_seed = 17);

// Barycentric fit of a generalized entropy over an H_alpha grid evaluated
// at probability vectors.
FitResult fit_entropy_barycentric(const std::function<double(const RealVector&)>& target,
                                  const std::vector<double>& alpha_grid,
                                  const std::vector<RealVector>& samples, double reg = 1e-8,
                                  std::uint64_t split_seed = 17);

}  // namespace divlab
