#include "divlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>

namespace divlab {

DesignMatrix evaluate_design(const FitProblem& problem, const Reference& u) {
  DesignMatrix out;
  const int cols = static_cast<int>(problem.grid.size());
  std::vector<RealVector> rows;
  for (int j = 0; j < static_cast<int>(problem.samples.size()); ++j) {
    RealVector row(cols);
    bool usable = true;
    for (int i = 0; i < cols && usable; ++i) {
      const double v = spectrum_value(problem.grid[static_cast<size_t>(i)],
                                      problem.samples[static_cast<size_t>(j)], u);
      if (!std::isfinite(v)) usable = false;
      row(i) = v;
    }
    if (usable) {
      rows.push_back(std::move(row));
      out.usable_samples.push_back(j);
    } else {
      ++out.dropped;  // SampleUnusable: the sample is cheap, the column is not
    }
  }
  out.m.resize(static_cast<Eigen::Index>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r) out.m.row(static_cast<Eigen::Index>(r)) = rows[r];
  return out;
}

RealVector nnls(const RealMatrix& m, const RealVector& b, double reg) {
  const Eigen::Index cols = m.cols();
  if (b.size() != m.rows()) throw validation_error("DimensionMismatch", "nnls shapes disagree");

  // Ridge as augmented rows, then plain Lawson-Hanson.
  RealMatrix a(m.rows() + cols, cols);
  a.topRows(m.rows()) = m;
  a.bottomRows(cols) = std::sqrt(std::max(reg, 0.0)) * RealMatrix::Identity(cols, cols);
  RealVector rhs = RealVector::Zero(a.rows());
  rhs.head(b.size()) = b;

  RealVector x = RealVector::Zero(cols);
  std::vector<bool> passive(static_cast<size_t>(cols), false);
  RealVector w = a.transpose() * (rhs - a * x);

  const int max_outer = static_cast<int>(3 * cols) + 30;
  for (int outer = 0; outer < max_outer; ++outer) {
    // Most-violating inactive coordinate.
    Eigen::Index best = -1;
    double best_w = tol::kkt_tol;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!passive[static_cast<size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<size_t>(best)] = true;

    for (int inner = 0; inner < max_outer; ++inner) {
      std::vector<Eigen::Index> p;
      for (Eigen::Index j = 0; j < cols; ++j)
        if (passive[static_cast<size_t>(j)]) p.push_back(j);
      RealMatrix ap(a.rows(), static_cast<Eigen::Index>(p.size()));
      for (size_t i = 0; i < p.size(); ++i) ap.col(static_cast<Eigen::Index>(i)) = a.col(p[i]);
      const RealVector sp = ap.colPivHouseholderQr().solve(rhs);

      if (p.empty() || sp.minCoeff() > 0.0) {
        x.setZero();
        for (size_t i = 0; i < p.size(); ++i) x(p[i]) = sp(static_cast<Eigen::Index>(i));
        break;
      }
      // Step toward sp until the first passive coordinate hits zero.
      double alpha = 1.0;
      for (size_t i = 0; i < p.size(); ++i) {
        if (sp(static_cast<Eigen::Index>(i)) <= 0.0) {
          const double xi = x(p[i]);
          if (xi - sp(static_cast<Eigen::Index>(i)) > 0)
            alpha = std::min(alpha, xi / (xi - sp(static_cast<Eigen::Index>(i))));
        }
      }
      for (size_t i = 0; i < p.size(); ++i)
        x(p[i]) += alpha * (sp(static_cast<Eigen::Index>(i)) - x(p[i]));
      for (Eigen::Index j = 0; j < cols; ++j)
        if (passive[static_cast<size_t>(j)] && x(j) <= tol::weight_floor * 1e-2)
          passive[static_cast<size_t>(j)] = false, x(j) = 0.0;
      if (inner == max_outer - 1)
        throw numerical_error("NoConvergence", "nnls inner loop exceeded its budget");
    }
    w = a.transpose() * (rhs - a * x);
  }
  return x;
}

namespace {

std::vector<int> held_out_rows(int usable, std::uint64_t seed) {
  std::vector<int> idx(static_cast<size_t>(usable));
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  const int held = usable / 5;  // fixed 80/20 split
  idx.resize(static_cast<size_t>(held));
  std::sort(idx.begin(), idx.end());
  return idx;
}

FitResult solve_split(const RealMatrix& design, const RealVector& targets,
                      const RealMatrix& offset_cols, double reg, std::uint64_t split_seed) {
  const Eigen::Index rows = design.rows();
  const Eigen::Index grid_cols = design.cols();
  const Eigen::Index off_cols = offset_cols.cols();

  const auto held = held_out_rows(static_cast<int>(rows), split_seed);
  std::vector<bool> is_held(static_cast<size_t>(rows), false);
  for (int r : held) is_held[static_cast<size_t>(r)] = true;

  const Eigen::Index train_rows = rows - static_cast<Eigen::Index>(held.size());
  // Free offsets enter as +/- column pairs so one NNLS solve covers both.
  RealMatrix m(train_rows, grid_cols + 2 * off_cols);
  RealVector b(train_rows);
  Eigen::Index tr = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (is_held[static_cast<size_t>(r)]) continue;
    m.block(tr, 0, 1, grid_cols) = design.row(r);
    for (Eigen::Index c = 0; c < off_cols; ++c) {
      m(tr, grid_cols + 2 * c) = offset_cols(r, c);
      m(tr, grid_cols + 2 * c + 1) = -offset_cols(r, c);
    }
    b(tr) = targets(r);
    ++tr;
  }

  const RealVector solution = nnls(m, b, reg);
  FitResult out;
  out.weights = solution.head(grid_cols);
  out.offsets = RealVector::Zero(off_cols);
  for (Eigen::Index c = 0; c < off_cols; ++c)
    out.offsets(c) = solution(grid_cols + 2 * c) - solution(grid_cols + 2 * c + 1);
  out.weight_sum = out.weights.sum();

  double sq = 0.0;
  int count = 0;
  for (int r : held) {
    double pred = design.row(r).dot(out.weights);
    for (Eigen::Index c = 0; c < off_cols; ++c) pred += offset_cols(r, c) * out.offsets(c);
    const double err = pred - targets(r);
    sq += err * err;
    ++count;
  }
  if (count == 0) {  // tiny sample sets: report the training residual instead
    for (Eigen::Index r = 0; r < rows; ++r) {
      double pred = design.row(r).dot(out.weights);
      for (Eigen::Index c = 0; c < off_cols; ++c) pred += offset_cols(r, c) * out.offsets(c);
      const double err = pred - targets(r);
      sq += err * err;
      ++count;
    }
  }
  out.residual_rms = std::sqrt(sq / std::max(count, 1));
  return out;
}

}  // namespace

FitResult fit_barycentric(const FitProblem& problem, const Reference& u, double reg,
                          std::uint64_t split_seed) {
  if (problem.samples.size() != problem.target_values.size())
    throw validation_error("DimensionMismatch", "samples/targets length mismatch");
  const DesignMatrix design = evaluate_design(problem, u);
  if (3 * design.m.rows() < 2 * static_cast<Eigen::Index>(problem.grid.size()))
    std::cerr << "fit_barycentric: only " << design.m.rows() << " usable samples for "
              << problem.grid.size() << " grid points\n";

  RealVector targets(design.m.rows());
  for (Eigen::Index r = 0; r < design.m.rows(); ++r)
    targets(r) = problem.target_values[static_cast<size_t>(
        design.usable_samples[static_cast<size_t>(r)])];

  // Offsets are fit only when some sample is non-normalized; on normalized
  // samples the log-norm columns vanish identically.
  Eigen::Index off_cols = 0;
  RealMatrix offsets(design.m.rows(), 0);
  if (problem.include_offsets) {
    const int d = arity_of(problem.samples.front());
    bool any_non_normalized = false;
    offsets.resize(design.m.rows(), d);
    for (Eigen::Index r = 0; r < design.m.rows(); ++r) {
      const RealVector nv = norm_vector(
          problem.samples[static_cast<size_t>(design.usable_samples[static_cast<size_t>(r)])]);
      for (int c = 0; c < d; ++c) {
        offsets(r, c) = std::log(nv(c));
        if (std::abs(offsets(r, c)) > 1e-12) any_non_normalized = true;
      }
    }
    if (any_non_normalized) off_cols = d;
  }
  if (off_cols == 0) offsets.resize(design.m.rows(), 0);

  return solve_split(design.m, targets, offsets, reg, split_seed);
}

FitResult fit_entropy_barycentric(const std::function<double(const RealVector&)>& target,
                                  const std::vector<double>& alpha_grid,
                                  const std::vector<RealVector>& samples, double reg,
                                  std::uint64_t split_seed) {
  RealMatrix design(static_cast<Eigen::Index>(samples.size()),
                    static_cast<Eigen::Index>(alpha_grid.size()));
  RealVector targets(static_cast<Eigen::Index>(samples.size()));
  for (size_t j = 0; j < samples.size(); ++j) {
    for (size_t i = 0; i < alpha_grid.size(); ++i)
      design(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          entropy_renyi(alpha_grid[i], samples[j]);
    targets(static_cast<Eigen::Index>(j)) = target(samples[j]);
  }
  RealMatrix no_offsets(design.rows(), 0);
  return solve_split(design, targets, no_offsets, reg, split_seed);
}

}  // namespace divlab
