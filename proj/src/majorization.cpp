#include "divlab/majorization.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace divlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LpResult lp_feasible(const RealMatrix& A, const RealVector& b,
                     const std::vector<std::pair<double, double>>& bounds) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || static_cast<Eigen::Index>(bounds.size()) != n)
    throw validation_error("DimensionMismatch", "lp_feasible shapes disagree");
  for (const auto& [lo, hi] : bounds) {
    if (!std::isfinite(lo)) throw validation_error("ParamError", "lower bounds must be finite");
    if (hi < lo) throw validation_error("ParamError", "empty bound interval");
  }

  // Shift lower bounds to zero; finite upper bounds become slack rows.
  Eigen::Index extra = 0;
  for (const auto& [lo, hi] : bounds)
    if (std::isfinite(hi)) ++extra;
  const Eigen::Index rows = m + extra;
  const Eigen::Index structural = n + extra;

  RealMatrix tab = RealMatrix::Zero(rows, structural + rows + 1);
  RealVector lo_shift(n);
  for (Eigen::Index j = 0; j < n; ++j) lo_shift(j) = bounds[static_cast<size_t>(j)].first;
  RealVector rhs = b - A * lo_shift;
  tab.block(0, 0, m, n) = A;
  Eigen::Index slack = n;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double hi = bounds[static_cast<size_t>(j)].second;
    if (!std::isfinite(hi)) continue;
    const Eigen::Index r = m + (slack - n);
    tab(r, j) = 1.0;
    tab(r, slack) = 1.0;
    tab(r, structural + rows) = hi - bounds[static_cast<size_t>(j)].first;
    ++slack;
  }
  tab.block(0, structural + rows, m, 1) = rhs;

  // Flip rows to a nonnegative RHS, install the artificial basis.
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (tab(i, structural + rows) < 0) tab.row(i) = -tab.row(i);
    tab(i, structural + i) = 1.0;
  }

  std::vector<Eigen::Index> basis(static_cast<size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) basis[static_cast<size_t>(i)] = structural + i;

  // Phase-I objective row: minimize the artificial sum.
  RealVector obj = RealVector::Zero(structural + rows + 1);
  for (Eigen::Index i = 0; i < rows; ++i) obj -= tab.row(i).transpose();
  for (Eigen::Index j = structural; j < structural + rows; ++j) obj(j) = 0.0;

  const Eigen::Index total_cols = structural + rows;
  while (true) {
    // Bland: smallest-index entering column with a negative reduced cost.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < total_cols; ++j)
      if (obj(j) < -tol::lp_tol) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = kInf;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (tab(i, enter) <= tol::pivot_tol) continue;
      const double ratio = tab(i, total_cols) / tab(i, enter);
      if (ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && leave >= 0 &&
           basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0)
      throw numerical_error("NumericalBreakdown", "phase-I column without a usable pivot");

    const double pivot = tab(leave, enter);
    if (std::abs(pivot) <= tol::pivot_tol)
      throw numerical_error("NumericalBreakdown", "simplex pivot magnitude degraded");
    tab.row(leave) /= pivot;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f != 0.0) tab.row(i) -= f * tab.row(leave);
    }
    obj -= obj(enter) * tab.row(leave).transpose();
    basis[static_cast<size_t>(leave)] = enter;
  }

  double phase1 = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i)
    if (basis[static_cast<size_t>(i)] >= structural) phase1 += tab(i, total_cols);

  LpResult out;
  out.phase1_objective = phase1;
  if (phase1 > tol::lp_tol) {
    out.feasible = false;
    return out;
  }

  RealVector y = RealVector::Zero(structural);
  for (Eigen::Index i = 0; i < rows; ++i)
    if (basis[static_cast<size_t>(i)] < structural)
      y(basis[static_cast<size_t>(i)]) = tab(i, total_cols);
  out.x = y.head(n) + lo_shift;
  out.feasible = (A * out.x - b).cwiseAbs().maxCoeff() <= tol::feas_tol;
  if (!out.feasible)
    throw numerical_error("NumericalBreakdown", "phase-I solution exceeds the residual budget");
  return out;
}

MajorizationVerdict majorizes_classical(const ClassicalExperiment& x,
                                        const ClassicalExperiment& y) {
  if (x.arity() != y.arity())
    throw validation_error("ArityMismatch", "experiments differ in arity");
  const RealVector nx = norm_vector(x), ny = norm_vector(y);
  if ((nx - ny).cwiseAbs().maxCoeff() > tol::norm_tol * std::max(1.0, nx.cwiseAbs().maxCoeff()))
    throw validation_error("NormMismatch", "majorization needs equal norm vectors");

  const Eigen::Index n = x.size();   // source alphabet
  const Eigen::Index m = y.size();   // target alphabet
  const int d = x.arity();
  const Eigen::Index vars = m * n;   // T(i,j), i < m, j < n, index i*n+j

  const Eigen::Index rows = n + d * m;
  RealMatrix A = RealMatrix::Zero(rows, vars);
  RealVector b = RealVector::Zero(rows);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) A(j, i * n + j) = 1.0;
    b(j) = 1.0;
  }
  for (int k = 0; k < d; ++k) {
    const RealVector& p = x.components[static_cast<size_t>(k)];
    const RealVector& q = y.components[static_cast<size_t>(k)];
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index r = n + k * m + i;
      for (Eigen::Index j = 0; j < n; ++j) A(r, i * n + j) = p(j);
      b(r) = q(i);
    }
  }

  std::vector<std::pair<double, double>> bounds(static_cast<size_t>(vars), {0.0, kInf});
  const LpResult lp = lp_feasible(A, b, bounds);
  MajorizationVerdict verdict;
  if (!lp.feasible) {
    verdict.status = FeasStatus::infeasible;
    verdict.residual = lp.phase1_objective;
    return verdict;
  }
  RealMatrix t(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = lp.x(i * n + j);
  verdict.status = FeasStatus::feasible;
  verdict.stochastic_witness = t;
  verdict.residual = (A * lp.x - b).cwiseAbs().maxCoeff();
  return verdict;
}

bool majorizes_bistochastic(const RealVector& p, const RealVector& q) {
  if (std::abs(p.sum() - 1.0) > 1e-8 || std::abs(q.sum() - 1.0) > 1e-8)
    throw validation_error("NotNormalized", "bistochastic test needs probability vectors");
  const Eigen::Index n = std::max(p.size(), q.size());
  RealVector pp = RealVector::Zero(n), qq = RealVector::Zero(n);
  pp.head(p.size()) = p;
  qq.head(q.size()) = q;
  std::sort(pp.data(), pp.data() + n, std::greater<double>());
  std::sort(qq.data(), qq.data() + n, std::greater<double>());
  double cp = 0.0, cq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cp += pp(i);
    cq += qq(i);
    if (cp < cq - 1e-10) return false;
  }
  return true;
}

namespace {

// Real parameterization of Hermitian matrices: n diagonal entries followed
// by (Re, Im) for every upper-triangle pair, row-major.
struct HermitianBasis {
  Eigen::Index n = 0;

  Eigen::Index params() const { return n * n; }

  RealVector to_params(const Matrix& h) const {
    RealVector x(params());
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < n; ++i) x(idx++) = h(i, i).real();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        x(idx++) = h(i, j).real();
        x(idx++) = h(i, j).imag();
      }
    return x;
  }

  Matrix to_matrix(const RealVector& x) const {
    Matrix h(n, n);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < n; ++i) h(i, i) = x(idx++);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double re = x(idx++), im = x(idx++);
        h(i, j) = Complex(re, im);
        h(j, i) = Complex(re, -im);
      }
    return h;
  }

  // Index bookkeeping for assembling constraint rows.
  Eigen::Index diag_index(Eigen::Index i) const { return i; }
  std::pair<Eigen::Index, Eigen::Index> pair_index(Eigen::Index i, Eigen::Index j) const {
    // i < j assumed; returns (re, im) slots.
    const Eigen::Index base = n + (i * (2 * n - i - 1)) + 2 * (j - i - 1);
    return {base, base + 1};
  }
};

// Accumulates one complex-linear equation sum c_rs J_rs = rhs over Hermitian
// J into real rows of L.
struct EquationBuilder {
  const HermitianBasis& basis;

  void fold(RealMatrix& L, RealVector& c, Eigen::Index& row,
            const std::vector<std::pair<std::pair<Eigen::Index, Eigen::Index>, Complex>>& terms,
            Complex rhs, bool emit_imag) const {
    RealVector re_row = RealVector::Zero(basis.params());
    RealVector im_row = RealVector::Zero(basis.params());
    for (const auto& [rs, coeff] : terms) {
      const auto [r, s] = rs;
      if (r == s) {
        re_row(basis.diag_index(r)) += coeff.real();
        im_row(basis.diag_index(r)) += coeff.imag();
      } else if (r < s) {
        const auto [re_slot, im_slot] = basis.pair_index(r, s);
        re_row(re_slot) += coeff.real();
        re_row(im_slot) -= coeff.imag();
        im_row(re_slot) += coeff.imag();
        im_row(im_slot) += coeff.real();
      } else {  // J_rs = conj(J_sr)
        const auto [re_slot, im_slot] = basis.pair_index(s, r);
        re_row(re_slot) += coeff.real();
        re_row(im_slot) += coeff.imag();
        im_row(re_slot) += coeff.imag();
        im_row(im_slot) -= coeff.real();
      }
    }
    L.row(row) = re_row.transpose();
    c(row) = rhs.real();
    ++row;
    if (emit_imag) {
      L.row(row) = im_row.transpose();
      c(row) = rhs.imag();
      ++row;
    }
  }
};

}  // namespace

MajorizationVerdict majorizes_quantum(const QuantumExperiment& x, const QuantumExperiment& y,
                                      int max_iter, double tol) {
  if (x.arity() != y.arity())
    throw validation_error("ArityMismatch", "experiments differ in arity");
  const RealVector nx = norm_vector(x), ny = norm_vector(y);
  if ((nx - ny).cwiseAbs().maxCoeff() > tol::norm_tol * std::max(1.0, nx.cwiseAbs().maxCoeff()))
    throw validation_error("NormMismatch", "majorization needs equal norm vectors");

  const Eigen::Index n_in = x.dim();
  const Eigen::Index n_out = y.dim();
  const Eigen::Index dim = n_in * n_out;
  const int d = x.arity();
  HermitianBasis basis{dim};

  // Real rows: n_in^2 (trace preservation) + d * n_out^2 (channel action).
  const Eigen::Index rows = n_in * n_in + static_cast<Eigen::Index>(d) * n_out * n_out;
  RealMatrix L = RealMatrix::Zero(rows, basis.params());
  RealVector c = RealVector::Zero(rows);
  EquationBuilder builder{basis};
  Eigen::Index row = 0;

  // ptr_out(J)(i,k) = delta_ik: coefficient 1 on J[(i,a),(k,a)].
  for (Eigen::Index i = 0; i < n_in; ++i)
    for (Eigen::Index k = i; k < n_in; ++k) {
      std::vector<std::pair<std::pair<Eigen::Index, Eigen::Index>, Complex>> terms;
      for (Eigen::Index a = 0; a < n_out; ++a)
        terms.push_back({{i * n_out + a, k * n_out + a}, Complex(1.0, 0.0)});
      builder.fold(L, c, row, terms, i == k ? Complex(1.0, 0.0) : Complex(0.0, 0.0), i != k);
    }

  // Action: sum_{i,j} rho_{ji} J[(j,a),(i,b)] = sigma_{ab}.
  for (int k = 0; k < d; ++k) {
    const Matrix& rho = x.components[static_cast<size_t>(k)];
    const Matrix& sig = y.components[static_cast<size_t>(k)];
    for (Eigen::Index a = 0; a < n_out; ++a)
      for (Eigen::Index b = a; b < n_out; ++b) {
        std::vector<std::pair<std::pair<Eigen::Index, Eigen::Index>, Complex>> terms;
        for (Eigen::Index i = 0; i < n_in; ++i)
          for (Eigen::Index j = 0; j < n_in; ++j) {
            const Complex coeff = rho(j, i);
            if (coeff != Complex(0.0, 0.0))
              terms.push_back({{j * n_out + a, i * n_out + b}, coeff});
          }
        builder.fold(L, c, row, terms, sig(a, b), a != b);
      }
  }

  // Least-squares projector onto {L x = c}.
  Eigen::BDCSVD<RealMatrix> svd(L, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double s_cut = svd.singularValues()(0) * 1e-12;
  const auto pinv_apply = [&](const RealVector& v) {
    RealVector w = svd.matrixU().transpose() * v;
    for (Eigen::Index i = 0; i < w.size(); ++i)
      w(i) = svd.singularValues()(i) > s_cut ? w(i) / svd.singularValues()(i) : 0.0;
    return RealVector(svd.matrixV() * w);
  };
  const auto affine_project = [&](const RealVector& v) {
    return RealVector(v - pinv_apply(L * v - c));
  };
  const auto psd_project_params = [&](const RealVector& v) {
    return basis.to_params(psd_project(basis.to_matrix(v)));
  };

  // Start from the affine projection of the normalized identity Choi.
  Matrix seed = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < n_in; ++i)
    for (Eigen::Index j = 0; j < n_out && j < n_in; ++j) seed(i * n_out + j, i * n_out + j) = 1.0 / double(n_out);
  RealVector xcur = affine_project(basis.to_params(seed));

  MajorizationVerdict verdict;
  // The affine set itself can be empty; report the unavoidable residual.
  const double affine_gap = (L * xcur - c).cwiseAbs().maxCoeff();
  RealVector p = RealVector::Zero(basis.params());
  RealVector q = RealVector::Zero(basis.params());
  double best_residual = kInf;
  RealVector best_psd_point;
  int last_improvement = 0;

  for (int iter = 0; iter < max_iter; ++iter) {
    const RealVector ypt = psd_project_params(xcur + p);
    p = xcur + p - ypt;
    const RealVector zpt = affine_project(ypt + q);
    q = ypt + q - zpt;
    xcur = zpt;

    const double residual = (L * ypt - c).cwiseAbs().maxCoeff();
    if (residual < best_residual * (1.0 - 1e-6)) {
      last_improvement = iter;
    }
    if (residual < best_residual) {
      best_residual = residual;
      best_psd_point = ypt;
    }
    if (best_residual <= tol) break;
    // Far-from-feasible plateaus terminate early; near-feasible runs get the
    // full budget.
    if (best_residual > 1000.0 * tol && iter - last_improvement > 200) break;
  }

  verdict.residual = std::max(best_residual, affine_gap);
  if (best_residual <= tol) {
    verdict.status = FeasStatus::feasible;
    verdict.choi_witness = basis.to_matrix(best_psd_point);
  } else {
    verdict.status = FeasStatus::no_witness_found;
  }
  return verdict;
}

Experiment theorem_catalyst(const Experiment& x, const Experiment& y, const Reference& u, int n,
                            int k) {
  const Experiment u_exp =
      kind_of(x) == Kind::classical ? Experiment{u.classical} : Experiment{u.quantum};
  Experiment acc = boxtimes(boxpower(x, 0), boxpower(y, n));  // l = 0 term
  for (int l = 1; l <= n; ++l)
    acc = boxplus(acc, boxtimes(boxpower(x, l), boxpower(y, n - l)));
  return boxtimes(boxpower(u_exp, k), acc);
}

LargeSampleReport large_sample_check(const Experiment& x, const Experiment& y,
                                     const std::vector<SpectrumPoint>& grid, const Reference& u,
                                     const LargeSampleBudget& budget) {
  if (!equivalent(x, y))
    throw validation_error("NormMismatch", "large-sample check needs equivalent experiments");

  LargeSampleReport report;
  report.margin = kInf;
  for (const auto& pt : grid) {
    const double m = spectrum_value(pt, x, u) - spectrum_value(pt, y, u);
    if (m < report.margin) report.margin = m;
    if (!(m > tol::strict_tol)) report.violating_points.push_back(pt);
  }
  report.all_strict = report.violating_points.empty() && report.margin > tol::strict_tol;

  if (!report.all_strict || kind_of(x) != Kind::classical) return report;

  const auto& xc = std::get<ClassicalExperiment>(x);
  const auto& yc = std::get<ClassicalExperiment>(y);
  const double dim_x = double(xc.size());
  const double dim_y = double(yc.size());
  const double dim_u = double(u.classical.size());

  // Candidate (n, k) pairs ordered by the tensor-power dimension.
  std::vector<std::tuple<double, int, int>> candidates;
  for (int n = 1; n <= budget.n_max; ++n)
    for (int k = 0; k <= budget.k_max; ++k) {
      const double dim = std::pow(std::max(dim_x, dim_y), n) * std::pow(dim_u, k);
      candidates.emplace_back(dim, n, k);
    }
  std::sort(candidates.begin(), candidates.end());

  bool any_within_cap = false;
  for (const auto& [dim, n, k] : candidates) {
    if (dim > double(budget.dim_cap)) continue;
    any_within_cap = true;
    const Experiment u_exp = Experiment{u.classical};
    const Experiment xp = boxtimes(boxpower(x, n), boxpower(u_exp, k));
    const Experiment yp = boxtimes(boxpower(y, n), boxpower(u_exp, k));
    const auto verdict = majorizes_classical(std::get<ClassicalExperiment>(xp),
                                             std::get<ClassicalExperiment>(yp));
    if (verdict.status == FeasStatus::feasible) {
      report.verified = {n, k};
      // Theorem-1(b) catalyst cross-check when it fits the budget.
      const Experiment z = theorem_catalyst(x, y, u, n, k);
      const Experiment xz = boxtimes(x, z);
      const Experiment yz = boxtimes(y, z);
      if (std::get<ClassicalExperiment>(xz).size() <= budget.dim_cap) {
        const auto cat = majorizes_classical(std::get<ClassicalExperiment>(xz),
                                             std::get<ClassicalExperiment>(yz));
        report.catalyst_verified = cat.status == FeasStatus::feasible;
      }
      return report;
    }
  }
  if (!any_within_cap)
    throw validation_error("BudgetExceeded", "every tensor-power candidate exceeds dim_cap");
  return report;
}

ClassicalExperiment apply_stochastic(const RealMatrix& t, const ClassicalExperiment& x) {
  ClassicalExperiment out;
  out.components.reserve(x.components.size());
  for (const auto& v : x.components) {
    if (t.cols() != v.size())
      throw validation_error("DimensionMismatch", "stochastic matrix does not fit the alphabet");
    out.components.push_back(t * v);
  }
  return out;
}

std::pair<double, double> dpi_oracle(const FamilySpec& spec, const Experiment& x,
                                     const ChannelOrStochastic& map, const Reference& u) {
  const double before = eval_raw(spec, x, u);
  Experiment image;
  if (std::holds_alternative<RealMatrix>(map)) {
    image = apply_stochastic(std::get<RealMatrix>(map), std::get<ClassicalExperiment>(x));
  } else {
    image = std::get<Channel>(map).apply(std::get<QuantumExperiment>(x));
  }
  const double after = eval_raw(spec, image, u);
  return {before, after};
}

}  // namespace divlab
