#include "divlab/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace divlab {

namespace {

double max_abs(const RealVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

std::vector<bool> support_mask(const RealVector& v) {
  const double cut = tol::support_rel * std::max(max_abs(v), 0.0);
  std::vector<bool> mask(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) mask[static_cast<size_t>(i)] = v(i) > cut;
  return mask;
}

}  // namespace

bool ClassicalExperiment::is_zero() const {
  for (const auto& v : components)
    if (max_abs(v) > 0.0) return false;
  return true;
}

bool QuantumExperiment::is_zero() const {
  for (const auto& m : components)
    if (m.norm() > 0.0) return false;
  return true;
}

Kind kind_of(const Experiment& x) {
  return std::holds_alternative<ClassicalExperiment>(x) ? Kind::classical : Kind::quantum;
}

int arity_of(const Experiment& x) {
  return std::visit([](const auto& e) { return e.arity(); }, x);
}

bool has_common_support(const ClassicalExperiment& x) {
  if (x.components.empty()) return true;
  const auto ref = support_mask(x.components.front());
  for (const auto& v : x.components)
    if (support_mask(v) != ref) return false;
  return true;
}

bool has_common_support(const QuantumExperiment& x) {
  if (x.components.empty()) return true;
  const Matrix p0 = support_projector(x.components.front());
  for (size_t k = 1; k < x.components.size(); ++k) {
    const Matrix pk = support_projector(x.components[k]);
    const double scale = std::max({p0.norm(), pk.norm(), 1.0});
    if ((p0 - pk).norm() > tol::psd_rel * scale * 10.0) return false;
  }
  return true;
}

void validate(const ClassicalExperiment& x, SupportPolicy policy) {
  if (x.components.empty())
    throw validation_error("ArityMismatch", "experiment needs arity >= 1");
  const Eigen::Index n = x.components.front().size();
  if (n < 1) throw validation_error("DimensionMismatch", "alphabet size must be >= 1");
  for (const auto& v : x.components) {
    if (v.size() != n)
      throw validation_error("DimensionMismatch", "classical components differ in length");
    if (v.minCoeff() < -tol::support_rel * std::max(max_abs(v), 1.0))
      throw validation_error("DomainError", "classical component has a negative entry");
  }
  if (policy == SupportPolicy::require_common && !has_common_support(x))
    throw validation_error("SupportMismatch", "classical components do not share a support");
}

void validate(const QuantumExperiment& x, SupportPolicy policy) {
  if (x.components.empty())
    throw validation_error("ArityMismatch", "experiment needs arity >= 1");
  const Eigen::Index n = x.components.front().rows();
  if (n < 1) throw validation_error("DimensionMismatch", "Hilbert dimension must be >= 1");
  for (const auto& m : x.components) {
    if (m.rows() != n || m.cols() != n)
      throw validation_error("DimensionMismatch", "quantum components differ in dimension");
    if (!is_hermitian(m))
      throw validation_error("NotHermitian", "quantum component is not Hermitian");
    const auto ed = eigh(m);
    if (ed.eigenvalues.size() && ed.eigenvalues.minCoeff() < -tol::psd_rel * std::max(m.norm(), 1.0))
      throw validation_error("DomainError", "quantum component is not PSD within tolerance");
  }
  if (policy == SupportPolicy::require_common && !has_common_support(x))
    throw validation_error("SupportMismatch", "quantum components do not share a support");
}

void validate(const Experiment& x, SupportPolicy policy) {
  std::visit([policy](const auto& e) { validate(e, policy); }, x);
}

namespace {

void check_compatible(int dx, int dy) {
  if (dx != dy) throw validation_error("ArityMismatch", "experiments differ in arity");
}

}  // namespace

ClassicalExperiment boxplus(const ClassicalExperiment& x, const ClassicalExperiment& y) {
  check_compatible(x.arity(), y.arity());
  ClassicalExperiment out;
  out.components.reserve(x.components.size());
  for (size_t k = 0; k < x.components.size(); ++k) {
    RealVector v(x.components[k].size() + y.components[k].size());
    v << x.components[k], y.components[k];
    out.components.push_back(std::move(v));
  }
  return out;
}

QuantumExperiment boxplus(const QuantumExperiment& x, const QuantumExperiment& y) {
  check_compatible(x.arity(), y.arity());
  QuantumExperiment out;
  out.components.reserve(x.components.size());
  for (size_t k = 0; k < x.components.size(); ++k)
    out.components.push_back(dirsum(x.components[k], y.components[k]));
  return out;
}

ClassicalExperiment boxtimes(const ClassicalExperiment& x, const ClassicalExperiment& y) {
  check_compatible(x.arity(), y.arity());
  ClassicalExperiment out;
  out.components.reserve(x.components.size());
  for (size_t k = 0; k < x.components.size(); ++k) {
    RealVector v(x.components[k].size() * y.components[k].size());
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < x.components[k].size(); ++i)
      for (Eigen::Index j = 0; j < y.components[k].size(); ++j)
        v(idx++) = x.components[k](i) * y.components[k](j);
    out.components.push_back(std::move(v));
  }
  return out;
}

QuantumExperiment boxtimes(const QuantumExperiment& x, const QuantumExperiment& y) {
  check_compatible(x.arity(), y.arity());
  QuantumExperiment out;
  out.components.reserve(x.components.size());
  for (size_t k = 0; k < x.components.size(); ++k)
    out.components.push_back(kron(x.components[k], y.components[k]));
  return out;
}

Experiment boxplus(const Experiment& x, const Experiment& y) {
  if (kind_of(x) != kind_of(y))
    throw validation_error("KindMismatch", "cannot combine classical with quantum");
  if (kind_of(x) == Kind::classical)
    return boxplus(std::get<ClassicalExperiment>(x), std::get<ClassicalExperiment>(y));
  return boxplus(std::get<QuantumExperiment>(x), std::get<QuantumExperiment>(y));
}

Experiment boxtimes(const Experiment& x, const Experiment& y) {
  if (kind_of(x) != kind_of(y))
    throw validation_error("KindMismatch", "cannot combine classical with quantum");
  if (kind_of(x) == Kind::classical)
    return boxtimes(std::get<ClassicalExperiment>(x), std::get<ClassicalExperiment>(y));
  return boxtimes(std::get<QuantumExperiment>(x), std::get<QuantumExperiment>(y));
}

ClassicalExperiment scale(const ClassicalExperiment& x, double c) {
  ClassicalExperiment out = x;
  for (auto& v : out.components) v *= c;
  return out;
}

QuantumExperiment scale(const QuantumExperiment& x, double c) {
  QuantumExperiment out = x;
  for (auto& m : out.components) m *= c;
  return out;
}

Experiment boxpower(const Experiment& x, int n) {
  const int d = arity_of(x);
  Experiment acc;
  if (kind_of(x) == Kind::classical) {
    ClassicalExperiment unit;
    unit.components.assign(static_cast<size_t>(d), RealVector::Ones(1));
    acc = unit;
  } else {
    QuantumExperiment unit;
    unit.components.assign(static_cast<size_t>(d), Matrix::Identity(1, 1));
    acc = unit;
  }
  for (int i = 0; i < n; ++i) acc = boxtimes(acc, x);
  return acc;
}

RealVector norm_vector(const ClassicalExperiment& x) {
  RealVector n(x.arity());
  for (int k = 0; k < x.arity(); ++k) n(k) = x.components[static_cast<size_t>(k)].sum();
  return n;
}

RealVector norm_vector(const QuantumExperiment& x) {
  RealVector n(x.arity());
  for (int k = 0; k < x.arity(); ++k)
    n(k) = x.components[static_cast<size_t>(k)].trace().real();
  return n;
}

RealVector norm_vector(const Experiment& x) {
  return std::visit([](const auto& e) { return norm_vector(e); }, x);
}

bool equivalent(const Experiment& x, const Experiment& y) {
  if (arity_of(x) != arity_of(y))
    throw validation_error("ArityMismatch", "experiments differ in arity");
  const RealVector nx = norm_vector(x), ny = norm_vector(y);
  const double scale = std::max({max_abs(nx), max_abs(ny), 1.0});
  return (nx - ny).cwiseAbs().maxCoeff() <= tol::norm_tol * scale;
}

ClassicalExperiment normalize(const ClassicalExperiment& x) {
  if (x.is_zero()) throw validation_error("ZeroExperiment", "cannot normalize the zero experiment");
  ClassicalExperiment out = x;
  const RealVector n = norm_vector(x);
  for (int k = 0; k < x.arity(); ++k) out.components[static_cast<size_t>(k)] /= n(k);
  return out;
}

QuantumExperiment normalize(const QuantumExperiment& x) {
  if (x.is_zero()) throw validation_error("ZeroExperiment", "cannot normalize the zero experiment");
  QuantumExperiment out = x;
  const RealVector n = norm_vector(x);
  for (int k = 0; k < x.arity(); ++k) out.components[static_cast<size_t>(k)] /= n(k);
  return out;
}

Experiment normalize(const Experiment& x) {
  if (kind_of(x) == Kind::classical) return normalize(std::get<ClassicalExperiment>(x));
  return normalize(std::get<QuantumExperiment>(x));
}

bool is_power_universal(const Experiment& x) {
  const RealVector n = norm_vector(x);
  if ((n - RealVector::Ones(n.size())).cwiseAbs().maxCoeff() > tol::norm_tol) return false;
  if (kind_of(x) == Kind::classical) {
    const auto& e = std::get<ClassicalExperiment>(x);
    for (size_t k = 0; k < e.components.size(); ++k)
      for (size_t l = k + 1; l < e.components.size(); ++l)
        if ((e.components[k] - e.components[l]).cwiseAbs().maxCoeff() <= tol::support_rel)
          return false;
    return true;
  }
  const auto& e = std::get<QuantumExperiment>(x);
  for (size_t k = 0; k < e.components.size(); ++k)
    for (size_t l = k + 1; l < e.components.size(); ++l)
      if ((e.components[k] - e.components[l]).norm() <= tol::support_rel) return false;
  return true;
}

QuantumExperiment embed_classical(const ClassicalExperiment& x) {
  QuantumExperiment out;
  out.components.reserve(x.components.size());
  for (const auto& v : x.components)
    out.components.push_back(v.cast<Complex>().asDiagonal());
  return out;
}

ClassicalExperiment reduce_commuting(const QuantumExperiment& x) {
  const Eigen::Index n = x.dim();
  double scale = 0.0;
  for (const auto& m : x.components) scale = std::max(scale, m.norm());
  for (size_t k = 0; k < x.components.size(); ++k)
    for (size_t l = k + 1; l < x.components.size(); ++l) {
      const Matrix comm = x.components[k] * x.components[l] - x.components[l] * x.components[k];
      if (comm.norm() > tol::comm_rel * std::max(scale, 1e-300))
        throw validation_error("NotCommuting", "components do not commute within tolerance");
    }

  // Joint eigenbasis by sequential block refinement: diagonalize each
  // component inside the eigenvalue clusters left by the previous ones.
  Matrix basis = Matrix::Identity(n, n);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks{{0, n}};
  for (const auto& m : x.components) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> next_blocks;
    for (const auto& [start, len] : blocks) {
      if (len == 1) {
        next_blocks.emplace_back(start, len);
        continue;
      }
      const Matrix sub = basis.middleCols(start, len).adjoint() * m * basis.middleCols(start, len);
      const auto ed = eigh(sub);
      basis.middleCols(start, len) = basis.middleCols(start, len) * ed.eigenvectors;
      const double cluster_tol = tol::comm_rel * std::max(scale, 1.0);
      Eigen::Index bstart = 0;
      for (Eigen::Index i = 1; i <= len; ++i) {
        if (i == len || ed.eigenvalues(i) - ed.eigenvalues(bstart) > cluster_tol) {
          next_blocks.emplace_back(start + bstart, i - bstart);
          bstart = i;
        }
      }
    }
    blocks = std::move(next_blocks);
  }

  ClassicalExperiment out;
  out.components.reserve(x.components.size());
  for (const auto& m : x.components) {
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v(i) = (basis.col(i).adjoint() * m * basis.col(i))(0, 0).real();
    out.components.push_back(std::move(v));
  }
  return out;
}

Reference default_reference(int d) {
  if (d < 2) throw validation_error("ArityMismatch", "reference needs arity >= 2");
  Reference ref;
  ref.d = d;
  const Eigen::Index n = d + 1;
  for (int k = 0; k < d; ++k) {
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + (i == k ? 1.0 : 0.0);
    v /= v.sum();
    ref.classical.components.push_back(std::move(v));
  }
  ref.quantum = embed_classical(ref.classical);
  if (!is_power_universal(Experiment{ref.classical}))
    throw validation_error("DegenerateReference", "constructed reference is not power universal");
  // Derivation denominators KL(u^k || u^l), k != l, must stay away from 0.
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (k == l) continue;
      const RealVector& p = ref.classical.components[static_cast<size_t>(k)];
      const RealVector& q = ref.classical.components[static_cast<size_t>(l)];
      double klv = 0.0;
      for (Eigen::Index i = 0; i < p.size(); ++i) klv += p(i) * std::log(p(i) / q(i));
      if (klv <= tol::denom_tol)
        throw validation_error("DegenerateReference", "reference KL denominator underflow");
    }
  return ref;
}

}  // namespace divlab
