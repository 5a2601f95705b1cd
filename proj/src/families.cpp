#include "divlab/families.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace divlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const ClassicalExperiment& as_classical(const Experiment& x) {
  if (!std::holds_alternative<ClassicalExperiment>(x))
    throw validation_error("KindMismatch", "family expects a classical experiment");
  return std::get<ClassicalExperiment>(x);
}

const QuantumExperiment& as_quantum(const Experiment& x) {
  if (!std::holds_alternative<QuantumExperiment>(x))
    throw validation_error("KindMismatch", "family expects a quantum experiment");
  return std::get<QuantumExperiment>(x);
}

// gamma defaulting: bivariate umegaki/bs use k=0, gamma=e_1 when unset.
RealVector derivation_gamma(const FamilySpec& spec, int arity) {
  if (spec.gamma.size() == arity) return spec.gamma;
  if (spec.gamma.size() != 0)
    throw validation_error("ParamError", "gamma length must equal the experiment arity");
  RealVector g = RealVector::Zero(arity);
  g(spec.k == 0 && arity > 1 ? 1 : 0) = 1.0;
  return g;
}

double quantum_derivation_raw(const FamilySpec& spec, const QuantumExperiment& x,
                              bool trace_normalized) {
  const RealVector g = derivation_gamma(spec, x.arity());
  if (spec.k < 0 || spec.k >= x.arity())
    throw validation_error("ParamError", "derivation index k out of range");
  double acc = 0.0;
  for (int l = 0; l < x.arity(); ++l) {
    if (g(l) <= 0.0) continue;
    const Matrix& rho = x.components[static_cast<size_t>(spec.k)];
    const Matrix& sig = x.components[static_cast<size_t>(l)];
    acc += g(l) * (spec.family == Family::umegaki ? d_umegaki(rho, sig) : d_bs(rho, sig));
  }
  if (!trace_normalized) return acc;
  const double tr = x.components[static_cast<size_t>(spec.k)].trace().real();
  if (tr <= 0.0) throw validation_error("ZeroExperiment", "zero trace component");
  return acc / tr;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::temperate: return "temperate";
    case Family::tropical: return "tropical";
    case Family::derivation: return "derivation";
    case Family::kl: return "kl";
    case Family::renyi: return "renyi";
    case Family::alpha_z: return "alpha-z";
    case Family::umegaki: return "umegaki";
    case Family::kubo_ando: return "kubo-ando";
    case Family::bs: return "bs";
    case Family::max: return "max";
    case Family::matrix_mean: return "matrix-mean";
    case Family::staged: return "staged";
  }
  throw validation_error("ParamError", "unknown family");
}

Family family_from_name(const std::string& name) {
  static const std::map<std::string, Family> table = {
      {"temperate", Family::temperate}, {"tropical", Family::tropical},
      {"derivation", Family::derivation}, {"kl", Family::kl},
      {"renyi", Family::renyi}, {"alpha-z", Family::alpha_z},
      {"umegaki", Family::umegaki}, {"kubo-ando", Family::kubo_ando},
      {"bs", Family::bs}, {"max", Family::max},
      {"matrix-mean", Family::matrix_mean}, {"staged", Family::staged}};
  const auto it = table.find(name);
  if (it == table.end()) throw validation_error("ParamError", "unknown family id: " + name);
  return it->second;
}

bool FamilySpec::is_quantum() const {
  switch (family) {
    case Family::alpha_z:
    case Family::umegaki:
    case Family::kubo_ando:
    case Family::bs:
    case Family::max:
    case Family::matrix_mean:
    case Family::staged:
      return true;
    default:
      return false;
  }
}

void validate(const FamilySpec& spec, int arity) {
  switch (spec.family) {
    case Family::temperate: {
      TemperateParam p{spec.alpha_vec};
      validate(p);
      if (p.alpha.size() != arity)
        throw validation_error("ParamError", "alpha length must equal the experiment arity");
      break;
    }
    case Family::tropical: {
      TropicalParam p{spec.beta, spec.k};
      validate(p);
      if (p.beta.size() != arity)
        throw validation_error("ParamError", "beta length must equal the experiment arity");
      break;
    }
    case Family::derivation:
      validate(DerivationParam{spec.k, spec.gamma}, arity);
      break;
    case Family::kl:
      if (arity != 2) throw validation_error("ParamError", "kl needs a bivariate experiment");
      break;
    case Family::renyi:
      if (arity != 2) throw validation_error("ParamError", "renyi needs a bivariate experiment");
      if (spec.alpha < 0.0) throw validation_error("ParamError", "renyi alpha must be >= 0");
      break;
    case Family::alpha_z:
      if (arity != 2) throw validation_error("ParamError", "alpha-z needs a bivariate experiment");
      validate(spec.alphaz);
      break;
    case Family::umegaki:
    case Family::bs:
      if (spec.gamma.size() != 0) validate(DerivationParam{spec.k, spec.gamma}, arity);
      else if (arity != 2)
        throw validation_error("ParamError",
                               "bivariate form needs arity 2; pass k/gamma for higher arity");
      break;
    case Family::kubo_ando:
      if (arity != 2)
        throw validation_error("ParamError", "kubo-ando needs a bivariate experiment");
      if (spec.alpha < 0.0 || spec.alpha > 2.0 || spec.alpha == 1.0)
        throw validation_error("AlphaOutOfRange", "kubo-ando alpha must be in [0,2], not 1");
      break;
    case Family::max:
      if (arity != 2) throw validation_error("ParamError", "max needs a bivariate experiment");
      break;
    case Family::matrix_mean: {
      if (spec.alpha_vec.size() != arity)
        throw validation_error("ParamError", "weight length must equal the experiment arity");
      if (spec.alpha_vec.minCoeff() < -tol::param_tol ||
          std::abs(spec.alpha_vec.sum() - 1.0) > tol::param_tol)
        throw validation_error("ParamError", "matrix-mean weights must form a probability vector");
      if (spec.alpha_vec.maxCoeff() >= 1.0 - tol::param_tol)
        throw validation_error("ExtremeWeights", "matrix-mean weights must be non-extreme");
      break;
    }
    case Family::staged:
      validate(spec.staged, arity);
      break;
  }
}

double eval_raw(const FamilySpec& spec, const Experiment& x, const Reference& u) {
  switch (spec.family) {
    case Family::temperate:
      return D_temperate(TemperateParam{spec.alpha_vec}, as_classical(x), u);
    case Family::tropical:
      return D_tropical(TropicalParam{spec.beta, spec.k}, as_classical(x), u);
    case Family::derivation:
      return D_derivation(DerivationParam{spec.k, spec.gamma}, as_classical(x), u);
    case Family::kl: {
      const auto& e = as_classical(x);
      if (e.arity() != 2) throw validation_error("ArityMismatch", "kl needs arity 2");
      return kl(e.components[0], e.components[1]);
    }
    case Family::renyi: {
      const auto& e = as_classical(x);
      if (e.arity() != 2) throw validation_error("ArityMismatch", "renyi needs arity 2");
      return renyi(spec.alpha, e.components[0], e.components[1]);
    }
    case Family::alpha_z: {
      const auto& e = as_quantum(x);
      if (e.arity() != 2) throw validation_error("ArityMismatch", "alpha-z needs arity 2");
      return d_alpha_z(spec.alphaz, e.components[0], e.components[1]);
    }
    case Family::umegaki:
    case Family::bs:
      return quantum_derivation_raw(spec, as_quantum(x), true);
    case Family::kubo_ando: {
      const auto& e = as_quantum(x);
      if (e.arity() != 2) throw validation_error("ArityMismatch", "kubo-ando needs arity 2");
      return d_kubo_ando(spec.alpha, e.components[0], e.components[1]);
    }
    case Family::max: {
      const auto& e = as_quantum(x);
      if (e.arity() != 2) throw validation_error("ArityMismatch", "max needs arity 2");
      return d_max(e.components[0], e.components[1]);
    }
    case Family::matrix_mean:
      return d_matrix_mean(spec.alpha_vec, as_quantum(x));
    case Family::staged:
      return d_staged(spec.staged, as_quantum(x));
  }
  throw validation_error("ParamError", "unknown family");
}

double phi_value(const FamilySpec& spec, const Experiment& x) {
  switch (spec.family) {
    case Family::temperate:
      return std::exp(phi_temperate(spec.alpha_vec, as_classical(x)));
    case Family::tropical:
      return std::exp(phi_tropical(spec.beta, as_classical(x)));
    case Family::renyi: {
      const auto& e = as_classical(x);
      // exp((alpha-1) D_alpha): the additive trace functional itself.
      if (spec.alpha == 1.0 || std::isinf(spec.alpha))
        return std::exp(eval_raw(spec, x, Reference{}));
      RealVector a(2);
      a << spec.alpha, 1.0 - spec.alpha;
      return std::exp(phi_temperate(a, e));
    }
    case Family::alpha_z: {
      const auto& e = as_quantum(x);
      const double v = d_alpha_z(spec.alphaz, e.components[0], e.components[1]);
      return std::exp((spec.alphaz.alpha - 1.0) * v);
    }
    case Family::kubo_ando: {
      const auto& e = as_quantum(x);
      const double v = d_kubo_ando(spec.alpha, e.components[0], e.components[1]);
      return std::exp((spec.alpha - 1.0) * v);
    }
    case Family::max: {
      const auto& e = as_quantum(x);
      return max_relative_lambda(e.components[0], e.components[1]);
    }
    case Family::matrix_mean: {
      const auto& e = as_quantum(x);
      return karcher_mean(spec.alpha_vec, e.components).trace().real();
    }
    case Family::staged: {
      const auto& e = as_quantum(x);
      const double v = d_staged(spec.staged, e);
      return std::exp((spec.staged.alphaz.alpha - 1.0) * v);
    }
    case Family::derivation:
    case Family::kl:
    case Family::umegaki:
    case Family::bs:
      // Derivation-type maps have no multiplicative homomorphism; the
      // battery probes exp(raw value) and reports the failures.
      return std::exp(eval_raw(spec, x, Reference{}));
  }
  throw validation_error("ParamError", "unknown family");
}

double derivation_prime(const FamilySpec& spec, const Experiment& x, const Reference& u) {
  switch (spec.family) {
    case Family::derivation: {
      // Unnormalized classical derivation, reference scale kept.
      const auto& e = as_classical(x);
      DerivationParam par{spec.k, spec.gamma};
      validate(par, e.arity());
      const double den = derivation_unnormalized(par, u.classical);
      if (std::abs(den) <= tol::denom_tol)
        throw validation_error("DegenerateReference", "derivation normalization underflow at u");
      return derivation_unnormalized(par, e) / den;
    }
    case Family::kl: {
      const auto& e = as_classical(x);
      return kl(e.components[0], e.components[1]);
    }
    case Family::umegaki:
    case Family::bs:
      return quantum_derivation_raw(spec, as_quantum(x), false);
    default: {
      // Delta'(x) = D(x) ||x||_(k) for families that are not derivations;
      // the Leibniz battery is expected to flag these.
      const double nk = norm_vector(x)(spec.k);
      return eval_raw(spec, x, u) * nk;
    }
  }
}

FamilySpec spec_of(const SpectrumPoint& pt) {
  if (std::holds_alternative<TemperateParam>(pt)) {
    FamilySpec s;
    s.family = Family::temperate;
    s.alpha_vec = std::get<TemperateParam>(pt).alpha;
    return s;
  }
  if (std::holds_alternative<TropicalParam>(pt)) {
    FamilySpec s;
    s.family = Family::tropical;
    s.beta = std::get<TropicalParam>(pt).beta;
    s.k = std::get<TropicalParam>(pt).k;
    return s;
  }
  if (std::holds_alternative<DerivationParam>(pt)) {
    FamilySpec s;
    s.family = Family::derivation;
    s.k = std::get<DerivationParam>(pt).k;
    s.gamma = std::get<DerivationParam>(pt).gamma;
    return s;
  }
  return std::get<NamedQuantumPoint>(pt).spec;
}

double spectrum_value(const SpectrumPoint& pt, const Experiment& x, const Reference& u) {
  const FamilySpec spec = spec_of(pt);
  switch (spec.family) {
    case Family::temperate:
    case Family::tropical:
    case Family::derivation:
      return eval_raw(spec, x, u);  // already normalized at u
    default: {
      const Experiment u_exp =
          spec.is_quantum() ? Experiment{u.quantum} : Experiment{u.classical};
      const double at_u = eval_raw(spec, u_exp, u);
      if (!(std::abs(at_u) > tol::denom_tol))
        throw validation_error("DegenerateReference", "family value at u underflows");
      return eval_raw(spec, x, u) / at_u;
    }
  }
}

std::vector<SpectrumPoint> spectrum_grid(int d, int resolution, double r_max) {
  if (d < 2) throw validation_error("ArityMismatch", "grid needs arity >= 2");
  if (resolution < 2) throw validation_error("ParamError", "grid resolution must be >= 2");
  std::vector<SpectrumPoint> grid;

  // A+ lattice: alpha = i/(resolution+1), sum i = resolution+1, corners out.
  {
    const int total = resolution + 1;
    std::vector<int> idx(static_cast<size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == d - 1) {
        idx[static_cast<size_t>(pos)] = left;
        bool corner = false;
        for (int v : idx) corner |= (v == total);
        if (!corner) {
          RealVector a(d);
          for (int k = 0; k < d; ++k) a(k) = double(idx[static_cast<size_t>(k)]) / double(total);
          grid.emplace_back(TemperateParam{a});
        }
        return;
      }
      for (int v = 0; v <= left; ++v) {
        idx[static_cast<size_t>(pos)] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, total);
  }

  // Log-spaced radii in (0, r_max].
  auto radii = [&](int count) {
    std::vector<double> out;
    const double lo = std::log(r_max) - std::log(64.0);
    const double hi = std::log(r_max);
    for (int i = 0; i < count; ++i)
      out.push_back(std::exp(lo + (hi - lo) * (count == 1 ? 1.0 : double(i) / double(count - 1))));
    return out;
  };

  // A_k rays from the corner toward infinity.
  for (int k = 0; k < d; ++k) {
    for (double t : radii(resolution)) {
      RealVector a = RealVector::Constant(d, -t / d);
      a(k) = 1.0 + t * (1.0 - 1.0 / d);
      grid.emplace_back(TemperateParam{a});
    }
  }

  // B_k: unit directions inside the sign cone, then log-spaced radii.
  for (int k = 0; k < d; ++k) {
    std::vector<RealVector> dirs;
    if (d == 2) {
      RealVector dir(2);
      dir(k) = 1.0;
      dir(1 - k) = -1.0;
      dirs.push_back(dir / dir.norm());
    } else {
      // Lattice of convex weights over the d-1 edge directions e_k - e_l.
      std::vector<int> others;
      for (int l = 0; l < d; ++l)
        if (l != k) others.push_back(l);
      const int m = d - 1;
      std::vector<int> idx(static_cast<size_t>(m), 0);
      std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == m - 1) {
          idx[static_cast<size_t>(pos)] = left;
          RealVector dir = RealVector::Zero(d);
          for (int j = 0; j < m; ++j) {
            dir(k) += idx[static_cast<size_t>(j)];
            dir(others[static_cast<size_t>(j)]) -= idx[static_cast<size_t>(j)];
          }
          dirs.push_back(dir / dir.norm());
          return;
        }
        for (int v = 0; v <= left; ++v) {
          idx[static_cast<size_t>(pos)] = v;
          rec(pos + 1, left - v);
        }
      };
      rec(0, resolution - 1);
    }
    for (const auto& dir : dirs)
      for (double r : radii(resolution)) grid.emplace_back(TropicalParam{r * dir, k});
  }

  // Derivation corners gamma = e_l, l != k.
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (l == k) continue;
      RealVector g = RealVector::Zero(d);
      g(l) = 1.0;
      grid.emplace_back(DerivationParam{k, g});
    }

  return grid;
}

GridCounts spectrum_grid_counts(int d, int resolution) {
  GridCounts c;
  const auto grid = spectrum_grid(d, resolution);
  for (const auto& pt : grid) {
    if (std::holds_alternative<TemperateParam>(pt)) {
      if (std::get<TemperateParam>(pt).region() == TemperateRegion::a_plus)
        ++c.a_plus;
      else
        ++c.a_k;
    } else if (std::holds_alternative<TropicalParam>(pt)) {
      ++c.b_k;
    } else {
      ++c.derivation;
    }
  }
  return c;
}

Experiment half_mixture(const Reference& u, Kind kind) {
  if (kind == Kind::classical) {
    ClassicalExperiment unit;
    unit.components.assign(static_cast<size_t>(u.d), RealVector::Ones(1));
    return scale(boxplus(u.classical, unit), 0.5);
  }
  QuantumExperiment unit;
  unit.components.assign(static_cast<size_t>(u.d), Matrix::Identity(1, 1));
  return scale(boxplus(u.quantum, unit), 0.5);
}

}  // namespace divlab
