#include "divlab/json_io.hpp"

#include <cmath>
#include <limits>

namespace divlab {

json encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_double(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw validation_error("ParseError", "unknown numeric string: " + s);
  }
  return j.get<double>();
}

namespace {

json vector_to_json(const RealVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RealVector vector_from_json(const json& a) {
  RealVector v(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (const auto& x : a) v(i++) = decode_double(x);
  return v;
}

}  // namespace

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  const Eigen::Index n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = j.at(static_cast<size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw validation_error("ParseError", "quantum component must be a square matrix");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& cell = row.at(static_cast<size_t>(c));
      if (!cell.is_array() || cell.size() != 2)
        throw validation_error("ParseError", "matrix entries must be [re, im] pairs");
      m(r, c) = Complex(decode_double(cell[0]), decode_double(cell[1]));
    }
  }
  return m;
}

json to_json(const Experiment& x) {
  json out;
  out["d"] = arity_of(x);
  if (kind_of(x) == Kind::classical) {
    const auto& e = std::get<ClassicalExperiment>(x);
    out["kind"] = "classical";
    out["dim"] = e.size();
    json comps = json::array();
    for (const auto& v : e.components) comps.push_back(vector_to_json(v));
    out["components"] = std::move(comps);
  } else {
    const auto& e = std::get<QuantumExperiment>(x);
    out["kind"] = "quantum";
    out["dim"] = e.dim();
    json comps = json::array();
    for (const auto& m : e.components) comps.push_back(to_json(m));
    out["components"] = std::move(comps);
  }
  return out;
}

Experiment experiment_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int d = j.at("d").get<int>();
  const auto& comps = j.at("components");
  if (static_cast<int>(comps.size()) != d)
    throw validation_error("ParseError", "component count disagrees with d");
  if (kind == "classical") {
    ClassicalExperiment e;
    for (const auto& c : comps) e.components.push_back(vector_from_json(c));
    return e;
  }
  if (kind == "quantum") {
    QuantumExperiment e;
    for (const auto& c : comps) e.components.push_back(matrix_from_json(c));
    return e;
  }
  throw validation_error("ParseError", "kind must be classical or quantum");
}

json to_json(const FamilySpec& spec) {
  json out;
  out["family"] = family_name(spec.family);
  switch (spec.family) {
    case Family::temperate:
      out["alpha"] = vector_to_json(spec.alpha_vec);
      break;
    case Family::tropical:
      out["beta"] = vector_to_json(spec.beta);
      out["k"] = spec.k + 1;  // 1-based in the external schema
      break;
    case Family::derivation:
      out["k"] = spec.k + 1;
      out["gamma"] = vector_to_json(spec.gamma);
      break;
    case Family::renyi:
    case Family::kubo_ando:
      out["alpha"] = spec.alpha;
      break;
    case Family::alpha_z:
      out["alpha"] = spec.alphaz.alpha;
      out["z"] = spec.alphaz.z;
      break;
    case Family::umegaki:
    case Family::bs:
      if (spec.gamma.size() > 0) {
        out["k"] = spec.k + 1;
        out["gamma"] = vector_to_json(spec.gamma);
      }
      break;
    case Family::matrix_mean:
      out["weights"] = vector_to_json(spec.alpha_vec);
      break;
    case Family::staged: {
      out["alpha"] = spec.staged.alphaz.alpha;
      out["z"] = spec.staged.alphaz.z;
      out["outer_weights"] = vector_to_json(spec.staged.outer_weights);
      json inner = json::array();
      for (const auto& w : spec.staged.inner_weights) inner.push_back(vector_to_json(w));
      out["inner_weights"] = std::move(inner);
      break;
    }
    case Family::kl:
      break;
  }
  return out;
}

FamilySpec family_from_json(const json& j) {
  FamilySpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  switch (spec.family) {
    case Family::temperate:
      spec.alpha_vec = vector_from_json(j.at("alpha"));
      break;
    case Family::tropical:
      spec.beta = vector_from_json(j.at("beta"));
      spec.k = j.value("k", 1) - 1;
      if (spec.k < 0 && spec.beta.size() > 0) {
        Eigen::Index arg;
        spec.beta.maxCoeff(&arg);
        spec.k = static_cast<int>(arg);
      }
      break;
    case Family::derivation:
      spec.k = j.at("k").get<int>() - 1;
      spec.gamma = vector_from_json(j.at("gamma"));
      break;
    case Family::renyi:
    case Family::kubo_ando:
      spec.alpha = decode_double(j.at("alpha"));
      break;
    case Family::alpha_z:
      spec.alphaz.alpha = decode_double(j.at("alpha"));
      spec.alphaz.z = decode_double(j.at("z"));
      break;
    case Family::umegaki:
    case Family::bs:
      if (j.contains("k")) spec.k = j.at("k").get<int>() - 1;
      if (j.contains("gamma")) spec.gamma = vector_from_json(j.at("gamma"));
      break;
    case Family::matrix_mean:
      spec.alpha_vec = vector_from_json(j.at("weights"));
      break;
    case Family::staged: {
      spec.staged.alphaz.alpha = decode_double(j.at("alpha"));
      spec.staged.alphaz.z = decode_double(j.at("z"));
      spec.staged.outer_weights = vector_from_json(j.at("outer_weights"));
      for (const auto& w : j.at("inner_weights"))
        spec.staged.inner_weights.push_back(vector_from_json(w));
      break;
    }
    case Family::kl:
      break;
  }
  return spec;
}

json to_json(const SpectrumPoint& pt) {
  json out;
  if (std::holds_alternative<TemperateParam>(pt)) {
    out["variant"] = "temperate";
    out["params"] = {{"alpha", vector_to_json(std::get<TemperateParam>(pt).alpha)}};
  } else if (std::holds_alternative<TropicalParam>(pt)) {
    const auto& p = std::get<TropicalParam>(pt);
    out["variant"] = "tropical";
    out["params"] = {{"beta", vector_to_json(p.beta)}, {"k", p.k + 1}};
  } else if (std::holds_alternative<DerivationParam>(pt)) {
    const auto& p = std::get<DerivationParam>(pt);
    out["variant"] = "derivation";
    out["params"] = {{"k", p.k + 1}, {"gamma", vector_to_json(p.gamma)}};
  } else {
    out["variant"] = "quantum";
    out["params"] = to_json(std::get<NamedQuantumPoint>(pt).spec);
  }
  return out;
}

SpectrumPoint spectrum_point_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  const json& p = j.at("params");
  if (variant == "temperate") return TemperateParam{vector_from_json(p.at("alpha"))};
  if (variant == "tropical")
    return TropicalParam{vector_from_json(p.at("beta")), p.at("k").get<int>() - 1};
  if (variant == "derivation")
    return DerivationParam{p.at("k").get<int>() - 1, vector_from_json(p.at("gamma"))};
  if (variant == "quantum") return NamedQuantumPoint{family_from_json(p)};
  throw validation_error("ParseError", "unknown spectrum point variant: " + variant);
}

namespace {

std::string status_name(FeasStatus s) {
  switch (s) {
    case FeasStatus::feasible: return "feasible";
    case FeasStatus::infeasible: return "infeasible";
    case FeasStatus::no_witness_found: return "no-witness-found";
  }
  return "unknown";
}

json stochastic_to_json(const RealMatrix& t) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < t.cols(); ++j) row.push_back(t(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const MajorizationVerdict& v) {
  json out;
  out["status"] = status_name(v.status);
  out["residual"] = encode_double(v.residual);
  if (v.stochastic_witness) out["witness"] = stochastic_to_json(*v.stochastic_witness);
  else if (v.choi_witness) out["witness"] = to_json(*v.choi_witness);
  else out["witness"] = nullptr;
  return out;
}

json to_json(const LargeSampleReport& r) {
  json out;
  out["all_strict"] = r.all_strict;
  out["margin"] = encode_double(r.margin);
  json viol = json::array();
  for (const auto& pt : r.violating_points) viol.push_back(to_json(pt));
  out["violating_points"] = std::move(viol);
  if (r.verified)
    out["verified"] = {{"n", r.verified->first}, {"k", r.verified->second}};
  else
    out["verified"] = nullptr;
  out["catalyst_verified"] = r.catalyst_verified;
  return out;
}

json to_json(const AxiomReport& r) {
  return json{{"boxplus_additive", encode_double(r.boxplus_additive)},
              {"boxplus_max", encode_double(r.boxplus_max)},
              {"boxtimes", encode_double(r.boxtimes)},
              {"unit", encode_double(r.unit)},
              {"monotone", encode_double(r.monotone)},
              {"branch", r.additive_branch ? "additive" : "max"}};
}

json to_json(const DerivationReport& r) {
  return json{{"additivity", encode_double(r.additivity)},
              {"leibniz", encode_double(r.leibniz)}};
}

json to_json(const SpectrumClass& c) {
  return json{{"class", tag_name(c.tag)}, {"probe", encode_double(c.probe_value)}};
}

json fit_result_to_json(const FitResult& r, const std::vector<SpectrumPoint>& grid) {
  json weights = json::array();
  for (Eigen::Index i = 0; i < r.weights.size(); ++i) {
    if (r.weights(i) <= tol::weight_floor) continue;
    json entry;
    entry["point"] = to_json(grid[static_cast<size_t>(i)]);
    entry["weight"] = r.weights(i);
    weights.push_back(std::move(entry));
  }
  json offsets = json::array();
  for (Eigen::Index i = 0; i < r.offsets.size(); ++i) offsets.push_back(r.offsets(i));
  return json{{"weights", std::move(weights)},
              {"offsets", std::move(offsets)},
              {"residual_rms", encode_double(r.residual_rms)},
              {"weight_sum", encode_double(r.weight_sum)}};
}

}  // namespace divlab
