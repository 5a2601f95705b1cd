// Command-line surface for the divergence laboratory: evaluate divergence
// families, decide majorization, run large-sample checks, fit barycentres,
// classify spectrum points, and emit region-plot data.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "divlab/json_io.hpp"

namespace {

using namespace divlab;

struct CommandConfig {
  std::string input_path;
  std::string input_b_path;
  std::string family;
  std::string params_json = "{}";
  int grid_resolution = 4;
  double r_max = 30.0;
  std::uint64_t seed = 1;
  int max_iter = tol::choi_max_iter;
  double tolerance = tol::choi_tol;
  std::string out_path;
  std::string format = "json";
};

// All output funnels through here: atomic file replace or stdout.
void emit(const CommandConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  const std::string tmp = cfg.out_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw validation_error("IoError", "cannot open " + tmp);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
  std::filesystem::rename(tmp, cfg.out_path);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("IoError", "cannot read " + path);
  json j;
  in >> j;
  return j;
}

Experiment load_experiment(const std::string& path) {
  return experiment_from_json(load_json(path));
}

FamilySpec parse_family(const CommandConfig& cfg) {
  json params = json::parse(cfg.params_json);
  params["family"] = cfg.family;
  return family_from_json(params);
}

Reference reference_for(int d) { return default_reference(d); }

int cmd_eval(const CommandConfig& cfg) {
  const Experiment x = load_experiment(cfg.input_path);
  FamilySpec spec = parse_family(cfg);
  validate(spec, arity_of(x));
  const Reference u = reference_for(std::max(arity_of(x), 2));
  const double value = eval_raw(spec, x, u);
  json out;
  out["family"] = cfg.family;
  out["params"] = json::parse(cfg.params_json);
  out["value"] = encode_double(value);
  emit(cfg, out.dump(2));
  return 0;
}

int cmd_major(const CommandConfig& cfg) {
  const Experiment x = load_experiment(cfg.input_path);
  const Experiment y = load_experiment(cfg.input_b_path);
  if (kind_of(x) != kind_of(y))
    throw validation_error("KindMismatch", "inputs must share a kind");
  MajorizationVerdict verdict;
  if (kind_of(x) == Kind::classical) {
    verdict = majorizes_classical(std::get<ClassicalExperiment>(x),
                                  std::get<ClassicalExperiment>(y));
  } else {
    verdict = majorizes_quantum(std::get<QuantumExperiment>(x), std::get<QuantumExperiment>(y),
                                cfg.max_iter, cfg.tolerance);
  }
  emit(cfg, to_json(verdict).dump(2));
  return verdict.status == FeasStatus::feasible ? 0 : 1;
}

int cmd_large_sample(const CommandConfig& cfg) {
  const Experiment x = load_experiment(cfg.input_path);
  const Experiment y = load_experiment(cfg.input_b_path);
  const int d = arity_of(x);
  const Reference u = reference_for(d);
  const auto grid = spectrum_grid(d, cfg.grid_resolution, cfg.r_max);
  LargeSampleBudget budget;
  const json params = json::parse(cfg.params_json);
  budget.n_max = params.value("n_max", budget.n_max);
  budget.k_max = params.value("k_max", budget.k_max);
  budget.dim_cap = params.value("dim_cap", static_cast<int>(budget.dim_cap));
  const auto report = large_sample_check(x, y, grid, u, budget);
  emit(cfg, to_json(report).dump(2));
  return report.all_strict ? 0 : 1;
}

int cmd_fit(const CommandConfig& cfg) {
  const json input = load_json(cfg.input_path);
  FitProblem problem;
  for (const auto& s : input.at("samples"))
    problem.samples.push_back(experiment_from_json(s));
  problem.include_offsets = input.value("include_offsets", false);

  const int d = problem.samples.empty() ? 2 : arity_of(problem.samples.front());
  const Reference u = reference_for(d);
  if (input.contains("grid")) {
    for (const auto& g : input.at("grid"))
      problem.grid.push_back(spectrum_point_from_json(g));
  } else {
    problem.grid = spectrum_grid(d, cfg.grid_resolution, cfg.r_max);
  }

  if (input.contains("target_values")) {
    for (const auto& v : input.at("target_values"))
      problem.target_values.push_back(decode_double(v));
  } else {
    FamilySpec spec = parse_family(cfg);
    for (const auto& s : problem.samples)
      problem.target_values.push_back(eval_raw(spec, s, u));
  }

  const json params = json::parse(cfg.params_json);
  const double reg = params.value("reg", 1e-8);
  const auto result = fit_barycentric(problem, u, reg, cfg.seed);
  emit(cfg, fit_result_to_json(result, problem.grid).dump(2));
  return 0;
}

int cmd_classify(const CommandConfig& cfg) {
  FamilySpec spec = parse_family(cfg);
  const json params = json::parse(cfg.params_json);
  int d = params.value("d", 0);
  if (d == 0) {
    if (spec.family == Family::temperate) d = static_cast<int>(spec.alpha_vec.size());
    else if (spec.family == Family::tropical) d = static_cast<int>(spec.beta.size());
    else if (spec.family == Family::derivation) d = static_cast<int>(spec.gamma.size());
    else if (spec.family == Family::matrix_mean) d = static_cast<int>(spec.alpha_vec.size());
    else if (spec.family == Family::staged && !spec.staged.inner_weights.empty())
      d = static_cast<int>(spec.staged.inner_weights.front().size());
    else d = 2;
  }
  validate(spec, d);
  const Reference u = reference_for(d);
  const auto result = half_mix_probe(spec, u);
  emit(cfg, to_json(result).dump(2));
  return 0;
}

int cmd_regions(const CommandConfig& cfg) {
  const int d = 3;
  const Reference u = reference_for(d);
  (void)u;
  const auto grid = spectrum_grid(d, cfg.grid_resolution, cfg.r_max);

  // Orthonormal coordinates in the affine plane sum(alpha) = 1.
  RealVector center = RealVector::Constant(3, 1.0 / 3.0);
  RealVector v1(3), v2(3);
  v1 << 1.0, -1.0, 0.0;
  v2 << 1.0, 1.0, -2.0;
  v1 /= v1.norm();
  v2 /= v2.norm();

  std::ostringstream csv;
  csv << "region,x,y,radius\n";
  csv.precision(17);
  for (const auto& pt : grid) {
    std::string region;
    RealVector coords;
    double radius = 0.0;
    if (std::holds_alternative<TemperateParam>(pt)) {
      const auto& p = std::get<TemperateParam>(pt);
      region = p.region() == TemperateRegion::a_plus
                   ? "Aplus"
                   : "A" + std::to_string(p.distinguished_index() + 1);
      coords = p.alpha - center;
    } else if (std::holds_alternative<TropicalParam>(pt)) {
      const auto& p = std::get<TropicalParam>(pt);
      region = "B" + std::to_string(p.k + 1);
      radius = p.beta.norm();
      coords = p.beta / radius;  // direction only; the point sits at infinity
    } else if (std::holds_alternative<DerivationParam>(pt)) {
      const auto& p = std::get<DerivationParam>(pt);
      region = "Deriv" + std::to_string(p.k + 1);
      RealVector corner = RealVector::Zero(3);
      corner(p.k) = 1.0;
      coords = corner - center;
    } else {
      continue;  // no named-quantum points in the classical region map
    }
    csv << region << ',' << coords.dot(v1) << ',' << coords.dot(v2) << ',' << radius << '\n';
  }
  emit(cfg, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divergence laboratory for classical and quantum majorization semirings"};
  app.require_subcommand(1);

  CommandConfig cfg;
  auto add_common = [&](CLI::App* sub, bool needs_b) {
    sub->add_option("--input", cfg.input_path, "experiment or problem JSON path");
    if (needs_b) sub->add_option("--input-b", cfg.input_b_path, "second experiment JSON path");
    sub->add_option("--family", cfg.family, "divergence family id");
    sub->add_option("--params", cfg.params_json, "inline JSON parameter object");
    sub->add_option("--grid-resolution", cfg.grid_resolution, "spectrum grid resolution");
    sub->add_option("--r-max", cfg.r_max, "grid compactification radius");
    sub->add_option("--seed", cfg.seed, "seed for all randomized steps");
    sub->add_option("--max-iter", cfg.max_iter, "iteration budget for solvers");
    sub->add_option("--tol", cfg.tolerance, "solver tolerance");
    sub->add_option("--out", cfg.out_path, "output path (atomic write); stdout when absent");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* eval = app.add_subcommand("eval", "evaluate a divergence family on an experiment");
  add_common(eval, false);
  auto* major = app.add_subcommand("major", "decide majorization between two experiments");
  add_common(major, true);
  auto* large = app.add_subcommand("large-sample", "Theorem-style large-sample check");
  add_common(large, true);
  auto* fit = app.add_subcommand("fit", "barycentric fit over a spectrum grid");
  add_common(fit, false);
  auto* classify = app.add_subcommand("classify", "half-mixture spectrum classification");
  add_common(classify, false);
  auto* regions = app.add_subcommand("regions", "emit the d=3 region map as CSV");
  add_common(regions, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed()) return cmd_eval(cfg);
    if (major->parsed()) return cmd_major(cfg);
    if (large->parsed()) return cmd_large_sample(cfg);
    if (fit->parsed()) return cmd_fit(cfg);
    if (classify->parsed()) return cmd_classify(cfg);
    if (regions->parsed()) return cmd_regions(cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::validation ? 2 : 3;
  } catch (const json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
