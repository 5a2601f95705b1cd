#pragma once

#include <json.hpp>

#include "divlab/fit.hpp"
#include "divlab/probe.hpp"

namespace divlab {

using nlohmann::json;

// Experiment schema:
//   {"kind":"classical"|"quantum","d":int,"dim":int,"components":[...]}
// classical components are arrays of reals, quantum components are
// dim x dim nested arrays of [re, im] pairs in row-major order.
json to_json(const Experiment& x);
Experiment experiment_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// SpectrumPoint schema: {"variant": "...", "params": {...}}.
json to_json(const SpectrumPoint& pt);
SpectrumPoint spectrum_point_from_json(const json& j);

// Family schema: {"family": "...", ...family parameters...}.
json to_json(const FamilySpec& spec);
FamilySpec family_from_json(const json& j);

json to_json(const MajorizationVerdict& v);
json to_json(const LargeSampleReport& r);
json to_json(const AxiomReport& r);
json to_json(const DerivationReport& r);
json to_json(const SpectrumClass& c);
json fit_result_to_json(const FitResult& r, const std::vector<SpectrumPoint>& grid);

// Doubles with non-finite values encode as the strings "inf"/"-inf"/"nan".
json encode_double(double v);
double decode_double(const json& j);

}  // namespace divlab
