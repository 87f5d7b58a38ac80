#pragma once

#include <string>

#include <json.hpp>

#include "chred/ch_build.hpp"
#include "chred/ch_solve.hpp"
#include "chred/circuit.hpp"
#include "chred/measure.hpp"
#include "chred/snake.hpp"
#include "chred/tucker.hpp"

namespace chred::io {

using nlohmann::json;

// Rationals serialize as "p/q", or "p" when the denominator is 1.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

json label_grid_to_json(const LabelGrid& g);
LabelGrid label_grid_from_json(const json& j);

json tucker2d_to_json(const Tucker2D& t);
Tucker2D tucker2d_from_json(const json& j);

json instance_to_json(const CHInstance& inst);
CHInstance instance_from_json(const json& j);

json cutset_to_json(const CutSet& s);
CutSet cutset_from_json(const json& j);

json pipeline_to_json(const Pipeline& p);
Pipeline pipeline_from_json(const json& j);

json plan_to_json(const SynthesisPlan& p);
SynthesisPlan plan_from_json(const json& j);

json solution_to_json(const StrongSolution& s);
StrongSolution solution_from_json(const json& j);

// File helpers; read failures throw std::runtime_error with the path.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace chred::io
