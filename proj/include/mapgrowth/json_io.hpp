#pragma once

// JSON serialization for every externally visible structure.  Bracket trees
// are nested arrays of generator names; big integers and rationals travel as
// decimal strings so nothing is truncated.

#include <nlohmann/json.hpp>

#include "mapgrowth/cw_spaces.hpp"
#include "mapgrowth/graded_lie.hpp"
#include "mapgrowth/growth_count.hpp"
#include "mapgrowth/lip_cost.hpp"

namespace mapgrowth {

using json = nlohmann::json;

json generator_to_json(const Generator& g);
Generator generator_from_json(const json& j);

json tree_to_json(const LieAlgebra& alg, TreeId t);
TreeId tree_from_json(const LieAlgebra& alg, const json& j);

json element_to_json(const LieAlgebra& alg, const LieElement& e);
LieElement element_from_json(const LieAlgebra& alg, const json& j);

json spec_to_json(const ComplexSpec& spec);
ComplexSpec spec_from_json(const json& j);

json constraints_to_json(const ConstraintSystem& sys);
ConstraintSystem constraints_from_json(const json& j);

json fit_to_json(const FitResult& fit);
FitResult fit_from_json(const json& j);

json budget_report_to_json(const BudgetReport& report);

}  // namespace mapgrowth
