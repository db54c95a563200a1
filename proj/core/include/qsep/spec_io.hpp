#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "qsep/function_classes.hpp"

namespace qsep {

struct FIdSpec {
  int n = 0;
};

using FunctionSpec =
    std::variant<PdspSpec, MainFamilySpec, MmBentSpec, GammaSpec, FIdSpec>;

// JSON schema: {"class": "pdsp"|"main"|"mm"|"gamma"|"f_id", "n": ...,
// class-specific fields named exactly after the type fields; permutations
// as integer arrays, g as a hex truth table}.
FunctionSpec parse_function_spec(const nlohmann::json& j);
nlohmann::json function_spec_json(const FunctionSpec& spec);

TruthTable spec_truth_table(const FunctionSpec& spec);
std::string spec_class_name(const FunctionSpec& spec);
int spec_arity(const FunctionSpec& spec);

}  // namespace qsep
