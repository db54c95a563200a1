#include "qsep/spec_io.hpp"

namespace qsep {

namespace {

using nlohmann::json;

std::vector<int> int_list(const json& j, const char* field) {
  if (!j.contains(field)) throw SpecError(std::string("spec json: missing '") + field + "'");
  return j.at(field).get<std::vector<int>>();
}

std::vector<std::vector<int>> int_lists(const json& j, const char* field) {
  if (!j.contains(field)) throw SpecError(std::string("spec json: missing '") + field + "'");
  return j.at(field).get<std::vector<std::vector<int>>>();
}

std::vector<std::uint32_t> perm_table(const json& j, const char* field) {
  if (!j.contains(field)) throw SpecError(std::string("spec json: missing '") + field + "'");
  return j.at(field).get<std::vector<std::uint32_t>>();
}

std::optional<TruthTable> opt_table(const json& j, const char* field, int vars) {
  if (!j.contains(field) || j.at(field).is_null()) return std::nullopt;
  return TruthTable::from_hex(j.at(field).get<std::string>(), vars);
}

}  // namespace

FunctionSpec parse_function_spec(const json& j) {
  std::string cls = j.at("class").get<std::string>();
  int n = j.at("n").get<int>();
  if (cls == "pdsp") {
    PdspSpec s;
    s.n = n;
    s.hat_vars = int_list(j, "hat_vars");
    s.monomials = int_lists(j, "monomials");
    s.tilde_vars = j.contains("tilde_vars") ? int_list(j, "tilde_vars") : std::vector<int>{};
    s.validate();
    return s;
  }
  if (cls == "main") {
    MainFamilySpec s;
    s.n = n;
    s.t = j.at("t").get<int>();
    s.g_partition = int_lists(j, "g_partition");
    s.validate();
    return s;
  }
  if (cls == "mm") {
    MmBentSpec s;
    s.n = n;
    s.phi = perm_table(j, "phi");
    s.g = opt_table(j, "g", n / 2);
    s.validate();
    return s;
  }
  if (cls == "gamma") {
    GammaSpec s;
    s.n = n;
    s.y_hat = int_list(j, "y_hat");
    s.z_hat = int_list(j, "z_hat");
    s.y_tilde = int_list(j, "y_tilde");
    s.z_tilde = int_list(j, "z_tilde");
    s.phi1 = perm_table(j, "phi1");
    s.phi2 = perm_table(j, "phi2");
    s.x_prime = j.contains("x_prime") ? int_list(j, "x_prime") : std::vector<int>{};
    s.g = opt_table(j, "g", int(s.x_prime.size()));
    s.validate();
    return s;
  }
  if (cls == "f_id") {
    if (n < 2 || n % 2) throw SpecError("f_id: n must be even and >= 2");
    return FIdSpec{n};
  }
  throw SpecError("spec json: unknown class '" + cls + "'");
}

json function_spec_json(const FunctionSpec& spec) {
  json j;
  if (const auto* s = std::get_if<PdspSpec>(&spec)) {
    j["class"] = "pdsp";
    j["n"] = s->n;
    j["hat_vars"] = s->hat_vars;
    j["monomials"] = s->monomials;
    j["tilde_vars"] = s->tilde_vars;
  } else if (const auto* s = std::get_if<MainFamilySpec>(&spec)) {
    j["class"] = "main";
    j["n"] = s->n;
    j["t"] = s->t;
    j["g_partition"] = s->g_partition;
  } else if (const auto* s = std::get_if<MmBentSpec>(&spec)) {
    j["class"] = "mm";
    j["n"] = s->n;
    j["phi"] = s->phi;
    if (s->g) j["g"] = s->g->to_hex();
  } else if (const auto* s = std::get_if<GammaSpec>(&spec)) {
    j["class"] = "gamma";
    j["n"] = s->n;
    j["y_hat"] = s->y_hat;
    j["z_hat"] = s->z_hat;
    j["y_tilde"] = s->y_tilde;
    j["z_tilde"] = s->z_tilde;
    j["phi1"] = s->phi1;
    j["phi2"] = s->phi2;
    j["x_prime"] = s->x_prime;
    if (s->g) j["g"] = s->g->to_hex();
  } else {
    const auto& fid = std::get<FIdSpec>(spec);
    j["class"] = "f_id";
    j["n"] = fid.n;
  }
  return j;
}

TruthTable spec_truth_table(const FunctionSpec& spec) {
  if (const auto* s = std::get_if<PdspSpec>(&spec)) return make_pdsp(*s);
  if (const auto* s = std::get_if<MainFamilySpec>(&spec)) return make_main_family(*s).first;
  if (const auto* s = std::get_if<MmBentSpec>(&spec)) return make_mm_bent(*s);
  if (const auto* s = std::get_if<GammaSpec>(&spec)) return make_gamma(*s);
  return make_f_id(std::get<FIdSpec>(spec).n);
}

std::string spec_class_name(const FunctionSpec& spec) {
  static const char* names[] = {"pdsp", "main", "mm", "gamma", "f_id"};
  return names[spec.index()];
}

int spec_arity(const FunctionSpec& spec) {
  return std::visit([](const auto& s) { return s.n; }, spec);
}

}  // namespace qsep
