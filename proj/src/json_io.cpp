#include "mapgrowth/json_io.hpp"

#include <stdexcept>

namespace mapgrowth {

json generator_to_json(const Generator& g) {
  return json{{"name", g.name}, {"sphere_dim", g.sphere_dim}};
}

Generator generator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("sphere_dim"))
    throw std::invalid_argument("generator JSON needs {name, sphere_dim}");
  return make_generator(j.at("name").get<std::string>(), j.at("sphere_dim").get<int>());
}

json tree_to_json(const LieAlgebra& alg, TreeId t) {
  if (alg.is_leaf(t)) return alg.generator(alg.leaf_generator(t)).name;
  return json::array({tree_to_json(alg, alg.left(t)), tree_to_json(alg, alg.right(t))});
}

TreeId tree_from_json(const LieAlgebra& alg, const json& j) {
  if (j.is_string()) return alg.leaf(j.get<std::string>());
  if (j.is_array() && j.size() == 2)
    return alg.node(tree_from_json(alg, j.at(0)), tree_from_json(alg, j.at(1)));
  throw std::invalid_argument("tree JSON must be a generator name or a pair");
}

json element_to_json(const LieAlgebra& alg, const LieElement& e) {
  json out = json::array();
  for (const auto& [t, c] : e.terms) {
    out.push_back(json{{"tree", tree_to_json(alg, t)},
                       {"numerator", boost::multiprecision::numerator(c).str()},
                       {"denominator", boost::multiprecision::denominator(c).str()}});
  }
  return out;
}

LieElement element_from_json(const LieAlgebra& alg, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("element JSON must be an array of terms");
  LieElement out;
  for (const json& term : j) {
    if (!term.is_object() || !term.contains("tree") || !term.contains("numerator") ||
        !term.contains("denominator"))
      throw std::invalid_argument("element term needs {tree, numerator, denominator}");
    const TreeId t = tree_from_json(alg, term.at("tree"));
    const BigInt num(term.at("numerator").get<std::string>());
    const BigInt den(term.at("denominator").get<std::string>());
    if (den == 0) throw std::invalid_argument("element term with zero denominator");
    const LieElement mono = alg.monomial(t, Rational(num, den));
    out = out.terms.empty() ? mono : alg.add(out, mono);
  }
  return out;
}

json spec_to_json(const ComplexSpec& spec) {
  return json{{"family", family_name(spec.family)},
              {"ell", spec.ell},
              {"m", spec.m},
              {"p", spec.p},
              {"q", spec.q},
              {"n", spec.n},
              {"zeta", tree_to_json(*spec.algebra, spec.zeta)}};
}

ComplexSpec spec_from_json(const json& j) {
  for (const char* key : {"family", "ell", "m", "p", "q", "n", "zeta"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("complex spec JSON missing '") + key + "'");
  ComplexSpec spec =
      build_space(family_from_name(j.at("family").get<std::string>()), j.at("ell").get<int>(),
                  j.at("m").get<int>(), j.at("p").get<long long>(), j.at("q").get<long long>());
  if (spec.n != j.at("n").get<int>())
    throw std::invalid_argument("complex spec JSON has inconsistent cell dimension");
  if (tree_from_json(*spec.algebra, j.at("zeta")) != spec.zeta)
    throw std::invalid_argument("complex spec JSON has an unexpected attaching tree");
  return spec;
}

json constraints_to_json(const ConstraintSystem& sys) {
  return json{{"ell", sys.ell},        {"m", sys.m}, {"has_monomial", sys.has_monomial},
              {"p", sys.p},            {"q", sys.q}, {"n", sys.n}};
}

ConstraintSystem constraints_from_json(const json& j) {
  ConstraintSystem sys;
  sys.ell = j.at("ell").get<int>();
  sys.m = j.at("m").get<int>();
  sys.has_monomial = j.at("has_monomial").get<bool>();
  sys.p = j.at("p").get<long long>();
  sys.q = j.at("q").get<long long>();
  sys.n = j.at("n").get<int>();
  return sys;
}

json fit_to_json(const FitResult& fit) {
  return json{{"model", fit_model_name(fit.model)},
              {"r_hat", fit.r_hat},
              {"gamma_hat", fit.gamma_hat},
              {"residual", fit.residual},
              {"n_samples", fit.n_samples}};
}

FitResult fit_from_json(const json& j) {
  FitResult fit;
  const std::string model = j.at("model").get<std::string>();
  if (model == "pure_power")
    fit.model = FitModel::pure_power;
  else if (model == "power_log")
    fit.model = FitModel::power_log;
  else
    throw std::invalid_argument("unknown fit model '" + model + "'");
  fit.r_hat = j.at("r_hat").get<double>();
  fit.gamma_hat = j.at("gamma_hat").get<double>();
  fit.residual = j.at("residual").get<double>();
  fit.n_samples = j.at("n_samples").get<int>();
  return fit;
}

json budget_report_to_json(const BudgetReport& report) {
  json stages = json::array();
  for (const BudgetStage& s : report.stages) {
    stages.push_back(json{{"name", s.name},
                          {"measured", s.measured},
                          {"claimed", s.claimed},
                          {"pass", s.pass}});
  }
  return json{{"L", report.L},           {"eps", rational_to_string(report.eps)},
              {"a", report.a.str()},     {"b", report.b.str()},
              {"s", report.s.str()},     {"t", report.t.str()},
              {"e", report.e.str()},     {"stages", stages},
              {"ok", report.ok}};
}

}  // namespace mapgrowth
