#include <doctest.h>

#include "mapgrowth/json_io.hpp"
#include "schema_check.hpp"

using namespace mapgrowth;

namespace {

void expect_valid(const char* schema_file, const json& value) {
  const auto errors = schema_check::validate(schema_check::load_schema(schema_file), value);
  for (const std::string& e : errors) MESSAGE(e);
  CHECK(errors.empty());
}

}  // namespace

TEST_CASE("generator round-trip") {
  const Generator g = make_generator("x", 5);
  const Generator back = generator_from_json(generator_to_json(g));
  CHECK(back.name == "x");
  CHECK(back.sphere_dim == 5);
  CHECK(back.lie_degree == 4);
  CHECK_THROWS_AS(generator_from_json(json{{"name", "x"}}), std::invalid_argument);
}

TEST_CASE("tree round-trip") {
  const ComplexSpec spec = make_example1();
  const LieAlgebra& alg = *spec.algebra;
  const json j = tree_to_json(alg, spec.zeta);
  CHECK(j == json::parse(R"(["x",["x","y"]])"));
  CHECK(tree_from_json(alg, j) == spec.zeta);
  CHECK(tree_from_json(alg, "y") == alg.leaf("y"));
  CHECK_THROWS_AS(tree_from_json(alg, json::parse(R"(["x"])")), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json(alg, json::parse(R"(["x","y","x"])")), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json(alg, json::parse("5")), std::invalid_argument);
  CHECK_THROWS_AS(tree_from_json(alg, "w"), std::invalid_argument);
}

TEST_CASE("element round-trip and schema") {
  const ComplexSpec spec = make_example1();
  const LieAlgebra& alg = *spec.algebra;
  const TreeId x = alg.leaf("x"), y = alg.leaf("y");
  // A genuine multi-term normal form with a fractional coefficient.
  const LieElement e = alg.scale(
      alg.normalize(alg.bracket(alg.monomial(x), alg.monomial(alg.node(y, y)))), Rational(1, 3));
  REQUIRE_FALSE(e.is_zero());
  const json j = element_to_json(alg, e);
  expect_valid("lie_element.schema.json", j);
  CHECK(element_from_json(alg, j) == e);
  CHECK(element_from_json(alg, element_to_json(alg, LieElement{})).is_zero());

  json bad = j;
  bad[0]["denominator"] = "0";
  CHECK_THROWS_AS(element_from_json(alg, bad), std::invalid_argument);
  CHECK_THROWS_AS(element_from_json(alg, json{{"not", "an array"}}), std::invalid_argument);
}

TEST_CASE("complex spec round-trip and schema") {
  for (const ComplexSpec& spec :
       {make_example1(), make_example2(), build_space(Family::theorem32, 3, 5, 2, 4)}) {
    const json j = spec_to_json(spec);
    expect_valid("complex_spec.schema.json", j);
    const ComplexSpec back = spec_from_json(j);
    CHECK(back.family == spec.family);
    CHECK(back.ell == spec.ell);
    CHECK(back.m == spec.m);
    CHECK(back.p == spec.p);
    CHECK(back.q == spec.q);
    CHECK(back.n == spec.n);
    CHECK(back.algebra->to_string(back.zeta) == spec.algebra->to_string(spec.zeta));
  }
}

TEST_CASE("complex spec JSON is cross-checked on load") {
  json j = spec_to_json(make_example1());
  j["n"] = 10;
  CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("inconsistent"),
                       std::invalid_argument);
  j = spec_to_json(make_example1());
  j["zeta"] = json::parse(R"(["y",["x","y"]])");
  CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("attaching"), std::invalid_argument);
  j = spec_to_json(make_example1());
  j.erase("q");
  CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("'q'"), std::invalid_argument);
}

TEST_CASE("constraint system round-trip and schema") {
  const ConstraintSystem sys = derive_constraints(make_example2());
  const json j = constraints_to_json(sys);
  expect_valid("constraint_system.schema.json", j);
  const ConstraintSystem back = constraints_from_json(j);
  CHECK(back.ell == sys.ell);
  CHECK(back.m == sys.m);
  CHECK(back.has_monomial == sys.has_monomial);
  CHECK(back.p == sys.p);
  CHECK(back.q == sys.q);
  CHECK(back.n == sys.n);
  const json jb = constraints_to_json(box_system(1, 2));
  expect_valid("constraint_system.schema.json", jb);
  CHECK_FALSE(constraints_from_json(jb).has_monomial);
}

TEST_CASE("fit result round-trip and schema") {
  FitResult fit;
  fit.model = FitModel::power_log;
  fit.r_hat = 6.04;
  fit.gamma_hat = 0.63;
  fit.residual = 1e-3;
  fit.n_samples = 9;
  const json j = fit_to_json(fit);
  expect_valid("fit_result.schema.json", j);
  const FitResult back = fit_from_json(j);
  CHECK(back.model == fit.model);
  CHECK(back.r_hat == fit.r_hat);
  CHECK(back.gamma_hat == fit.gamma_hat);
  CHECK(back.residual == fit.residual);
  CHECK(back.n_samples == fit.n_samples);
  json bad = j;
  bad["model"] = "cubic_spline";
  CHECK_THROWS_AS(fit_from_json(bad), std::invalid_argument);
}

TEST_CASE("budget report JSON carries stages and validates") {
  const BudgetReport r =
      example_budget(make_example1(), 16, Rational(1, 2), BigInt(1000), BigInt(4000));
  const json j = budget_report_to_json(r);
  expect_valid("budget_report.schema.json", j);
  CHECK(j.at("L") == 16);
  CHECK(j.at("s") == "1024");
  CHECK(j.at("t") == "3906250");
  CHECK(j.at("e") == "0");
  CHECK(j.at("ok") == true);
  REQUIRE(j.at("stages").size() == 5);
  CHECK(j.at("stages")[0].at("name") == "e_size");
}

TEST_CASE("schema validator rejects shape violations") {
  const json schema = schema_check::load_schema("fit_result.schema.json");
  json good = fit_to_json(FitResult{});
  good["n_samples"] = 5;
  CHECK(schema_check::validate(schema, good).empty());
  json missing = good;
  missing.erase("r_hat");
  CHECK_FALSE(schema_check::validate(schema, missing).empty());
  json extra = good;
  extra["surprise"] = 1;
  CHECK_FALSE(schema_check::validate(schema, extra).empty());
  json wrong_type = good;
  wrong_type["r_hat"] = "fast";
  CHECK_FALSE(schema_check::validate(schema, wrong_type).empty());
  json bad_enum = good;
  bad_enum["model"] = "spline";
  CHECK_FALSE(schema_check::validate(schema, bad_enum).empty());
  json below = good;
  below["n_samples"] = 2;
  CHECK_FALSE(schema_check::validate(schema, below).empty());

  // Recursive tree refs: a mis-shaped nested array must be caught.
  const json tree_schema = schema_check::load_schema("complex_spec.schema.json");
  json spec_json = spec_to_json(make_example1());
  CHECK(schema_check::validate(tree_schema, spec_json).empty());
  spec_json["zeta"] = json::parse(R"([["x","y"]])");
  CHECK_FALSE(schema_check::validate(tree_schema, spec_json).empty());
}
