#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rigour/theories.hpp"

using namespace rigour;

static ParseOptions seq_ctx() {
  ParseOptions o;
  o.context = {{"b", Sort::Seq}};
  return o;
}

TEST_CASE("standard registry shape") {
  Registry reg = Registry::standard();
  for (const char* id :
       {"minimal", "classical", "HA", "PA", "PrAn", "FIM0", "FIM0+", "FIM0+CS"})
    CHECK(reg.has(id));

  CHECK(reg.extends_or_is("HA", "FIM0+CS"));
  CHECK(reg.extends_or_is("FIM0", "FIM0+"));
  CHECK(!reg.extends_or_is("FIM0+CS", "FIM0"));
  CHECK(!reg.extends_or_is("PA", "FIM0+CS"));

  CHECK(reg.effective_classical("PA"));
  CHECK(reg.effective_classical("classical"));
  CHECK(!reg.effective_classical("FIM0+CS"));

  CHECK(reg.axiom("FIM0+CS", "eq_dec").has_value());
  CHECK(reg.axiom("FIM0", "bar_succ").has_value());
  CHECK(!reg.axiom("HA", "bar_succ").has_value());

  CHECK(reg.schema_available("FIM0+CS", "BCN"));
  CHECK(reg.schema_available("FIM0+", "ChiDef"));
  CHECK(!reg.schema_available("FIM0", "ChiDef"));
  CHECK(!reg.schema_available("FIM0", "CS1"));

  for (auto& [name, f] : reg.all_axioms("FIM0+CS")) {
    CAPTURE(name);
    CHECK(is_closed(f));
  }
}

TEST_CASE("every schema instance is closed and well-sorted") {
  ParseOptions o = seq_ctx();
  std::vector<std::pair<std::string, std::vector<std::string>>> reqs = {
      {"Induction", {"x", "x = 0 | ~x = 0"}},
      {"PrAn2", {"a", "x", "0"}},
      {"PrAn2", {"a", "x", "step(x, m)"}},
      {"PrAn2Plus", {"a", "x", "chi[y. y = 0](x)"}},
      {"ChiDef", {"x", "x = 0"}},
      {"CS1", {"n", "all x:nat. b(x) = 0"}},
      {"CS2", {"n", "all x:nat. b(x) = 0"}},
      {"CS3", {"n", "all x:nat. b(x) = 0"}},
      {"sCS2", {"n", "all x:nat. b(x) = 0"}},
      {"BCN", {"a", "x", "(ex y<x. ~a(y) = 0) | all y:nat. a(y) = 0"}},
      {"BCC", {"a", "c", "c(0) = a(0)"}},
      {"MP", {"x", "b(x) = 0"}},
      {"GMP", {}},
      {"wKS", {"a", "x", "ex y:nat. b(y) = 0"}},
      {"sKS", {"a", "x", "ex y:nat. b(y) = 0"}},
  };
  for (auto& [schema, args] : reqs) {
    CAPTURE(schema);
    Formula inst = instantiate_schema(schema, args, o);
    CHECK(is_closed(inst));
    // round trip through the printer
    CHECK(alpha_eq(inst, parse_formula(print(inst))));
  }
}

TEST_CASE("schema instances match their intended statements") {
  ParseOptions o = seq_ctx();
  // CS2 on the full-zero statement: the exact shape used by the scripts
  Formula cs2 = instantiate_schema("CS2", {"n", "all x:nat. b(x) = 0"}, o);
  Formula expect = parse_formula(
      "all b:seq. (all x:nat. b(x) = 0) -> "
      "~~ex n:nat. box[n] all x:nat. b(x) = 0",
      o);
  CHECK(alpha_eq(cs2, expect));

  Formula pran2 = instantiate_schema("PrAn2", {"a", "x", "0"}, {});
  CHECK(alpha_eq(pran2, parse_formula("ex a:seq. all x:nat. a(x) = 0")));

  Formula cs1 = instantiate_schema("CS1", {"n", "all x:nat. b(x) = 0"}, o);
  Formula cs1_expect = parse_formula(
      "all b:seq. all n:nat. box[n] (all x:nat. b(x) = 0) | "
      "~box[n] all x:nat. b(x) = 0",
      o);
  CHECK(alpha_eq(cs1, cs1_expect));

  Formula gmp = schema_gmp();
  CHECK(alpha_eq(gmp, parse_formula(
                          "all a:seq. ~~(ex x:nat. a(x) = 0) -> "
                          "ex x:nat. a(x) = 0")));

  Formula ind = instantiate_schema("Induction", {"x", "x = y | ~x = y"}, {});
  Formula ind_expect = parse_formula(
      "all y:nat. ((0 = y | ~0 = y) & "
      "(all x:nat. (x = y | ~x = y) -> (S x = y | ~S x = y))) -> "
      "all x:nat. x = y | ~x = y");
  CHECK(alpha_eq(ind, ind_expect));
}

TEST_CASE("side conditions are rejected") {
  ParseOptions o = seq_ctx();
  // defining term mentions the introduced sequence variable
  CHECK_THROWS_AS(instantiate_schema("PrAn2", {"a", "x", "a(x)"}, {}),
                  SchemaError);
  // chi-term needs the extended schema
  CHECK_THROWS_AS(
      instantiate_schema("PrAn2", {"a", "x", "chi[y. y = 0](x)"}, {}),
      SchemaError);
  // chi over an unbounded quantifier
  CHECK_THROWS_AS(
      instantiate_schema("ChiDef", {"x", "ex y:nat. y = x"}, {}),
      SchemaError);
  // continuity over a box-carrying matrix
  CHECK_THROWS_AS(
      instantiate_schema("BCN", {"a", "x", "box[x] all y:nat. b(y) = 0"}, o),
      SchemaError);
  // stage variable free in the matrix
  CHECK_THROWS_AS(instantiate_schema("CS2", {"n", "n = 0"}, {}), SchemaError);
  CHECK_THROWS_AS(instantiate_schema("bogus", {}, {}), SchemaError);
  CHECK_THROWS_AS(instantiate_schema("CS1", {"n"}, {}), SchemaError);
}

TEST_CASE("manifest errors") {
  CHECK_THROWS_AS(Registry::from_manifest("theory A\n"), SchemaError);
  CHECK_THROWS_AS(Registry::from_manifest("theory A\nextends B\nend\n"),
                  SchemaError);
  CHECK_THROWS_AS(
      Registry::from_manifest("theory A\naxiom bad: x = 0\nend\n"),
      SchemaError);
  Registry reg = Registry::from_manifest(
      "theory A\naxiom t: 0 = 0\nend\ntheory B\nextends A\nclassical\nend\n");
  CHECK(reg.effective_classical("B"));
  CHECK(reg.axiom("B", "t").has_value());
}
