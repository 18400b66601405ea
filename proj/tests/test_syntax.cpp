#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rigour/syntax.hpp"

using namespace rigour;

static Formula P(const std::string& s, ParseOptions o = {}) {
  return parse_formula(s, o);
}

TEST_CASE("parse/print round trip on formulas") {
  ParseOptions seq_ab;
  seq_ab.context = {{"a", Sort::Seq}, {"b", Sort::Seq}};
  seq_ab.prop_letters = true;
  const char* samples[] = {
      "0 = 0",
      "S 0 + x * y = z",
      "all x:nat. x < S x",
      "ex a:seq. all x:nat. a(x) = 0",
      "(ex x<m. ~b(x) = 0) | box[m] all x:nat. b(x) = 0",
      "all2 X:1. (ex x:nat. X(x)) -> X(0)",
      "~(p & q) -> (~p | ~q)",
      "bar(a, S x) = bar(a, x) # <a(x)>",
      "chi[x. x = 0](y) = S 0",
      "step(x, z + y) = 0",
      "all b:seq. ex m:nat. ((ex x<m. ~b(x) = 0) | all x:nat. b(x) = 0)",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    Formula f = P(s, seq_ab);
    Formula g = P(print(f), seq_ab);
    CHECK(alpha_eq(f, g));
  }
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(P("all x:nat. x = x"), P("all y:nat. y = y")));
  CHECK(!alpha_eq(P("all x:nat. x = x"), P("all y:nat. y = z")));
  CHECK(alpha_eq(P("ex a:seq. a(0) = 0"), P("ex b:seq. b(0) = 0")));
  CHECK(!alpha_eq(P("all x:nat. all y:nat. x = y"),
                  P("all x:nat. all y:nat. y = x")));
  CHECK(alpha_eq(P("ex2 X:1. X(0)"), P("ex2 Y:1. Y(0)")));
  // bound/free name clash must not identify distinct formulas
  CHECK(!alpha_eq(P("all x:nat. x = y"), P("all y:nat. y = y")));
}

TEST_CASE("free variables and sorts") {
  ParseOptions o;
  o.context = {{"b", Sort::Seq}};
  auto fv = free_vars(P("ex x<m. ~b(x) = 0", o));
  CHECK(fv.size() == 2);
  CHECK(fv.at("m") == Sort::Nat);
  CHECK(fv.at("b") == Sort::Seq);
  CHECK(free_vars(P("all x:nat. x = x")).empty());
  CHECK(is_closed(P("all x:nat. x = x")));
  CHECK(!is_closed(P("ex2 X:1. X(y)")));
  CHECK(free_so_vars(mk_so_atom("X", {mk_zero()})).count("X") == 1);
}

TEST_CASE("substitution is capture avoiding") {
  // (all y. x = y)[x := y] must rename the binder
  Formula f = P("all y:nat. x = y");
  Formula g = substitute(f, "x", Sort::Nat, mk_var("y", Sort::Nat));
  CHECK(alpha_eq(g, P("all z:nat. y = z")));
  CHECK(!alpha_eq(g, P("all y:nat. y = y")));

  // shadowed occurrences are untouched
  Formula h = substitute(P("x = 0 & all x:nat. x = 0"), "x", Sort::Nat,
                         mk_succ(mk_zero()));
  CHECK(alpha_eq(h, P("S 0 = 0 & all x:nat. x = 0")));

  // sequence variable substitution reaches application heads and bar
  ParseOptions o;
  o.context = {{"a", Sort::Seq}, {"c", Sort::Seq}};
  Formula k = substitute(P("a(x) = 0 & bar(a, n) = bar(a, n)", o), "a",
                         Sort::Seq, mk_var("c", Sort::Seq));
  CHECK(alpha_eq(k, P("c(x) = 0 & bar(c, n) = bar(c, n)", o)));
}

TEST_CASE("substitution composition") {
  ParseOptions o;
  Formula f = P("x < y -> ex z:nat. x + z = y", o);
  Term t = parse_term("S w");
  Formula once = substitute(substitute(f, "x", Sort::Nat, t), "y", Sort::Nat,
                            mk_zero());
  // x and y are independent, so order does not matter here
  Formula other = substitute(substitute(f, "y", Sort::Nat, mk_zero()), "x",
                             Sort::Nat, t);
  CHECK(alpha_eq(once, other));
}

TEST_CASE("well-sortedness is enforced") {
  CHECK_THROWS_AS(mk_succ(mk_var("a", Sort::Seq)), SyntaxError);
  CHECK_THROWS_AS(mk_eq(mk_zero(), mk_var("a", Sort::Seq)), SyntaxError);
  CHECK_THROWS_AS(mk_eq(mk_var("a", Sort::Seq), mk_var("b", Sort::Seq)),
                  SyntaxError);
  CHECK_THROWS_AS(mk_lt(mk_var("u", Sort::Obj), mk_var("v", Sort::Obj)),
                  SyntaxError);
  CHECK_NOTHROW(mk_eq(mk_var("u", Sort::Obj), mk_var("v", Sort::Obj)));
}

TEST_CASE("box invariants") {
  Formula a = P("box[n] all x:nat. b(x) = 0", {{{"b", Sort::Seq}}});
  CHECK(contains_box(a));
  // nesting a box inside a box matrix is rejected
  CHECK_THROWS_AS(mk_box(mk_var("m", Sort::Nat), a), SyntaxError);
}

TEST_CASE("extended-Delta0 recognition") {
  ParseOptions o;
  o.context = {{"a", Sort::Seq}, {"b", Sort::Seq}};
  CHECK(is_extended_delta0(P("0 = 0")));
  CHECK(is_extended_delta0(P("a(x) = 0 & x < y", o)));
  CHECK(is_extended_delta0(P("(ex x<m. ~b(x) = 0) | box[m] all x:nat. b(x) = 0", o)));
  CHECK(is_extended_delta0(P("all x<n. ex y<n. x + y = n")));
  CHECK(is_extended_delta0(P("~a(n) = 0", o)));
  CHECK(!is_extended_delta0(P("ex x:nat. a(x) = 0", o)));
  CHECK(!is_extended_delta0(P("all x:nat. b(x) = 0", o)));
  CHECK(!is_extended_delta0(P("ex a:seq. a(0) = 0")));
  // bound mentioning the binder is not a bounded quantifier
  Formula bad = mk_exists(
      "x", Sort::Nat,
      mk_and(mk_lt(mk_var("x", Sort::Nat), mk_var("x", Sort::Nat)),
             mk_eq(mk_zero(), mk_zero())));
  CHECK(!is_extended_delta0(bad));
}

TEST_CASE("chi terms require an extended-Delta0 matrix") {
  CHECK_NOTHROW(parse_formula("chi[x. x = 0](y) = 0"));
  CHECK_THROWS_AS(mk_chi("x", P("ex y:nat. y = x"), mk_zero()), SyntaxError);
}

TEST_CASE("propositional letter mode") {
  ParseOptions o;
  o.prop_letters = true;
  Formula f = P("p -> (q -> p)", o);
  CHECK(f->kind == FormulaKind::Imp);
  CHECK(f->left->kind == FormulaKind::Pred);
  CHECK(f->left->name == "p");
  CHECK(alpha_eq(P(print(f), o), f));
}

TEST_CASE("parser rejects garbage") {
  CHECK_THROWS_AS(parse_formula("all x:nat x = x"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("0 ="), SyntaxError);
  CHECK_THROWS_AS(parse_formula("0 = 0 )"), SyntaxError);
  CHECK_THROWS_AS(parse_term("x +"), SyntaxError);
}

TEST_CASE("numerals and operator precedence") {
  CHECK(term_eq(parse_term("3"), mk_succ(mk_succ(mk_succ(mk_zero())))));
  CHECK(term_eq(parse_term("x + y * z"),
                mk_plus(mk_var("x", Sort::Nat),
                        mk_times(mk_var("y", Sort::Nat), mk_var("z", Sort::Nat)))));
  // -> is right associative, & binds tighter than |
  Formula f = P("p & q | r -> s -> t", {{}, Sort::Nat, true});
  CHECK(f->kind == FormulaKind::Imp);
  CHECK(f->right->kind == FormulaKind::Imp);
  CHECK(f->left->kind == FormulaKind::Or);
  CHECK(f->left->left->kind == FormulaKind::And);
}
