#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rigour/kernel.hpp"

using namespace rigour;

static const Registry& reg() {
  static Registry r = Registry::standard();
  return r;
}

static Judgment chk(const std::string& script, const LemmaStore& ls = {}) {
  return check(parse_proof_script(script), reg(), ls);
}

static const char* kEqSym = R"(
lemma eq_sym in minimal:
goal all x:nat. all y:nat. x = y -> y = x
1. x = y by assume
2. x = x by Refl
3. y = x by ReplEq(1; 2)
4. x = y -> y = x by ImpI(3; 1)
5. all y:nat. x = y -> y = x by AllI(4; y)
6. all x:nat. all y:nat. x = y -> y = x by AllI(5; x)
)";

static const char* kEqTrans = R"(
lemma eq_trans in minimal:
goal all x:nat. all y:nat. all z:nat. x = y -> y = z -> x = z
1. x = y by assume
2. y = z by assume
3. x = z by ReplEq(2; 1)
4. y = z -> x = z by ImpI(3; 2)
5. x = y -> (y = z -> x = z) by ImpI(4; 1)
6. all z:nat. x = y -> (y = z -> x = z) by AllI(5; z)
7. all y:nat. all z:nat. x = y -> (y = z -> x = z) by AllI(6; y)
8. all x:nat. all y:nat. all z:nat. x = y -> (y = z -> x = z) by AllI(7; x)
)";

TEST_CASE("one-line reflexivity proof") {
  Judgment j = chk("lemma r in HA:\ngoal 0 = 0\n1. 0 = 0 by Refl\n");
  CHECK(j.theory == "HA");
  CHECK(alpha_eq(j.conclusion, parse_formula("0 = 0")));
}

TEST_CASE("equality symmetry and transitivity from Refl + ReplEq") {
  CHECK_NOTHROW(chk(kEqSym));
  CHECK_NOTHROW(chk(kEqTrans));
}

TEST_CASE("classical rule is gated by the theory flag") {
  std::string lem = R"(
lemma lem in classical:
goal P | ~P
1. ~(P | ~P) by assume
2. P by assume
3. P | ~P by OrI1(2)
4. bot by ImpE(1; 3)
5. ~P by ImpI(4; 2)
6. P | ~P by OrI2(5)
7. bot by ImpE(1; 6)
8. ~~(P | ~P) by ImpI(7; 1)
9. P | ~P by DNE(8)
)";
  CHECK_NOTHROW(chk(lem));
  std::string intu = lem;
  intu.replace(intu.find("classical"), 9, "minimal");
  try {
    chk(intu);
    FAIL("classical rule accepted in an intuitionistic theory");
  } catch (const CheckError& e) {
    CHECK(e.line == 9);
    CHECK(std::string(e.what()).find("classical") != std::string::npos);
  }
}

TEST_CASE("axiom and schema citations") {
  CHECK_NOTHROW(chk(R"(
lemma zp in HA:
goal 0 + 0 = 0
1. all x:nat. x + 0 = x by Axiom(HA; plus_zero)
2. 0 + 0 = 0 by AllE(1; 0)
)"));
  CHECK_NOTHROW(chk(R"(
lemma const_zero in PrAn:
goal ex a:seq. all x:nat. a(x) = 0
1. ex a:seq. all x:nat. a(x) = 0 by Axiom(PrAn; PrAn2; a; x; 0)
)"));
  // schema of a stronger theory is not available downward
  CHECK_THROWS_AS(chk(R"(
lemma nope in PrAn:
var b:seq
goal all b:seq. all n:nat. box[n] (all x:nat. b(x) = 0) | ~box[n] all x:nat. b(x) = 0
1. all b:seq. all n:nat. box[n] (all x:nat. b(x) = 0) | ~box[n] all x:nat. b(x) = 0 by Axiom(FIM0+CS; CS1; n; all x:nat. b(x) = 0)
)"),
                  CheckError);
  // same citation in its home theory
  CHECK_NOTHROW(chk(R"(
lemma yes in FIM0+CS:
var b:seq
goal all b:seq. all n:nat. box[n] (all x:nat. b(x) = 0) | ~box[n] all x:nat. b(x) = 0
1. all b:seq. all n:nat. box[n] (all x:nat. b(x) = 0) | ~box[n] all x:nat. b(x) = 0 by Axiom(FIM0+CS; CS1; n; all x:nat. b(x) = 0)
)"));
}

TEST_CASE("quantifier rules and eigenvariable conditions") {
  CHECK_NOTHROW(chk(R"(
lemma swap in minimal:
goal (all x:nat. all y:nat. Q(x, y)) -> all y:nat. all x:nat. Q(x, y)
1. all x:nat. all y:nat. Q(x, y) by assume
2. all y:nat. Q(u, y) by AllE(1; u)
3. Q(u, v) by AllE(2; v)
4. all x:nat. Q(x, v) by AllI(3; u)
5. all y:nat. all x:nat. Q(x, y) by AllI(4; v)
6. (all x:nat. all y:nat. Q(x, y)) -> all y:nat. all x:nat. Q(x, y) by ImpI(5; 1)
)"));
  // eigenvariable free in an open hypothesis
  try {
    chk(R"(
lemma bad in minimal:
goal x = 0 -> all x:nat. x = 0
1. x = 0 by assume
2. all x:nat. x = 0 by AllI(1; x)
3. x = 0 -> all x:nat. x = 0 by ImpI(2; 1)
)");
    FAIL("eigenvariable violation accepted");
  } catch (const CheckError& e) {
    CHECK(e.line == 2);
  }
  // existential introduction and elimination
  CHECK_NOTHROW(chk(R"(
lemma exchange in minimal:
goal (ex x:nat. all y:nat. Q(x, y)) -> all y:nat. ex x:nat. Q(x, y)
1. ex x:nat. all y:nat. Q(x, y) by assume
2. all y:nat. Q(w, y) by assume
3. Q(w, v) by AllE(2; v)
4. ex x:nat. Q(x, v) by ExI(3; w)
5. ex x:nat. Q(x, v) by ExE(1; 4; 2; w)
6. all y:nat. ex x:nat. Q(x, y) by AllI(5; v)
7. (ex x:nat. all y:nat. Q(x, y)) -> all y:nat. ex x:nat. Q(x, y) by ImpI(6; 1)
)"));
  // ExE where the eigenvariable leaks into the conclusion
  CHECK_THROWS_AS(chk(R"(
lemma leak in minimal:
goal (ex x:nat. x = 0) -> w = 0
1. ex x:nat. x = 0 by assume
2. w = 0 by assume
3. w = 0 by ExE(1; 2; 2; w)
4. (ex x:nat. x = 0) -> w = 0 by ImpI(3; 1)
)"),
                  CheckError);
}

TEST_CASE("disjunction elimination discharges both cases") {
  CHECK_NOTHROW(chk(R"(
lemma comm in minimal:
goal P | Q -> Q | P
1. P | Q by assume
2. P by assume
3. Q | P by OrI2(2)
4. Q by assume
5. Q | P by OrI1(4)
6. Q | P by OrE(1; 3; 2; 5; 4)
7. P | Q -> Q | P by ImpI(6; 1)
)"));
}

TEST_CASE("lemma citation respects the theory ladder") {
  LemmaStore ls;
  ls.add("eq_sym", chk(kEqSym));
  // minimal-proved lemma is available in HA
  CHECK_NOTHROW(chk(R"(
lemma use in HA:
goal 0 = 0 -> 0 = 0 | 0 < 0
1. all x:nat. all y:nat. x = y -> y = x by Lemma(eq_sym)
2. 0 = 0 by assume
3. 0 = 0 | 0 < 0 by OrI1(2)
4. 0 = 0 -> 0 = 0 | 0 < 0 by ImpI(3; 2)
)",
                    ls));
  // HA-proved lemma is not available in classical (sibling branch)
  LemmaStore ls2;
  ls2.add("ha_fact", Judgment{"HA", parse_formula("0 = 0")});
  CHECK_THROWS_AS(chk(R"(
lemma use2 in classical:
goal 0 = 0
1. 0 = 0 by Lemma(ha_fact)
)",
                      ls2),
                  CheckError);
}

TEST_CASE("theory extension monotonicity") {
  Proof p = parse_proof_script(kEqSym);
  for (const char* t : {"HA", "PrAn", "FIM0", "FIM0+", "FIM0+CS", "PA"}) {
    p.theory = t;
    CHECK_NOTHROW(check(p, reg()));
  }
}

TEST_CASE("corruption is caught at the corrupted line") {
  Proof p = parse_proof_script(kEqTrans);
  Proof bad = p;
  bad.lines[2].formula = parse_formula("z = x");  // line 3
  try {
    check(bad, reg());
    FAIL("corrupted proof accepted");
  } catch (const CheckError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("forward references and malformed scripts are rejected") {
  CHECK_THROWS_AS(chk("lemma f in HA:\ngoal 0 = 0\n1. 0 = 0 by ImpE(2; 2)\n"),
                  CheckError);
  CHECK_THROWS_AS(parse_proof_script("lemma f in HA:\n1. 0 = 0 by Refl\n"),
                  ScriptError);
  CHECK_THROWS_AS(parse_proof_script("nonsense\n"), ScriptError);
  CHECK_THROWS_AS(
      parse_proof_script("lemma f in HA:\ngoal 0 = 0\n2. 0 = 0 by Refl\n1. 0 = 0 by Refl\n"),
      ScriptError);
  CHECK_THROWS_AS(chk("lemma f in HA:\ngoal 0 = 0\n1. 0 = 0 by Bogus\n"),
                  CheckError);
  CHECK_THROWS_AS(chk("lemma f in nowhere:\ngoal 0 = 0\n1. 0 = 0 by Refl\n"),
                  CheckError);
  // open hypothesis at the end
  CHECK_THROWS_AS(chk("lemma f in HA:\ngoal 0 = 0\n1. 0 = 0 by assume\n"),
                  CheckError);
}

TEST_CASE("proof round trips through print_proof") {
  Proof p = parse_proof_script(kEqTrans);
  Proof q = parse_proof_script(print_proof(p));
  CHECK(q.name == p.name);
  CHECK(alpha_eq(q.goal, p.goal));
  REQUIRE(q.lines.size() == p.lines.size());
  CHECK_NOTHROW(check(q, reg()));
}

TEST_CASE("checking is deterministic") {
  for (int i = 0; i < 3; ++i) {
    Judgment j = chk(kEqSym);
    CHECK(alpha_eq(j.conclusion, parse_proof_script(kEqSym).goal));
  }
}
