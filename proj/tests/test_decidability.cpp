#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rigour/kernel.hpp"

#include <random>

using namespace rigour;

static const Registry& reg() {
  static Registry r = Registry::standard();
  return r;
}

static ParseOptions seq_b() {
  ParseOptions o;
  o.context = {{"b", Sort::Seq}};
  return o;
}

TEST_CASE("atomic decidability") {
  Proof p = derive_decidability(parse_formula("x = 0"));
  Judgment j = check(p, reg());
  CHECK(j.theory == "FIM0+CS");
  CHECK(alpha_eq(j.conclusion, parse_formula("all x:nat. x = 0 | ~x = 0")));
}

TEST_CASE("box atoms cite CS1") {
  Formula phi = parse_formula("box[m] (all x:nat. b(x) = 0)", seq_b());
  Proof p = derive_decidability(phi);
  Judgment j = check(p, reg());
  bool cites = false;
  for (const ProofLine& l : p.lines)
    if (l.rule == "Axiom" && l.args.size() > 1 && l.args[1] == "CS1")
      cites = true;
  CHECK(cites);
  CHECK(alpha_eq(j.conclusion, universal_closure(mk_or(phi, mk_not(phi)))));
}

TEST_CASE("the zero-test matrix of the GMP refutation") {
  Formula phi = parse_formula(
      "~((ex x:nat. x < m & ~b(x) = 0) | box[m] (all x:nat. b(x) = 0))",
      seq_b());
  Proof p = derive_decidability(phi);
  Judgment j = check(p, reg());
  CHECK(alpha_eq(j.conclusion, universal_closure(mk_or(phi, mk_not(phi)))));
}

TEST_CASE("input outside the fragment is rejected") {
  CHECK_THROWS_AS(derive_decidability(parse_formula("ex x:nat. x = 0")),
                  std::invalid_argument);
  CHECK_THROWS_AS(derive_decidability(parse_formula("all x:nat. x = 0")),
                  std::invalid_argument);
}

namespace {

// random extended-Delta0 formulas over nat vars u, w and the sequence b
struct Rnd {
  std::mt19937 rng{20260823};
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Term term(const std::vector<std::string>& nats, int depth) {
    switch (pick(depth > 0 ? 6 : 3)) {
      case 0: return mk_zero();
      case 1: return mk_num(unsigned(1 + pick(3)));
      case 2:
        return nats.empty() ? mk_zero()
                            : mk_var(nats[size_t(pick(int(nats.size())))],
                                     Sort::Nat);
      case 3: return mk_succ(term(nats, depth - 1));
      case 4: return mk_plus(term(nats, depth - 1), term(nats, depth - 1));
      default: return mk_seq_app("b", term(nats, depth - 1));
    }
  }

  Formula atom(const std::vector<std::string>& nats) {
    switch (pick(4)) {
      case 0: return mk_eq(term(nats, 1), term(nats, 1));
      case 1: return mk_lt(term(nats, 1), term(nats, 1));
      case 2: return mk_bot();
      default:
        // a chi-term atom, to exercise printing inside schema citations
        return mk_eq(mk_chi("k", mk_eq(mk_var("k", Sort::Nat), mk_zero()),
                            term(nats, 1)),
                     mk_zero());
    }
  }

  Formula gen(const std::vector<std::string>& nats, int size, bool allow_box,
              int binders) {
    if (size <= 1) return atom(nats);
    int left = size / 2, right = size - 1 - left;
    switch (pick(allow_box ? 6 : 5)) {
      case 0:
        return mk_and(gen(nats, left, allow_box, binders),
                      gen(nats, right, allow_box, binders));
      case 1:
        return mk_or(gen(nats, left, allow_box, binders),
                     gen(nats, right, allow_box, binders));
      case 2:
        return mk_imp(gen(nats, left, allow_box, binders),
                      gen(nats, right, allow_box, binders));
      case 3: {
        std::string v = "q" + std::to_string(binders);
        Term bound = term(nats, 1);
        std::vector<std::string> inner = nats;
        inner.push_back(v);
        return mk_exists(v, Sort::Nat,
                         mk_and(mk_lt(mk_var(v, Sort::Nat), bound),
                                gen(inner, size - 2, allow_box, binders + 1)));
      }
      case 4: {
        std::string v = "q" + std::to_string(binders);
        Term bound = term(nats, 1);
        std::vector<std::string> inner = nats;
        inner.push_back(v);
        Formula body = gen(inner, size - 2, allow_box, binders + 1);
        // a bare negation is not a bounded universal
        if (body->kind == FormulaKind::Bot)
          body = mk_eq(mk_zero(), mk_zero());
        return mk_forall(v, Sort::Nat,
                         mk_imp(mk_lt(mk_var(v, Sort::Nat), bound), body));
      }
      default:
        return mk_box(term(nats, 1), gen(nats, size - 1, false, binders));
    }
  }
};

}  // namespace

TEST_CASE("generated proofs always check") {
  Rnd r;
  for (int i = 0; i < 200; ++i) {
    Formula phi = r.gen({"u", "w"}, 2 + r.pick(7), true, 0);
    CAPTURE(print(phi));
    REQUIRE(is_extended_delta0(phi));
    Proof p = derive_decidability(phi);
    Judgment j = check(p, reg());
    CHECK(alpha_eq(j.conclusion, universal_closure(mk_or(phi, mk_not(phi)))));
  }
}
