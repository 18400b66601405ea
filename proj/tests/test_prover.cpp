#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rigour/prover.hpp"

#include <random>

using namespace rigour;

static const Registry& reg() {
  static Registry r = Registry::standard();
  return r;
}

static ParseOptions prop() {
  ParseOptions o;
  o.prop_letters = true;
  return o;
}

TEST_CASE("tableau proves and its certificates replay") {
  Formula phi = parse_formula("(all x:obj. P(x)) -> ex x:obj. P(x)");
  TabVerdict v = tableau_prove(phi);
  REQUIRE(std::holds_alternative<TabProved>(v));
  const TabNode& cert = std::get<TabProved>(v).certificate;
  CHECK(replay_certificate(phi, cert));
  // the certificate speaks about this formula only
  CHECK_FALSE(replay_certificate(
      parse_formula("(ex x:obj. P(x)) -> all x:obj. P(x)"), cert));
  // tampering with the closure breaks replay
  TabNode bad = cert;
  TabNode* leaf = &bad;
  while (!leaf->children.empty()) leaf = &leaf->children[0];
  leaf->clash_a = 0;
  leaf->clash_b = 0;
  CHECK_FALSE(replay_certificate(phi, bad));
}

TEST_CASE("tableau refutes with verified countermodels") {
  Formula phi = parse_formula("(ex x:obj. P(x)) -> all x:obj. P(x)");
  TabVerdict v = tableau_prove(phi);
  REQUIRE(std::holds_alternative<TabRefuted>(v));
  const FiniteStructure& M = std::get<TabRefuted>(v).countermodel;
  CHECK(M.size == 2);
  CHECK_FALSE(eval_fo(M, phi));

  Formula swap = parse_formula(
      "(all x:obj. ex y:obj. E(x, y)) -> ex y:obj. all x:obj. E(x, y)");
  v = tableau_prove(swap);
  REQUIRE(std::holds_alternative<TabRefuted>(v));
  CHECK_FALSE(eval_fo(std::get<TabRefuted>(v).countermodel, swap));
}

TEST_CASE("tableau verdicts agree with bounded-model validity") {
  std::vector<std::string> samples = {
      "(all x:obj. P(x) -> Q(x)) -> (all x:obj. P(x)) -> all x:obj. Q(x)",
      "(all x:obj. P(x)) | (ex x:obj. ~P(x))",
      "ex x:obj. (P(x) -> all y:obj. P(y))",  // the drinker
      "(ex x:obj. P(x)) & (ex x:obj. Q(x)) -> ex x:obj. P(x) & Q(x)",
      "(all x:obj. P(x) | Q(x)) -> (all x:obj. P(x)) | (all x:obj. Q(x))",
      "~(ex x:obj. P(x)) -> all x:obj. ~P(x)",
  };
  for (const std::string& s : samples) {
    Formula phi = parse_formula(s);
    CAPTURE(s);
    TabVerdict v = tableau_prove(phi);
    FOVerdict w = validity_fo_bounded(phi, 4);
    if (std::holds_alternative<TabProved>(v)) {
      CHECK(replay_certificate(phi, std::get<TabProved>(v).certificate));
      CHECK(std::holds_alternative<ValidUpTo>(w));
    } else {
      REQUIRE(std::holds_alternative<TabRefuted>(v));
      CHECK_FALSE(eval_fo(std::get<TabRefuted>(v).countermodel, phi));
      CHECK(std::holds_alternative<FOCountermodel>(w));
    }
  }
}

TEST_CASE("propositional completeness on the stock examples") {
  PropVerdict v = prop_complete(parse_formula("p -> p", prop()));
  REQUIRE(std::holds_alternative<Proof>(v));
  Judgment j = check(std::get<Proof>(v), reg());
  CHECK(j.theory == "classical");
  CHECK(alpha_eq(j.conclusion, parse_formula("p -> p", prop())));

  v = prop_complete(parse_formula("p -> q", prop()));
  REQUIRE(std::holds_alternative<FalsifyingValuation>(v));
  const auto& val = std::get<FalsifyingValuation>(v).val;
  CHECK(val.at("p"));
  CHECK_FALSE(val.at("q"));

  Formula peirce = parse_formula("((p -> q) -> p) -> p", prop());
  v = prop_complete(peirce);
  REQUIRE(std::holds_alternative<Proof>(v));
  CHECK(alpha_eq(check(std::get<Proof>(v), reg()).conclusion, peirce));
}

namespace {

Formula random_prop(std::mt19937& rng, int size) {
  auto pick = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  if (size <= 1) {
    switch (pick(3)) {
      case 0: return mk_pred("p");
      case 1: return mk_pred("q");
      default: return mk_bot();
    }
  }
  int l = 1 + pick(size - 1), r = size - l;
  switch (pick(3)) {
    case 0: return mk_and(random_prop(rng, l), random_prop(rng, r));
    case 1: return mk_or(random_prop(rng, l), random_prop(rng, r));
    default: return mk_imp(random_prop(rng, l), random_prop(rng, r));
  }
}

bool taut_oracle(const Formula& f) {
  for (int mask = 0; mask < 4; ++mask)
    if (!eval_prop(f, {{"p", bool(mask & 1)}, {"q", bool(mask & 2)}}))
      return false;
  return true;
}

}  // namespace

TEST_CASE("synthesis matches the truth-table oracle on a random sweep") {
  std::mt19937 rng(11);
  int proofs = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = random_prop(rng, 1 + int(rng() % 6));
    CAPTURE(print(f));
    PropVerdict v = prop_complete(f);
    if (taut_oracle(f)) {
      REQUIRE(std::holds_alternative<Proof>(v));
      CHECK(alpha_eq(check(std::get<Proof>(v), reg()).conclusion, f));
      ++proofs;
    } else {
      REQUIRE(std::holds_alternative<FalsifyingValuation>(v));
      CHECK_FALSE(eval_prop(f, std::get<FalsifyingValuation>(v).val));
    }
  }
  CHECK(proofs > 10);
}

TEST_CASE("ipc_decide separates intuitionistic from classical laws") {
  IPCResult r = ipc_decide(parse_formula("p -> ~~p", prop()));
  CHECK(r.provable);

  r = ipc_decide(parse_formula("~~p -> p", prop()));
  REQUIRE_FALSE(r.provable);
  REQUIRE(r.countermodel.has_value());
  CHECK(r.countermodel->model.worlds <= 2);
  CHECK_FALSE(kripke_forces(r.countermodel->model, r.countermodel->world,
                            parse_formula("~~p -> p", prop())));

  r = ipc_decide(parse_formula("p | ~p", prop()));
  REQUIRE_FALSE(r.provable);
  REQUIRE(r.countermodel.has_value());
  CHECK(r.countermodel->model.worlds <= 2);

  CHECK(ipc_decide(parse_formula("~~(p | ~p)", prop())).provable);
  CHECK(ipc_decide(parse_formula("(p -> q) -> (~q -> ~p)", prop())).provable);
  CHECK_FALSE(ipc_decide(parse_formula("((p -> q) -> p) -> p", prop()))
                  .provable);
}

TEST_CASE("IPC is contained in CPC and Glivenko holds on samples") {
  std::mt19937 rng(13);
  int ipc_proved = 0, glivenko = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = random_prop(rng, 1 + int(rng() % 6));
    CAPTURE(print(f));
    IPCResult r = ipc_decide(f);
    if (r.provable) {
      CHECK(taut_oracle(f));
      ++ipc_proved;
    } else if (r.countermodel) {
      CHECK_FALSE(kripke_forces(r.countermodel->model, r.countermodel->world,
                                f));
    }
    if (taut_oracle(f)) {
      CHECK(ipc_decide(mk_not(mk_not(f))).provable);
      ++glivenko;
    }
  }
  CHECK(ipc_proved > 10);
  CHECK(glivenko > 10);
}
