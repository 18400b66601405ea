#pragma once

#include "rigour/kernel.hpp"
#include "rigour/semantics.hpp"

namespace rigour {

// ------------------------------------------------ classical FO tableau

struct TableauBudget {
  int max_fresh = 8;        // fresh witness constants per branch
  long max_steps = 200'000;  // total expansions
};

struct SignedFormula {
  bool sign;  // true: asserted on the branch; false: denied
  Formula f;
};

// Closed-tableau certificate.  Each node either expands one branch entry
// (children carry the resulting branches, left disjunct first) or closes
// the branch: clash_a/clash_b name a complementary pair, or the same index
// when that entry alone is absurd (an asserted bot, a denied t = t).
// Quantifier expansions carry the instantiating term in `witness`.
struct TabNode {
  int expanded = -1;
  Term witness;
  std::vector<TabNode> children;
  int clash_a = -1, clash_b = -1;
};

struct TabProved {
  TabNode certificate;
};
struct TabRefuted {
  FiniteStructure countermodel;
};
struct TabExhausted {
  std::string reason;
};
using TabVerdict = std::variant<TabProved, TabRefuted, TabExhausted>;

// phi closed, box-free, first-order over the object sort.  Proved implies
// validity outright; a saturated open branch yields a finite countermodel
// over the branch's own constants, re-verified by eval_fo before return.
TabVerdict tableau_prove(const Formula& phi, const TableauBudget& b = {});

// Independent certificate replay: recomputes every branch from the root
// formula and the recorded choices, sharing nothing with the search code
// but the formula type.  True iff the certificate closes a tableau for phi.
bool replay_certificate(const Formula& phi, const TabNode& root);

// ------------------------------------------- propositional completeness

struct FalsifyingValuation {
  std::map<std::string, bool> val;
};
using PropVerdict = std::variant<Proof, FalsifyingValuation>;

// phi over 0-ary predicate letters.  Tautologies get a kernel-checkable
// proof in the classical base theory, built from the truth table in the
// style of Kalmar's completeness argument; otherwise a falsifying row.
PropVerdict prop_complete(const Formula& phi);

// truth-table evaluation; throws EvalError off the propositional fragment
bool eval_prop(const Formula& phi, const std::map<std::string, bool>& val);
std::vector<std::string> prop_letters_of(const Formula& phi);

// ----------------------------------------- intuitionistic propositional

struct KripkeCountermodel {
  KripkeModel model;
  int world;  // where phi fails
};

struct IPCResult {
  bool provable;
  // present when not provable and the exhaustive frame search within
  // max_worlds found a witness; its absence does not soften the verdict
  std::optional<KripkeCountermodel> countermodel;
};

// Terminating backward search in the contraction-free calculus G4ip
// (Dyckhoff 1992); no proof-search loops, no contraction bookkeeping.
IPCResult ipc_decide(const Formula& phi, int max_worlds = 3);

}  // namespace rigour
