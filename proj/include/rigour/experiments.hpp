#pragma once

#include "rigour/prover.hpp"

namespace rigour {

// ------------------------------------------------------------- squeezing

enum class SqueezeFragment { Propositional, Monadic };

struct SqueezeConfig {
  SqueezeFragment fragment = SqueezeFragment::Propositional;
  int letters = 2;  // propositional letters p, q, r, ...
  int depth = 5;    // connective count bound
  int preds = 1;    // monadic predicate symbols P, Q, ...
  int qrank = 2;
  long budget = 20'000;  // formulas enumerated before flagging exhaustion
  // narrow decider: proof synthesis (classical) or, as a deliberately
  // crippled negative control, the intuitionistic decision procedure
  bool narrow_classical = true;
  int model_bound = 0;  // wide decider size bound; 0 = 2^preds * qrank
};

struct SqueezeViolation {
  Formula phi;
  bool narrow, wide;  // the disagreeing verdicts
};

struct SqueezeReport {
  long enumerated = 0;
  long narrow_accepts = 0, wide_accepts = 0;
  // a full-squeeze claim requires both inclusions over the same set
  bool both_directions_checked = false;
  bool budget_exhausted = false;  // the fragment outran the budget
  std::vector<SqueezeViolation> violations;
};

// enumerates the fragment breadth-first by size, runs both deciders on
// every formula, and records each disagreement in either direction
SqueezeReport squeeze_run(const SqueezeConfig& cfg);

// the enumerations, exposed for oracle tests: all propositional formulas
// over the first `letters` letters with at most `depth` connectives, and
// all closed monadic sentences over `preds` unary predicates with
// quantifier rank <= qrank and at most `depth` connectives
std::vector<Formula> enumerate_prop(int letters, int depth, long budget,
                                    bool* exhausted = nullptr);
std::vector<Formula> enumerate_monadic(int preds, int qrank, int depth,
                                       long budget, bool* exhausted = nullptr);

// ----------------------------------------------------------- decidedness

struct DecidednessQuery {
  Formula tau2;  // theory sentence, possibly second-order
  Formula phi1;  // first-order target, same signature
  std::vector<int> sizes;
  SOBudget so_budget;
  EnumBudget enum_budget;
};

struct DecidedTrue {};
struct DecidedFalse {};
struct Mixed {
  FiniteStructure true_witness, false_witness;
};
struct NoModels {};
using DecidedVerdict = std::variant<DecidedTrue, DecidedFalse, Mixed, NoModels>;

// enumerates structures of the given sizes, keeps those standardly
// satisfying tau2, and evaluates phi1 across the survivors; vacuity is
// surfaced as NoModels, never as a decidedness claim
DecidedVerdict decided_by(const DecidednessQuery& q);

struct CategoricityReport {
  long models_found = 0;
  bool categorical = false;  // vacuously false when no models were found
  std::optional<std::pair<FiniteStructure, FiniteStructure>> counterexample;
};

// all standard models of tau2 across the sizes, pairwise isomorphism-checked
CategoricityReport categoricity_check(const Formula& tau2,
                                      const std::vector<int>& sizes,
                                      const SOBudget& sob = {},
                                      const EnumBudget& eb = {});

// -------------------------------------------------------- interpretability

// one-dimensional relative interpretation of B inside A: a domain predicate
// and one defining formula per relation symbol of B, inducing a structure
// isomorphic to B
struct Interpretation {
  Formula delta;                        // free variable x1
  std::map<std::string, Formula> defs;  // B symbol -> formula over x1..xk
  std::vector<int> iso;                 // induced domain order -> B
};
struct InterpNotFound {
  bool pool_exhausted;  // true: no witness at this bound, certified; false:
                        // budget ran out, the verdict is budget-relative
};
using InterpVerdict = std::variant<Interpretation, InterpNotFound>;

struct InterpBudget {
  long max_candidates = 2'000'000;
};

InterpVerdict interpretability_search(const FiniteStructure& A,
                                      const FiniteStructure& B, int size_bound,
                                      int dimension = 1,
                                      const InterpBudget& b = {});

// independent re-check of a claimed interpretation (evaluation + iso only,
// no search machinery)
bool verify_interpretation(const FiniteStructure& A, const FiniteStructure& B,
                           const Interpretation& it);

enum class FundVerdict { Fund, NotFund, Inconclusive };

struct FundReport {
  FundVerdict verdict;
  std::optional<Interpretation> b_in_a, a_in_b;
  bool forward_exhausted = false, backward_exhausted = false;
};

// Fund(A, B): B interprets into A but A does not interpret into B at the
// bound, the failure certified exhaustive; budget-relative failures in a
// deciding position yield Inconclusive
FundReport fund(const FiniteStructure& A, const FiniteStructure& B,
                int size_bound, const InterpBudget& b = {});

// ------------------------------------------------------ flagship assembly

struct ProvenancedFormula {
  std::string label;
  Formula f;
  std::string note;
};

// the informal-rigour pipeline as inspectable data: constitutive principles,
// discovered principles by origin, and the precise/combined theory ids
struct KreiselianAssembly {
  std::vector<std::string> common_predicates;
  std::vector<ProvenancedFormula> gamma1, gamma2c, gamma2j, gamma2k;
  std::string precise_theory;
  std::string kreiselian_theory;
};

// creating-subject case study: T_P the neutral base, Gamma2^K the
// creating-subject principles, T_K their registered union
KreiselianAssembly flagship_assembly();

// every member formula parses (they are stored parsed, so this checks the
// theory registration invariant: T_K extends T_P and carries the schemas)
bool validate_assembly(const KreiselianAssembly& a, const Registry& reg);

}  // namespace rigour
