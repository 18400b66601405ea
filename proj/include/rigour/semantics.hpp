#pragma once

#include "rigour/syntax.hpp"

#include <variant>

namespace rigour {

// malformed model / formula-model mismatch
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& m) : std::runtime_error(m) {}
};

// enumeration or powerset budget exceeded (maps to CLI exit 3)
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& m) : std::runtime_error(m) {}
};

// ------------------------------------------------------- finite structures

struct RelSym {
  std::string name;
  int arity = 1;
};

struct Signature {
  std::vector<RelSym> relations;
  // the term language applies no function symbols at the object sort, so
  // interpreted symbols beyond relations are constants only
  std::vector<std::string> constants;
};

// read a formula's predicate symbols and object constants
Signature signature_of(const Formula& f);

struct FiniteStructure {
  int size = 1;
  Signature sig;
  // row-major tables over size^arity entries, index = sum v_i * size^i
  std::map<std::string, std::vector<bool>> rel;
  std::map<std::string, int> consts;

  void validate() const;  // throws EvalError on partial or ill-sized tables
};

long table_index(const std::vector<int>& tuple, int size);

// plain-text round trip:
//   size N
//   rel NAME ARITY          (declares; following "NAME e1 .. ek" lines add tuples)
//   NAME e1 ... ek
//   const NAME e
FiniteStructure parse_structure(const std::string& text);
std::string print_structure(const FiniteStructure& M);

// --------------------------------------------------------- FO evaluation

using Assignment = std::map<std::string, int>;

// Tarski evaluation; phi must be box-free first-order over the object sort
bool eval_fo(const FiniteStructure& M, const Formula& phi,
             const Assignment& asg = {});

struct ValidUpTo {
  int max_size = 0;
  long structures_checked = 0;
};
struct FOCountermodel {
  FiniteStructure model;
};
using FOVerdict = std::variant<ValidUpTo, FOCountermodel>;

struct EnumBudget {
  long max_structures = 5'000'000;
};

// exhaustive truth over all structures of the formula's signature with
// domain sizes 1..max_size; first countermodel wins
FOVerdict validity_fo_bounded(const Formula& phi, int max_size,
                              const EnumBudget& b = {});

// all structures of the signature with the given domain size; with
// up_to_iso, keeps one representative per isomorphism class
std::vector<FiniteStructure> enumerate_structures(const Signature& sig,
                                                  int size, bool up_to_iso,
                                                  const EnumBudget& b = {});

// --------------------------------------------------------- isomorphism

struct Isomorphism {
  std::vector<int> map;  // domain of A -> domain of B
};
struct NotIsomorphic {};
using IsoVerdict = std::variant<Isomorphism, NotIsomorphic>;

IsoVerdict iso_search(const FiniteStructure& A, const FiniteStructure& B);

// --------------------------------------------------------- second order

enum class SOMode { Standard, Henkin };

struct SOStructure {
  FiniteStructure base;
  SOMode mode = SOMode::Standard;
  // Henkin mode: explicit relation extensions per arity
  std::map<int, std::vector<std::vector<bool>>> family;
  // set by audit_comprehension; never assumed
  bool comprehension_audited = false;
};

struct SOBudget {
  int max_size = 4;
  int max_arity = 2;
  long max_tables = 1'000'000;
};

// closed second-order evaluation; Standard mode ranges quantifiers over the
// full powerset of size^arity tuples, Henkin mode over the explicit family
bool eval_so(const SOStructure& S, const Formula& phi, const SOBudget& b = {});

// checks the arity-1 Henkin family is closed under the sets definable by the
// given matrices (free variable `var` ranges over the domain, any other free
// variables act as parameters); records and returns the outcome
bool audit_comprehension(SOStructure& S, const std::vector<Formula>& matrices,
                         const std::string& var = "x");

// --------------------------------------------------------- Kripke models

struct KripkeModel {
  int worlds = 0;
  std::vector<std::vector<bool>> le;           // reflexive-transitive order
  std::map<std::string, std::vector<bool>> val;  // letter -> worlds forcing it
};

// closes `below` reflexively/transitively, validates antisymmetry and
// valuation heredity; throws EvalError otherwise
KripkeModel make_kripke(int worlds,
                        const std::vector<std::pair<int, int>>& below,
                        std::map<std::string, std::vector<bool>> val);

// intuitionistic forcing at world w; phi propositional (0-ary predicates)
bool kripke_forces(const KripkeModel& K, int w, const Formula& phi);

// every Kripke model with 1..max_worlds worlds over the given letters
std::vector<KripkeModel> enumerate_kripke(
    int max_worlds, const std::vector<std::string>& letters);

// plain-text round trip:
//   worlds N
//   le U V
//   val P w1 ... wk
KripkeModel parse_kripke(const std::string& text);
std::string print_kripke(const KripkeModel& K);

}  // namespace rigour
