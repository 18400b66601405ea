#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rigour {

enum class Sort { Nat, Seq, Obj };

std::string sort_name(Sort s);

struct TermNode;
struct FormulaNode;
using Term = std::shared_ptr<const TermNode>;
using Formula = std::shared_ptr<const FormulaNode>;

enum class TermKind {
  Var,       // sorted variable (Nat, Seq, or Obj)
  Zero,
  Succ,
  Plus,
  Times,
  SeqApp,    // a(t), a a Seq variable
  Tuple,     // <t1,...,tk>, possibly empty
  Proj,      // proj(t, i)
  Concat,    // t # s  (sequence-code concatenation)
  Bar,       // bar(a, t) = <a(0),...,a(t-1)>
  Step,      // step(x, z) = 0 if x<z else 1
  Chi,       // chi[x. A](t), A extended-Delta0
  ObjConst,  // fresh constant of the generic Obj sort (tableau skolems etc.)
};

struct TermNode {
  TermKind kind;
  std::string name;        // Var / SeqApp head / ObjConst
  Sort var_sort = Sort::Nat;
  std::vector<Term> args;
  std::string chi_var;     // Chi binder
  Formula chi_body;        // Chi matrix
};

enum class FormulaKind {
  Eq,        // t = s (Nat or Obj)
  Lt,        // t < s (Nat)
  Bot,
  Pred,      // P(t...), generic predicate atom (0-ary = propositional letter)
  And,
  Or,
  Imp,
  Forall,
  Exists,
  Box,       // box[t] A, A box-free
  SOForall,  // second-order quantifier over k-ary relations
  SOExists,
  SOAtom,    // X(t...), X a second-order variable
};

struct FormulaNode {
  FormulaKind kind;
  Term t0, t1;             // Eq/Lt operands; Box index in t0
  std::string name;        // Pred name, binder variable, SO variable
  Sort binder_sort = Sort::Nat;
  int so_arity = 0;
  std::vector<Term> args;  // Pred / SOAtom
  Formula left, right;     // binary; quantifier/Box body in left
};

struct SyntaxError : std::runtime_error {
  size_t pos;
  SyntaxError(const std::string& msg, size_t p = 0)
      : std::runtime_error(msg), pos(p) {}
};

// --- builders (each checks well-sortedness and the box-freeness invariant) ---
Term mk_var(const std::string& name, Sort s);
Term mk_zero();
Term mk_num(unsigned n);
Term mk_succ(Term t);
Term mk_plus(Term a, Term b);
Term mk_times(Term a, Term b);
Term mk_seq_app(const std::string& head, Term arg);
Term mk_tuple(std::vector<Term> ts);
Term mk_proj(Term t, Term i);
Term mk_concat(Term a, Term b);
Term mk_bar(const std::string& seqvar, Term t);
Term mk_step(Term x, Term z);
Term mk_chi(const std::string& var, Formula body, Term arg);
Term mk_obj_const(const std::string& name);

Formula mk_eq(Term a, Term b);
Formula mk_lt(Term a, Term b);
Formula mk_bot();
Formula mk_pred(const std::string& name, std::vector<Term> args = {});
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_imp(Formula a, Formula b);
Formula mk_not(Formula a);             // sugar: a -> bot
Formula mk_iff(Formula a, Formula b);  // sugar: (a->b) & (b->a)
Formula mk_forall(const std::string& v, Sort s, Formula body);
Formula mk_exists(const std::string& v, Sort s, Formula body);
Formula mk_box(Term index, Formula matrix);
Formula mk_so_forall(const std::string& v, int arity, Formula body);
Formula mk_so_exists(const std::string& v, int arity, Formula body);
Formula mk_so_atom(const std::string& v, std::vector<Term> args);
// bounded quantifiers (sugar): all v < t. A  ==>  all v. (v<t -> A)
Formula mk_bounded_forall(const std::string& v, Term bound, Formula body);
Formula mk_bounded_exists(const std::string& v, Term bound, Formula body);

bool is_not(const Formula& f);  // matches A -> bot

Sort sort_of(const Term& t);

bool term_eq(const Term& a, const Term& b);
bool alpha_eq(const Formula& a, const Formula& b);

bool contains_box(const Term& t);
bool contains_box(const Formula& f);
bool contains_chi(const Term& t);
bool contains_chi(const Formula& f);

// free first-order variables with their sorts
std::map<std::string, Sort> free_vars(const Term& t);
std::map<std::string, Sort> free_vars(const Formula& f);
std::set<std::string> free_so_vars(const Formula& f);
bool is_closed(const Formula& f);

// capture-avoiding substitution of term for the variable (name, sort)
Term substitute(const Term& in, const std::string& var, Sort s, const Term& t);
Formula substitute(const Formula& in, const std::string& var, Sort s,
                   const Term& t);

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid);

std::string print(const Term& t);
std::string print(const Formula& f);

// extended-Delta0: propositional connectives and bounded Nat quantifiers over
// atomic arithmetic, bot, and box-atoms with box-free matrix
bool is_extended_delta0(const Formula& f);

struct ParseOptions {
  std::map<std::string, Sort> context;  // pre-declared free-variable sorts
  Sort default_sort = Sort::Nat;        // sort for undeclared bare idents
  bool prop_letters = false;            // bare idents become 0-ary predicates
};

Term parse_term(const std::string& text, const ParseOptions& opts = {});
Formula parse_formula(const std::string& text, const ParseOptions& opts = {});

}  // namespace rigour
