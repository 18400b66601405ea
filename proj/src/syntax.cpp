#include "rigour/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rigour {

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::Nat: return "nat";
    case Sort::Seq: return "seq";
    case Sort::Obj: return "obj";
  }
  return "?";
}

static Term make_term(TermNode n) {
  return std::make_shared<const TermNode>(std::move(n));
}
static Formula make_formula(FormulaNode n) {
  return std::make_shared<const FormulaNode>(std::move(n));
}

static void require(bool cond, const std::string& msg) {
  if (!cond) throw SyntaxError(msg);
}

Sort sort_of(const Term& t) {
  switch (t->kind) {
    case TermKind::Var: return t->var_sort;
    case TermKind::ObjConst: return Sort::Obj;
    default: return Sort::Nat;
  }
}

Term mk_var(const std::string& name, Sort s) {
  TermNode n;
  n.kind = TermKind::Var;
  n.name = name;
  n.var_sort = s;
  return make_term(std::move(n));
}
Term mk_zero() {
  TermNode n;
  n.kind = TermKind::Zero;
  return make_term(std::move(n));
}
Term mk_num(unsigned k) {
  Term t = mk_zero();
  for (unsigned i = 0; i < k; ++i) t = mk_succ(t);
  return t;
}
static Term nat_op(TermKind k, std::vector<Term> args, const char* what) {
  for (auto& a : args)
    require(sort_of(a) == Sort::Nat, std::string(what) + ": nat argument expected");
  TermNode n;
  n.kind = k;
  n.args = std::move(args);
  return make_term(std::move(n));
}
Term mk_succ(Term t) { return nat_op(TermKind::Succ, {std::move(t)}, "S"); }
Term mk_plus(Term a, Term b) {
  return nat_op(TermKind::Plus, {std::move(a), std::move(b)}, "+");
}
Term mk_times(Term a, Term b) {
  return nat_op(TermKind::Times, {std::move(a), std::move(b)}, "*");
}
Term mk_seq_app(const std::string& head, Term arg) {
  require(sort_of(arg) == Sort::Nat, "sequence application: nat argument expected");
  TermNode n;
  n.kind = TermKind::SeqApp;
  n.name = head;
  n.args = {std::move(arg)};
  return make_term(std::move(n));
}
Term mk_tuple(std::vector<Term> ts) {
  return nat_op(TermKind::Tuple, std::move(ts), "tuple");
}
Term mk_proj(Term t, Term i) {
  return nat_op(TermKind::Proj, {std::move(t), std::move(i)}, "proj");
}
Term mk_concat(Term a, Term b) {
  return nat_op(TermKind::Concat, {std::move(a), std::move(b)}, "#");
}
Term mk_bar(const std::string& seqvar, Term t) {
  require(sort_of(t) == Sort::Nat, "bar: nat argument expected");
  TermNode n;
  n.kind = TermKind::Bar;
  n.name = seqvar;
  n.args = {std::move(t)};
  return make_term(std::move(n));
}
Term mk_step(Term x, Term z) {
  return nat_op(TermKind::Step, {std::move(x), std::move(z)}, "step");
}
Term mk_chi(const std::string& var, Formula body, Term arg) {
  require(sort_of(arg) == Sort::Nat, "chi: nat argument expected");
  require(is_extended_delta0(body), "chi: matrix must be extended-Delta0");
  TermNode n;
  n.kind = TermKind::Chi;
  n.chi_var = var;
  n.chi_body = std::move(body);
  n.args = {std::move(arg)};
  return make_term(std::move(n));
}
Term mk_obj_const(const std::string& name) {
  TermNode n;
  n.kind = TermKind::ObjConst;
  n.name = name;
  return make_term(std::move(n));
}

Formula mk_eq(Term a, Term b) {
  Sort sa = sort_of(a), sb = sort_of(b);
  require(sa == sb, "=: operands of different sorts");
  require(sa != Sort::Seq, "=: no primitive equality at sort seq");
  FormulaNode n;
  n.kind = FormulaKind::Eq;
  n.t0 = std::move(a);
  n.t1 = std::move(b);
  return make_formula(std::move(n));
}
Formula mk_lt(Term a, Term b) {
  require(sort_of(a) == Sort::Nat && sort_of(b) == Sort::Nat,
          "<: nat operands expected");
  FormulaNode n;
  n.kind = FormulaKind::Lt;
  n.t0 = std::move(a);
  n.t1 = std::move(b);
  return make_formula(std::move(n));
}
Formula mk_bot() {
  FormulaNode n;
  n.kind = FormulaKind::Bot;
  return make_formula(std::move(n));
}
Formula mk_pred(const std::string& name, std::vector<Term> args) {
  FormulaNode n;
  n.kind = FormulaKind::Pred;
  n.name = name;
  n.args = std::move(args);
  return make_formula(std::move(n));
}
static Formula binop(FormulaKind k, Formula a, Formula b) {
  FormulaNode n;
  n.kind = k;
  n.left = std::move(a);
  n.right = std::move(b);
  return make_formula(std::move(n));
}
Formula mk_and(Formula a, Formula b) {
  return binop(FormulaKind::And, std::move(a), std::move(b));
}
Formula mk_or(Formula a, Formula b) {
  return binop(FormulaKind::Or, std::move(a), std::move(b));
}
Formula mk_imp(Formula a, Formula b) {
  return binop(FormulaKind::Imp, std::move(a), std::move(b));
}
Formula mk_not(Formula a) { return mk_imp(std::move(a), mk_bot()); }
Formula mk_iff(Formula a, Formula b) {
  return mk_and(mk_imp(a, b), mk_imp(b, a));
}
static Formula quant(FormulaKind k, const std::string& v, Sort s, Formula body) {
  FormulaNode n;
  n.kind = k;
  n.name = v;
  n.binder_sort = s;
  n.left = std::move(body);
  return make_formula(std::move(n));
}
Formula mk_forall(const std::string& v, Sort s, Formula body) {
  return quant(FormulaKind::Forall, v, s, std::move(body));
}
Formula mk_exists(const std::string& v, Sort s, Formula body) {
  return quant(FormulaKind::Exists, v, s, std::move(body));
}
Formula mk_box(Term index, Formula matrix) {
  require(sort_of(index) == Sort::Nat, "box: nat index expected");
  require(!contains_box(matrix), "box: matrix must be box-free");
  FormulaNode n;
  n.kind = FormulaKind::Box;
  n.t0 = std::move(index);
  n.left = std::move(matrix);
  return make_formula(std::move(n));
}
static Formula so_quant(FormulaKind k, const std::string& v, int arity,
                        Formula body) {
  require(arity >= 1, "second-order quantifier: arity >= 1");
  FormulaNode n;
  n.kind = k;
  n.name = v;
  n.so_arity = arity;
  n.left = std::move(body);
  return make_formula(std::move(n));
}
Formula mk_so_forall(const std::string& v, int arity, Formula body) {
  return so_quant(FormulaKind::SOForall, v, arity, std::move(body));
}
Formula mk_so_exists(const std::string& v, int arity, Formula body) {
  return so_quant(FormulaKind::SOExists, v, arity, std::move(body));
}
Formula mk_so_atom(const std::string& v, std::vector<Term> args) {
  FormulaNode n;
  n.kind = FormulaKind::SOAtom;
  n.name = v;
  n.args = std::move(args);
  return make_formula(std::move(n));
}
Formula mk_bounded_forall(const std::string& v, Term bound, Formula body) {
  require(free_vars(bound).count(v) == 0, "bounded all: bound mentions the binder");
  return mk_forall(v, Sort::Nat,
                   mk_imp(mk_lt(mk_var(v, Sort::Nat), bound), std::move(body)));
}
Formula mk_bounded_exists(const std::string& v, Term bound, Formula body) {
  require(free_vars(bound).count(v) == 0, "bounded ex: bound mentions the binder");
  return mk_exists(v, Sort::Nat,
                   mk_and(mk_lt(mk_var(v, Sort::Nat), bound), std::move(body)));
}

bool is_not(const Formula& f) {
  return f->kind == FormulaKind::Imp && f->right->kind == FormulaKind::Bot;
}

// ---------------------------------------------------------------- traversal

bool contains_box(const Term& t) {
  for (auto& a : t->args)
    if (contains_box(a)) return true;
  if (t->kind == TermKind::Chi && contains_box(t->chi_body)) return true;
  return false;
}
bool contains_box(const Formula& f) {
  if (f->kind == FormulaKind::Box) return true;
  if (f->t0 && contains_box(f->t0)) return true;
  if (f->t1 && contains_box(f->t1)) return true;
  for (auto& a : f->args)
    if (contains_box(a)) return true;
  if (f->left && contains_box(f->left)) return true;
  if (f->right && contains_box(f->right)) return true;
  return false;
}
bool contains_chi(const Term& t) {
  if (t->kind == TermKind::Chi) return true;
  for (auto& a : t->args)
    if (contains_chi(a)) return true;
  return false;
}
bool contains_chi(const Formula& f) {
  if (f->t0 && contains_chi(f->t0)) return true;
  if (f->t1 && contains_chi(f->t1)) return true;
  for (auto& a : f->args)
    if (contains_chi(a)) return true;
  if (f->left && contains_chi(f->left)) return true;
  if (f->right && contains_chi(f->right)) return true;
  return false;
}

static void fv_term(const Term& t, std::map<std::string, Sort>& out,
                    std::set<std::string>& bound);
static void fv_formula(const Formula& f, std::map<std::string, Sort>& out,
                       std::set<std::string>& bound);

static void fv_term(const Term& t, std::map<std::string, Sort>& out,
                    std::set<std::string>& bound) {
  switch (t->kind) {
    case TermKind::Var:
      if (!bound.count(t->name)) out.emplace(t->name, t->var_sort);
      break;
    case TermKind::SeqApp:
    case TermKind::Bar:
      if (!bound.count(t->name)) out.emplace(t->name, Sort::Seq);
      break;
    case TermKind::Chi: {
      bool was = bound.count(t->chi_var) > 0;
      bound.insert(t->chi_var);
      fv_formula(t->chi_body, out, bound);
      if (!was) bound.erase(t->chi_var);
      break;
    }
    default:
      break;
  }
  for (auto& a : t->args) fv_term(a, out, bound);
}

static void fv_formula(const Formula& f, std::map<std::string, Sort>& out,
                       std::set<std::string>& bound) {
  if (f->t0) fv_term(f->t0, out, bound);
  if (f->t1) fv_term(f->t1, out, bound);
  for (auto& a : f->args) fv_term(a, out, bound);
  if (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists) {
    bool was = bound.count(f->name) > 0;
    bound.insert(f->name);
    fv_formula(f->left, out, bound);
    if (!was) bound.erase(f->name);
    return;
  }
  if (f->left) fv_formula(f->left, out, bound);
  if (f->right) fv_formula(f->right, out, bound);
}

std::map<std::string, Sort> free_vars(const Term& t) {
  std::map<std::string, Sort> out;
  std::set<std::string> bound;
  fv_term(t, out, bound);
  return out;
}
std::map<std::string, Sort> free_vars(const Formula& f) {
  std::map<std::string, Sort> out;
  std::set<std::string> bound;
  fv_formula(f, out, bound);
  return out;
}

static void fsv(const Formula& f, std::set<std::string>& out,
                std::set<std::string>& bound) {
  if (f->kind == FormulaKind::SOAtom && !bound.count(f->name)) out.insert(f->name);
  if (f->kind == FormulaKind::SOForall || f->kind == FormulaKind::SOExists) {
    bool was = bound.count(f->name) > 0;
    bound.insert(f->name);
    fsv(f->left, out, bound);
    if (!was) bound.erase(f->name);
    return;
  }
  if (f->left) fsv(f->left, out, bound);
  if (f->right) fsv(f->right, out, bound);
}
std::set<std::string> free_so_vars(const Formula& f) {
  std::set<std::string> out, bound;
  fsv(f, out, bound);
  return out;
}
bool is_closed(const Formula& f) {
  return free_vars(f).empty() && free_so_vars(f).empty();
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 0;; ++i) {
    std::string c = base + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

// ------------------------------------------------------------- substitution

namespace {

struct Subst {
  std::string var;
  Sort sort;
  Term repl;
  std::set<std::string> repl_fv;  // names free in repl (any sort)

  Term term(const Term& t) const;
  Formula formula(const Formula& f) const;
  // rename binder if it would capture, or shadow the substituted variable
  template <typename Rebuild>
  auto under_binder(const std::string& bv, Sort bs, const Formula& body,
                    Rebuild rebuild) const -> Formula;
};

Term Subst::term(const Term& t) const {
  switch (t->kind) {
    case TermKind::Var:
      if (t->name == var && t->var_sort == sort) return repl;
      return t;
    case TermKind::SeqApp:
      if (t->name == var && sort == Sort::Seq) {
        // a sequence variable can only be replaced by another sequence variable
        if (repl->kind == TermKind::Var && repl->var_sort == Sort::Seq)
          return mk_seq_app(repl->name, term(t->args[0]));
        throw SyntaxError("substitute: seq variable in application position "
                          "requires a seq variable replacement");
      }
      return mk_seq_app(t->name, term(t->args[0]));
    case TermKind::Bar:
      if (t->name == var && sort == Sort::Seq) {
        if (repl->kind == TermKind::Var && repl->var_sort == Sort::Seq)
          return mk_bar(repl->name, term(t->args[0]));
        throw SyntaxError("substitute: seq variable under bar requires a seq "
                          "variable replacement");
      }
      return mk_bar(t->name, term(t->args[0]));
    case TermKind::Chi: {
      if (t->chi_var == var && sort == Sort::Nat)
        return mk_chi(t->chi_var, t->chi_body, term(t->args[0]));
      if (repl_fv.count(t->chi_var)) {
        std::set<std::string> avoid = repl_fv;
        for (auto& [n, s] : free_vars(t->chi_body)) avoid.insert(n);
        avoid.insert(var);
        std::string nv = fresh_name(t->chi_var, avoid);
        Formula body = substitute(t->chi_body, t->chi_var, Sort::Nat,
                                  mk_var(nv, Sort::Nat));
        return mk_chi(nv, formula(body), term(t->args[0]));
      }
      return mk_chi(t->chi_var, formula(t->chi_body), term(t->args[0]));
    }
    default: {
      TermNode n = *t;
      for (auto& a : n.args) a = term(a);
      return make_term(std::move(n));
    }
  }
}

Formula Subst::formula(const Formula& f) const {
  switch (f->kind) {
    case FormulaKind::Eq: return mk_eq(term(f->t0), term(f->t1));
    case FormulaKind::Lt: return mk_lt(term(f->t0), term(f->t1));
    case FormulaKind::Bot: return f;
    case FormulaKind::Pred: {
      std::vector<Term> as;
      for (auto& a : f->args) as.push_back(term(a));
      return mk_pred(f->name, std::move(as));
    }
    case FormulaKind::SOAtom: {
      std::vector<Term> as;
      for (auto& a : f->args) as.push_back(term(a));
      return mk_so_atom(f->name, std::move(as));
    }
    case FormulaKind::And: return mk_and(formula(f->left), formula(f->right));
    case FormulaKind::Or: return mk_or(formula(f->left), formula(f->right));
    case FormulaKind::Imp: return mk_imp(formula(f->left), formula(f->right));
    case FormulaKind::Box: return mk_box(term(f->t0), formula(f->left));
    case FormulaKind::SOForall:
      return mk_so_forall(f->name, f->so_arity, formula(f->left));
    case FormulaKind::SOExists:
      return mk_so_exists(f->name, f->so_arity, formula(f->left));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f->name == var && f->binder_sort == sort) return f;  // shadowed
      std::string bv = f->name;
      Formula body = f->left;
      if (repl_fv.count(bv)) {
        std::set<std::string> avoid = repl_fv;
        for (auto& [n, s] : free_vars(body)) avoid.insert(n);
        avoid.insert(var);
        std::string nv = fresh_name(bv, avoid);
        body = substitute(body, bv, f->binder_sort, mk_var(nv, f->binder_sort));
        bv = nv;
      }
      body = formula(body);
      return f->kind == FormulaKind::Forall
                 ? mk_forall(bv, f->binder_sort, body)
                 : mk_exists(bv, f->binder_sort, body);
    }
  }
  throw SyntaxError("substitute: unhandled formula kind");
}

}  // namespace

Term substitute(const Term& in, const std::string& var, Sort s, const Term& t) {
  Subst sub{var, s, t, {}};
  for (auto& [n, so] : free_vars(t)) sub.repl_fv.insert(n);
  return sub.term(in);
}
Formula substitute(const Formula& in, const std::string& var, Sort s,
                   const Term& t) {
  Subst sub{var, s, t, {}};
  for (auto& [n, so] : free_vars(t)) sub.repl_fv.insert(n);
  return sub.formula(in);
}

// -------------------------------------------------------- alpha equivalence

namespace {

struct AlphaCtx {
  // pairs of corresponding bound names, innermost last
  std::vector<std::pair<std::string, std::string>> pairs;

  bool var_match(const std::string& a, const std::string& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      if (it->first == a || it->second == b) return it->first == a && it->second == b;
    }
    return a == b;
  }
};

bool aeq_term(const Term& a, const Term& b, AlphaCtx& ctx);
bool aeq_formula(const Formula& a, const Formula& b, AlphaCtx& ctx);

bool aeq_term(const Term& a, const Term& b, AlphaCtx& ctx) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var:
      return a->var_sort == b->var_sort && ctx.var_match(a->name, b->name);
    case TermKind::ObjConst:
      return a->name == b->name;
    case TermKind::SeqApp:
    case TermKind::Bar:
      if (!ctx.var_match(a->name, b->name)) return false;
      break;
    case TermKind::Chi: {
      ctx.pairs.emplace_back(a->chi_var, b->chi_var);
      bool ok = aeq_formula(a->chi_body, b->chi_body, ctx);
      ctx.pairs.pop_back();
      if (!ok) return false;
      break;
    }
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!aeq_term(a->args[i], b->args[i], ctx)) return false;
  return true;
}

bool aeq_formula(const Formula& a, const Formula& b, AlphaCtx& ctx) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
      return aeq_term(a->t0, b->t0, ctx) && aeq_term(a->t1, b->t1, ctx);
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Pred:
    case FormulaKind::SOAtom: {
      if (a->kind == FormulaKind::SOAtom) {
        if (!ctx.var_match(a->name, b->name)) return false;
      } else if (a->name != b->name) {
        return false;
      }
      if (a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!aeq_term(a->args[i], b->args[i], ctx)) return false;
      return true;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return aeq_formula(a->left, b->left, ctx) &&
             aeq_formula(a->right, b->right, ctx);
    case FormulaKind::Box:
      return aeq_term(a->t0, b->t0, ctx) && aeq_formula(a->left, b->left, ctx);
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (a->binder_sort != b->binder_sort) return false;
      ctx.pairs.emplace_back(a->name, b->name);
      bool ok = aeq_formula(a->left, b->left, ctx);
      ctx.pairs.pop_back();
      return ok;
    }
    case FormulaKind::SOForall:
    case FormulaKind::SOExists: {
      if (a->so_arity != b->so_arity) return false;
      ctx.pairs.emplace_back(a->name, b->name);
      bool ok = aeq_formula(a->left, b->left, ctx);
      ctx.pairs.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool term_eq(const Term& a, const Term& b) {
  AlphaCtx ctx;
  return aeq_term(a, b, ctx);
}
bool alpha_eq(const Formula& a, const Formula& b) {
  AlphaCtx ctx;
  return aeq_formula(a, b, ctx);
}

// ------------------------------------------------------------------ printer

namespace {

void print_term(const Term& t, std::ostream& os);

void print_args(const std::vector<Term>& args, std::ostream& os) {
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ",";
    print_term(args[i], os);
  }
}

int term_prec(const Term& t) {
  switch (t->kind) {
    case TermKind::Concat: return 1;
    case TermKind::Plus: return 2;
    case TermKind::Times: return 3;
    default: return 4;
  }
}

void print_term_p(const Term& t, std::ostream& os, int min_prec) {
  if (term_prec(t) < min_prec) {
    os << "(";
    print_term(t, os);
    os << ")";
  } else {
    print_term(t, os);
  }
}

void print_formula(const Formula& f, std::ostream& os);

void print_term(const Term& t, std::ostream& os) {
  switch (t->kind) {
    case TermKind::Var: os << t->name; break;
    case TermKind::ObjConst: os << "$" << t->name; break;
    case TermKind::Zero: os << "0"; break;
    case TermKind::Succ:
      os << "S ";
      print_term_p(t->args[0], os, 4);
      break;
    case TermKind::Plus:
      print_term_p(t->args[0], os, 2);
      os << " + ";
      print_term_p(t->args[1], os, 3);
      break;
    case TermKind::Times:
      print_term_p(t->args[0], os, 3);
      os << " * ";
      print_term_p(t->args[1], os, 4);
      break;
    case TermKind::Concat:
      print_term_p(t->args[0], os, 1);
      os << " # ";
      print_term_p(t->args[1], os, 2);
      break;
    case TermKind::SeqApp:
      os << t->name << "(";
      print_term(t->args[0], os);
      os << ")";
      break;
    case TermKind::Tuple:
      os << "<";
      print_args(t->args, os);
      os << ">";
      break;
    case TermKind::Proj:
      os << "proj(";
      print_args(t->args, os);
      os << ")";
      break;
    case TermKind::Bar:
      os << "bar(" << t->name << ",";
      print_term(t->args[0], os);
      os << ")";
      break;
    case TermKind::Step:
      os << "step(";
      print_args(t->args, os);
      os << ")";
      break;
    case TermKind::Chi:
      os << "chi[" << t->chi_var << ". ";
      print_formula(t->chi_body, os);
      os << "](";
      print_term(t->args[0], os);
      os << ")";
      break;
  }
}

// precedence: -> 1 (right), | 2, & 3, unary/atom 4
int formula_prec(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Imp: return is_not(f) ? 4 : 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::SOForall:
    case FormulaKind::SOExists:
      return 0;  // body extends maximally; always parenthesize as subformula
    default: return 4;
  }
}

void print_formula_p(const Formula& f, std::ostream& os, int min_prec) {
  if (formula_prec(f) < min_prec) {
    os << "(";
    print_formula(f, os);
    os << ")";
  } else {
    print_formula(f, os);
  }
}

void print_formula(const Formula& f, std::ostream& os) {
  switch (f->kind) {
    case FormulaKind::Eq:
      print_term(f->t0, os);
      os << " = ";
      print_term(f->t1, os);
      break;
    case FormulaKind::Lt:
      print_term(f->t0, os);
      os << " < ";
      print_term(f->t1, os);
      break;
    case FormulaKind::Bot: os << "bot"; break;
    case FormulaKind::Pred:
    case FormulaKind::SOAtom:
      os << f->name;
      if (!f->args.empty()) {
        os << "(";
        print_args(f->args, os);
        os << ")";
      }
      break;
    case FormulaKind::And:
      print_formula_p(f->left, os, 3);
      os << " & ";
      print_formula_p(f->right, os, 4);
      break;
    case FormulaKind::Or:
      print_formula_p(f->left, os, 2);
      os << " | ";
      print_formula_p(f->right, os, 3);
      break;
    case FormulaKind::Imp:
      if (is_not(f)) {
        os << "~";
        print_formula_p(f->left, os, 4);
        break;
      }
      print_formula_p(f->left, os, 2);
      os << " -> ";
      print_formula_p(f->right, os, 1);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      os << (f->kind == FormulaKind::Forall ? "all " : "ex ") << f->name << ":"
         << sort_name(f->binder_sort) << ". ";
      print_formula(f->left, os);
      break;
    case FormulaKind::SOForall:
    case FormulaKind::SOExists:
      os << (f->kind == FormulaKind::SOForall ? "all2 " : "ex2 ") << f->name
         << ":" << f->so_arity << ". ";
      print_formula(f->left, os);
      break;
    case FormulaKind::Box:
      os << "box[";
      print_term(f->t0, os);
      os << "] ";
      print_formula_p(f->left, os, 4);
      break;
  }
}

}  // namespace

std::string print(const Term& t) {
  std::ostringstream os;
  print_term(t, os);
  return os.str();
}
std::string print(const Formula& f) {
  std::ostringstream os;
  print_formula(f, os);
  return os.str();
}

// --------------------------------------------------------- extended-Delta0

static bool atomic_arith(const Formula& f) {
  return f->kind == FormulaKind::Eq || f->kind == FormulaKind::Lt ||
         f->kind == FormulaKind::Bot;
}

bool is_extended_delta0(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Eq:
    case FormulaKind::Lt:
      // atomic arithmetic over the nat sort (seq applications allowed)
      return sort_of(f->t0) == Sort::Nat;
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Box:
      return !contains_box(f->left);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return is_extended_delta0(f->left) && is_extended_delta0(f->right);
    case FormulaKind::Exists: {
      // bounded pattern: ex x:nat. (x < t & A) with x not free in t
      if (f->binder_sort != Sort::Nat) return false;
      const Formula& body = f->left;
      if (body->kind != FormulaKind::And) return false;
      const Formula& guard = body->left;
      if (guard->kind != FormulaKind::Lt) return false;
      if (guard->t0->kind != TermKind::Var || guard->t0->name != f->name)
        return false;
      if (free_vars(guard->t1).count(f->name)) return false;
      return is_extended_delta0(body->right);
    }
    case FormulaKind::Forall: {
      // bounded pattern: all x:nat. (x < t -> A)
      if (f->binder_sort != Sort::Nat) return false;
      const Formula& body = f->left;
      if (body->kind != FormulaKind::Imp) return false;
      const Formula& guard = body->left;
      if (guard->kind != FormulaKind::Lt) return false;
      if (guard->t0->kind != TermKind::Var || guard->t0->name != f->name)
        return false;
      if (free_vars(guard->t1).count(f->name)) return false;
      // a negation (A -> bot) is not a bounded universal
      if (body->right->kind == FormulaKind::Bot) return false;
      return is_extended_delta0(body->right);
    }
    default:
      return false;
  }
  (void)atomic_arith;
}

}  // namespace rigour
