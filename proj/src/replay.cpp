// Independent replay of closed-tableau certificates.  Deliberately shares no
// code with the search in prover.cpp: every branch is recomputed from the
// root formula and the recorded choices, and every closure is re-validated.
#include "rigour/prover.hpp"

namespace rigour {

namespace {

bool const_occurs(const Term& t, const std::string& name) {
  if (!t) return false;
  if (t->kind == TermKind::ObjConst && t->name == name) return true;
  for (const Term& a : t->args)
    if (const_occurs(a, name)) return true;
  return false;
}

bool const_occurs(const Formula& f, const std::string& name) {
  if (!f) return false;
  if (const_occurs(f->t0, name) || const_occurs(f->t1, name)) return true;
  for (const Term& a : f->args)
    if (const_occurs(a, name)) return true;
  return const_occurs(f->left, name) || const_occurs(f->right, name);
}

bool closes(const std::vector<SignedFormula>& branch, int a, int b) {
  if (a < 0 || b < 0 || a >= int(branch.size()) || b >= int(branch.size()))
    return false;
  const SignedFormula& x = branch[size_t(a)];
  const SignedFormula& y = branch[size_t(b)];
  if (a == b)
    return (x.sign && x.f->kind == FormulaKind::Bot) ||
           (!x.sign && x.f->kind == FormulaKind::Eq &&
            term_eq(x.f->t0, x.f->t1));
  return x.sign != y.sign && alpha_eq(x.f, y.f);
}

bool replay(std::vector<SignedFormula> branch, const TabNode& n) {
  if (n.clash_a >= 0 || n.clash_b >= 0)
    return n.children.empty() && closes(branch, n.clash_a, n.clash_b);
  if (n.expanded < 0 || n.expanded >= int(branch.size())) return false;
  const SignedFormula sf = branch[size_t(n.expanded)];
  bool sign = sf.sign;
  const Formula& f = sf.f;

  auto one_child = [&](SignedFormula add1, const SignedFormula* add2) {
    if (n.children.size() != 1) return false;
    branch.push_back(std::move(add1));
    if (add2) branch.push_back(*add2);
    return replay(std::move(branch), n.children[0]);
  };
  auto two_children = [&](SignedFormula l, SignedFormula r) {
    if (n.children.size() != 2) return false;
    std::vector<SignedFormula> right = branch;
    branch.push_back(std::move(l));
    right.push_back(std::move(r));
    return replay(std::move(branch), n.children[0]) &&
           replay(std::move(right), n.children[1]);
  };

  switch (f->kind) {
    case FormulaKind::And: {
      SignedFormula l{sign, f->left}, r{sign, f->right};
      return sign ? one_child(l, &r) : two_children(l, r);
    }
    case FormulaKind::Or: {
      SignedFormula l{sign, f->left}, r{sign, f->right};
      return sign ? two_children(l, r) : one_child(l, &r);
    }
    case FormulaKind::Imp: {
      SignedFormula l{!sign, f->left}, r{sign, f->right};
      return sign ? two_children(l, r) : one_child(l, &r);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f->binder_sort != Sort::Obj || !n.witness) return false;
      bool universal = f->kind == FormulaKind::Forall;
      bool gamma = sign == universal;  // asserted-all / denied-ex
      if (gamma) {
        // any ground object term may instantiate
        if (!free_vars(n.witness).empty() || sort_of(n.witness) != Sort::Obj)
          return false;
      } else {
        // eigenconstant: must be genuinely new to the branch
        if (n.witness->kind != TermKind::ObjConst) return false;
        for (const SignedFormula& b : branch)
          if (const_occurs(b.f, n.witness->name)) return false;
      }
      SignedFormula inst{sign,
                         substitute(f->left, f->name, Sort::Obj, n.witness)};
      return one_child(std::move(inst), nullptr);
    }
    default:
      return false;
  }
}

}  // namespace

bool replay_certificate(const Formula& phi, const TabNode& root) {
  return replay({SignedFormula{false, phi}}, root);
}

}  // namespace rigour
