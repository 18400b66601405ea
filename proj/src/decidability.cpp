// Decidability generator: for an extended-Delta0 formula phi, emit a
// kernel-checkable FIM0+CS script proving the universal closure of
// phi | ~phi.  Arithmetic atoms come from eq_dec/lt_dec, box atoms from CS1,
// connectives from case analysis, bounded quantifiers from Induction.

#include "rigour/kernel.hpp"

#include <stdexcept>

namespace rigour {

namespace {

void collect_names(const Formula& f, std::set<std::string>& out);

void collect_names(const Term& t, std::set<std::string>& out) {
  if (!t) return;
  if (!t->name.empty()) out.insert(t->name);
  if (t->kind == TermKind::Chi) {
    out.insert(t->chi_var);
    collect_names(t->chi_body, out);
  }
  for (const Term& a : t->args) collect_names(a, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (!f) return;
  if (!f->name.empty()) out.insert(f->name);
  collect_names(f->t0, out);
  collect_names(f->t1, out);
  for (const Term& a : f->args) collect_names(a, out);
  collect_names(f->left, out);
  collect_names(f->right, out);
}

struct DecGen {
  const Registry& reg;
  Proof p;
  std::set<std::string> used;
  std::map<std::string, int> axiom_lines;
  int next = 1;

  int emit(Formula f, std::string rule, std::vector<std::string> args) {
    p.lines.push_back(
        ProofLine{next, std::move(f), std::move(rule), std::move(args)});
    return next++;
  }
  const Formula& fof(int l) const { return p.lines[size_t(l) - 1].formula; }
  static std::string L(int l) { return std::to_string(l); }

  std::string fresh(const std::string& base) {
    std::string n = fresh_name(base, used);
    used.insert(n);
    return n;
  }

  int axiom(const std::string& thy, const std::string& name) {
    auto it = axiom_lines.find(name);
    if (it != axiom_lines.end()) return it->second;
    int l = emit(*reg.axiom(thy, name), "Axiom", {thy, name});
    axiom_lines[name] = l;
    return l;
  }

  int all_e(int l, const Term& t) {
    const Formula& f = fof(l);
    Formula inst = substitute(f->left, f->name, f->binder_sort, t);
    return emit(std::move(inst), "AllE", {L(l), print(t)});
  }

  int axiom_at(const std::string& name, std::initializer_list<Term> ts) {
    int l = axiom("HA", name);
    for (const Term& t : ts) l = all_e(l, t);
    return l;
  }

  // shared tail of both bounded-quantifier cases: given base : F[m:=0] and
  // allstep : all m. F -> F[m:=S m], cite Induction and land at F[m:=t]
  int by_induction(const std::string& m, const Formula& F, int base,
                   int allstep, const Term& t) {
    int conj =
        emit(mk_and(fof(base), fof(allstep)), "AndI", {L(base), L(allstep)});
    int li = emit(schema_induction(m, F), "Axiom",
                  {"HA", "Induction", m, print(F)});
    while (fof(li)->kind == FormulaKind::Forall)
      li = all_e(li, mk_var(fof(li)->name, fof(li)->binder_sort));
    int lall = emit(fof(li)->right, "ImpE", {L(li), L(conj)});
    return all_e(lall, t);
  }

  // each case returns the label of a line concluding f | ~f with no open
  // hypotheses of its own (nesting is safe: hypothesis sets are per line)
  int decide(const Formula& f) {
    Formula goal = mk_or(f, mk_not(f));
    switch (f->kind) {
      case FormulaKind::Eq:
        return axiom_at("eq_dec", {f->t0, f->t1});
      case FormulaKind::Lt:
        return axiom_at("lt_dec", {f->t0, f->t1});
      case FormulaKind::Bot: {
        int h = emit(mk_bot(), "assume", {});
        int ni = emit(mk_not(mk_bot()), "ImpI", {L(h), L(h)});
        return emit(goal, "OrI2", {L(ni)});
      }
      case FormulaKind::Box: {
        std::string n = fresh("n");
        int l = emit(schema_cs1(n, f->left), "Axiom",
                     {"FIM0+CS", "CS1", n, print(f->left)});
        // strip the universal closure, then hit the actual stage index
        while (fof(l)->kind == FormulaKind::Forall && fof(l)->name != n)
          l = all_e(l, mk_var(fof(l)->name, fof(l)->binder_sort));
        return all_e(l, f->t0);
      }
      case FormulaKind::And:
        return decide_and(f, goal);
      case FormulaKind::Or:
        return decide_or(f, goal);
      case FormulaKind::Imp:
        return decide_imp(f, goal);
      case FormulaKind::Exists:
        return decide_bounded_ex(f);
      case FormulaKind::Forall:
        return decide_bounded_all(f);
      default:
        throw std::invalid_argument(
            "derive_decidability: unsupported connective");
    }
  }

  int decide_and(const Formula& f, const Formula& goal) {
    const Formula &A = f->left, &B = f->right;
    int da = decide(A), db = decide(B);
    int hA = emit(A, "assume", {});
    int hB = emit(B, "assume", {});
    int c1 = emit(f, "AndI", {L(hA), L(hB)});
    int g1 = emit(goal, "OrI1", {L(c1)});
    int hnB = emit(mk_not(B), "assume", {});
    int hc = emit(f, "assume", {});
    int b = emit(B, "AndE2", {L(hc)});
    int bot = emit(mk_bot(), "ImpE", {L(hnB), L(b)});
    int nab = emit(mk_not(f), "ImpI", {L(bot), L(hc)});
    int g2 = emit(goal, "OrI2", {L(nab)});
    int gB = emit(goal, "OrE", {L(db), L(g1), L(hB), L(g2), L(hnB)});
    int hnA = emit(mk_not(A), "assume", {});
    int hc2 = emit(f, "assume", {});
    int a = emit(A, "AndE1", {L(hc2)});
    int bot2 = emit(mk_bot(), "ImpE", {L(hnA), L(a)});
    int nab2 = emit(mk_not(f), "ImpI", {L(bot2), L(hc2)});
    int g3 = emit(goal, "OrI2", {L(nab2)});
    return emit(goal, "OrE", {L(da), L(gB), L(hA), L(g3), L(hnA)});
  }

  int decide_or(const Formula& f, const Formula& goal) {
    const Formula &A = f->left, &B = f->right;
    int da = decide(A), db = decide(B);
    int hA = emit(A, "assume", {});
    int ab1 = emit(f, "OrI1", {L(hA)});
    int g1 = emit(goal, "OrI1", {L(ab1)});
    int hnA = emit(mk_not(A), "assume", {});
    int hB = emit(B, "assume", {});
    int ab2 = emit(f, "OrI2", {L(hB)});
    int g2 = emit(goal, "OrI1", {L(ab2)});
    int hnB = emit(mk_not(B), "assume", {});
    int hc = emit(f, "assume", {});
    int ha2 = emit(A, "assume", {});
    int bota = emit(mk_bot(), "ImpE", {L(hnA), L(ha2)});
    int hb2 = emit(B, "assume", {});
    int botb = emit(mk_bot(), "ImpE", {L(hnB), L(hb2)});
    int bot = emit(mk_bot(), "OrE", {L(hc), L(bota), L(ha2), L(botb), L(hb2)});
    int nab = emit(mk_not(f), "ImpI", {L(bot), L(hc)});
    int g3 = emit(goal, "OrI2", {L(nab)});
    int g4 = emit(goal, "OrE", {L(db), L(g2), L(hB), L(g3), L(hnB)});
    return emit(goal, "OrE", {L(da), L(g1), L(hA), L(g4), L(hnA)});
  }

  int decide_imp(const Formula& f, const Formula& goal) {
    const Formula &A = f->left, &B = f->right;
    int da = decide(A), db = decide(B);
    int hB = emit(B, "assume", {});
    int hA0 = emit(A, "assume", {});
    int i1 = emit(f, "ImpI", {L(hB), L(hA0)});
    int g1 = emit(goal, "OrI1", {L(i1)});
    int hnB = emit(mk_not(B), "assume", {});
    int hA = emit(A, "assume", {});
    int hi = emit(f, "assume", {});
    int bl = emit(B, "ImpE", {L(hi), L(hA)});
    int bot = emit(mk_bot(), "ImpE", {L(hnB), L(bl)});
    int nab = emit(mk_not(f), "ImpI", {L(bot), L(hi)});
    int g2 = emit(goal, "OrI2", {L(nab)});
    int hnA = emit(mk_not(A), "assume", {});
    int hA2 = emit(A, "assume", {});
    int bot2 = emit(mk_bot(), "ImpE", {L(hnA), L(hA2)});
    int bE = emit(B, "BotE", {L(bot2)});
    int i2 = emit(f, "ImpI", {L(bE), L(hA2)});
    int g3 = emit(goal, "OrI1", {L(i2)});
    int g4 = emit(goal, "OrE", {L(da), L(g2), L(hA), L(g3), L(hnA)});
    return emit(goal, "OrE", {L(db), L(g1), L(hB), L(g4), L(hnB)});
  }

  int decide_bounded_ex(const Formula& f) {
    const std::string& x = f->name;
    const Term& t = f->left->left->t1;  // the bound in  ex x. x < t & A
    const Formula& A = f->left->right;
    std::string m = fresh("m");
    Term vm = mk_var(m, Sort::Nat);
    auto ex_at = [&](const Term& bound) {
      return mk_exists(x, Sort::Nat,
                       mk_and(mk_lt(mk_var(x, Sort::Nat), bound), A));
    };
    Formula Ex0 = ex_at(mk_zero()), Exm = ex_at(vm), ExS = ex_at(mk_succ(vm));
    Formula F0 = mk_or(Ex0, mk_not(Ex0));
    Formula F = mk_or(Exm, mk_not(Exm));
    Formula FS = mk_or(ExS, mk_not(ExS));

    // base: nothing sits below 0
    int he = emit(Ex0, "assume", {});
    std::string x0 = fresh("x");
    Term v0 = mk_var(x0, Sort::Nat);
    int hw = emit(mk_and(mk_lt(v0, mk_zero()), substitute(A, x, Sort::Nat, v0)),
                  "assume", {});
    int lw = emit(mk_lt(v0, mk_zero()), "AndE1", {L(hw)});
    int lz = axiom_at("lt_zero", {v0});
    int bot0 = emit(mk_bot(), "ImpE", {L(lz), L(lw)});
    int boto = emit(mk_bot(), "ExE", {L(he), L(bot0), L(hw), x0});
    int nE0 = emit(mk_not(Ex0), "ImpI", {L(boto), L(he)});
    int base = emit(F0, "OrI2", {L(nE0)});

    // step: a hit below m persists; otherwise everything hangs on A at m
    int hIH = emit(F, "assume", {});
    int hHit = emit(Exm, "assume", {});
    std::string v = fresh("v");
    Term tv = mk_var(v, Sort::Nat);
    Formula Av = substitute(A, x, Sort::Nat, tv);
    int hv = emit(mk_and(mk_lt(tv, vm), Av), "assume", {});
    int l1 = emit(mk_lt(tv, vm), "AndE1", {L(hv)});
    int ls = axiom_at("lt_step", {tv, vm});
    int l2 = emit(mk_lt(tv, mk_succ(vm)), "ImpE", {L(ls), L(l1)});
    int l3 = emit(Av, "AndE2", {L(hv)});
    int l4 = emit(mk_and(mk_lt(tv, mk_succ(vm)), Av), "AndI", {L(l2), L(l3)});
    int l5 = emit(ExS, "ExI", {L(l4), print(tv)});
    int l6 = emit(ExS, "ExE", {L(hHit), L(l5), L(hv), v});
    int c1 = emit(FS, "OrI1", {L(l6)});

    int hNo = emit(mk_not(Exm), "assume", {});
    Formula Am = substitute(A, x, Sort::Nat, vm);
    int dA = decide(Am);
    int hAm = emit(Am, "assume", {});
    int lss = axiom_at("lt_succ_self", {vm});
    int l7 = emit(mk_and(mk_lt(vm, mk_succ(vm)), Am), "AndI", {L(lss), L(hAm)});
    int l8 = emit(ExS, "ExI", {L(l7), print(vm)});
    int c2a = emit(FS, "OrI1", {L(l8)});

    int hnAm = emit(mk_not(Am), "assume", {});
    int he2 = emit(ExS, "assume", {});
    std::string x1 = fresh("x");
    Term v1 = mk_var(x1, Sort::Nat);
    Formula A1 = substitute(A, x, Sort::Nat, v1);
    int hw2 = emit(mk_and(mk_lt(v1, mk_succ(vm)), A1), "assume", {});
    int g1 = emit(mk_lt(v1, mk_succ(vm)), "AndE1", {L(hw2)});
    int lsi = axiom_at("lt_succ_iff", {v1, vm});
    int lsi1 = emit(fof(lsi)->left, "AndE1", {L(lsi)});
    int disj = emit(fof(lsi1)->right, "ImpE", {L(lsi1), L(g1)});
    int h1 = emit(mk_lt(v1, vm), "assume", {});
    int a1 = emit(A1, "AndE2", {L(hw2)});
    int and1 = emit(mk_and(mk_lt(v1, vm), A1), "AndI", {L(h1), L(a1)});
    int ex1 = emit(Exm, "ExI", {L(and1), print(v1)});
    int bot1 = emit(mk_bot(), "ImpE", {L(hNo), L(ex1)});
    int h2 = emit(mk_eq(v1, vm), "assume", {});
    int a2 = emit(A1, "AndE2", {L(hw2)});
    int am = emit(Am, "ReplEq", {L(h2), L(a2)});
    int bot2 = emit(mk_bot(), "ImpE", {L(hnAm), L(am)});
    int botc = emit(mk_bot(), "OrE", {L(disj), L(bot1), L(h1), L(bot2), L(h2)});
    int bote2 = emit(mk_bot(), "ExE", {L(he2), L(botc), L(hw2), x1});
    int nExS = emit(mk_not(ExS), "ImpI", {L(bote2), L(he2)});
    int c2b = emit(FS, "OrI2", {L(nExS)});
    int c2 = emit(FS, "OrE", {L(dA), L(c2a), L(hAm), L(c2b), L(hnAm)});
    int cs = emit(FS, "OrE", {L(hIH), L(c1), L(hHit), L(c2), L(hNo)});
    int impstep = emit(mk_imp(F, FS), "ImpI", {L(cs), L(hIH)});
    int allstep = emit(mk_forall(m, Sort::Nat, mk_imp(F, FS)), "AllI",
                       {L(impstep), m});
    return by_induction(m, F, base, allstep, t);
  }

  int decide_bounded_all(const Formula& f) {
    const std::string& x = f->name;
    const Term& t = f->left->left->t1;  // the bound in  all x. x < t -> A
    const Formula& A = f->left->right;
    std::string m = fresh("m");
    Term vm = mk_var(m, Sort::Nat);
    auto all_at = [&](const Term& bound) {
      return mk_forall(x, Sort::Nat,
                       mk_imp(mk_lt(mk_var(x, Sort::Nat), bound), A));
    };
    Formula Al0 = all_at(mk_zero()), Alm = all_at(vm),
            AlS = all_at(mk_succ(vm));
    Formula F0 = mk_or(Al0, mk_not(Al0));
    Formula F = mk_or(Alm, mk_not(Alm));
    Formula FS = mk_or(AlS, mk_not(AlS));

    // base: the guard below 0 is vacuous
    std::string x0 = fresh("x");
    Term v0 = mk_var(x0, Sort::Nat);
    Formula A0 = substitute(A, x, Sort::Nat, v0);
    int hx = emit(mk_lt(v0, mk_zero()), "assume", {});
    int lz = axiom_at("lt_zero", {v0});
    int bot = emit(mk_bot(), "ImpE", {L(lz), L(hx)});
    int ba = emit(A0, "BotE", {L(bot)});
    int im = emit(mk_imp(mk_lt(v0, mk_zero()), A0), "ImpI", {L(ba), L(hx)});
    int al = emit(Al0, "AllI", {L(im), x0});
    int base = emit(F0, "OrI1", {L(al)});

    // step
    int hIH = emit(F, "assume", {});
    int hAll = emit(Alm, "assume", {});
    Formula Am = substitute(A, x, Sort::Nat, vm);
    int dA = decide(Am);
    int hAm = emit(Am, "assume", {});
    std::string x1 = fresh("x");
    Term v1 = mk_var(x1, Sort::Nat);
    Formula A1 = substitute(A, x, Sort::Nat, v1);
    int hx1 = emit(mk_lt(v1, mk_succ(vm)), "assume", {});
    int lsi = axiom_at("lt_succ_iff", {v1, vm});
    int lsi1 = emit(fof(lsi)->left, "AndE1", {L(lsi)});
    int disj = emit(fof(lsi1)->right, "ImpE", {L(lsi1), L(hx1)});
    int h1 = emit(mk_lt(v1, vm), "assume", {});
    int inst = all_e(hAll, v1);
    int a1 = emit(A1, "ImpE", {L(inst), L(h1)});
    int h2 = emit(mk_eq(v1, vm), "assume", {});
    int refl = emit(mk_eq(v1, v1), "Refl", {});
    int sym = emit(mk_eq(vm, v1), "ReplEq", {L(h2), L(refl)});
    int a2 = emit(A1, "ReplEq", {L(sym), L(hAm)});
    int ac = emit(A1, "OrE", {L(disj), L(a1), L(h1), L(a2), L(h2)});
    int imp1 = emit(mk_imp(mk_lt(v1, mk_succ(vm)), A1), "ImpI", {L(ac), L(hx1)});
    int al1 = emit(AlS, "AllI", {L(imp1), x1});
    int c1a = emit(FS, "OrI1", {L(al1)});

    int hnAm = emit(mk_not(Am), "assume", {});
    int he = emit(AlS, "assume", {});
    int lss = axiom_at("lt_succ_self", {vm});
    int inst2 = all_e(he, vm);
    int am2 = emit(Am, "ImpE", {L(inst2), L(lss)});
    int bot1 = emit(mk_bot(), "ImpE", {L(hnAm), L(am2)});
    int nAlS = emit(mk_not(AlS), "ImpI", {L(bot1), L(he)});
    int c1b = emit(FS, "OrI2", {L(nAlS)});
    int c1 = emit(FS, "OrE", {L(dA), L(c1a), L(hAm), L(c1b), L(hnAm)});

    int hNo = emit(mk_not(Alm), "assume", {});
    int he2 = emit(AlS, "assume", {});
    std::string x2 = fresh("x");
    Term v2 = mk_var(x2, Sort::Nat);
    Formula A2 = substitute(A, x, Sort::Nat, v2);
    int hx2 = emit(mk_lt(v2, vm), "assume", {});
    int ls = axiom_at("lt_step", {v2, vm});
    int lS = emit(mk_lt(v2, mk_succ(vm)), "ImpE", {L(ls), L(hx2)});
    int inst3 = all_e(he2, v2);
    int a3 = emit(A2, "ImpE", {L(inst3), L(lS)});
    int im2 = emit(mk_imp(mk_lt(v2, vm), A2), "ImpI", {L(a3), L(hx2)});
    int al2 = emit(Alm, "AllI", {L(im2), x2});
    int bot3 = emit(mk_bot(), "ImpE", {L(hNo), L(al2)});
    int nAlS2 = emit(mk_not(AlS), "ImpI", {L(bot3), L(he2)});
    int c2 = emit(FS, "OrI2", {L(nAlS2)});
    int cs = emit(FS, "OrE", {L(hIH), L(c1), L(hAll), L(c2), L(hNo)});
    int impstep = emit(mk_imp(F, FS), "ImpI", {L(cs), L(hIH)});
    int allstep = emit(mk_forall(m, Sort::Nat, mk_imp(F, FS)), "AllI",
                       {L(impstep), m});
    return by_induction(m, F, base, allstep, t);
  }
};

}  // namespace

Proof derive_decidability(const Formula& phi) {
  if (!is_extended_delta0(phi))
    throw std::invalid_argument(
        "derive_decidability: formula is not extended-Delta0");
  static const Registry registry = Registry::standard();
  DecGen g{registry};
  g.p.name = "decidability";
  g.p.theory = "FIM0+CS";
  g.p.vars = free_vars(phi);
  collect_names(phi, g.used);
  int l = g.decide(phi);
  // universal closure over the free variables, sorted by name
  for (auto it = g.p.vars.rbegin(); it != g.p.vars.rend(); ++it) {
    Formula cur = mk_forall(it->first, it->second, g.fof(l));
    l = g.emit(std::move(cur), "AllI", {DecGen::L(l), it->first});
  }
  g.p.goal = g.fof(l);
  return g.p;
}

}  // namespace rigour
