#include "rigour/prover.hpp"

#include <algorithm>

namespace rigour {

// ================================================================ tableau

namespace {

enum class Shape { Literal, Alpha, Beta, Gamma, Delta };

Shape shape_of(const SignedFormula& sf) {
  switch (sf.f->kind) {
    case FormulaKind::And:
      return sf.sign ? Shape::Alpha : Shape::Beta;
    case FormulaKind::Or:
      return sf.sign ? Shape::Beta : Shape::Alpha;
    case FormulaKind::Imp:
      return sf.sign ? Shape::Beta : Shape::Alpha;
    case FormulaKind::Forall:
      return sf.sign ? Shape::Gamma : Shape::Delta;
    case FormulaKind::Exists:
      return sf.sign ? Shape::Delta : Shape::Gamma;
    case FormulaKind::Pred:
    case FormulaKind::Eq:
    case FormulaKind::Bot:
      return Shape::Literal;
    default:
      throw EvalError("tableau input outside the box-free FO fragment: " +
                      print(sf.f));
  }
}

// alpha components / beta branches share one table
std::pair<SignedFormula, SignedFormula> components(const SignedFormula& sf) {
  switch (sf.f->kind) {
    case FormulaKind::And:
      return {{sf.sign, sf.f->left}, {sf.sign, sf.f->right}};
    case FormulaKind::Or:
      return {{sf.sign, sf.f->left}, {sf.sign, sf.f->right}};
    case FormulaKind::Imp:
      return {{!sf.sign, sf.f->left}, {sf.sign, sf.f->right}};
    default:
      throw EvalError("no components");
  }
}

SignedFormula instance(const SignedFormula& sf, const Term& t) {
  if (sf.f->binder_sort != Sort::Obj)
    throw EvalError("tableau quantifier over a non-object sort");
  return {sf.sign, substitute(sf.f->left, sf.f->name, Sort::Obj, t)};
}

void collect_consts(const Term& t, std::vector<std::string>& out) {
  if (!t) return;
  if (t->kind == TermKind::ObjConst &&
      std::find(out.begin(), out.end(), t->name) == out.end())
    out.push_back(t->name);
  for (const Term& a : t->args) collect_consts(a, out);
}

void collect_consts(const Formula& f, std::vector<std::string>& out) {
  if (!f) return;
  collect_consts(f->t0, out);
  collect_consts(f->t1, out);
  for (const Term& a : f->args) collect_consts(a, out);
  collect_consts(f->left, out);
  collect_consts(f->right, out);
}

struct Entry {
  SignedFormula sf;
  bool expanded = false;
  std::set<std::string> used;  // gamma: constants already instantiated
};

struct Exhausted {
  std::string reason;
};
struct OpenBranch {
  std::vector<Entry> branch;
};

struct Search {
  const TableauBudget& budget;
  long steps = 0;

  void step() {
    if (++steps > budget.max_steps) throw Exhausted{"step budget exhausted"};
  }

  static std::vector<std::string> branch_consts(
      const std::vector<Entry>& branch) {
    std::vector<std::string> cs;
    for (const Entry& e : branch) collect_consts(e.sf.f, cs);
    return cs;
  }

  static bool on_branch(const std::vector<Entry>& branch,
                        const SignedFormula& sf) {
    for (const Entry& e : branch)
      if (e.sf.sign == sf.sign && alpha_eq(e.sf.f, sf.f)) return true;
    return false;
  }

  // closed subtree, or the first saturated open branch met
  std::variant<TabNode, OpenBranch> run(std::vector<Entry> branch,
                                        int fresh_used) {
    step();
    // closure
    for (int i = 0; i < int(branch.size()); ++i) {
      const SignedFormula& a = branch[size_t(i)].sf;
      if (a.sign && a.f->kind == FormulaKind::Bot)
        return TabNode{-1, nullptr, {}, i, i};
      if (!a.sign && a.f->kind == FormulaKind::Eq && term_eq(a.f->t0, a.f->t1))
        return TabNode{-1, nullptr, {}, i, i};
      for (int j = 0; j < i; ++j) {
        const SignedFormula& b = branch[size_t(j)].sf;
        if (a.sign != b.sign && alpha_eq(a.f, b.f))
          return TabNode{-1, nullptr, {}, j, i};
      }
    }
    // alpha and delta: non-branching, expand eagerly
    for (int i = 0; i < int(branch.size()); ++i) {
      Entry& e = branch[size_t(i)];
      if (e.expanded) continue;
      Shape s = shape_of(e.sf);
      if (s == Shape::Alpha) {
        e.expanded = true;
        auto [x, y] = components(e.sf);
        std::vector<Entry> next = branch;
        next.push_back(Entry{x});
        next.push_back(Entry{y});
        auto sub = run(std::move(next), fresh_used);
        if (std::holds_alternative<OpenBranch>(sub)) return sub;
        TabNode n{i, nullptr, {}, -1, -1};
        n.children.push_back(std::move(std::get<TabNode>(sub)));
        return n;
      }
      if (s == Shape::Delta) {
        if (fresh_used >= budget.max_fresh)
          throw Exhausted{"fresh-constant budget exhausted"};
        e.expanded = true;
        std::vector<std::string> cs = branch_consts(branch);
        int k = 0;
        while (std::find(cs.begin(), cs.end(),
                         "w" + std::to_string(k)) != cs.end())
          ++k;
        Term w = mk_obj_const("w" + std::to_string(k));
        std::vector<Entry> next = branch;
        next.push_back(Entry{instance(e.sf, w)});
        auto sub = run(std::move(next), fresh_used + 1);
        if (std::holds_alternative<OpenBranch>(sub)) return sub;
        TabNode n{i, w, {}, -1, -1};
        n.children.push_back(std::move(std::get<TabNode>(sub)));
        return n;
      }
    }
    // beta
    for (int i = 0; i < int(branch.size()); ++i) {
      Entry& e = branch[size_t(i)];
      if (e.expanded || shape_of(e.sf) != Shape::Beta) continue;
      e.expanded = true;
      auto [x, y] = components(e.sf);
      TabNode n{i, nullptr, {}, -1, -1};
      for (const SignedFormula& part : {x, y}) {
        std::vector<Entry> next = branch;
        next.push_back(Entry{part});
        auto sub = run(std::move(next), fresh_used);
        if (std::holds_alternative<OpenBranch>(sub)) return sub;
        n.children.push_back(std::move(std::get<TabNode>(sub)));
      }
      return n;
    }
    // gamma: instantiate over the branch constants (one seed if none yet)
    std::vector<std::string> cs = branch_consts(branch);
    bool seeded = false;
    if (cs.empty()) {
      cs.push_back("e0");
      seeded = true;
    }
    for (int i = 0; i < int(branch.size()); ++i) {
      Entry& e = branch[size_t(i)];
      if (shape_of(e.sf) != Shape::Gamma) continue;
      for (const std::string& c : cs) {
        if (e.used.count(c)) continue;
        e.used.insert(c);
        SignedFormula inst = instance(e.sf, mk_obj_const(c));
        if (on_branch(branch, inst)) continue;  // nothing new, no node
        std::vector<Entry> next = branch;
        next.push_back(Entry{inst});
        auto sub = run(std::move(next), fresh_used + (seeded ? 1 : 0));
        if (std::holds_alternative<OpenBranch>(sub)) return sub;
        TabNode n{i, mk_obj_const(c), {}, -1, -1};
        n.children.push_back(std::move(std::get<TabNode>(sub)));
        return n;
      }
    }
    return OpenBranch{std::move(branch)};  // saturated
  }
};

FiniteStructure branch_model(const Formula& phi,
                             const std::vector<Entry>& branch) {
  std::vector<std::string> cs = Search::branch_consts(branch);
  if (cs.empty()) cs.push_back("e0");
  FiniteStructure M;
  M.size = int(cs.size());
  M.sig = signature_of(phi);
  auto index = [&](const std::string& name) {
    return int(std::find(cs.begin(), cs.end(), name) - cs.begin());
  };
  for (const RelSym& r : M.sig.relations) {
    long cells = 1;
    for (int i = 0; i < r.arity; ++i) cells *= M.size;
    M.rel[r.name] = std::vector<bool>(size_t(cells), false);
  }
  for (const std::string& c : M.sig.constants) M.consts[c] = index(c);
  for (const Entry& e : branch) {
    if (!e.sf.sign || e.sf.f->kind != FormulaKind::Pred) continue;
    std::vector<int> tup;
    for (const Term& a : e.sf.f->args) tup.push_back(index(a->name));
    if (M.rel.count(e.sf.f->name))
      M.rel[e.sf.f->name][size_t(table_index(tup, M.size))] = true;
  }
  return M;
}

}  // namespace

namespace {

// the branch-term route failed; sweep small models before giving up
TabVerdict countermodel_fallback(const Formula& phi, std::string reason) {
  try {
    FOVerdict w = validity_fo_bounded(phi, 4, EnumBudget{200'000});
    if (std::holds_alternative<FOCountermodel>(w))
      return TabRefuted{std::move(std::get<FOCountermodel>(w).model)};
  } catch (const BudgetError&) {
  }
  return TabExhausted{std::move(reason)};
}

}  // namespace

TabVerdict tableau_prove(const Formula& phi, const TableauBudget& b) {
  if (!is_closed(phi) || !free_so_vars(phi).empty())
    throw EvalError("tableau_prove needs a closed first-order formula");
  Search s{b};
  try {
    auto out = s.run({Entry{SignedFormula{false, phi}}}, 0);
    if (std::holds_alternative<TabNode>(out))
      return TabProved{std::move(std::get<TabNode>(out))};
    FiniteStructure M = branch_model(phi, std::get<OpenBranch>(out).branch);
    if (eval_fo(M, phi))
      return countermodel_fallback(phi,
                                   "open branch did not verify as a model");
    return TabRefuted{std::move(M)};
  } catch (const Exhausted& e) {
    return countermodel_fallback(phi, e.reason);
  }
}

// ================================================= propositional squeeze

std::vector<std::string> prop_letters_of(const Formula& phi) {
  std::vector<std::string> out;
  std::vector<Formula> todo{phi};
  while (!todo.empty()) {
    Formula f = todo.back();
    todo.pop_back();
    if (!f) continue;
    if (f->kind == FormulaKind::Pred) {
      if (!f->args.empty())
        throw EvalError("not propositional: " + print(f));
      if (std::find(out.begin(), out.end(), f->name) == out.end())
        out.push_back(f->name);
      continue;
    }
    if (f->kind != FormulaKind::Bot && f->kind != FormulaKind::And &&
        f->kind != FormulaKind::Or && f->kind != FormulaKind::Imp)
      throw EvalError("not propositional: " + print(f));
    todo.push_back(f->left);
    todo.push_back(f->right);
  }
  return out;
}

bool eval_prop(const Formula& phi, const std::map<std::string, bool>& val) {
  switch (phi->kind) {
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Pred: {
      auto it = val.find(phi->name);
      if (!phi->args.empty() || it == val.end())
        throw EvalError("not propositional: " + print(phi));
      return it->second;
    }
    case FormulaKind::And:
      return eval_prop(phi->left, val) && eval_prop(phi->right, val);
    case FormulaKind::Or:
      return eval_prop(phi->left, val) || eval_prop(phi->right, val);
    case FormulaKind::Imp:
      return !eval_prop(phi->left, val) || eval_prop(phi->right, val);
    default:
      throw EvalError("not propositional: " + print(phi));
  }
}

namespace {

// Kalmar-style synthesis: one excluded-middle split per letter, and under a
// full valuation a structural derivation of each subformula or its negation
struct Kalmar {
  Proof p;
  std::map<std::string, bool> val;
  std::map<std::string, int> letter_line;  // current case hypothesis

  int emit(Formula f, std::string rule, std::vector<std::string> args = {}) {
    int l = int(p.lines.size()) + 1;
    p.lines.push_back(
        ProofLine{l, std::move(f), std::move(rule), std::move(args)});
    return l;
  }
  static std::string L(int l) { return std::to_string(l); }
  const Formula& fof(int l) { return p.lines[size_t(l - 1)].formula; }

  // p | ~p, via double negation
  int lem(const Formula& letter) {
    Formula disj = mk_or(letter, mk_not(letter));
    int h = emit(mk_not(disj), "assume");
    int h2 = emit(letter, "assume");
    int d1 = emit(disj, "OrI1", {L(h2)});
    int b1 = emit(mk_bot(), "ImpE", {L(h), L(d1)});
    int np = emit(mk_not(letter), "ImpI", {L(b1), L(h2)});
    int d2 = emit(disj, "OrI2", {L(np)});
    int b2 = emit(mk_bot(), "ImpE", {L(h), L(d2)});
    int nn = emit(mk_not(mk_not(disj)), "ImpI", {L(b2), L(h)});
    return emit(disj, "DNE", {L(nn)});
  }

  // proves f when it holds under val, ~f otherwise; returns the line
  int derive(const Formula& f) {
    bool v = eval_prop(f, val);
    switch (f->kind) {
      case FormulaKind::Pred:
        return letter_line.at(f->name);
      case FormulaKind::Bot: {
        int h = emit(mk_bot(), "assume");
        return emit(mk_not(mk_bot()), "ImpI", {L(h), L(h)});
      }
      case FormulaKind::And: {
        if (v) {
          int a = derive(f->left), b = derive(f->right);
          return emit(f, "AndI", {L(a), L(b)});
        }
        bool lv = eval_prop(f->left, val);
        int neg = derive(lv ? f->right : f->left);
        int h = emit(f, "assume");
        int part = emit(lv ? f->right : f->left, lv ? "AndE2" : "AndE1",
                        {L(h)});
        int bot = emit(mk_bot(), "ImpE", {L(neg), L(part)});
        return emit(mk_not(f), "ImpI", {L(bot), L(h)});
      }
      case FormulaKind::Or: {
        if (v) {
          bool lv = eval_prop(f->left, val);
          int part = derive(lv ? f->left : f->right);
          return emit(f, lv ? "OrI1" : "OrI2", {L(part)});
        }
        int na = derive(f->left), nb = derive(f->right);
        int h = emit(f, "assume");
        int h1 = emit(f->left, "assume");
        int b1 = emit(mk_bot(), "ImpE", {L(na), L(h1)});
        int h2 = emit(f->right, "assume");
        int b2 = emit(mk_bot(), "ImpE", {L(nb), L(h2)});
        int bot = emit(mk_bot(), "OrE",
                       {L(h), L(b1), L(h1), L(b2), L(h2)});
        return emit(mk_not(f), "ImpI", {L(bot), L(h)});
      }
      case FormulaKind::Imp: {
        if (v) {
          if (eval_prop(f->right, val)) {
            int b = derive(f->right);
            int h = emit(f->left, "assume");
            return emit(f, "ImpI", {L(b), L(h)});  // vacuous discharge
          }
          int na = derive(f->left);
          int h = emit(f->left, "assume");
          int bot = emit(mk_bot(), "ImpE", {L(na), L(h)});
          int b = emit(f->right, "BotE", {L(bot)});
          return emit(f, "ImpI", {L(b), L(h)});
        }
        int a = derive(f->left), nb = derive(f->right);
        int h = emit(f, "assume");
        int b = emit(f->right, "ImpE", {L(h), L(a)});
        int bot = emit(mk_bot(), "ImpE", {L(nb), L(b)});
        return emit(mk_not(f), "ImpI", {L(bot), L(h)});
      }
      default:
        throw EvalError("not propositional: " + print(f));
    }
  }

  int split(const Formula& phi, const std::vector<std::string>& letters,
            size_t k) {
    if (k == letters.size()) return derive(phi);
    Formula letter = mk_pred(letters[k]);
    int cases = lem(letter);
    int h1 = emit(letter, "assume");
    val[letters[k]] = true;
    letter_line[letters[k]] = h1;
    int l1 = split(phi, letters, k + 1);
    int h2 = emit(mk_not(letter), "assume");
    val[letters[k]] = false;
    letter_line[letters[k]] = h2;
    int l2 = split(phi, letters, k + 1);
    return emit(phi, "OrE", {L(cases), L(l1), L(h1), L(l2), L(h2)});
  }
};

}  // namespace

PropVerdict prop_complete(const Formula& phi) {
  std::vector<std::string> letters = prop_letters_of(phi);
  std::map<std::string, bool> val;
  for (const std::string& l : letters) val[l] = false;
  for (;;) {  // truth-table sweep
    if (!eval_prop(phi, val)) return FalsifyingValuation{val};
    size_t i = 0;
    for (; i < letters.size(); ++i) {
      if (!val[letters[i]]) {
        val[letters[i]] = true;
        break;
      }
      val[letters[i]] = false;
    }
    if (i == letters.size()) break;
  }
  Kalmar k;
  k.p.name = "taut";
  k.p.theory = "classical";
  k.p.goal = phi;
  k.split(phi, letters, 0);
  return k.p;
}

// =========================================================== G4ip / IPC

namespace {

bool atom_in(const std::vector<Formula>& ctx, const Formula& a) {
  for (const Formula& f : ctx)
    if (alpha_eq(f, a)) return true;
  return false;
}

// contraction-free backward search (Dyckhoff's LJT); every rule strictly
// reduces the multiset weight, so this terminates without loop checks
bool g4(std::vector<Formula> ctx, Formula goal) {
  for (;;) {
    if (goal->kind == FormulaKind::Imp) {
      ctx.push_back(goal->left);
      goal = goal->right;
      continue;
    }
    if (goal->kind == FormulaKind::And)
      return g4(ctx, goal->left) && g4(ctx, goal->right);

    bool changed = false;
    for (size_t i = 0; i < ctx.size() && !changed; ++i) {
      Formula f = ctx[i];
      if (f->kind == FormulaKind::Bot) return true;
      if (f->kind == FormulaKind::And) {
        ctx.erase(ctx.begin() + long(i));
        ctx.push_back(f->left);
        ctx.push_back(f->right);
        changed = true;
      } else if (f->kind == FormulaKind::Or) {
        ctx.erase(ctx.begin() + long(i));
        std::vector<Formula> right = ctx;
        ctx.push_back(f->left);
        right.push_back(f->right);
        return g4(ctx, goal) && g4(right, goal);
      } else if (f->kind == FormulaKind::Imp) {
        const Formula& ant = f->left;
        if (ant->kind == FormulaKind::Bot) {
          ctx.erase(ctx.begin() + long(i));
          changed = true;
        } else if (ant->kind == FormulaKind::And) {
          ctx[i] = mk_imp(ant->left, mk_imp(ant->right, f->right));
          changed = true;
        } else if (ant->kind == FormulaKind::Or) {
          Formula b = f->right;
          ctx[i] = mk_imp(ant->left, b);
          ctx.push_back(mk_imp(ant->right, b));
          changed = true;
        } else if (ant->kind == FormulaKind::Pred && atom_in(ctx, ant)) {
          ctx[i] = f->right;
          changed = true;
        }
      }
    }
    if (changed) continue;

    if (goal->kind == FormulaKind::Pred && atom_in(ctx, goal)) return true;
    if (goal->kind == FormulaKind::Or &&
        (g4(ctx, goal->left) || g4(ctx, goal->right)))
      return true;
    // implication-of-implication left premises
    for (size_t i = 0; i < ctx.size(); ++i) {
      Formula f = ctx[i];
      if (f->kind != FormulaKind::Imp ||
          f->left->kind != FormulaKind::Imp)
        continue;
      std::vector<Formula> rest = ctx;
      rest.erase(rest.begin() + long(i));
      std::vector<Formula> major = rest;
      major.push_back(mk_imp(f->left->right, f->right));
      std::vector<Formula> minor = rest;
      minor.push_back(f->right);
      if (g4(major, f->left) && g4(minor, goal)) return true;
    }
    return false;
  }
}

}  // namespace

IPCResult ipc_decide(const Formula& phi, int max_worlds) {
  std::vector<std::string> letters = prop_letters_of(phi);
  if (g4({}, phi)) return IPCResult{true, std::nullopt};
  IPCResult out{false, std::nullopt};
  for (const KripkeModel& K : enumerate_kripke(max_worlds, letters)) {
    for (int w = 0; w < K.worlds; ++w)
      if (!kripke_forces(K, w, phi)) {
        out.countermodel = KripkeCountermodel{K, w};
        return out;
      }
  }
  return out;
}

}  // namespace rigour
