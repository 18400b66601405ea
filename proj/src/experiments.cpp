#include "rigour/experiments.hpp"

#include <algorithm>

namespace rigour {

// ============================================================ enumeration

namespace {

const char* kLetters[] = {"p", "q", "r", "s", "t5", "t6"};

// cap keeps a budgeted enumeration from materializing a whole deeper layer
std::vector<Formula> binary_combos(const std::vector<std::vector<Formula>>& by,
                                   int w, long cap) {
  std::vector<Formula> out;
  for (int i = 0; i < w; ++i)
    for (const Formula& a : by[size_t(i)])
      for (const Formula& b : by[size_t(w - 1 - i)]) {
        if (long(out.size()) >= cap) return out;
        out.push_back(mk_and(a, b));
        out.push_back(mk_or(a, b));
        out.push_back(mk_imp(a, b));
      }
  return out;
}

}  // namespace

std::vector<Formula> enumerate_prop(int letters, int depth, long budget,
                                    bool* exhausted) {
  if (letters > 6) throw EvalError("letter pool exceeded");
  std::vector<std::vector<Formula>> by;  // by connective count
  by.emplace_back();
  for (int i = 0; i < letters; ++i)
    by[0].push_back(mk_pred(kLetters[i]));
  by[0].push_back(mk_bot());
  std::vector<Formula> out;
  if (exhausted) *exhausted = false;
  for (int w = 0; w <= depth; ++w) {
    if (long(out.size()) >= budget) {
      if (exhausted) *exhausted = true;
      return out;
    }
    if (w > 0) by.push_back(binary_combos(by, w, budget - long(out.size())));
    for (const Formula& f : by[size_t(w)]) {
      if (long(out.size()) >= budget) {
        if (exhausted) *exhausted = true;
        return out;
      }
      out.push_back(f);
    }
  }
  return out;
}

namespace {

// closed monadic sentences: formulas over unary atoms P_i(x_j), built by
// connectives and quantifier nesting up to the rank; memoized by
// (bound variables available, rank left, operation count)
struct MonadicEnum {
  int preds;
  std::map<std::tuple<int, int, int>, std::vector<Formula>> memo;

  static std::string var(int d) { return "x" + std::to_string(d); }
  static std::string pred(int i) { return std::string(1, char('P' + i)); }

  const std::vector<Formula>& at(int d, int r, int w) {
    auto key = std::make_tuple(d, r, w);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Formula> out;
    if (w == 0) {
      for (int i = 0; i < preds; ++i)
        for (int j = 0; j < d; ++j)
          out.push_back(mk_pred(pred(i), {mk_var(var(j), Sort::Obj)}));
      out.push_back(mk_bot());
    } else {
      for (int i = 0; i < w; ++i)
        for (const Formula& a : at(d, r, i))
          for (const Formula& b : at(d, r, w - 1 - i)) {
            out.push_back(mk_and(a, b));
            out.push_back(mk_or(a, b));
            out.push_back(mk_imp(a, b));
          }
      if (r > 0)
        for (const Formula& body : at(d + 1, r - 1, w - 1)) {
          out.push_back(mk_forall(var(d), Sort::Obj, body));
          out.push_back(mk_exists(var(d), Sort::Obj, body));
        }
    }
    return memo[key] = std::move(out);
  }
};

}  // namespace

std::vector<Formula> enumerate_monadic(int preds, int qrank, int depth,
                                       long budget, bool* exhausted) {
  if (preds > 4) throw EvalError("predicate pool exceeded");
  MonadicEnum en{preds, {}};
  std::vector<Formula> out;
  if (exhausted) *exhausted = false;
  for (int w = 0; w <= depth; ++w)
    for (const Formula& f : en.at(0, qrank, w)) {
      if (long(out.size()) >= budget) {
        if (exhausted) *exhausted = true;
        return out;
      }
      out.push_back(f);
    }
  return out;
}

// =============================================================== deciders

namespace {

bool prop_tautology(const Formula& f) {
  std::vector<std::string> ls = prop_letters_of(f);
  std::map<std::string, bool> val;
  for (const std::string& l : ls) val[l] = false;
  for (;;) {
    if (!eval_prop(f, val)) return false;
    size_t i = 0;
    for (; i < ls.size(); ++i) {
      if (!val[ls[i]]) {
        val[ls[i]] = true;
        break;
      }
      val[ls[i]] = false;
    }
    if (i == ls.size()) return true;
  }
}

// Intuitionistic monadic prover in the style of Fitting's signed tableaux:
// classical rules except that expanding a denied implication or a denied
// universal discards every other denied formula on the branch.  Sound for
// intuitionistic validity; used only as the DNE-free negative control.
struct Crippled {
  long steps = 0;

  bool closed(const std::vector<SignedFormula>& br) {
    for (size_t i = 0; i < br.size(); ++i) {
      if (br[i].sign && br[i].f->kind == FormulaKind::Bot) return true;
      for (size_t j = 0; j < i; ++j)
        if (br[i].sign != br[j].sign && alpha_eq(br[i].f, br[j].f))
          return true;
    }
    return false;
  }

  static std::vector<SignedFormula> keep_asserted(
      const std::vector<SignedFormula>& br) {
    std::vector<SignedFormula> out;
    for (const SignedFormula& s : br)
      if (s.sign) out.push_back(s);
    return out;
  }

  bool prove(std::vector<SignedFormula> br, int fresh, int insts) {
    if (++steps > 200'000 || fresh > 6) return false;
    if (closed(br)) return true;
    for (size_t i = 0; i < br.size(); ++i) {
      SignedFormula s = br[i];
      auto rest = br;
      rest.erase(rest.begin() + long(i));
      auto with = [&](std::vector<SignedFormula> base,
                      std::initializer_list<SignedFormula> add) {
        for (const SignedFormula& x : add) base.push_back(x);
        return base;
      };
      switch (s.f->kind) {
        case FormulaKind::And:
          if (s.sign)
            return prove(with(rest, {{true, s.f->left}, {true, s.f->right}}),
                         fresh, insts);
          return prove(with(rest, {{false, s.f->left}}), fresh, insts) &&
                 prove(with(rest, {{false, s.f->right}}), fresh, insts);
        case FormulaKind::Or:
          if (!s.sign)
            return prove(with(rest, {{false, s.f->left}, {false, s.f->right}}),
                         fresh, insts);
          return prove(with(rest, {{true, s.f->left}}), fresh, insts) &&
                 prove(with(rest, {{true, s.f->right}}), fresh, insts);
        case FormulaKind::Imp:
          if (!s.sign)  // discard the other denials: the DNE-free move
            return prove(with(keep_asserted(rest),
                              {{true, s.f->left}, {false, s.f->right}}),
                         fresh + 0, insts);
          break;  // asserted implications branch; handled below
        case FormulaKind::Exists:
          if (s.sign) {
            Term w = mk_obj_const("w" + std::to_string(fresh));
            return prove(
                with(rest, {{true, substitute(s.f->left, s.f->name, Sort::Obj,
                                              w)}}),
                fresh + 1, insts);
          }
          break;
        case FormulaKind::Forall:
          if (!s.sign) {
            Term w = mk_obj_const("w" + std::to_string(fresh));
            return prove(
                with(keep_asserted(rest),
                     {{false,
                       substitute(s.f->left, s.f->name, Sort::Obj, w)}}),
                fresh + 1, insts);
          }
          break;
        default:
          break;
      }
    }
    // branching / instantiating moves, tried with backtracking
    if (insts > 24) return false;
    for (size_t i = 0; i < br.size(); ++i) {
      const SignedFormula& s = br[i];
      if (s.sign && s.f->kind == FormulaKind::Imp) {
        auto rest = br;
        rest.erase(rest.begin() + long(i));
        auto left = keep_asserted(rest);  // proving the antecedent is a goal
        left.push_back({false, s.f->left});
        auto right = rest;
        right.push_back({true, s.f->right});
        if (prove(left, fresh, insts + 1) && prove(right, fresh, insts + 1))
          return true;
      }
      if ((s.sign && s.f->kind == FormulaKind::Forall) ||
          (!s.sign && s.f->kind == FormulaKind::Exists)) {
        int n = std::max(fresh, 1);
        for (int k = 0; k < n; ++k) {
          Term c = mk_obj_const("w" + std::to_string(k));
          auto next = br;
          SignedFormula inst{s.sign,
                             substitute(s.f->left, s.f->name, Sort::Obj, c)};
          bool have = false;
          for (const SignedFormula& x : next)
            if (x.sign == inst.sign && alpha_eq(x.f, inst.f)) have = true;
          if (have) continue;
          next.push_back(inst);
          if (prove(next, std::max(fresh, 1), insts + 1)) return true;
        }
      }
    }
    return false;
  }
};

bool crippled_monadic(const Formula& phi) {
  Crippled c;
  return c.prove({SignedFormula{false, phi}}, 0, 0);
}

}  // namespace

SqueezeReport squeeze_run(const SqueezeConfig& cfg) {
  SqueezeReport rep;
  bool exhausted = false;
  std::vector<Formula> pool =
      cfg.fragment == SqueezeFragment::Propositional
          ? enumerate_prop(cfg.letters, cfg.depth, cfg.budget, &exhausted)
          : enumerate_monadic(cfg.preds, cfg.qrank, cfg.depth, cfg.budget,
                              &exhausted);
  rep.budget_exhausted = exhausted;
  int bound = cfg.model_bound > 0 ? cfg.model_bound
                                  : (1 << cfg.preds) * std::max(cfg.qrank, 1);
  for (const Formula& phi : pool) {
    ++rep.enumerated;
    bool narrow, wide;
    if (cfg.fragment == SqueezeFragment::Propositional) {
      wide = prop_tautology(phi);
      narrow = cfg.narrow_classical
                   ? std::holds_alternative<Proof>(prop_complete(phi))
                   : ipc_decide(phi, 0).provable;
    } else {
      wide = std::holds_alternative<ValidUpTo>(
          validity_fo_bounded(phi, bound));
      if (cfg.narrow_classical) {
        TabVerdict v = tableau_prove(phi);
        narrow = std::holds_alternative<TabProved>(v) &&
                 replay_certificate(phi, std::get<TabProved>(v).certificate);
      } else {
        narrow = crippled_monadic(phi);
      }
    }
    rep.narrow_accepts += narrow;
    rep.wide_accepts += wide;
    if (narrow != wide) rep.violations.push_back({phi, narrow, wide});
  }
  rep.both_directions_checked = true;  // both inclusions, same pool
  return rep;
}

// ============================================================ decidedness

namespace {

Signature joint_signature(const Formula& a, const Formula& b) {
  Signature sa = signature_of(a), sb = signature_of(b);
  for (const RelSym& r : sb.relations) {
    bool have = false;
    for (const RelSym& q : sa.relations)
      if (q.name == r.name) {
        if (q.arity != r.arity)
          throw EvalError("signature clash on " + r.name);
        have = true;
      }
    if (!have) sa.relations.push_back(r);
  }
  for (const std::string& c : sb.constants)
    if (std::find(sa.constants.begin(), sa.constants.end(), c) ==
        sa.constants.end())
      sa.constants.push_back(c);
  return sa;
}

bool standard_sat(const FiniteStructure& M, const Formula& tau2,
                  const SOBudget& b) {
  SOStructure S;
  S.base = M;
  S.mode = SOMode::Standard;
  return eval_so(S, tau2, b);
}

}  // namespace

DecidedVerdict decided_by(const DecidednessQuery& q) {
  Signature sig = joint_signature(q.tau2, q.phi1);
  std::optional<FiniteStructure> true_w, false_w;
  for (int n : q.sizes)
    for (const FiniteStructure& M :
         enumerate_structures(sig, n, false, q.enum_budget)) {
      if (!standard_sat(M, q.tau2, q.so_budget)) continue;
      if (eval_fo(M, q.phi1)) {
        if (!true_w) true_w = M;
      } else if (!false_w) {
        false_w = M;
      }
      if (true_w && false_w) return Mixed{*true_w, *false_w};
    }
  if (true_w) return DecidedTrue{};
  if (false_w) return DecidedFalse{};
  return NoModels{};
}

CategoricityReport categoricity_check(const Formula& tau2,
                                      const std::vector<int>& sizes,
                                      const SOBudget& sob,
                                      const EnumBudget& eb) {
  CategoricityReport rep;
  std::optional<FiniteStructure> first;
  for (int n : sizes)
    for (const FiniteStructure& M : enumerate_structures(
             joint_signature(tau2, tau2), n, false, eb)) {
      if (!standard_sat(M, tau2, sob)) continue;
      ++rep.models_found;
      if (!first) {
        first = M;
      } else if (!rep.counterexample &&
                 std::holds_alternative<NotIsomorphic>(iso_search(*first, M))) {
        rep.counterexample = {*first, M};
      }
    }
  rep.categorical = rep.models_found > 0 && !rep.counterexample;
  return rep;
}

// ======================================================= interpretability

namespace {

// candidate defining formulas over A's signature with the given free
// variables, one auxiliary quantified variable, sizes up to the bound
struct FormulaPool {
  const Signature& sig;
  std::map<std::pair<int, int>, std::vector<Formula>> memo;  // (#vars, size)

  static Term v(int i) { return mk_var("v" + std::to_string(i), Sort::Obj); }

  void tuples(int arity, int nvars, std::vector<std::vector<int>>& out,
              std::vector<int>& cur) {
    if (int(cur.size()) == arity) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < nvars; ++i) {
      cur.push_back(i);
      tuples(arity, nvars, out, cur);
      cur.pop_back();
    }
  }

  const std::vector<Formula>& at(int nvars, int size) {
    auto key = std::make_pair(nvars, size);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Formula> out;
    if (size == 1) {
      for (const RelSym& r : sig.relations) {
        std::vector<std::vector<int>> ts;
        std::vector<int> cur;
        tuples(r.arity, nvars, ts, cur);
        for (const std::vector<int>& t : ts) {
          std::vector<Term> args;
          for (int i : t) args.push_back(v(i));
          out.push_back(mk_pred(r.name, std::move(args)));
        }
      }
      for (int i = 0; i < nvars; ++i)
        for (int j = i + 1; j < nvars; ++j)
          out.push_back(mk_eq(v(i), v(j)));
      out.push_back(mk_bot());
    } else {
      for (const Formula& a : at(nvars, size - 1))
        out.push_back(mk_not(a));
      for (int i = 1; i < size - 1; ++i)
        for (const Formula& a : at(nvars, i))
          for (const Formula& b : at(nvars, size - 1 - i)) {
            out.push_back(mk_and(a, b));
            out.push_back(mk_or(a, b));
          }
      // one auxiliary bound variable (the last index)
      for (const Formula& body : at(nvars + 1, size - 1)) {
        std::string y = "v" + std::to_string(nvars);
        out.push_back(mk_forall(y, Sort::Obj, body));
        out.push_back(mk_exists(y, Sort::Obj, body));
      }
    }
    return memo[key] = std::move(out);
  }

  std::vector<Formula> up_to(int nvars, int bound) {
    std::vector<Formula> out;
    for (int s = 1; s <= bound; ++s) {
      const std::vector<Formula>& layer = at(nvars, s);
      out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
  }
};

std::vector<int> delta_domain(const FiniteStructure& A, const Formula& delta) {
  std::vector<int> dom;
  for (int e = 0; e < A.size; ++e)
    if (eval_fo(A, delta, {{"v0", e}})) dom.push_back(e);
  return dom;
}

FiniteStructure induced_structure(const FiniteStructure& A,
                                  const FiniteStructure& B,
                                  const std::vector<int>& dom,
                                  const std::map<std::string, Formula>& defs) {
  FiniteStructure M;
  M.size = int(dom.size());
  M.sig.relations = B.sig.relations;
  for (const RelSym& r : B.sig.relations) {
    long cells = 1;
    for (int i = 0; i < r.arity; ++i) cells *= M.size;
    std::vector<bool> table(static_cast<size_t>(cells));
    std::vector<int> tup(size_t(r.arity), 0);
    for (long idx = 0; idx < cells; ++idx) {
      Assignment asg;
      for (int i = 0; i < r.arity; ++i)
        asg["v" + std::to_string(i)] = dom[size_t(tup[size_t(i)])];
      table[size_t(idx)] = eval_fo(A, defs.at(r.name), asg);
      for (int d = 0; d < r.arity; ++d) {
        if (++tup[size_t(d)] < M.size) break;
        tup[size_t(d)] = 0;
      }
    }
    M.rel[r.name] = std::move(table);
  }
  return M;
}

}  // namespace

bool verify_interpretation(const FiniteStructure& A, const FiniteStructure& B,
                           const Interpretation& it) {
  if (!B.sig.constants.empty()) return false;
  std::vector<int> dom = delta_domain(A, it.delta);
  if (int(dom.size()) != B.size || int(it.iso.size()) != B.size) return false;
  for (const RelSym& r : B.sig.relations)
    if (!it.defs.count(r.name)) return false;
  FiniteStructure M = induced_structure(A, B, dom, it.defs);
  // it.iso must be a bijection carrying M onto B exactly
  std::vector<bool> hit(size_t(B.size), false);
  for (int x : it.iso) {
    if (x < 0 || x >= B.size || hit[size_t(x)]) return false;
    hit[size_t(x)] = true;
  }
  for (const RelSym& r : B.sig.relations) {
    std::vector<int> tup(size_t(r.arity), 0);
    long cells = long(M.rel.at(r.name).size());
    for (long idx = 0; idx < cells; ++idx) {
      std::vector<int> img;
      for (int i : tup) img.push_back(it.iso[size_t(i)]);
      if (M.rel.at(r.name)[size_t(idx)] !=
          B.rel.at(r.name)[size_t(table_index(img, B.size))])
        return false;
      for (int d = 0; d < r.arity; ++d) {
        if (++tup[size_t(d)] < M.size) break;
        tup[size_t(d)] = 0;
      }
    }
  }
  return true;
}

InterpVerdict interpretability_search(const FiniteStructure& A,
                                      const FiniteStructure& B, int size_bound,
                                      int dimension, const InterpBudget& b) {
  if (dimension != 1)
    throw EvalError("only one-dimensional interpretations are supported");
  if (!B.sig.constants.empty() || !A.sig.constants.empty())
    throw EvalError("interpretability search is for relational structures");
  FormulaPool pool{A.sig, {}};
  std::vector<std::vector<Formula>> pools;  // per relation symbol of B
  for (const RelSym& r : B.sig.relations)
    pools.push_back(pool.up_to(r.arity, size_bound));
  long candidates = 0;
  bool budget_hit = false;

  std::map<std::string, Formula> defs;
  std::optional<Interpretation> found;
  // depth-first over defining formulas; returns true to stop the search
  auto assign = [&](auto&& self, const Formula& delta,
                    const std::vector<int>& dom, size_t k) -> bool {
    if (k == B.sig.relations.size()) {
      if (++candidates > b.max_candidates) {
        budget_hit = true;
        return true;
      }
      FiniteStructure M = induced_structure(A, B, dom, defs);
      IsoVerdict iv = iso_search(M, B);
      if (std::holds_alternative<Isomorphism>(iv)) {
        Interpretation it{delta, defs, std::get<Isomorphism>(iv).map};
        if (verify_interpretation(A, B, it)) {
          found = std::move(it);
          return true;
        }
      }
      return false;
    }
    for (const Formula& cand : pools[k]) {
      defs[B.sig.relations[k].name] = cand;
      if (self(self, delta, dom, k + 1)) return true;
    }
    return false;
  };

  for (const Formula& delta : pool.up_to(1, size_bound)) {
    std::vector<int> dom = delta_domain(A, delta);
    if (int(dom.size()) != B.size) continue;
    if (assign(assign, delta, dom, 0)) {
      if (found) return *found;
      return InterpNotFound{false};  // budget ran out mid-search
    }
  }
  return InterpNotFound{true};
}

FundReport fund(const FiniteStructure& A, const FiniteStructure& B,
                int size_bound, const InterpBudget& b) {
  FundReport rep{FundVerdict::Inconclusive, {}, {}, false, false};
  InterpVerdict fwd = interpretability_search(A, B, size_bound, 1, b);
  if (std::holds_alternative<Interpretation>(fwd))
    rep.b_in_a = std::get<Interpretation>(fwd);
  else
    rep.forward_exhausted = std::get<InterpNotFound>(fwd).pool_exhausted;
  InterpVerdict bwd = interpretability_search(B, A, size_bound, 1, b);
  if (std::holds_alternative<Interpretation>(bwd))
    rep.a_in_b = std::get<Interpretation>(bwd);
  else
    rep.backward_exhausted = std::get<InterpNotFound>(bwd).pool_exhausted;

  if (rep.b_in_a && !rep.a_in_b && rep.backward_exhausted)
    rep.verdict = FundVerdict::Fund;
  else if (rep.a_in_b || (!rep.b_in_a && rep.forward_exhausted))
    rep.verdict = FundVerdict::NotFund;
  else
    rep.verdict = FundVerdict::Inconclusive;
  return rep;
}

// ====================================================== flagship assembly

KreiselianAssembly flagship_assembly() {
  ParseOptions o;
  o.context = {{"a", Sort::Seq}};
  Formula A = parse_formula("ex x:nat. a(x) = 0", o);

  KreiselianAssembly asm_;
  asm_.common_predicates = {
      "the idealized mathematician has evidence for A at stage n",
      "A is provable by the idealized mathematician",
      "a is a freely proceeding choice sequence",
  };
  asm_.gamma1 = {
      {"stage_persistence",
       parse_formula("all n:nat. all m:nat. (box[n] (ex x:nat. a(x) = 0)"
                     " & n < m) -> box[m] (ex x:nat. a(x) = 0)",
                     o),
       "constitutive: evidence, once obtained, persists through later "
       "stages (representative instance)"},
  };
  asm_.gamma2c = {
      {"charity", schema_cs2("n", A),
       "commonly accepted: whatever holds will eventually be evidenced "
       "(Kreisel's 'Christian charity', representative instance)"},
  };
  asm_.gamma2j = {};
  asm_.gamma2k = {
      {"cs1", schema_cs1("n", A),
       "the subject can always decide whether stage-n evidence is in hand"},
      {"cs2", schema_cs2("n", A),
       "truth forces eventual evidence, double-negatively"},
      {"cs3", schema_cs3("n", A), "evidenced statements are true"},
  };
  asm_.precise_theory = "FIM0";
  asm_.kreiselian_theory = "FIM0+CS";
  return asm_;
}

bool validate_assembly(const KreiselianAssembly& a, const Registry& reg) {
  if (!reg.has(a.precise_theory) || !reg.has(a.kreiselian_theory)) return false;
  if (!reg.extends_or_is(a.precise_theory, a.kreiselian_theory)) return false;
  for (const char* s : {"CS1", "CS2", "CS3"})
    if (!reg.schema_available(a.kreiselian_theory, s)) return false;
  for (const auto* grp : {&a.gamma1, &a.gamma2c, &a.gamma2j, &a.gamma2k})
    for (const ProvenancedFormula& pf : *grp)
      if (!pf.f) return false;
  return true;
}

}  // namespace rigour
