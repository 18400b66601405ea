#include "rigour/semantics.hpp"

#include <algorithm>
#include <sstream>

namespace rigour {

namespace {

long pow_long(int base, int exp) {
  long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > 100'000'000L) throw BudgetError("table size overflow");
    out *= base;
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace

long table_index(const std::vector<int>& tuple, int size) {
  long idx = 0, mul = 1;
  for (int v : tuple) {
    idx += v * mul;
    mul *= size;
  }
  return idx;
}

// ------------------------------------------------------------- signatures

namespace {

void scan_terms(const Term& t, std::set<std::string>& consts) {
  if (!t) return;
  if (t->kind == TermKind::ObjConst) consts.insert(t->name);
  for (const Term& a : t->args) scan_terms(a, consts);
}

void scan(const Formula& f, std::map<std::string, int>& preds,
          std::set<std::string>& consts) {
  if (!f) return;
  if (f->kind == FormulaKind::Pred) {
    auto [it, fresh] = preds.emplace(f->name, int(f->args.size()));
    if (!fresh && it->second != int(f->args.size()))
      throw EvalError("predicate " + f->name + " used at two arities");
  }
  scan_terms(f->t0, consts);
  scan_terms(f->t1, consts);
  for (const Term& a : f->args) scan_terms(a, consts);
  scan(f->left, preds, consts);
  scan(f->right, preds, consts);
}

}  // namespace

Signature signature_of(const Formula& f) {
  std::map<std::string, int> preds;
  std::set<std::string> consts;
  scan(f, preds, consts);
  Signature sig;
  for (auto& [n, a] : preds) sig.relations.push_back(RelSym{n, a});
  sig.constants.assign(consts.begin(), consts.end());
  return sig;
}

void FiniteStructure::validate() const {
  if (size < 1) throw EvalError("empty domain");
  for (const RelSym& r : sig.relations) {
    auto it = rel.find(r.name);
    if (it == rel.end() || long(it->second.size()) != pow_long(size, r.arity))
      throw EvalError("relation table " + r.name + " is not total");
  }
  for (const std::string& c : sig.constants) {
    auto it = consts.find(c);
    if (it == consts.end() || it->second < 0 || it->second >= size)
      throw EvalError("constant " + c + " is not interpreted in the domain");
  }
}

// -------------------------------------------------------------- text form

FiniteStructure parse_structure(const std::string& text) {
  FiniteStructure M;
  std::map<std::string, int> arities;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto ws = split_ws(line);
    if (ws.empty() || ws[0][0] == '#') continue;
    auto bad = [&](const std::string& msg) -> void {
      throw EvalError("structure line " + std::to_string(lineno) + ": " + msg);
    };
    if (ws[0] == "size") {
      if (ws.size() != 2) bad("size N");
      M.size = std::stoi(ws[1]);
    } else if (ws[0] == "rel") {
      if (ws.size() != 3) bad("rel NAME ARITY");
      int ar = std::stoi(ws[2]);
      M.sig.relations.push_back(RelSym{ws[1], ar});
      arities[ws[1]] = ar;
      M.rel[ws[1]] = std::vector<bool>(pow_long(M.size, ar), false);
    } else if (ws[0] == "const") {
      if (ws.size() != 3) bad("const NAME ELEM");
      M.sig.constants.push_back(ws[1]);
      M.consts[ws[1]] = std::stoi(ws[2]);
    } else if (arities.count(ws[0])) {
      if (int(ws.size()) != arities[ws[0]] + 1) bad("tuple arity mismatch");
      std::vector<int> tup;
      for (size_t i = 1; i < ws.size(); ++i) tup.push_back(std::stoi(ws[i]));
      for (int v : tup)
        if (v < 0 || v >= M.size) bad("element out of range");
      M.rel[ws[0]][table_index(tup, M.size)] = true;
    } else {
      bad("unknown directive " + ws[0]);
    }
  }
  M.validate();
  return M;
}

std::string print_structure(const FiniteStructure& M) {
  std::ostringstream os;
  os << "size " << M.size << "\n";
  for (const RelSym& r : M.sig.relations) {
    os << "rel " << r.name << " " << r.arity << "\n";
    const std::vector<bool>& t = M.rel.at(r.name);
    std::vector<int> tup(size_t(r.arity), 0);
    for (long i = 0; i < long(t.size()); ++i) {
      if (t[size_t(i)]) {
        os << r.name;
        for (int v : tup) os << " " << v;
        os << "\n";
      }
      for (int d = 0; d < r.arity; ++d) {
        if (++tup[size_t(d)] < M.size) break;
        tup[size_t(d)] = 0;
      }
    }
  }
  for (const std::string& c : M.sig.constants)
    os << "const " << c << " " << M.consts.at(c) << "\n";
  return os.str();
}

// -------------------------------------------------------------- evaluation

namespace {

struct SORel {
  int arity;
  const std::vector<bool>* table;
};

struct Env {
  const FiniteStructure& M;
  const SOStructure* S = nullptr;
  const SOBudget* budget = nullptr;
  std::map<std::string, int> var;
  std::map<std::string, SORel> so;
};

int term_val(Env& e, const Term& t) {
  if (t->kind == TermKind::Var) {
    auto it = e.var.find(t->name);
    if (it == e.var.end())
      throw EvalError("unassigned variable " + t->name);
    return it->second;
  }
  if (t->kind == TermKind::ObjConst) {
    auto it = e.M.consts.find(t->name);
    if (it == e.M.consts.end())
      throw EvalError("uninterpreted constant " + t->name);
    return it->second;
  }
  throw EvalError("term '" + print(t) +
                  "' has no finite-structure interpretation");
}

bool eval(Env& e, const Formula& f);

bool eval_so_quant(Env& e, const Formula& f) {
  bool exists = f->kind == FormulaKind::SOExists;
  int n = e.M.size, arity = f->so_arity;
  auto try_table = [&](const std::vector<bool>& table) {
    SORel saved{0, nullptr};
    auto it = e.so.find(f->name);
    bool had = it != e.so.end();
    if (had) saved = it->second;
    e.so[f->name] = SORel{arity, &table};
    bool r = eval(e, f->left);
    if (had)
      e.so[f->name] = saved;
    else
      e.so.erase(f->name);
    return r;
  };
  if (e.S->mode == SOMode::Henkin) {
    auto fam = e.S->family.find(arity);
    if (fam == e.S->family.end())
      throw EvalError("Henkin family has no sets of arity " +
                      std::to_string(arity));
    for (const std::vector<bool>& table : fam->second)
      if (try_table(table) == exists) return exists;
    return !exists;
  }
  const SOBudget& b = *e.budget;
  if (n > b.max_size)
    throw BudgetError("standard SO evaluation: domain too large");
  if (arity > b.max_arity)
    throw BudgetError("standard SO evaluation: arity too large");
  long cells = pow_long(n, arity);
  if (cells > 60 || (1L << cells) > b.max_tables)
    throw BudgetError("standard SO evaluation: powerset too large");
  std::vector<bool> table(size_t(cells), false);
  for (long mask = 0; mask < (1L << cells); ++mask) {
    for (long i = 0; i < cells; ++i) table[size_t(i)] = (mask >> i) & 1;
    if (try_table(table) == exists) return exists;
  }
  return !exists;
}

bool eval(Env& e, const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Pred: {
      auto it = e.M.rel.find(f->name);
      if (it == e.M.rel.end())
        throw EvalError("uninterpreted predicate " + f->name);
      std::vector<int> tup;
      for (const Term& a : f->args) tup.push_back(term_val(e, a));
      return it->second.at(size_t(table_index(tup, e.M.size)));
    }
    case FormulaKind::Eq:
      return term_val(e, f->t0) == term_val(e, f->t1);
    case FormulaKind::And:
      return eval(e, f->left) && eval(e, f->right);
    case FormulaKind::Or:
      return eval(e, f->left) || eval(e, f->right);
    case FormulaKind::Imp:
      return !eval(e, f->left) || eval(e, f->right);
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f->binder_sort != Sort::Obj)
        throw EvalError("quantifier over a non-object sort");
      bool exists = f->kind == FormulaKind::Exists;
      auto it = e.var.find(f->name);
      bool had = it != e.var.end();
      int saved = had ? it->second : 0;
      bool out = !exists;
      for (int v = 0; v < e.M.size; ++v) {
        e.var[f->name] = v;
        if (eval(e, f->left) == exists) {
          out = exists;
          break;
        }
      }
      if (had)
        e.var[f->name] = saved;
      else
        e.var.erase(f->name);
      return out;
    }
    case FormulaKind::SOForall:
    case FormulaKind::SOExists:
      if (!e.S)
        throw EvalError("second-order quantifier in first-order evaluation");
      return eval_so_quant(e, f);
    case FormulaKind::SOAtom: {
      auto it = e.so.find(f->name);
      if (it == e.so.end())
        throw EvalError("unbound relation variable " + f->name);
      if (int(f->args.size()) != it->second.arity)
        throw EvalError("relation variable " + f->name + " arity mismatch");
      std::vector<int> tup;
      for (const Term& a : f->args) tup.push_back(term_val(e, a));
      return it->second.table->at(size_t(table_index(tup, e.M.size)));
    }
    default:
      throw EvalError("formula '" + print(f) +
                      "' is outside the evaluable fragment");
  }
}

}  // namespace

bool eval_fo(const FiniteStructure& M, const Formula& phi,
             const Assignment& asg) {
  Env e{M};
  e.var = asg;
  return eval(e, phi);
}

bool eval_so(const SOStructure& S, const Formula& phi, const SOBudget& b) {
  Env e{S.base};
  e.S = &S;
  e.budget = &b;
  return eval(e, phi);
}

bool audit_comprehension(SOStructure& S, const std::vector<Formula>& matrices,
                         const std::string& var) {
  bool ok = true;
  if (S.mode == SOMode::Henkin) {
    auto fam = S.family.find(1);
    for (const Formula& m : matrices) {
      // parameters: every free object variable other than `var`
      std::vector<std::string> params;
      for (auto& [n, s] : free_vars(m))
        if (n != var && s == Sort::Obj) params.push_back(n);
      long combos = pow_long(S.base.size, int(params.size()));
      for (long c = 0; c < combos && ok; ++c) {
        Assignment asg;
        long rest = c;
        for (const std::string& p : params) {
          asg[p] = int(rest % S.base.size);
          rest /= S.base.size;
        }
        std::vector<bool> defined(size_t(S.base.size), false);
        for (int v = 0; v < S.base.size; ++v) {
          asg[var] = v;
          defined[size_t(v)] = eval_fo(S.base, m, asg);
        }
        bool found = fam != S.family.end() &&
                     std::find(fam->second.begin(), fam->second.end(),
                               defined) != fam->second.end();
        if (!found) ok = false;
      }
      if (!ok) break;
    }
  }
  S.comprehension_audited = ok;
  return ok;
}

// -------------------------------------------------------------- structures

namespace {

// streams every structure of the signature at the given size, cheapest
// tables varying fastest; throws BudgetError when the cap runs out
template <class Fn>
bool for_each_structure(const Signature& sig, int size, long& budget_left,
                        Fn&& fn) {
  FiniteStructure M;
  M.size = size;
  M.sig = sig;
  for (const RelSym& r : sig.relations)
    M.rel[r.name] = std::vector<bool>(size_t(pow_long(size, r.arity)), false);
  for (const std::string& c : sig.constants) M.consts[c] = 0;
  for (;;) {
    if (--budget_left < 0)
      throw BudgetError("structure enumeration budget exhausted");
    if (!fn(M)) return false;
    bool carried = true;
    for (const std::string& c : sig.constants) {
      if (++M.consts[c] < size) {
        carried = false;
        break;
      }
      M.consts[c] = 0;
    }
    for (const RelSym& r : sig.relations) {
      if (!carried) break;
      std::vector<bool>& t = M.rel[r.name];
      for (size_t i = 0; i < t.size(); ++i) {
        if (!t[i]) {
          t[i] = true;
          carried = false;
          break;
        }
        t[i] = false;
      }
    }
    if (carried) return true;
  }
}

}  // namespace

FOVerdict validity_fo_bounded(const Formula& phi, int max_size,
                              const EnumBudget& b) {
  if (!is_closed(phi)) throw EvalError("validity check needs a closed formula");
  Signature sig = signature_of(phi);
  long budget_left = b.max_structures;
  long checked = 0;
  for (int n = 1; n <= max_size; ++n) {
    FiniteStructure counter;
    bool complete = for_each_structure(sig, n, budget_left,
                                       [&](const FiniteStructure& M) {
                                         ++checked;
                                         if (!eval_fo(M, phi)) {
                                           counter = M;
                                           return false;
                                         }
                                         return true;
                                       });
    if (!complete) return FOCountermodel{counter};
  }
  return ValidUpTo{max_size, checked};
}

std::vector<FiniteStructure> enumerate_structures(const Signature& sig,
                                                  int size, bool up_to_iso,
                                                  const EnumBudget& b) {
  std::vector<FiniteStructure> out;
  long budget_left = b.max_structures;
  for_each_structure(sig, size, budget_left, [&](const FiniteStructure& M) {
    if (up_to_iso)
      for (const FiniteStructure& seen : out)
        if (std::holds_alternative<Isomorphism>(iso_search(seen, M)))
          return true;
    out.push_back(M);
    return true;
  });
  return out;
}

// ------------------------------------------------------------ isomorphism

IsoVerdict iso_search(const FiniteStructure& A, const FiniteStructure& B) {
  if (A.size != B.size) return NotIsomorphic{};
  auto key = [](const Signature& s) {
    std::vector<std::pair<std::string, int>> rels;
    for (const RelSym& r : s.relations) rels.emplace_back(r.name, r.arity);
    std::sort(rels.begin(), rels.end());
    std::vector<std::string> cs = s.constants;
    std::sort(cs.begin(), cs.end());
    return std::make_pair(rels, cs);
  };
  if (key(A.sig) != key(B.sig)) return NotIsomorphic{};

  std::vector<int> perm(size_t(A.size));
  for (int i = 0; i < A.size; ++i) perm[size_t(i)] = i;
  do {
    bool ok = true;
    for (const std::string& c : A.sig.constants)
      if (perm[size_t(A.consts.at(c))] != B.consts.at(c)) {
        ok = false;
        break;
      }
    for (const RelSym& r : A.sig.relations) {
      if (!ok) break;
      const std::vector<bool>& ta = A.rel.at(r.name);
      const std::vector<bool>& tb = B.rel.at(r.name);
      std::vector<int> tup(size_t(r.arity), 0), img(size_t(r.arity), 0);
      for (long i = 0; ok && i < long(ta.size()); ++i) {
        for (int d = 0; d < r.arity; ++d)
          img[size_t(d)] = perm[size_t(tup[size_t(d)])];
        if (ta[size_t(i)] != tb[size_t(table_index(img, B.size))]) ok = false;
        for (int d = 0; d < r.arity; ++d) {
          if (++tup[size_t(d)] < A.size) break;
          tup[size_t(d)] = 0;
        }
      }
    }
    if (ok) return Isomorphism{perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return NotIsomorphic{};
}

// ----------------------------------------------------------------- Kripke

KripkeModel make_kripke(int worlds,
                        const std::vector<std::pair<int, int>>& below,
                        std::map<std::string, std::vector<bool>> val) {
  if (worlds < 1) throw EvalError("a Kripke model needs a world");
  KripkeModel K;
  K.worlds = worlds;
  K.le.assign(size_t(worlds), std::vector<bool>(size_t(worlds), false));
  for (int w = 0; w < worlds; ++w) K.le[size_t(w)][size_t(w)] = true;
  for (auto& [a, b] : below) {
    if (a < 0 || b < 0 || a >= worlds || b >= worlds)
      throw EvalError("order pair out of range");
    K.le[size_t(a)][size_t(b)] = true;
  }
  for (int m = 0; m < worlds; ++m)  // transitive closure
    for (int a = 0; a < worlds; ++a)
      for (int c = 0; c < worlds; ++c)
        if (K.le[size_t(a)][size_t(m)] && K.le[size_t(m)][size_t(c)])
          K.le[size_t(a)][size_t(c)] = true;
  for (int a = 0; a < worlds; ++a)
    for (int c = 0; c < worlds; ++c)
      if (a != c && K.le[size_t(a)][size_t(c)] && K.le[size_t(c)][size_t(a)])
        throw EvalError("order is not antisymmetric");
  for (auto& [p, v] : val) {
    if (int(v.size()) != worlds)
      throw EvalError("valuation of " + p + " does not cover the worlds");
    for (int a = 0; a < worlds; ++a)
      for (int c = 0; c < worlds; ++c)
        if (K.le[size_t(a)][size_t(c)] && v[size_t(a)] && !v[size_t(c)])
          throw EvalError("valuation of " + p + " violates heredity");
  }
  K.val = std::move(val);
  return K;
}

bool kripke_forces(const KripkeModel& K, int w, const Formula& phi) {
  if (w < 0 || w >= K.worlds) throw EvalError("unknown world");
  switch (phi->kind) {
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Pred: {
      if (!phi->args.empty())
        throw EvalError("Kripke forcing is propositional only");
      auto it = K.val.find(phi->name);
      if (it == K.val.end()) throw EvalError("unvalued letter " + phi->name);
      return it->second[size_t(w)];
    }
    case FormulaKind::And:
      return kripke_forces(K, w, phi->left) && kripke_forces(K, w, phi->right);
    case FormulaKind::Or:
      return kripke_forces(K, w, phi->left) || kripke_forces(K, w, phi->right);
    case FormulaKind::Imp:
      for (int v = 0; v < K.worlds; ++v)
        if (K.le[size_t(w)][size_t(v)] && kripke_forces(K, v, phi->left) &&
            !kripke_forces(K, v, phi->right))
          return false;
      return true;
    default:
      throw EvalError("Kripke forcing is propositional only");
  }
}

std::vector<KripkeModel> enumerate_kripke(
    int max_worlds, const std::vector<std::string>& letters) {
  std::vector<KripkeModel> out;
  for (int w = 1; w <= max_worlds; ++w) {
    // off-diagonal pairs, then filter to genuine partial orders
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b)
        if (a != b) pairs.emplace_back(a, b);
    for (long mask = 0; mask < (1L << pairs.size()); ++mask) {
      std::vector<std::pair<int, int>> below;
      for (size_t i = 0; i < pairs.size(); ++i)
        if ((mask >> i) & 1) below.push_back(pairs[i]);
      KripkeModel frame;
      try {
        frame = make_kripke(w, below, {});
      } catch (const EvalError&) {
        continue;
      }
      // only one order mask per closed order relation
      bool closed = true;
      for (size_t i = 0; i < pairs.size() && closed; ++i)
        if (frame.le[size_t(pairs[i].first)][size_t(pairs[i].second)] !=
            bool((mask >> i) & 1))
          closed = false;
      if (!closed) continue;
      // monotone subsets per letter
      std::vector<std::vector<bool>> monotone;
      for (long s = 0; s < (1L << w); ++s) {
        std::vector<bool> v(static_cast<size_t>(w));
        for (int a = 0; a < w; ++a) v[size_t(a)] = (s >> a) & 1;
        bool ok = true;
        for (int a = 0; a < w && ok; ++a)
          for (int c = 0; c < w && ok; ++c)
            if (frame.le[size_t(a)][size_t(c)] && v[size_t(a)] &&
                !v[size_t(c)])
              ok = false;
        if (ok) monotone.push_back(v);
      }
      std::vector<size_t> choice(letters.size(), 0);
      for (;;) {
        KripkeModel K = frame;
        for (size_t i = 0; i < letters.size(); ++i)
          K.val[letters[i]] = monotone[choice[i]];
        out.push_back(std::move(K));
        size_t d = 0;
        for (; d < choice.size(); ++d) {
          if (++choice[d] < monotone.size()) break;
          choice[d] = 0;
        }
        if (d == choice.size()) break;
      }
    }
  }
  return out;
}

KripkeModel parse_kripke(const std::string& text) {
  int worlds = 0;
  std::vector<std::pair<int, int>> below;
  std::map<std::string, std::vector<int>> raw;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto ws = split_ws(line);
    if (ws.empty() || ws[0][0] == '#') continue;
    auto bad = [&](const std::string& msg) -> void {
      throw EvalError("kripke line " + std::to_string(lineno) + ": " + msg);
    };
    if (ws[0] == "worlds") {
      if (ws.size() != 2) bad("worlds N");
      worlds = std::stoi(ws[1]);
    } else if (ws[0] == "le") {
      if (ws.size() != 3) bad("le U V");
      below.emplace_back(std::stoi(ws[1]), std::stoi(ws[2]));
    } else if (ws[0] == "val") {
      if (ws.size() < 2) bad("val P w1 ... wk");
      std::vector<int>& v = raw[ws[1]];
      for (size_t i = 2; i < ws.size(); ++i) v.push_back(std::stoi(ws[i]));
    } else {
      bad("unknown directive " + ws[0]);
    }
  }
  std::map<std::string, std::vector<bool>> val;
  for (auto& [p, worlds_true] : raw) {
    std::vector<bool> v(size_t(worlds), false);
    for (int w : worlds_true) {
      if (w < 0 || w >= worlds) throw EvalError("val world out of range");
      v[size_t(w)] = true;
    }
    val[p] = v;
  }
  return make_kripke(worlds, below, std::move(val));
}

std::string print_kripke(const KripkeModel& K) {
  std::ostringstream os;
  os << "worlds " << K.worlds << "\n";
  for (int a = 0; a < K.worlds; ++a)
    for (int b = 0; b < K.worlds; ++b)
      if (a != b && K.le[size_t(a)][size_t(b)]) os << "le " << a << " " << b << "\n";
  for (auto& [p, v] : K.val) {
    os << "val " << p;
    for (int w = 0; w < K.worlds; ++w)
      if (v[size_t(w)]) os << " " << w;
    os << "\n";
  }
  return os.str();
}

}  // namespace rigour
