// End-to-end acceptance run: one pass/fail line per criterion.
#include "rigour/derivations.hpp"
#include "rigour/experiments.hpp"

#include <cctype>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace rigour;
using Clock = std::chrono::steady_clock;

namespace {

const Registry& reg() {
  static Registry r = Registry::standard();
  return r;
}

int failures = 0;

struct Criterion {
  int id;
  Clock::time_point start = Clock::now();
  explicit Criterion(int n) : id(n) {}
  void done(bool ok, const std::string& detail) {
    double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(1);
    s << secs;
    std::cout << "criterion " << id << ": " << (ok ? "pass" : "FAIL") << " ("
              << detail << "; " << s.str() << "s)\n";
    if (!ok) ++failures;
  }
};

// ---------------------------------------------------------- criterion 1

void criterion1() {
  Criterion c(1);
  Catalog cat = load_catalog(CATALOG_FILE, PROOFS_DIR);
  CatalogReport cr = check_all(cat, reg());
  bool ok = cr.ok;
  for (const char* want : {"negglem", "neggmp", "wks_iff_cs", "sks_iff_scs2",
                           "gmp_conditional"}) {
    bool found = false;
    for (const ScriptReport& s : cr.scripts)
      if (s.lemma == want) found = true;
    ok = ok && found;
  }

  // line-corruption sweep over the negative-GMP script
  LemmaStore store;
  std::string neggmp_text;
  for (const CatalogEntry& e : cat.entries) {
    std::string text = read_text_file(cat.proofs_dir + "/" + e.file);
    if (e.file == "neggmp.proof") {
      neggmp_text = text;
      break;
    }
    for (const Proof& p : parse_proof_scripts(text))
      store.add(p.name, check(p, reg(), store));
  }
  std::vector<std::string> lines;
  {
    std::istringstream is(neggmp_text);
    std::string l;
    while (std::getline(is, l)) lines.push_back(l);
  }
  int corrupted = 0, caught = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    size_t p = lines[i].find_first_not_of(" \t");
    if (p == std::string::npos || !isdigit((unsigned char)lines[i][p]))
      continue;
    size_t dot = lines[i].find('.', p);
    if (dot == std::string::npos) continue;
    int label = std::stoi(lines[i].substr(p, dot - p));
    std::string save = lines[i];
    lines[i] = std::to_string(label) + ". 0 = S 0 by Refl";
    std::ostringstream joined;
    for (const std::string& l : lines) joined << l << "\n";
    ++corrupted;
    try {
      LemmaStore local = store;
      for (const Proof& pr : parse_proof_scripts(joined.str()))
        local.add(pr.name, check(pr, reg(), local));
    } catch (const CheckError& e) {
      if (e.line == label) ++caught;
    } catch (const ScriptError&) {
    }
    lines[i] = save;
  }
  ok = ok && corrupted > 0 && caught == corrupted;
  c.done(ok, "catalog accepted, " + std::to_string(caught) + "/" +
                 std::to_string(corrupted) +
                 " single-line corruptions rejected at the corrupted line");
}

// ---------------------------------------------------------- criterion 2

struct DecRnd {
  std::mt19937 rng{20260823};
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Term term(const std::vector<std::string>& nats, int depth) {
    switch (pick(depth > 0 ? 6 : 3)) {
      case 0: return mk_zero();
      case 1: return mk_num(unsigned(1 + pick(3)));
      case 2:
        return nats.empty() ? mk_zero()
                            : mk_var(nats[size_t(pick(int(nats.size())))],
                                     Sort::Nat);
      case 3: return mk_succ(term(nats, depth - 1));
      case 4: return mk_plus(term(nats, depth - 1), term(nats, depth - 1));
      default: return mk_seq_app("b", term(nats, depth - 1));
    }
  }

  Formula atom(const std::vector<std::string>& nats) {
    switch (pick(4)) {
      case 0: return mk_eq(term(nats, 1), term(nats, 1));
      case 1: return mk_lt(term(nats, 1), term(nats, 1));
      case 2: return mk_bot();
      default:
        return mk_eq(mk_chi("k", mk_eq(mk_var("k", Sort::Nat), mk_zero()),
                            term(nats, 1)),
                     mk_zero());
    }
  }

  Formula gen(const std::vector<std::string>& nats, int size, bool allow_box,
              int binders) {
    if (size <= 1) return atom(nats);
    int left = size / 2, right = size - 1 - left;
    switch (pick(allow_box ? 6 : 5)) {
      case 0:
        return mk_and(gen(nats, left, allow_box, binders),
                      gen(nats, right, allow_box, binders));
      case 1:
        return mk_or(gen(nats, left, allow_box, binders),
                     gen(nats, right, allow_box, binders));
      case 2:
        return mk_imp(gen(nats, left, allow_box, binders),
                      gen(nats, right, allow_box, binders));
      case 3: {
        std::string v = "q" + std::to_string(binders);
        Term bound = term(nats, 1);
        std::vector<std::string> inner = nats;
        inner.push_back(v);
        return mk_exists(v, Sort::Nat,
                         mk_and(mk_lt(mk_var(v, Sort::Nat), bound),
                                gen(inner, size - 2, allow_box, binders + 1)));
      }
      case 4: {
        std::string v = "q" + std::to_string(binders);
        Term bound = term(nats, 1);
        std::vector<std::string> inner = nats;
        inner.push_back(v);
        Formula body = gen(inner, size - 2, allow_box, binders + 1);
        if (body->kind == FormulaKind::Bot)
          body = mk_eq(mk_zero(), mk_zero());
        return mk_forall(v, Sort::Nat,
                         mk_imp(mk_lt(mk_var(v, Sort::Nat), bound), body));
      }
      default:
        return mk_box(term(nats, 1), gen(nats, size - 1, false, binders));
    }
  }
};

void criterion2() {
  Criterion c(2);
  DecRnd r;
  int ok_count = 0;
  for (int i = 0; i < 200; ++i) {
    Formula phi = r.gen({"u", "w"}, 2 + r.pick(7), true, 0);
    try {
      Judgment j = check(derive_decidability(phi), reg());
      if (alpha_eq(j.conclusion, universal_closure(mk_or(phi, mk_not(phi)))))
        ++ok_count;
    } catch (const std::exception&) {
    }
  }
  c.done(ok_count == 200,
         std::to_string(ok_count) + "/200 generated proofs kernel-checked");
}

// ---------------------------------------------------------- criterion 3

bool taut3(const Formula& f) {
  for (int mask = 0; mask < 8; ++mask)
    if (!eval_prop(f, {{"p", bool(mask & 1)},
                       {"q", bool(mask & 2)},
                       {"r", bool(mask & 4)}}))
      return false;
  return true;
}

void criterion3() {
  Criterion c(3);
  bool exhausted = false;
  // the full 7-connective fragment over 3 letters runs to ~6e10 formulas;
  // the configured budget makes the sweep exhaustive through 4 connectives
  // (4 + 48 + 1152 + 34560 + 1161216 formulas), flagged as partial beyond
  std::vector<Formula> pool = enumerate_prop(3, 7, 1'196'980, &exhausted);
  long disagreements = 0, proofs = 0, broken_proofs = 0;
  for (const Formula& f : pool) {
    PropVerdict v = prop_complete(f);
    bool narrow = std::holds_alternative<Proof>(v);
    if (narrow != taut3(f)) ++disagreements;
    if (narrow) {
      ++proofs;
      try {
        if (!alpha_eq(check(std::get<Proof>(v), reg()).conclusion, f))
          ++broken_proofs;
      } catch (const std::exception&) {
        ++broken_proofs;
      }
    }
  }
  c.done(disagreements == 0 && broken_proofs == 0 && proofs > 0,
         std::to_string(pool.size()) + " formulas (" +
             (exhausted ? "exhaustive through 4 connectives, deeper layers "
                          "out of reach"
                        : "fragment exhausted") +
             "), " + std::to_string(disagreements) + " disagreements, " +
             std::to_string(proofs - broken_proofs) + "/" +
             std::to_string(proofs) + " proofs kernel-checked");
}

// ---------------------------------------------------------- criterion 4

void criterion4() {
  Criterion c(4);
  SqueezeConfig cfg;
  cfg.fragment = SqueezeFragment::Monadic;
  cfg.preds = 2;
  cfg.qrank = 2;
  cfg.depth = 7;
  cfg.budget = 10'000;
  SqueezeReport repo = squeeze_run(cfg);

  SqueezeConfig neg = cfg;
  neg.preds = 1;
  neg.depth = 3;
  neg.budget = 2'000;
  neg.narrow_classical = false;
  SqueezeReport negr = squeeze_run(neg);

  c.done(repo.enumerated >= 10'000 && repo.violations.empty() &&
             !negr.violations.empty(),
         std::to_string(repo.enumerated) + " formulas, " +
             std::to_string(repo.violations.size()) +
             " violations; negative control found " +
             std::to_string(negr.violations.size()));
}

// ---------------------------------------------------------- criterion 5

Formula rand_prop3(std::mt19937& rng, int size) {
  auto pick = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  if (size <= 1) {
    const char* ls[] = {"p", "q", "r"};
    return pick(4) == 3 ? mk_bot() : mk_pred(ls[pick(3)]);
  }
  int l = 1 + pick(size - 1), r = size - l;
  switch (pick(3)) {
    case 0: return mk_and(rand_prop3(rng, l), rand_prop3(rng, r));
    case 1: return mk_or(rand_prop3(rng, l), rand_prop3(rng, r));
    default: return mk_imp(rand_prop3(rng, l), rand_prop3(rng, r));
  }
}

void criterion5() {
  Criterion c(5);
  ParseOptions po;
  po.prop_letters = true;
  IPCResult dne = ipc_decide(parse_formula("~~p -> p", po));
  IPCResult lem = ipc_decide(parse_formula("p | ~p", po));
  bool stock = !dne.provable && dne.countermodel &&
               dne.countermodel->model.worlds <= 2 && !lem.provable &&
               lem.countermodel && lem.countermodel->model.worlds <= 2 &&
               ipc_decide(parse_formula("p -> ~~p", po)).provable;

  std::mt19937 rng(5);
  int glivenko = 0, corpus = 0;
  while (corpus < 500) {
    Formula f = rand_prop3(rng, 2 + int(rng() % 7));
    if (!taut3(f)) continue;
    ++corpus;
    if (ipc_decide(mk_not(mk_not(f)), 0).provable) ++glivenko;
  }
  c.done(stock && glivenko == 500,
         "stock refutations/proof ok, Glivenko " + std::to_string(glivenko) +
             "/500");
}

// ---------------------------------------------------------- criterion 6

void criterion6() {
  Criterion c(6);
  std::mt19937 rng(6);
  int sound = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f;
    do {
      f = rand_prop3(rng, 2 + int(rng() % 6));
    } while (!taut3(f));
    PropVerdict v = prop_complete(f);
    Formula theorem;
    try {
      theorem = check(std::get<Proof>(v), reg()).conclusion;
    } catch (const std::exception&) {
      continue;
    }
    FiniteStructure M;
    M.size = 1 + int(rng() % 5);
    M.sig = signature_of(theorem);
    for (const RelSym& r : M.sig.relations)
      M.rel[r.name] = {bool(rng() % 2)};  // 0-ary: one cell
    if (eval_fo(M, theorem)) ++sound;
  }
  c.done(sound == 1000, std::to_string(sound) +
                            "/1000 kernel theorems true in random structures");
}

// ---------------------------------------------------------- criterion 7

void criterion7() {
  Criterion c(7);
  Formula exactly2 = parse_formula(
      "(ex x:obj. ex y:obj. ~x = y) & "
      "~(ex x:obj. ex y:obj. ex z:obj. (~x = y & ~x = z) & ~y = z)");
  DecidednessQuery q;
  q.tau2 = exactly2;
  q.sizes = {1, 2, 3, 4};
  q.phi1 = parse_formula("ex x:obj. ex y:obj. ~x = y");
  bool d1 = std::holds_alternative<DecidedTrue>(decided_by(q));
  q.phi1 = parse_formula(
      "ex x:obj. ex y:obj. ex z:obj. (~x = y & ~x = z) & ~y = z");
  bool d2 = std::holds_alternative<DecidedFalse>(decided_by(q));

  Formula order = parse_formula(
      "((all x:obj. ~L(x, x)) & "
      "(all x:obj. all y:obj. all z:obj. (L(x, y) & L(y, z)) -> L(x, z))) & "
      "(all x:obj. all y:obj. ~x = y -> (L(x, y) | L(y, x)))");
  CategoricityReport cat = categoricity_check(order, {3});

  SOStructure S;
  S.base = parse_structure("size 2\nrel P 1\nP 0\n");
  Formula demo = parse_formula(
      "ex2 X:1. all x:obj. (X(x) -> P(x)) & (P(x) -> X(x))");
  bool std_true = eval_so(S, demo);
  S.mode = SOMode::Henkin;
  S.family[1] = {{false, false}, {false, true}};
  bool henkin_false = !eval_so(S, demo);

  c.done(d1 && d2 && cat.categorical && std_true && henkin_false,
         "decidedness verdicts, 3-order categoricity, and the "
         "standard/Henkin divergence all as specified");
}

// ---------------------------------------------------------- criterion 8

void criterion8() {
  Criterion c(8);
  FiniteStructure A = parse_structure(
      "size 4\nrel E 2\nE 0 1\nE 1 2\nE 2 3\nrel C 1\nC 0\nC 3\n");
  FiniteStructure Bset = parse_structure("size 2\n");
  FiniteStructure Bp = parse_structure("size 2\nrel P 1\nP 0\n");

  bool f1 = fund(A, Bset, 4).verdict == FundVerdict::Fund;
  bool f2 = fund(Bp, Bp, 4).verdict == FundVerdict::NotFund;
  bool f3 = fund(A, Bp, 4, InterpBudget{0}).verdict ==
            FundVerdict::Inconclusive;
  c.done(f1 && f2 && f3, "Fund / NotFund / Inconclusive as specified");
}

// ---------------------------------------------------------- criterion 9

void subf(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  if (f->left) subf(f->left, out);
  if (f->right) subf(f->right, out);
}

void criterion9() {
  Criterion c(9);
  std::mt19937 rng(9);
  auto pick = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  std::vector<KripkeModel> models;
  while (int(models.size()) < 1000) {
    int n = 1 + pick(4);
    std::vector<std::pair<int, int>> below;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && pick(3) == 0) below.emplace_back(a, b);
    KripkeModel frame;
    try {
      frame = make_kripke(n, below, {});
    } catch (const EvalError&) {
      continue;  // cyclic draw
    }
    std::map<std::string, std::vector<bool>> val;
    for (const char* letter : {"p", "q"}) {
      std::vector<bool> v(size_t(n), false);
      for (int w = 0; w < n; ++w)
        if (pick(2)) v[size_t(w)] = true;
      // make the draw hereditary by propagating upward
      for (int w = 0; w < n; ++w)
        for (int u = 0; u < n; ++u)
          if (frame.le[size_t(w)][size_t(u)] && v[size_t(w)])
            v[size_t(u)] = true;
      val[letter] = v;
    }
    models.push_back(make_kripke(n, below, val));
  }
  std::vector<Formula> subs;
  for (int i = 0; i < 100; ++i) {
    std::mt19937& r = rng;
    Formula f = [&] {
      std::function<Formula(int)> gen = [&](int size) -> Formula {
        if (size <= 1) return pick(3) == 2 ? mk_bot()
                                           : mk_pred(pick(2) ? "p" : "q");
        int l = 1 + pick(size - 1);
        switch (pick(3)) {
          case 0: return mk_and(gen(l), gen(size - l));
          case 1: return mk_or(gen(l), gen(size - l));
          default: return mk_imp(gen(l), gen(size - l));
        }
      };
      (void)r;
      return gen(2 + pick(7));
    }();
    subf(f, subs);
  }
  long checked = 0, hereditary = 0;
  for (const KripkeModel& K : models)
    for (const Formula& f : subs)
      for (int w = 0; w < K.worlds; ++w)
        for (int u = 0; u < K.worlds; ++u)
          if (K.le[size_t(w)][size_t(u)] && kripke_forces(K, w, f)) {
            ++checked;
            if (kripke_forces(K, u, f)) ++hereditary;
          }
  c.done(checked > 0 && hereditary == checked,
         std::to_string(hereditary) + "/" + std::to_string(checked) +
             " heredity instances over 1000 models x " +
             std::to_string(subs.size()) + " subformulas");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (failures == 0 ? "all criteria passed\n"
                              : std::to_string(failures) + " criteria FAILED\n");
  std::cout << "not reproduced at this scale (documented, not tested): "
               "non-conservativity of FIM0+ + CS over FIM0 rests on "
               "Kleene-Vesley realizability (Kleene & Vesley 1965; Vesley "
               "1972)\n";
  return failures == 0 ? 0 : 1;
}
