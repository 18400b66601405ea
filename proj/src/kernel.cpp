#include "rigour/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rigour {

void LemmaStore::add(const std::string& name, Judgment j) {
  lemmas_.insert_or_assign(name, std::move(j));
}
const Judgment* LemmaStore::find(const std::string& name) const {
  auto it = lemmas_.find(name);
  return it == lemmas_.end() ? nullptr : &it->second;
}

// ------------------------------------------------------------ script parser

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ';') {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

Sort parse_sort_name(const std::string& s, int lineno) {
  if (s == "nat") return Sort::Nat;
  if (s == "seq") return Sort::Seq;
  if (s == "obj") return Sort::Obj;
  throw ScriptError("unknown sort: " + s, lineno);
}

}  // namespace

std::vector<Proof> parse_proof_scripts(const std::string& text) {
  std::vector<Proof> out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  Proof cur;
  bool open = false, has_goal = false;
  int last_label = 0;

  auto flush = [&]() {
    if (!open) return;
    if (!has_goal) throw ScriptError("lemma " + cur.name + " has no goal");
    if (cur.lines.empty())
      throw ScriptError("lemma " + cur.name + " has no proof lines");
    out.push_back(std::move(cur));
    cur = Proof{};
    open = false;
    has_goal = false;
    last_label = 0;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line.rfind("lemma ", 0) == 0) {
      flush();
      std::string rest = trim(line.substr(6));
      if (!rest.empty() && rest.back() == ':') rest = trim(rest.substr(0, rest.size() - 1));
      size_t in_pos = rest.rfind(" in ");
      if (in_pos == std::string::npos)
        throw ScriptError("expected 'lemma NAME in THEORY:'", lineno);
      cur.name = trim(rest.substr(0, in_pos));
      cur.theory = trim(rest.substr(in_pos + 4));
      if (cur.name.empty() || cur.theory.empty())
        throw ScriptError("expected 'lemma NAME in THEORY:'", lineno);
      open = true;
      continue;
    }
    if (!open) throw ScriptError("text outside a lemma block", lineno);

    if (line.rfind("var ", 0) == 0) {
      std::string rest = trim(line.substr(4));
      size_t colon = rest.find(':');
      if (colon == std::string::npos)
        throw ScriptError("expected 'var NAME:SORT'", lineno);
      cur.vars[trim(rest.substr(0, colon))] =
          parse_sort_name(trim(rest.substr(colon + 1)), lineno);
      continue;
    }

    ParseOptions opts;
    opts.context = cur.vars;

    if (line.rfind("goal ", 0) == 0) {
      try {
        cur.goal = parse_formula(trim(line.substr(5)), opts);
      } catch (const SyntaxError& e) {
        throw ScriptError(std::string("goal: ") + e.what(), lineno);
      }
      has_goal = true;
      continue;
    }

    // numbered proof line: N. FORMULA by RULE(args)
    size_t dot = line.find('.');
    if (dot == std::string::npos || dot == 0 ||
        !std::all_of(line.begin(), line.begin() + dot,
                     [](char c) { return std::isdigit((unsigned char)c); }))
      throw ScriptError("expected a numbered proof line", lineno);
    ProofLine pl;
    pl.label = std::stoi(line.substr(0, dot));
    if (pl.label <= last_label)
      throw ScriptError("line labels must increase", lineno);
    last_label = pl.label;
    std::string rest = line.substr(dot + 1);
    size_t by = rest.rfind(" by ");
    if (by == std::string::npos)
      throw ScriptError("proof line needs 'by RULE'", lineno);
    std::string ftext = trim(rest.substr(0, by));
    std::string rtext = trim(rest.substr(by + 4));
    try {
      pl.formula = parse_formula(ftext, opts);
    } catch (const SyntaxError& e) {
      throw ScriptError(std::string("line formula: ") + e.what(), lineno);
    }
    size_t paren = rtext.find('(');
    if (paren == std::string::npos) {
      pl.rule = rtext;
    } else {
      if (rtext.back() != ')')
        throw ScriptError("unbalanced rule arguments", lineno);
      pl.rule = trim(rtext.substr(0, paren));
      pl.args = split_args(rtext.substr(paren + 1, rtext.size() - paren - 2));
    }
    if (pl.rule.empty()) throw ScriptError("empty rule name", lineno);
    cur.lines.push_back(std::move(pl));
  }
  flush();
  return out;
}

Proof parse_proof_script(const std::string& text) {
  auto all = parse_proof_scripts(text);
  if (all.size() != 1)
    throw ScriptError("expected exactly one lemma, got " +
                      std::to_string(all.size()));
  return all[0];
}

std::string print_proof(const Proof& p) {
  std::ostringstream os;
  os << "lemma " << p.name << " in " << p.theory << ":\n";
  for (auto& [n, s] : p.vars) os << "var " << n << ":" << sort_name(s) << "\n";
  os << "goal " << print(p.goal) << "\n";
  for (auto& l : p.lines) {
    os << l.label << ". " << print(l.formula) << " by " << l.rule;
    if (!l.args.empty()) {
      os << "(";
      for (size_t i = 0; i < l.args.size(); ++i)
        os << (i ? "; " : "") << l.args[i];
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

// ------------------------------------------------------------ rewrite check

namespace {

struct Rewriter {
  const Term& a;
  const Term& b;
  std::set<std::string> fvab;  // names free in a or b

  bool term(const Term& f, const Term& t, bool active) const {
    if (term_eq(f, t)) return true;
    if (active && term_eq(f, a) && term_eq(t, b)) return true;
    if (f->kind != t->kind) return false;
    switch (f->kind) {
      case TermKind::Var:
      case TermKind::ObjConst:
        return false;  // term_eq already failed
      case TermKind::SeqApp:
      case TermKind::Bar:
        if (f->name != t->name) return false;
        break;
      case TermKind::Chi: {
        if (f->chi_var != t->chi_var) return false;
        bool inner = active && !fvab.count(f->chi_var);
        if (!formula(f->chi_body, t->chi_body, inner)) return false;
        break;
      }
      default:
        break;
    }
    if (f->args.size() != t->args.size()) return false;
    for (size_t i = 0; i < f->args.size(); ++i)
      if (!term(f->args[i], t->args[i], active)) return false;
    return true;
  }

  bool formula(const Formula& f, const Formula& t, bool active) const {
    if (alpha_eq(f, t)) return true;
    if (f->kind != t->kind) return false;
    switch (f->kind) {
      case FormulaKind::Eq:
      case FormulaKind::Lt:
        return term(f->t0, t->t0, active) && term(f->t1, t->t1, active);
      case FormulaKind::Bot:
        return true;
      case FormulaKind::Pred:
      case FormulaKind::SOAtom: {
        if (f->name != t->name || f->args.size() != t->args.size())
          return false;
        for (size_t i = 0; i < f->args.size(); ++i)
          if (!term(f->args[i], t->args[i], active)) return false;
        return true;
      }
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp:
        return formula(f->left, t->left, active) &&
               formula(f->right, t->right, active);
      case FormulaKind::Box:
        return term(f->t0, t->t0, active) &&
               formula(f->left, t->left, active);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        // rewriting below a binder requires matching names and no capture
        if (f->name != t->name || f->binder_sort != t->binder_sort)
          return false;
        bool inner = active && !fvab.count(f->name);
        return formula(f->left, t->left, inner);
      }
      case FormulaKind::SOForall:
      case FormulaKind::SOExists:
        if (f->name != t->name || f->so_arity != t->so_arity) return false;
        return formula(f->left, t->left, active);
    }
    return false;
  }
};

}  // namespace

bool rewrite_reaches(const Formula& from, const Formula& to, const Term& a,
                     const Term& b) {
  Rewriter rw{a, b, {}};
  for (auto& [n, s] : free_vars(a)) rw.fvab.insert(n);
  for (auto& [n, s] : free_vars(b)) rw.fvab.insert(n);
  return rw.formula(from, to, true);
}

// ----------------------------------------------------------------- checker

namespace {

struct Checked {
  Formula formula;
  std::set<int> hyps;  // open hypothesis labels
  bool is_assume = false;
};

struct Checker {
  const Proof& p;
  const Registry& reg;
  const LemmaStore& lemmas;
  std::map<int, Checked> done;

  [[noreturn]] void fail(int label, const std::string& msg) const {
    throw CheckError("line " + std::to_string(label) + ": " + msg, label);
  }

  const Checked& premise(const ProofLine& at, const std::string& arg) const {
    int lbl;
    try {
      size_t used;
      lbl = std::stoi(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      fail(at.label, "premise label expected, got '" + arg + "'");
    }
    if (lbl >= at.label) fail(at.label, "premise must precede its use");
    auto it = done.find(lbl);
    if (it == done.end()) fail(at.label, "no such premise line " + std::to_string(lbl));
    return it->second;
  }

  void need_args(const ProofLine& l, size_t n) const {
    if (l.args.size() != n)
      fail(l.label, l.rule + " takes " + std::to_string(n) + " argument(s)");
  }

  int assume_label(const ProofLine& at, const std::string& arg) const {
    const Checked& c = premise(at, arg);
    if (!c.is_assume)
      fail(at.label, "discharge target " + arg + " is not an assumption");
    return std::stoi(arg);
  }

  Term parse_arg_term(const ProofLine& at, const std::string& text) const {
    ParseOptions o;
    o.context = p.vars;
    try {
      return parse_term(text, o);
    } catch (const SyntaxError& e) {
      fail(at.label, "bad term argument: " + std::string(e.what()));
    }
  }

  void eigen_free_in_hyps(const ProofLine& at, const std::set<int>& hyps,
                          const std::string& x, int except = -1) const {
    for (int h : hyps) {
      if (h == except) continue;
      if (free_vars(done.at(h).formula).count(x))
        fail(at.label, "eigenvariable " + x +
                           " occurs free in open hypothesis " +
                           std::to_string(h));
    }
  }

  Checked check_line(const ProofLine& l) {
    const std::string& r = l.rule;
    Checked out;
    out.formula = l.formula;

    if (r == "assume") {
      need_args(l, 0);
      out.hyps = {l.label};
      out.is_assume = true;
      return out;
    }
    if (r == "AndI") {
      need_args(l, 2);
      const Checked& i = premise(l, l.args[0]);
      const Checked& j = premise(l, l.args[1]);
      if (!alpha_eq(l.formula, mk_and(i.formula, j.formula)))
        fail(l.label, "conclusion is not the conjunction of the premises");
      out.hyps = i.hyps;
      out.hyps.insert(j.hyps.begin(), j.hyps.end());
      return out;
    }
    if (r == "AndE1" || r == "AndE2") {
      need_args(l, 1);
      const Checked& i = premise(l, l.args[0]);
      if (i.formula->kind != FormulaKind::And)
        fail(l.label, "premise is not a conjunction");
      const Formula& want =
          r == "AndE1" ? i.formula->left : i.formula->right;
      if (!alpha_eq(l.formula, want))
        fail(l.label, "conclusion is not that conjunct");
      out.hyps = i.hyps;
      return out;
    }
    if (r == "OrI1" || r == "OrI2") {
      need_args(l, 1);
      const Checked& i = premise(l, l.args[0]);
      if (l.formula->kind != FormulaKind::Or)
        fail(l.label, "conclusion is not a disjunction");
      const Formula& want = r == "OrI1" ? l.formula->left : l.formula->right;
      if (!alpha_eq(want, i.formula))
        fail(l.label, "premise does not match the stated disjunct");
      out.hyps = i.hyps;
      return out;
    }
    if (r == "OrE") {
      need_args(l, 5);
      const Checked& i = premise(l, l.args[0]);
      if (i.formula->kind != FormulaKind::Or)
        fail(l.label, "major premise is not a disjunction");
      const Checked& j = premise(l, l.args[1]);
      int hj = assume_label(l, l.args[2]);
      const Checked& k = premise(l, l.args[3]);
      int hk = assume_label(l, l.args[4]);
      if (!alpha_eq(done.at(hj).formula, i.formula->left))
        fail(l.label, "first case assumption is not the left disjunct");
      if (!alpha_eq(done.at(hk).formula, i.formula->right))
        fail(l.label, "second case assumption is not the right disjunct");
      if (!alpha_eq(j.formula, l.formula) || !alpha_eq(k.formula, l.formula))
        fail(l.label, "case conclusions do not match");
      out.hyps = i.hyps;
      for (int h : j.hyps)
        if (h != hj) out.hyps.insert(h);
      for (int h : k.hyps)
        if (h != hk) out.hyps.insert(h);
      return out;
    }
    if (r == "ImpI") {
      need_args(l, 2);
      const Checked& j = premise(l, l.args[0]);
      int h = assume_label(l, l.args[1]);
      if (!alpha_eq(l.formula, mk_imp(done.at(h).formula, j.formula)))
        fail(l.label, "conclusion is not assumption -> premise");
      out.hyps = j.hyps;
      out.hyps.erase(h);
      return out;
    }
    if (r == "ImpE") {
      need_args(l, 2);
      const Checked& i = premise(l, l.args[0]);
      const Checked& j = premise(l, l.args[1]);
      if (i.formula->kind != FormulaKind::Imp)
        fail(l.label, "major premise is not an implication");
      if (!alpha_eq(i.formula->left, j.formula))
        fail(l.label, "minor premise does not match the antecedent");
      if (!alpha_eq(l.formula, i.formula->right))
        fail(l.label, "conclusion is not the consequent");
      out.hyps = i.hyps;
      out.hyps.insert(j.hyps.begin(), j.hyps.end());
      return out;
    }
    if (r == "BotE") {
      need_args(l, 1);
      const Checked& i = premise(l, l.args[0]);
      if (i.formula->kind != FormulaKind::Bot)
        fail(l.label, "premise is not absurdity");
      out.hyps = i.hyps;
      return out;
    }
    if (r == "AllI") {
      need_args(l, 2);
      const Checked& j = premise(l, l.args[0]);
      const std::string& x = l.args[1];
      if (l.formula->kind != FormulaKind::Forall)
        fail(l.label, "conclusion is not universal");
      Sort s = l.formula->binder_sort;
      Formula inst =
          substitute(l.formula->left, l.formula->name, s, mk_var(x, s));
      if (!alpha_eq(inst, j.formula))
        fail(l.label, "premise is not the " + x + "-instance of the body");
      if (free_vars(l.formula).count(x))
        fail(l.label, "eigenvariable " + x + " remains free in the conclusion");
      eigen_free_in_hyps(l, j.hyps, x);
      out.hyps = j.hyps;
      return out;
    }
    if (r == "AllE") {
      need_args(l, 2);
      const Checked& i = premise(l, l.args[0]);
      if (i.formula->kind != FormulaKind::Forall)
        fail(l.label, "premise is not universal");
      Term t = parse_arg_term(l, l.args[1]);
      if (sort_of(t) != i.formula->binder_sort)
        fail(l.label, "instantiating term has the wrong sort");
      Formula inst = substitute(i.formula->left, i.formula->name,
                                i.formula->binder_sort, t);
      if (!alpha_eq(l.formula, inst))
        fail(l.label, "conclusion is not the stated instance");
      out.hyps = i.hyps;
      return out;
    }
    if (r == "ExI") {
      need_args(l, 2);
      const Checked& i = premise(l, l.args[0]);
      if (l.formula->kind != FormulaKind::Exists)
        fail(l.label, "conclusion is not existential");
      Term t = parse_arg_term(l, l.args[1]);
      if (sort_of(t) != l.formula->binder_sort)
        fail(l.label, "witness term has the wrong sort");
      Formula inst = substitute(l.formula->left, l.formula->name,
                                l.formula->binder_sort, t);
      if (!alpha_eq(inst, i.formula))
        fail(l.label, "premise is not the witness instance");
      out.hyps = i.hyps;
      return out;
    }
    if (r == "ExE") {
      need_args(l, 4);
      const Checked& i = premise(l, l.args[0]);
      const Checked& j = premise(l, l.args[1]);
      int h = assume_label(l, l.args[2]);
      const std::string& y = l.args[3];
      if (i.formula->kind != FormulaKind::Exists)
        fail(l.label, "major premise is not existential");
      Sort s = i.formula->binder_sort;
      Formula inst =
          substitute(i.formula->left, i.formula->name, s, mk_var(y, s));
      if (!alpha_eq(done.at(h).formula, inst))
        fail(l.label, "assumption is not the " + y + "-instance");
      if (!alpha_eq(j.formula, l.formula))
        fail(l.label, "conclusion does not match the case conclusion");
      if (free_vars(l.formula).count(y))
        fail(l.label, "eigenvariable " + y + " occurs free in the conclusion");
      if (free_vars(i.formula).count(y))
        fail(l.label, "eigenvariable " + y + " occurs free in the major premise");
      eigen_free_in_hyps(l, j.hyps, y, h);
      out.hyps = i.hyps;
      for (int g : j.hyps)
        if (g != h) out.hyps.insert(g);
      return out;
    }
    if (r == "Refl") {
      need_args(l, 0);
      if (l.formula->kind != FormulaKind::Eq ||
          !term_eq(l.formula->t0, l.formula->t1))
        fail(l.label, "conclusion is not a reflexive equation");
      return out;
    }
    if (r == "ReplEq") {
      need_args(l, 2);
      const Checked& e = premise(l, l.args[0]);
      const Checked& i = premise(l, l.args[1]);
      if (e.formula->kind != FormulaKind::Eq)
        fail(l.label, "first premise is not an equation");
      if (!rewrite_reaches(i.formula, l.formula, e.formula->t0, e.formula->t1))
        fail(l.label, "conclusion is not a replacement instance");
      out.hyps = e.hyps;
      out.hyps.insert(i.hyps.begin(), i.hyps.end());
      return out;
    }
    if (r == "DNE") {
      need_args(l, 1);
      if (!reg.effective_classical(p.theory))
        fail(l.label, "classical rule in intuitionistic theory " + p.theory);
      const Checked& i = premise(l, l.args[0]);
      if (!alpha_eq(i.formula, mk_not(mk_not(l.formula))))
        fail(l.label, "premise is not the double negation of the conclusion");
      out.hyps = i.hyps;
      return out;
    }
    if (r == "Axiom") {
      if (l.args.size() < 2)
        fail(l.label, "Axiom takes (THEORY; NAME; params...)");
      const std::string& thy = l.args[0];
      const std::string& name = l.args[1];
      if (!reg.has(thy)) fail(l.label, "unknown theory " + thy);
      if (!reg.extends_or_is(thy, p.theory))
        fail(l.label, "theory " + thy + " is not available in " + p.theory);
      if (auto ax = reg.axiom(thy, name)) {
        if (l.args.size() != 2)
          fail(l.label, "named axiom " + name + " takes no parameters");
        if (!alpha_eq(l.formula, *ax))
          fail(l.label, "formula does not match axiom " + name);
        return out;
      }
      if (!reg.schema_available(thy, name))
        fail(l.label, "no axiom or schema " + name + " in " + thy);
      ParseOptions o;
      o.context = p.vars;
      Formula inst;
      try {
        inst = instantiate_schema(
            name, std::vector<std::string>(l.args.begin() + 2, l.args.end()),
            o);
      } catch (const SchemaError& ex) {
        fail(l.label, ex.what());
      }
      if (!alpha_eq(l.formula, inst))
        fail(l.label, "formula does not match the schema instance");
      return out;
    }
    if (r == "Lemma") {
      need_args(l, 1);
      const Judgment* j = lemmas.find(l.args[0]);
      if (!j) fail(l.label, "unknown lemma " + l.args[0]);
      if (!reg.extends_or_is(j->theory, p.theory))
        fail(l.label, "lemma " + l.args[0] + " was proved in " + j->theory +
                          ", not available in " + p.theory);
      if (!alpha_eq(l.formula, j->conclusion))
        fail(l.label, "formula does not match lemma " + l.args[0]);
      return out;
    }
    fail(l.label, "unknown rule " + r);
  }

  Judgment run() {
    if (!reg.has(p.theory)) throw CheckError("unknown theory " + p.theory);
    if (p.lines.empty()) throw CheckError("empty proof");
    for (auto& l : p.lines) done.emplace(l.label, check_line(l));
    const ProofLine& last = p.lines.back();
    const Checked& fin = done.at(last.label);
    if (!fin.hyps.empty())
      fail(last.label, "final line has open hypotheses");
    if (!alpha_eq(fin.formula, p.goal))
      fail(last.label, "final line does not conclude the goal");
    return Judgment{p.theory, p.goal};
  }
};

}  // namespace

Judgment check(const Proof& p, const Registry& reg, const LemmaStore& lemmas) {
  Checker c{p, reg, lemmas, {}};
  return c.run();
}

}  // namespace rigour
