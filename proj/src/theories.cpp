#include "rigour/theories.hpp"

#include <cctype>
#include <sstream>

namespace rigour {

namespace {

const char* kStandardManifest = R"MAN(
# Theory ladder.  Each theory inherits axioms, schemas, and the classical
# flag from its ancestors.

theory minimal
end

theory classical
  extends minimal
  classical
end

theory HA
  extends minimal
  schema Induction
  axiom succ_nonzero: all x:nat. ~S x = 0
  axiom succ_inj: all x:nat. all y:nat. S x = S y -> x = y
  axiom plus_zero: all x:nat. x + 0 = x
  axiom plus_succ: all x:nat. all y:nat. x + S y = S (x + y)
  axiom times_zero: all x:nat. x * 0 = 0
  axiom times_succ: all x:nat. all y:nat. x * S y = x * y + x
  axiom lt_zero: all x:nat. ~x < 0
  axiom lt_succ_iff: all x:nat. all y:nat. (x < S y -> (x < y | x = y)) & ((x < y | x = y) -> x < S y)
  axiom lt_succ_self: all x:nat. x < S x
  axiom lt_step: all x:nat. all y:nat. x < y -> x < S y
  axiom lt_irrefl: all x:nat. ~x < x
  axiom lt_trans: all x:nat. all y:nat. all z:nat. x < y -> y < z -> x < z
  axiom eq_dec: all x:nat. all y:nat. x = y | ~x = y
  axiom lt_dec: all x:nat. all y:nat. x < y | ~x < y
  axiom le_total: all x:nat. all y:nat. (ex k:nat. x + k = y) | (ex k:nat. y + k = x)
  axiom lt_plus_right: all x:nat. all y:nat. all z:nat. x < y -> x < y + z
  axiom lt_plus_left: all x:nat. all y:nat. all z:nat. x < y -> x < z + y
  axiom step_lt: all x:nat. all z:nat. x < z -> step(x, z) = 0
  axiom step_ge: all x:nat. all z:nat. ~x < z -> step(x, z) = S 0
end

theory PA
  extends HA
  classical
end

theory PrAn
  extends HA
  schema PrAn2
  axiom bar_zero: all a:seq. bar(a, 0) = <>
  axiom bar_succ: all a:seq. all x:nat. bar(a, S x) = bar(a, x) # <a(x)>
  axiom concat_empty_l: all u:nat. <> # u = u
  axiom concat_empty_r: all u:nat. u # <> = u
  axiom concat_assoc: all u:nat. all v:nat. all w:nat. (u # v) # w = u # (v # w)
end

theory FIM0
  extends PrAn
  schema BCN
  schema BCC
end

theory FIM0+
  extends FIM0
  schema PrAn2Plus
  schema ChiDef
end

theory FIM0+CS
  extends FIM0+
  schema CS1
  schema CS2
  schema CS3
  schema sCS2
end
)MAN";

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::string& Registry::standard_manifest_text() {
  static const std::string text = kStandardManifest;
  return text;
}

Registry Registry::standard() { return from_manifest(kStandardManifest); }

Registry Registry::from_manifest(const std::string& text) {
  Registry reg;
  std::istringstream in(text);
  std::string raw;
  Theory cur;
  bool open = false;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw SchemaError("manifest line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    // '#' is also the concatenation operator, so comments are full lines only
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("theory ", 0) == 0) {
      if (open) fail("nested theory block");
      cur = Theory{};
      cur.id = trim(line.substr(7));
      if (cur.id.empty()) fail("theory without a name");
      if (reg.theories_.count(cur.id)) fail("duplicate theory " + cur.id);
      open = true;
      continue;
    }
    if (line == "end") {
      if (!open) fail("stray end");
      if (!cur.extends.empty() && !reg.theories_.count(cur.extends))
        fail("unknown parent " + cur.extends + " (parents must come first)");
      reg.order_.push_back(cur.id);
      reg.theories_.emplace(cur.id, std::move(cur));
      open = false;
      continue;
    }
    if (!open) fail("directive outside a theory block");
    if (line == "classical") {
      cur.classical = true;
    } else if (line.rfind("extends ", 0) == 0) {
      cur.extends = trim(line.substr(8));
    } else if (line.rfind("schema ", 0) == 0) {
      cur.schemas.insert(trim(line.substr(7)));
    } else if (line.rfind("axiom ", 0) == 0) {
      std::string rest = line.substr(6);
      size_t colon = rest.find(':');
      if (colon == std::string::npos) fail("axiom needs 'name: formula'");
      std::string name = trim(rest.substr(0, colon));
      std::string body = trim(rest.substr(colon + 1));
      Formula f;
      try {
        f = parse_formula(body);
      } catch (const SyntaxError& e) {
        fail("axiom " + name + ": " + e.what());
      }
      if (!is_closed(f)) fail("axiom " + name + " is not closed");
      cur.axioms.emplace_back(name, f);
    } else {
      fail("unrecognized directive: " + line);
    }
  }
  if (open) fail("unterminated theory block");
  return reg;
}

const Theory& Registry::get(const std::string& id) const {
  auto it = theories_.find(id);
  if (it == theories_.end()) throw SchemaError("unknown theory: " + id);
  return it->second;
}

bool Registry::extends_or_is(const std::string& anc,
                             const std::string& desc) const {
  std::string cur = desc;
  while (!cur.empty()) {
    if (cur == anc) return true;
    cur = get(cur).extends;
  }
  return false;
}

bool Registry::effective_classical(const std::string& id) const {
  std::string cur = id;
  while (!cur.empty()) {
    const Theory& t = get(cur);
    if (t.classical) return true;
    cur = t.extends;
  }
  return false;
}

std::optional<Formula> Registry::axiom(const std::string& theory,
                                       const std::string& name) const {
  std::string cur = theory;
  while (!cur.empty()) {
    const Theory& t = get(cur);
    for (auto& [n, f] : t.axioms)
      if (n == name) return f;
    cur = t.extends;
  }
  return std::nullopt;
}

bool Registry::schema_available(const std::string& theory,
                                const std::string& schema) const {
  std::string cur = theory;
  while (!cur.empty()) {
    const Theory& t = get(cur);
    if (t.schemas.count(schema)) return true;
    cur = t.extends;
  }
  return false;
}

std::vector<std::pair<std::string, Formula>> Registry::all_axioms(
    const std::string& theory) const {
  std::vector<std::string> chain;
  for (std::string cur = theory; !cur.empty(); cur = get(cur).extends)
    chain.push_back(cur);
  std::vector<std::pair<std::string, Formula>> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    for (auto& ax : get(*it).axioms) out.push_back(ax);
  return out;
}

std::vector<std::string> Registry::ids() const { return order_; }

// ------------------------------------------------------------ instantiators

Formula universal_closure(const Formula& f) {
  auto fv = free_vars(f);  // sorted by name
  Formula out = f;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it)
    out = mk_forall(it->first, it->second, out);
  return out;
}

namespace {

void require_sc(bool cond, const std::string& clause) {
  if (!cond) throw SchemaError("schema side condition violated: " + clause);
}

void require_sorted_use(const Formula& A, const std::string& v, Sort s,
                        const std::string& schema) {
  auto fv = free_vars(A);
  auto it = fv.find(v);
  require_sc(it == fv.end() || it->second == s,
             schema + ": parameter variable " + v + " used at the wrong sort");
}

void require_absent(const Formula& A, const std::string& v,
                    const std::string& clause) {
  require_sc(free_vars(A).count(v) == 0, clause);
}

std::set<std::string> names_in(const Formula& A) {
  std::set<std::string> out;
  for (auto& [n, s] : free_vars(A)) out.insert(n);
  return out;
}

Term nvar(const std::string& n) { return mk_var(n, Sort::Nat); }
Term svar(const std::string& n) { return mk_var(n, Sort::Seq); }

}  // namespace

Formula schema_induction(const std::string& x, const Formula& A) {
  require_sc(free_so_vars(A).empty(), "Induction: matrix has relation variables");
  require_sorted_use(A, x, Sort::Nat, "Induction");
  Formula base = substitute(A, x, Sort::Nat, mk_zero());
  Formula step = mk_forall(
      x, Sort::Nat,
      mk_imp(A, substitute(A, x, Sort::Nat, mk_succ(nvar(x)))));
  Formula concl = mk_forall(x, Sort::Nat, A);
  return universal_closure(mk_imp(mk_and(base, step), concl));
}

Formula schema_pran2(const std::string& a, const std::string& x, const Term& t,
                     bool allow_chi) {
  require_sc(sort_of(t) == Sort::Nat, "PrAn2: defining term must have sort nat");
  // a term can only mention the modality inside a chi matrix, so the box
  // check below is subsumed by the chi check for the plain schema; the
  // extended schema deliberately admits both
  if (!allow_chi) {
    require_sc(!contains_box(t), "PrAn2: defining term mentions the modality");
    require_sc(!contains_chi(t),
               "PrAn2: chi-terms require the extended schema PrAn2Plus");
  }
  auto fv = free_vars(t);
  require_sc(fv.find(a) == fv.end(),
             "PrAn2: defining term contains the introduced sequence variable");
  Formula body = mk_exists(
      a, Sort::Seq, mk_forall(x, Sort::Nat, mk_eq(mk_seq_app(a, nvar(x)), t)));
  return universal_closure(body);
}

Formula schema_chidef(const std::string& x, const Formula& A) {
  require_sc(is_extended_delta0(A), "ChiDef: matrix is not extended-Delta0");
  require_sorted_use(A, x, Sort::Nat, "ChiDef");
  Term chi = mk_chi(x, A, nvar(x));
  Formula body = mk_and(mk_iff(mk_eq(chi, mk_num(1)), A),
                        mk_iff(mk_eq(chi, mk_zero()), mk_not(A)));
  return universal_closure(mk_forall(x, Sort::Nat, body));
}

Formula schema_cs1(const std::string& n, const Formula& A) {
  require_sc(!contains_box(A), "CS1: matrix must be box-free");
  require_sorted_use(A, n, Sort::Nat, "CS1");
  Formula box = mk_box(nvar(n), A);
  return universal_closure(mk_forall(n, Sort::Nat, mk_or(box, mk_not(box))));
}

Formula schema_cs2(const std::string& n, const Formula& A) {
  require_sc(!contains_box(A), "CS2: matrix must be box-free");
  require_absent(A, n, "CS2: stage variable occurs free in the matrix");
  Formula ex = mk_exists(n, Sort::Nat, mk_box(nvar(n), A));
  return universal_closure(mk_imp(A, mk_not(mk_not(ex))));
}

Formula schema_cs3(const std::string& n, const Formula& A) {
  require_sc(!contains_box(A), "CS3: matrix must be box-free");
  require_absent(A, n, "CS3: stage variable occurs free in the matrix");
  Formula ex = mk_exists(n, Sort::Nat, mk_box(nvar(n), A));
  return universal_closure(mk_imp(ex, A));
}

Formula schema_scs2(const std::string& n, const Formula& A) {
  require_sc(!contains_box(A), "sCS2: matrix must be box-free");
  require_absent(A, n, "sCS2: stage variable occurs free in the matrix");
  Formula ex = mk_exists(n, Sort::Nat, mk_box(nvar(n), A));
  return universal_closure(mk_imp(A, ex));
}

Formula k0_membership(const std::string& g) {
  std::set<std::string> avoid = {g};
  std::string u = fresh_name("u", avoid);
  std::string w = fresh_name("w", avoid);
  std::string b = fresh_name("b", avoid);
  Formula stab = mk_forall(
      u, Sort::Nat,
      mk_forall(w, Sort::Nat,
                mk_imp(mk_not(mk_eq(mk_seq_app(g, nvar(u)), mk_zero())),
                       mk_eq(mk_seq_app(g, mk_concat(nvar(u), nvar(w))),
                             mk_seq_app(g, nvar(u))))));
  Formula total = mk_forall(
      b, Sort::Seq,
      mk_exists(u, Sort::Nat,
                mk_not(mk_eq(mk_seq_app(g, mk_bar(b, nvar(u))), mk_zero()))));
  return mk_and(stab, total);
}

Formula schema_bcn(const std::string& a, const std::string& x,
                   const Formula& A) {
  require_sc(!contains_box(A), "BCN: matrix must be box-free");
  require_sorted_use(A, a, Sort::Seq, "BCN");
  require_sorted_use(A, x, Sort::Nat, "BCN");
  std::set<std::string> avoid = names_in(A);
  avoid.insert(a);
  avoid.insert(x);
  std::string g = fresh_name("g", avoid);
  avoid.insert(g);
  std::string y = fresh_name("y", avoid);
  avoid.insert(y);
  std::string z = fresh_name("z", avoid);
  Formula prem = mk_forall(a, Sort::Seq, mk_exists(x, Sort::Nat, A));
  Formula pick = mk_exists(
      z, Sort::Nat,
      mk_eq(mk_succ(nvar(y)), mk_seq_app(g, mk_bar(a, nvar(z)))));
  Formula sel = mk_forall(
      a, Sort::Seq,
      mk_exists(y, Sort::Nat,
                mk_and(pick, substitute(A, x, Sort::Nat, nvar(y)))));
  Formula concl = mk_exists(g, Sort::Seq, mk_and(k0_membership(g), sel));
  return universal_closure(mk_imp(prem, concl));
}

Formula schema_bcc(const std::string& a, const std::string& b,
                   const Formula& A) {
  require_sc(!contains_box(A), "BCC: matrix must be box-free");
  require_sorted_use(A, a, Sort::Seq, "BCC");
  require_sorted_use(A, b, Sort::Seq, "BCC");
  std::set<std::string> avoid = names_in(A);
  avoid.insert(a);
  avoid.insert(b);
  std::string g = fresh_name("g", avoid);
  avoid.insert(g);
  std::string x = fresh_name("x", avoid);
  avoid.insert(x);
  std::string z = fresh_name("z", avoid);
  Formula prem = mk_forall(a, Sort::Seq, mk_exists(b, Sort::Seq, A));
  // g pipes a to b: every value b(x) is announced by g on a long enough
  // prefix of a, tagged with the argument x
  Formula pipe = mk_forall(
      x, Sort::Nat,
      mk_exists(z, Sort::Nat,
                mk_eq(mk_succ(mk_seq_app(b, nvar(x))),
                      mk_seq_app(g, mk_concat(mk_tuple({nvar(x)}),
                                              mk_bar(a, nvar(z)))))));
  Formula sel = mk_forall(a, Sort::Seq,
                          mk_exists(b, Sort::Seq, mk_and(pipe, A)));
  Formula concl = mk_exists(g, Sort::Seq, mk_and(k0_membership(g), sel));
  return universal_closure(mk_imp(prem, concl));
}

Formula schema_mp(const std::string& x, const Formula& A) {
  require_sorted_use(A, x, Sort::Nat, "MP");
  Formula dec = mk_forall(x, Sort::Nat, mk_or(A, mk_not(A)));
  Formula ex = mk_exists(x, Sort::Nat, A);
  return universal_closure(
      mk_imp(dec, mk_imp(mk_not(mk_not(ex)), ex)));
}

Formula schema_gmp() {
  Formula ex = mk_exists(
      "x", Sort::Nat, mk_eq(mk_seq_app("a", nvar("x")), mk_zero()));
  return mk_forall("a", Sort::Seq, mk_imp(mk_not(mk_not(ex)), ex));
}

Formula schema_wks(const std::string& a, const std::string& x,
                   const Formula& A) {
  require_absent(A, a, "wKS: witness sequence occurs free in the matrix");
  require_absent(A, x, "wKS: index variable occurs free in the matrix");
  Formula allz = mk_forall(x, Sort::Nat,
                           mk_eq(mk_seq_app(a, nvar(x)), mk_zero()));
  Formula hit = mk_exists(x, Sort::Nat,
                          mk_not(mk_eq(mk_seq_app(a, nvar(x)), mk_zero())));
  Formula body = mk_and(mk_iff(mk_not(A), allz), mk_imp(hit, A));
  return universal_closure(mk_exists(a, Sort::Seq, body));
}

Formula schema_sks(const std::string& a, const std::string& x,
                   const Formula& A) {
  require_absent(A, a, "sKS: witness sequence occurs free in the matrix");
  require_absent(A, x, "sKS: index variable occurs free in the matrix");
  Formula hit = mk_exists(x, Sort::Nat,
                          mk_not(mk_eq(mk_seq_app(a, nvar(x)), mk_zero())));
  return universal_closure(mk_exists(a, Sort::Seq, mk_iff(A, hit)));
}

// --------------------------------------------------------- textual dispatch

namespace {

struct ArgReader {
  const std::string& schema;
  const std::vector<std::string>& args;
  const ParseOptions& ctx;

  void arity(size_t n) const {
    if (args.size() != n)
      throw SchemaError(schema + ": expected " + std::to_string(n) +
                        " parameters, got " + std::to_string(args.size()));
  }
  std::string var(size_t i) const {
    std::string v = args[i];
    // must be a bare identifier
    for (char c : v)
      if (!std::isalnum((unsigned char)c) && c != '_' && c != '\'')
        throw SchemaError(schema + ": parameter " + std::to_string(i + 1) +
                          " must be a variable name");
    if (v.empty())
      throw SchemaError(schema + ": empty variable parameter");
    return v;
  }
  Formula formula(size_t i, std::map<std::string, Sort> extra) const {
    ParseOptions o = ctx;
    for (auto& [n, s] : extra) o.context[n] = s;
    try {
      return parse_formula(args[i], o);
    } catch (const SyntaxError& e) {
      throw SchemaError(schema + ": bad formula parameter: " +
                        std::string(e.what()));
    }
  }
  Term term(size_t i, std::map<std::string, Sort> extra) const {
    ParseOptions o = ctx;
    for (auto& [n, s] : extra) o.context[n] = s;
    try {
      return parse_term(args[i], o);
    } catch (const SyntaxError& e) {
      throw SchemaError(schema + ": bad term parameter: " +
                        std::string(e.what()));
    }
  }
};

}  // namespace

Formula instantiate_schema(const std::string& schema,
                           const std::vector<std::string>& args,
                           const ParseOptions& ctx) {
  ArgReader r{schema, args, ctx};
  if (schema == "Induction") {
    r.arity(2);
    std::string x = r.var(0);
    return schema_induction(x, r.formula(1, {{x, Sort::Nat}}));
  }
  if (schema == "PrAn2" || schema == "PrAn2Plus") {
    r.arity(3);
    std::string a = r.var(0), x = r.var(1);
    return schema_pran2(a, x, r.term(2, {{x, Sort::Nat}}),
                        schema == "PrAn2Plus");
  }
  if (schema == "ChiDef") {
    r.arity(2);
    std::string x = r.var(0);
    return schema_chidef(x, r.formula(1, {{x, Sort::Nat}}));
  }
  if (schema == "CS1" || schema == "CS2" || schema == "CS3" ||
      schema == "sCS2") {
    r.arity(2);
    std::string n = r.var(0);
    Formula A = r.formula(1, {{n, Sort::Nat}});
    if (schema == "CS1") return schema_cs1(n, A);
    if (schema == "CS2") return schema_cs2(n, A);
    if (schema == "CS3") return schema_cs3(n, A);
    return schema_scs2(n, A);
  }
  if (schema == "BCN") {
    r.arity(3);
    std::string a = r.var(0), x = r.var(1);
    return schema_bcn(a, x, r.formula(2, {{a, Sort::Seq}, {x, Sort::Nat}}));
  }
  if (schema == "BCC") {
    r.arity(3);
    std::string a = r.var(0), b = r.var(1);
    return schema_bcc(a, b, r.formula(2, {{a, Sort::Seq}, {b, Sort::Seq}}));
  }
  if (schema == "MP") {
    r.arity(2);
    std::string x = r.var(0);
    return schema_mp(x, r.formula(1, {{x, Sort::Nat}}));
  }
  if (schema == "GMP") {
    r.arity(0);
    return schema_gmp();
  }
  if (schema == "wKS" || schema == "sKS") {
    r.arity(3);
    std::string a = r.var(0), x = r.var(1);
    Formula A = r.formula(2, {});
    return schema == "wKS" ? schema_wks(a, x, A) : schema_sks(a, x, A);
  }
  throw SchemaError("unknown schema: " + schema);
}

}  // namespace rigour
