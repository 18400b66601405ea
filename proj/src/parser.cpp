#include "rigour/syntax.hpp"

#include <cctype>
#include <cstdlib>

namespace rigour {

namespace {

enum class Tok { Ident, Num, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

struct Lexer {
  const std::string& src;
  size_t i = 0;

  explicit Lexer(const std::string& s) : src(s) {}

  Token next() {
    while (i < src.size() && std::isspace((unsigned char)src[i])) ++i;
    if (i >= src.size()) return {Tok::End, "", i};
    size_t start = i;
    char c = src[i];
    if (std::isalpha((unsigned char)c) || c == '_') {
      while (i < src.size() &&
             (std::isalnum((unsigned char)src[i]) || src[i] == '_' ||
              src[i] == '\''))
        ++i;
      return {Tok::Ident, src.substr(start, i - start), start};
    }
    if (std::isdigit((unsigned char)c)) {
      while (i < src.size() && std::isdigit((unsigned char)src[i])) ++i;
      return {Tok::Num, src.substr(start, i - start), start};
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      i += 2;
      return {Tok::Sym, "->", start};
    }
    static const std::string singles = "()[]<>,.:~&|=+*#$";
    if (singles.find(c) != std::string::npos) {
      ++i;
      return {Tok::Sym, std::string(1, c), start};
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", start);
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t p = 0;
  const ParseOptions& opts;
  // innermost-last binder scopes for first-order variables
  std::vector<std::pair<std::string, Sort>> scope;
  std::set<std::string> so_scope;

  Parser(const std::string& text, const ParseOptions& o) : opts(o) {
    Lexer lx(text);
    for (;;) {
      Token t = lx.next();
      toks.push_back(t);
      if (t.kind == Tok::End) break;
    }
  }

  const Token& peek(size_t k = 0) const {
    size_t j = p + k;
    return j < toks.size() ? toks[j] : toks.back();
  }
  Token take() {
    Token t = peek();
    if (t.kind != Tok::End) ++p;
    return t;
  }
  bool at_sym(const std::string& s, size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool at_ident(const std::string& s, size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s))
      throw SyntaxError("expected '" + s + "', got '" + peek().text + "'",
                        peek().pos);
    take();
  }

  std::optional<Sort> lookup(const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return it->second;
    auto c = opts.context.find(name);
    if (c != opts.context.end()) return c->second;
    return std::nullopt;
  }

  Sort parse_sort() {
    Token t = take();
    if (t.text == "nat") return Sort::Nat;
    if (t.text == "seq") return Sort::Seq;
    if (t.text == "obj") return Sort::Obj;
    throw SyntaxError("expected sort, got '" + t.text + "'", t.pos);
  }

  // ---- terms ----

  Term term() { return term_concat(); }

  Term term_concat() {
    Term t = term_plus();
    while (at_sym("#")) {
      take();
      t = mk_concat(t, term_plus());
    }
    return t;
  }
  Term term_plus() {
    Term t = term_times();
    while (at_sym("+")) {
      take();
      t = mk_plus(t, term_times());
    }
    return t;
  }
  Term term_times() {
    Term t = term_primary();
    while (at_sym("*")) {
      take();
      t = mk_times(t, term_primary());
    }
    return t;
  }

  std::vector<Term> arg_list(const std::string& closer) {
    std::vector<Term> out;
    if (at_sym(closer)) {
      take();
      return out;
    }
    for (;;) {
      out.push_back(term());
      if (at_sym(",")) {
        take();
        continue;
      }
      expect_sym(closer);
      return out;
    }
  }

  Term term_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Num) {
      take();
      return mk_num((unsigned)std::strtoul(t.text.c_str(), nullptr, 10));
    }
    if (t.kind == Tok::Sym && t.text == "(") {
      take();
      Term inner = term();
      expect_sym(")");
      return inner;
    }
    if (t.kind == Tok::Sym && t.text == "<") {
      take();
      return mk_tuple(arg_list(">"));
    }
    if (t.kind == Tok::Sym && t.text == "$") {
      take();
      Token n = take();
      if (n.kind != Tok::Ident)
        throw SyntaxError("expected constant name after '$'", n.pos);
      return mk_obj_const(n.text);
    }
    if (t.kind != Tok::Ident)
      throw SyntaxError("expected term, got '" + t.text + "'", t.pos);
    if (t.text == "S") {
      take();
      return mk_succ(term_primary());
    }
    if (t.text == "bar") {
      take();
      expect_sym("(");
      Token v = take();
      if (v.kind != Tok::Ident)
        throw SyntaxError("bar: expected sequence variable", v.pos);
      expect_sym(",");
      Term a = term();
      expect_sym(")");
      return mk_bar(v.text, a);
    }
    if (t.text == "proj") {
      take();
      expect_sym("(");
      auto as = arg_list(")");
      if (as.size() != 2) throw SyntaxError("proj: two arguments expected", t.pos);
      return mk_proj(as[0], as[1]);
    }
    if (t.text == "step") {
      take();
      expect_sym("(");
      auto as = arg_list(")");
      if (as.size() != 2) throw SyntaxError("step: two arguments expected", t.pos);
      return mk_step(as[0], as[1]);
    }
    if (t.text == "chi") {
      take();
      expect_sym("[");
      Token v = take();
      if (v.kind != Tok::Ident)
        throw SyntaxError("chi: expected binder variable", v.pos);
      expect_sym(".");
      scope.emplace_back(v.text, Sort::Nat);
      Formula body = formula();
      scope.pop_back();
      expect_sym("]");
      expect_sym("(");
      Term a = term();
      expect_sym(")");
      return mk_chi(v.text, body, a);
    }
    take();
    if (at_sym("(")) {
      // applied identifier: a sequence variable
      take();
      Term a = term();
      expect_sym(")");
      return mk_seq_app(t.text, a);
    }
    Sort s = lookup(t.text).value_or(opts.default_sort);
    return mk_var(t.text, s);
  }

  // ---- formulas ----
  // precedence: -> (right) < | < & < unary

  Formula formula() {
    Formula a = formula_or();
    if (at_sym("->")) {
      take();
      return mk_imp(a, formula());
    }
    return a;
  }
  Formula formula_or() {
    Formula a = formula_and();
    while (at_sym("|")) {
      take();
      a = mk_or(a, formula_and());
    }
    return a;
  }
  Formula formula_and() {
    Formula a = formula_unary();
    while (at_sym("&")) {
      take();
      a = mk_and(a, formula_unary());
    }
    return a;
  }

  Formula quantifier(bool universal) {
    Token v = take();
    if (v.kind != Tok::Ident)
      throw SyntaxError("expected bound variable", v.pos);
    if (at_sym("<")) {
      take();
      Term bound = term();
      expect_sym(".");
      scope.emplace_back(v.text, Sort::Nat);
      Formula body = formula();
      scope.pop_back();
      return universal ? mk_bounded_forall(v.text, bound, body)
                       : mk_bounded_exists(v.text, bound, body);
    }
    Sort s = Sort::Nat;
    if (at_sym(":")) {
      take();
      s = parse_sort();
    }
    expect_sym(".");
    scope.emplace_back(v.text, s);
    Formula body = formula();
    scope.pop_back();
    return universal ? mk_forall(v.text, s, body) : mk_exists(v.text, s, body);
  }

  Formula so_quantifier(bool universal) {
    Token v = take();
    if (v.kind != Tok::Ident)
      throw SyntaxError("expected relation variable", v.pos);
    expect_sym(":");
    Token a = take();
    if (a.kind != Tok::Num)
      throw SyntaxError("expected relation arity", a.pos);
    expect_sym(".");
    bool was = so_scope.count(v.text) > 0;
    so_scope.insert(v.text);
    Formula body = formula();
    if (!was) so_scope.erase(v.text);
    int arity = (int)std::strtol(a.text.c_str(), nullptr, 10);
    return universal ? mk_so_forall(v.text, arity, body)
                     : mk_so_exists(v.text, arity, body);
  }

  Formula formula_unary() {
    if (at_sym("~")) {
      take();
      return mk_not(formula_unary());
    }
    if (at_ident("all")) {
      take();
      return quantifier(true);
    }
    if (at_ident("ex")) {
      take();
      return quantifier(false);
    }
    if (at_ident("all2")) {
      take();
      return so_quantifier(true);
    }
    if (at_ident("ex2")) {
      take();
      return so_quantifier(false);
    }
    if (at_ident("box")) {
      take();
      expect_sym("[");
      Term idx = term();
      expect_sym("]");
      return mk_box(idx, formula_unary());
    }
    return atom();
  }

  Formula relation_rhs(Term lhs) {
    if (at_sym("=")) {
      take();
      return mk_eq(lhs, term());
    }
    if (at_sym("<")) {
      take();
      return mk_lt(lhs, term());
    }
    throw SyntaxError("expected '=' or '<' after term, got '" + peek().text + "'",
                      peek().pos);
  }

  Formula atom() {
    if (at_ident("bot")) {
      take();
      return mk_bot();
    }
    if (at_sym("(")) {
      // either a parenthesized formula or a parenthesized term opening a
      // relation; try the formula reading first and back off on failure
      size_t save = p;
      try {
        take();
        Formula f = formula();
        expect_sym(")");
        if (at_sym("=") || at_sym("<") || at_sym("+") || at_sym("*") ||
            at_sym("#"))
          throw SyntaxError("term context", peek().pos);
        return f;
      } catch (const SyntaxError&) {
        p = save;
      }
      return relation_rhs(term());
    }
    const Token& t = peek();
    if (t.kind == Tok::Ident && !t.text.empty()) {
      bool applied = at_sym("(", 1);
      if (so_scope.count(t.text)) {
        take();
        std::vector<Term> args;
        if (applied) {
          take();
          args = arg_list(")");
        }
        return mk_so_atom(t.text, std::move(args));
      }
      bool reserved = t.text == "S" || t.text == "bar" || t.text == "proj" ||
                      t.text == "step" || t.text == "chi";
      if (std::isupper((unsigned char)t.text[0]) && !reserved &&
          !lookup(t.text)) {
        take();
        std::vector<Term> args;
        if (applied) {
          take();
          args = arg_list(")");
        }
        return mk_pred(t.text, std::move(args));
      }
      if (opts.prop_letters && !applied && !lookup(t.text) && !reserved) {
        take();
        return mk_pred(t.text);
      }
    }
    return relation_rhs(term());
  }

  void done() {
    if (peek().kind != Tok::End)
      throw SyntaxError("trailing input: '" + peek().text + "'", peek().pos);
  }
};

}  // namespace

Term parse_term(const std::string& text, const ParseOptions& opts) {
  Parser ps(text, opts);
  Term t = ps.term();
  ps.done();
  return t;
}

Formula parse_formula(const std::string& text, const ParseOptions& opts) {
  Parser ps(text, opts);
  Formula f = ps.formula();
  ps.done();
  return f;
}

}  // namespace rigour
