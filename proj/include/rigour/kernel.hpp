#pragma once

#include "rigour/theories.hpp"

namespace rigour {

// malformed script text (maps to CLI exit 2)
struct ScriptError : std::runtime_error {
  int line;  // 1-based line in the source text, 0 if unknown
  ScriptError(const std::string& msg, int l = 0)
      : std::runtime_error(msg), line(l) {}
};

// well-formed script rejected by a rule check (maps to CLI exit 1)
struct CheckError : std::runtime_error {
  int line;  // script line label at fault, 0 for whole-proof faults
  CheckError(const std::string& msg, int l = 0)
      : std::runtime_error(msg), line(l) {}
};

struct ProofLine {
  int label;
  Formula formula;
  std::string rule;
  std::vector<std::string> args;
};

struct Proof {
  std::string name;
  std::string theory;
  std::map<std::string, Sort> vars;  // declared free-variable sorts
  Formula goal;
  std::vector<ProofLine> lines;
};

struct Judgment {
  std::string theory;
  Formula conclusion;
};

class LemmaStore {
 public:
  void add(const std::string& name, Judgment j);
  const Judgment* find(const std::string& name) const;

 private:
  std::map<std::string, Judgment> lemmas_;
};

// Script format, one or more lemmas per file:
//   lemma NAME in THEORY:
//   var NAME:SORT
//   goal FORMULA
//   N. FORMULA by RULE(arg; ...; arg)
// Full-line comments start with '#'.  Rule arguments are separated by ';'
// because formulas and terms contain ','.
Proof parse_proof_script(const std::string& text);
std::vector<Proof> parse_proof_scripts(const std::string& text);

// Replays the script line by line.  Rules:
//   assume                      AndI(i; j)   AndE1(i)  AndE2(i)
//   OrI1(i)  OrI2(i)            OrE(i; j; hj; k; hk)
//   ImpI(j; h)  ImpE(i; j)      BotE(i)
//   AllI(j; x)  AllE(i; t)      ExI(i; t)    ExE(i; j; h; y)
//   Refl       ReplEq(e; i)     DNE(i)           [DNE needs a classical theory]
//   Axiom(THEORY; NAME)         Axiom(THEORY; SCHEMA; params...)
//   Lemma(NAME)
// Premise labels must precede their use; the final line must conclude the
// goal with no open hypotheses.
Judgment check(const Proof& p, const Registry& reg,
               const LemmaStore& lemmas = {});

// Builds a kernel-checkable FIM0+CS proof of the universal closure of
// phi | ~phi by structural recursion: arithmetic atoms via eq_dec/lt_dec,
// box atoms via CS1, connectives by case analysis, bounded quantifiers by
// Induction.  Throws std::invalid_argument unless is_extended_delta0(phi).
Proof derive_decidability(const Formula& phi);

// true when rewriting some occurrences of a into b turns `from` into `to`
// (no rewriting under a binder that captures a variable of a or b)
bool rewrite_reaches(const Formula& from, const Formula& to, const Term& a,
                     const Term& b);

std::string print_proof(const Proof& p);

}  // namespace rigour
