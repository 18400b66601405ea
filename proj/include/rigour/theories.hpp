#pragma once

#include "rigour/syntax.hpp"

namespace rigour {

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Theory {
  std::string id;
  bool classical = false;
  std::string extends;  // parent id, empty for roots
  std::vector<std::pair<std::string, Formula>> axioms;
  std::set<std::string> schemas;
};

class Registry {
 public:
  // built-in manifest: minimal, classical, HA, PA, PrAn, FIM0, FIM0+, FIM0+CS
  static Registry standard();
  static Registry from_manifest(const std::string& text);
  static const std::string& standard_manifest_text();

  bool has(const std::string& id) const { return theories_.count(id) > 0; }
  const Theory& get(const std::string& id) const;
  // true when anc appears on desc's extension chain (or anc == desc)
  bool extends_or_is(const std::string& anc, const std::string& desc) const;
  // classical if any theory on the chain carries the flag
  bool effective_classical(const std::string& id) const;
  // named axiom, searching the extension chain
  std::optional<Formula> axiom(const std::string& theory,
                               const std::string& name) const;
  bool schema_available(const std::string& theory,
                        const std::string& schema) const;
  // all named axioms, ancestors first, in declaration order
  std::vector<std::pair<std::string, Formula>> all_axioms(
      const std::string& theory) const;
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, Theory> theories_;
  std::vector<std::string> order_;
};

// Textual schema instantiation as cited from proof scripts.  Parameters are
// parsed with ctx extended by the schema's own binder variables.  Throws
// SchemaError on a violated side condition.
//
//   Induction(x; A)    PrAn2(a; x; t)   PrAn2Plus(a; x; t)   ChiDef(x; A)
//   CS1(n; A)  CS2(n; A)  CS3(n; A)  sCS2(n; A)
//   BCN(a; x; A)  BCC(a; b; A)  MP(x; A)  GMP()
//   wKS(a; x; A)  sKS(a; x; A)
Formula instantiate_schema(const std::string& schema,
                           const std::vector<std::string>& args,
                           const ParseOptions& ctx = {});

// structured instantiators (the textual form dispatches to these)
Formula schema_induction(const std::string& x, const Formula& A);
Formula schema_pran2(const std::string& a, const std::string& x, const Term& t,
                     bool allow_chi);
Formula schema_chidef(const std::string& x, const Formula& A);
Formula schema_cs1(const std::string& n, const Formula& A);
Formula schema_cs2(const std::string& n, const Formula& A);
Formula schema_cs3(const std::string& n, const Formula& A);
Formula schema_scs2(const std::string& n, const Formula& A);
Formula schema_bcn(const std::string& a, const std::string& x,
                   const Formula& A);
Formula schema_bcc(const std::string& a, const std::string& b,
                   const Formula& A);
Formula schema_mp(const std::string& x, const Formula& A);
Formula schema_gmp();
Formula schema_wks(const std::string& a, const std::string& x,
                   const Formula& A);
Formula schema_sks(const std::string& a, const std::string& x,
                   const Formula& A);

// K0 membership predicate for a neighborhood-function code g (free in result)
Formula k0_membership(const std::string& g);

// universally close over all free first-order variables (sorted by name)
Formula universal_closure(const Formula& f);

}  // namespace rigour
