// Command-line entry point.  Exit codes: 0 accept/success, 1 logical
// rejection (failed proof, refuted formula, squeeze violation), 2 input
// error, 3 budget exhaustion.
#include "CLI11.hpp"

#include "rigour/derivations.hpp"
#include "rigour/experiments.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rigour;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Reporter {
  std::string path;     // empty: stdout only
  std::string cmdline;  // hashed into every report for reproducibility
  std::ostringstream buf;

  template <class T>
  Reporter& operator<<(const T& x) {
    buf << x;
    return *this;
  }

  ~Reporter() {
    std::cout << buf.str();
    if (path.empty()) return;
    // append-only: reruns add new timestamped records
    std::ofstream out(path, std::ios::app);
    auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    out << "--- rigour " << kVersion << " config "
        << std::hex << std::hash<std::string>{}(cmdline) << std::dec << " at "
        << now << "\n"
        << buf.str();
  }
};

const Registry& registry() {
  static Registry reg = [] {
    std::ifstream f(THEORIES_FILE);
    if (f) {
      std::ostringstream ss;
      ss << f.rdbuf();
      return Registry::from_manifest(ss.str());
    }
    return Registry::standard();
  }();
  return reg;
}

bool has_so(const Formula& f) {
  if (!f) return false;
  if (f->kind == FormulaKind::SOForall || f->kind == FormulaKind::SOExists ||
      f->kind == FormulaKind::SOAtom)
    return true;
  return has_so(f->left) || has_so(f->right);
}

std::vector<std::string> arg_or_stdin(const std::vector<std::string>& args) {
  if (!args.empty()) return args;
  std::vector<std::string> out;
  std::string line;
  while (std::getline(std::cin, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"informal-rigour workbench"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string report_path;
  int jobs = 1;  // batch items are processed in input order regardless
  app.add_option("--report", report_path, "append a timestamped report here");
  app.add_option("--jobs", jobs, "worker cap for batch runs")
      ->check(CLI::PositiveNumber);

  std::string cmdline;
  for (int i = 0; i < argc; ++i)
    cmdline += std::string(argv[i]) + " ";

  // ---- check ----
  auto* c_check = app.add_subcommand("check", "replay proof scripts");
  std::vector<std::string> check_files;
  c_check->add_option("files", check_files, "proof scripts, in citation order")
      ->required();

  // ---- catalog ----
  auto* c_catalog =
      app.add_subcommand("catalog", "replay the full derivations catalog");
  std::string catalog_file = CATALOG_FILE, proofs_dir = PROOFS_DIR;
  c_catalog->add_option("--file", catalog_file, "catalog manifest");
  c_catalog->add_option("--proofs", proofs_dir, "script directory");

  // ---- prove ----
  auto* c_prove =
      app.add_subcommand("prove", "classical tableau for closed FO formulas");
  std::vector<std::string> prove_args;
  c_prove->add_option("formulas", prove_args, "formulas (or one per stdin line)");
  int budget_terms = 8;
  long budget_structures = 5'000'000;
  c_prove->add_option("--budget-terms", budget_terms,
                      "fresh witness terms per branch");
  c_prove->add_option("--budget-structures", budget_structures,
                      "fallback countermodel sweep cap");

  // ---- ipc ----
  auto* c_ipc = app.add_subcommand(
      "ipc", "intuitionistic propositional decision procedure");
  std::vector<std::string> ipc_args;
  c_ipc->add_option("formulas", ipc_args, "formulas (or one per stdin line)");
  int max_worlds = 3;
  c_ipc->add_option("--max-worlds", max_worlds, "countermodel frame bound");

  // ---- eval ----
  auto* c_eval = app.add_subcommand("eval", "evaluate a formula in a model");
  std::string eval_formula, eval_model;
  c_eval->add_option("formula", eval_formula)->required();
  c_eval->add_option("--model", eval_model, "structure file")->required();

  // ---- enumerate ----
  auto* c_enum =
      app.add_subcommand("enumerate", "list structures of a formula's signature");
  std::string enum_formula;
  int enum_size = 2;
  bool up_to_iso = false;
  c_enum->add_option("formula", enum_formula)->required();
  c_enum->add_option("--max-size", enum_size);
  c_enum->add_flag("--up-to-iso", up_to_iso);
  c_enum->add_option("--budget-structures", budget_structures);

  // ---- squeeze ----
  auto* c_squeeze = app.add_subcommand("squeeze", "run a squeezing experiment");
  SqueezeConfig scfg;
  std::string fragment = "prop";
  bool crippled = false;
  c_squeeze->add_option("--fragment", fragment)
      ->check(CLI::IsMember({"prop", "monadic"}));
  c_squeeze->add_option("--letters", scfg.letters);
  c_squeeze->add_option("--depth", scfg.depth);
  c_squeeze->add_option("--preds", scfg.preds);
  c_squeeze->add_option("--qrank", scfg.qrank);
  c_squeeze->add_option("--budget", scfg.budget);
  c_squeeze->add_option("--max-size", scfg.model_bound);
  c_squeeze->add_flag("--crippled", crippled,
                      "negative control: drop double-negation elimination");

  // ---- decided ----
  auto* c_dec = app.add_subcommand("decided", "is phi decided by tau");
  std::string dec_tau, dec_phi;
  std::vector<int> dec_sizes{1, 2, 3, 4};
  c_dec->add_option("--tau", dec_tau)->required();
  c_dec->add_option("--phi", dec_phi)->required();
  c_dec->add_option("--sizes", dec_sizes);

  // ---- categorical ----
  auto* c_cat = app.add_subcommand("categorical", "finite categoricity check");
  std::string cat_tau;
  std::vector<int> cat_sizes{1, 2, 3, 4};
  c_cat->add_option("--tau", cat_tau)->required();
  c_cat->add_option("--sizes", cat_sizes);

  // ---- interp ----
  auto* c_interp =
      app.add_subcommand("interp", "search a relative interpretation of B in A");
  std::string interp_a, interp_b;
  int interp_bound = 3;
  long interp_budget = 2'000'000;
  c_interp->add_option("--a", interp_a, "structure file")->required();
  c_interp->add_option("--b", interp_b, "structure file")->required();
  c_interp->add_option("--bound", interp_bound, "formula size bound");
  c_interp->add_option("--budget-terms", interp_budget, "candidate cap");

  CLI11_PARSE(app, argc, argv);

  Reporter rep;
  rep.path = report_path;
  rep.cmdline = cmdline;

  try {
    if (*c_check) {
      LemmaStore store;
      for (const std::string& file : check_files) {
        std::string text;
        try {
          text = read_text_file(file);
        } catch (const std::exception& e) {
          std::cerr << e.what() << "\n";
          return 2;
        }
        for (const Proof& p : parse_proof_scripts(text)) {
          try {
            Judgment j = check(p, registry(), store);
            store.add(p.name, j);
            rep << file << ": " << p.name << " ok in " << j.theory << "\n";
          } catch (const CheckError& e) {
            std::cerr << file << ": " << p.name << " rejected at line "
                      << e.line << ": " << e.what() << "\n";
            return 1;
          }
        }
      }
      return 0;
    }

    if (*c_catalog) {
      CatalogReport cr =
          check_all(load_catalog(catalog_file, proofs_dir), registry());
      for (const ScriptReport& s : cr.scripts)
        rep << s.lemma << ": ok in " << s.theory << " (" << s.lines
            << " lines)\n";
      for (const std::string& s : cr.skipped) rep << s << ": skipped\n";
      if (!cr.ok) {
        std::cerr << cr.error_script << " rejected at line " << cr.error_line
                  << ": " << cr.error << "\n";
        return 1;
      }
      return 0;
    }

    if (*c_prove) {
      TableauBudget tb;
      tb.max_fresh = budget_terms;
      int worst = 0;
      for (const std::string& s : arg_or_stdin(prove_args)) {
        Formula phi = parse_formula(s);
        TabVerdict v = tableau_prove(phi, tb);
        if (std::holds_alternative<TabProved>(v)) {
          bool ok =
              replay_certificate(phi, std::get<TabProved>(v).certificate);
          rep << "proved" << (ok ? "" : " (certificate replay FAILED)")
              << ": " << print(phi) << "\n";
          if (!ok) worst = std::max(worst, 1);
        } else if (std::holds_alternative<TabRefuted>(v)) {
          rep << "refuted: " << print(phi) << "\n"
              << print_structure(std::get<TabRefuted>(v).countermodel);
          worst = std::max(worst, 1);
        } else {
          rep << "exhausted: " << print(phi) << " ("
              << std::get<TabExhausted>(v).reason << ")\n";
          worst = std::max(worst, 3);
        }
      }
      return worst;
    }

    if (*c_ipc) {
      ParseOptions po;
      po.prop_letters = true;
      int worst = 0;
      for (const std::string& s : arg_or_stdin(ipc_args)) {
        Formula phi = parse_formula(s, po);
        IPCResult r = ipc_decide(phi, max_worlds);
        if (r.provable) {
          rep << "proved: " << print(phi) << "\n";
        } else {
          worst = std::max(worst, 1);
          rep << "refuted: " << print(phi) << "\n";
          if (r.countermodel)
            rep << "world " << r.countermodel->world << " of\n"
                << print_kripke(r.countermodel->model);
          else
            rep << "(no countermodel within " << max_worlds << " worlds)\n";
        }
      }
      return worst;
    }

    if (*c_eval) {
      FiniteStructure M = parse_structure(read_text_file(eval_model));
      Formula phi = parse_formula(eval_formula);
      bool truth;
      if (has_so(phi)) {
        SOStructure S;
        S.base = M;
        truth = eval_so(S, phi);
      } else {
        truth = eval_fo(M, phi);
      }
      rep << (truth ? "true" : "false") << "\n";
      return truth ? 0 : 1;
    }

    if (*c_enum) {
      Signature sig = signature_of(parse_formula(enum_formula));
      for (const FiniteStructure& M : enumerate_structures(
               sig, enum_size, up_to_iso, EnumBudget{budget_structures}))
        rep << print_structure(M) << "\n";
      return 0;
    }

    if (*c_squeeze) {
      scfg.fragment = fragment == "prop" ? SqueezeFragment::Propositional
                                         : SqueezeFragment::Monadic;
      scfg.narrow_classical = !crippled;
      SqueezeReport r = squeeze_run(scfg);
      rep << "enumerated " << r.enumerated << ", narrow " << r.narrow_accepts
          << ", wide " << r.wide_accepts << ", violations "
          << r.violations.size()
          << (r.budget_exhausted ? " (budget exhausted, partial)" : "")
          << "\n";
      for (const SqueezeViolation& v : r.violations)
        rep << "violation: " << print(v.phi) << " narrow="
            << (v.narrow ? "yes" : "no") << " wide=" << (v.wide ? "yes" : "no")
            << "\n";
      return r.violations.empty() ? 0 : 1;
    }

    if (*c_dec) {
      DecidednessQuery q;
      q.tau2 = parse_formula(dec_tau);
      q.phi1 = parse_formula(dec_phi);
      q.sizes = dec_sizes;
      DecidedVerdict v = decided_by(q);
      if (std::holds_alternative<DecidedTrue>(v))
        rep << "decided true\n";
      else if (std::holds_alternative<DecidedFalse>(v))
        rep << "decided false\n";
      else if (std::holds_alternative<NoModels>(v))
        rep << "no models (vacuous)\n";
      else {
        const Mixed& m = std::get<Mixed>(v);
        rep << "mixed\ntrue in:\n" << print_structure(m.true_witness)
            << "false in:\n" << print_structure(m.false_witness);
      }
      return 0;
    }

    if (*c_cat) {
      CategoricityReport r =
          categoricity_check(parse_formula(cat_tau), cat_sizes);
      rep << r.models_found << " models, "
          << (r.categorical ? "categorical" : "not categorical") << "\n";
      if (r.counterexample)
        rep << "counterexample pair:\n"
            << print_structure(r.counterexample->first) << "--\n"
            << print_structure(r.counterexample->second);
      return 0;
    }

    if (*c_interp) {
      FiniteStructure A = parse_structure(read_text_file(interp_a));
      FiniteStructure B = parse_structure(read_text_file(interp_b));
      InterpVerdict v = interpretability_search(A, B, interp_bound, 1,
                                                InterpBudget{interp_budget});
      if (std::holds_alternative<Interpretation>(v)) {
        const Interpretation& it = std::get<Interpretation>(v);
        rep << "interpretation found\ndomain: " << print(it.delta) << "\n";
        for (const auto& [sym, f] : it.defs)
          rep << sym << ": " << print(f) << "\n";
        return 0;
      }
      bool exhausted = std::get<InterpNotFound>(v).pool_exhausted;
      rep << (exhausted ? "not found (pool exhausted at bound)\n"
                        : "not found (budget ran out; verdict is "
                          "budget-relative)\n");
      return exhausted ? 1 : 3;
    }
  } catch (const BudgetError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
