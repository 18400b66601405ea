#pragma once

#include "rigour/kernel.hpp"

namespace rigour {

// One line of the catalog file.  Order matters: later scripts may cite
// lemmas proved by earlier ones.
struct CatalogEntry {
  std::string file;
  bool required;
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  std::vector<std::string> notes;
  std::string proofs_dir;
};

struct ScriptReport {
  std::string lemma;
  std::string theory;
  int lines = 0;
  std::vector<std::string> schemas_cited;
};

struct CatalogReport {
  bool ok = true;
  std::string error;         // empty iff ok
  int error_line = 0;        // script line label at fault, 0 if n/a
  std::string error_script;  // lemma or file where checking stopped
  std::vector<ScriptReport> scripts;
  std::vector<std::string> notes;
  std::vector<std::string> skipped;  // optional entries whose file is absent
};

// Catalog file format, full-line '#' comments allowed:
//   required FILE
//   optional FILE
//   note TEXT
Catalog load_catalog(const std::string& catalog_file,
                     const std::string& proofs_dir);

// Checks every script in catalog order against one shared lemma store.
// Stops at the first failure of a required script; a missing optional
// file is recorded in `skipped` and checking continues.
CatalogReport check_all(const Catalog& cat, const Registry& reg);

struct LintReport {
  bool ok = true;
  std::vector<std::string> problems;
};

// The commentary in the main negative-GMP script walks through a fixed set
// of step labels, (a)..(e) and (1)..(12); each must occur exactly once.
LintReport lint_step_labels(const std::string& text);

std::string read_text_file(const std::string& path);

}  // namespace rigour
