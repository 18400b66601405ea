#include "rigour/derivations.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rigour {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Catalog load_catalog(const std::string& catalog_file,
                     const std::string& proofs_dir) {
  Catalog cat;
  cat.proofs_dir = proofs_dir;
  std::istringstream in(read_text_file(catalog_file));
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t sp = line.find(' ');
    std::string head = (sp == std::string::npos) ? line : line.substr(0, sp);
    std::string rest = (sp == std::string::npos) ? "" : trim(line.substr(sp + 1));
    if (rest.empty())
      throw std::runtime_error("catalog line " + std::to_string(lineno) +
                               ": missing operand");
    if (head == "required")
      cat.entries.push_back({rest, true});
    else if (head == "optional")
      cat.entries.push_back({rest, false});
    else if (head == "note")
      cat.notes.push_back(rest);
    else
      throw std::runtime_error("catalog line " + std::to_string(lineno) +
                               ": unknown directive '" + head + "'");
  }
  return cat;
}

CatalogReport check_all(const Catalog& cat, const Registry& reg) {
  CatalogReport rep;
  rep.notes = cat.notes;
  LemmaStore store;
  for (const CatalogEntry& e : cat.entries) {
    std::string path = cat.proofs_dir + "/" + e.file;
    if (!std::filesystem::exists(path)) {
      if (!e.required) {
        rep.skipped.push_back(e.file);
        continue;
      }
      rep.ok = false;
      rep.error = "missing required script " + e.file;
      rep.error_script = e.file;
      return rep;
    }
    std::vector<Proof> proofs;
    try {
      proofs = parse_proof_scripts(read_text_file(path));
    } catch (const ScriptError& ex) {
      rep.ok = false;
      rep.error = e.file + ": " + ex.what();
      rep.error_line = ex.line;
      rep.error_script = e.file;
      return rep;
    }
    for (const Proof& p : proofs) {
      try {
        Judgment j = check(p, reg, store);
        store.add(p.name, j);
      } catch (const CheckError& ex) {
        rep.ok = false;
        rep.error = p.name + ": " + ex.what();
        rep.error_line = ex.line;
        rep.error_script = p.name;
        return rep;
      }
      ScriptReport sr;
      sr.lemma = p.name;
      sr.theory = p.theory;
      sr.lines = static_cast<int>(p.lines.size());
      for (const ProofLine& l : p.lines)
        if (l.rule == "Axiom" && l.args.size() > 2) {
          std::string s = l.args[0] + "." + l.args[1];
          if (std::find(sr.schemas_cited.begin(), sr.schemas_cited.end(), s) ==
              sr.schemas_cited.end())
            sr.schemas_cited.push_back(s);
        }
      rep.scripts.push_back(std::move(sr));
    }
  }
  return rep;
}

LintReport lint_step_labels(const std::string& text) {
  std::vector<std::string> wanted;
  for (char c = 'a'; c <= 'e'; ++c) wanted.push_back(std::string(1, c));
  for (int i = 1; i <= 12; ++i) wanted.push_back(std::to_string(i));
  std::map<std::string, int> counts;
  // labels live in comment lines only; proof lines are full of rule
  // arguments like "(2)" that must not be mistaken for labels
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] != '#') continue;
    // scan for balanced "(tok)" so "(1)" never matches inside "(12)"
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] != '(') continue;
      size_t j = line.find(')', i + 1);
      if (j == std::string::npos) break;
      std::string tok = line.substr(i + 1, j - i - 1);
      if (tok.find('(') == std::string::npos) ++counts[tok];
    }
  }
  LintReport rep;
  for (const std::string& w : wanted) {
    int n = counts.count(w) ? counts[w] : 0;
    if (n != 1) {
      rep.ok = false;
      rep.problems.push_back("label (" + w + ") occurs " + std::to_string(n) +
                             " times, expected 1");
    }
  }
  return rep;
}

}  // namespace rigour
