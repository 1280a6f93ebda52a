// folcat: first-order languages as data, morphisms as translations, reducts,
// the category of all structures, and QE-backed interval decomposition.
//
// Exit codes: 0 success (and all checks passed), 1 a check found a
// counterexample / law failure / validation violations, 2 parse, validation
// or resource errors.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "folcat/bundle.hpp"
#include "folcat/category.hpp"
#include "folcat/gen.hpp"
#include "folcat/ominimal.hpp"
#include "folcat/parse.hpp"
#include "folcat/print.hpp"

using namespace folcat;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

bool color_enabled() {
  const char* flag = std::getenv("FOLCAT_COLOR");
  return flag != nullptr && std::string(flag) != "0" && std::string(flag) != "";
}

std::string paint(const std::string& text, bool good) {
  if (!color_enabled()) return text;
  return (good ? "\033[32m" : "\033[31m") + text + "\033[0m";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Loaded {
  Document doc;
};

Loaded load_documents(const std::vector<std::string>& sig_files,
                      const std::vector<std::string>& other_files) {
  Loaded out;
  std::vector<std::string> seen;
  auto load = [&](const std::string& path) {
    if (std::find(seen.begin(), seen.end(), path) != seen.end()) return;
    seen.push_back(path);
    parse_document_into(read_file(path), out.doc);
  };
  for (const auto& path : sig_files) load(path);
  for (const auto& path : other_files) load(path);
  return out;
}

const SymbolAssignment& pick_morphism(const Document& doc,
                                      const std::string& name) {
  if (!name.empty()) {
    auto it = doc.morphisms.find(name);
    if (it == doc.morphisms.end())
      throw std::runtime_error("no morphism named " + name);
    return it->second;
  }
  if (doc.morphisms.size() != 1)
    throw std::runtime_error(
        "expected exactly one morphism; use --name to choose");
  return doc.morphisms.begin()->second;
}

const FiniteStructure& pick_structure(const Document& doc,
                                      const std::string& name) {
  if (!name.empty()) {
    auto it = doc.structures.find(name);
    if (it == doc.structures.end())
      throw std::runtime_error("no structure named " + name);
    return it->second;
  }
  if (doc.structures.size() != 1)
    throw std::runtime_error(
        "expected exactly one structure; use --structure-name to choose");
  return doc.structures.begin()->second;
}

std::map<int, int> parse_valuation(const std::vector<std::string>& bindings) {
  std::map<int, int> out;
  for (const auto& b : bindings) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || b.size() < 4 || b[0] != 'x')
      throw std::runtime_error("bad valuation binding: " + b + " (use xk=v)");
    out[std::stoi(b.substr(1, eq - 1))] = std::stoi(b.substr(eq + 1));
  }
  return out;
}

std::map<int, Rational> parse_params(const std::vector<std::string>& bindings) {
  std::map<int, Rational> out;
  for (const auto& b : bindings) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || b.empty() || b[0] != 'x')
      throw std::runtime_error("bad parameter binding: " + b + " (use xk=p/q)");
    out[std::stoi(b.substr(1, eq - 1))] = parse_rational(b.substr(eq + 1));
  }
  return out;
}

TheoryId parse_theory(const std::string& name) {
  if (name == "dlo") return TheoryId::Dlo;
  if (name == "odag") return TheoryId::Odag;
  throw std::runtime_error("unknown theory: " + name + " (use dlo or odag)");
}

StrVariant parse_variant(const std::string& name) {
  if (name == "plain") return StrVariant::Plain;
  if (name == "e") return StrVariant::Elementary;
  if (name == "e1") return StrVariant::Unary;
  if (name == "ordered") return StrVariant::Ordered;
  if (name == "omin") return StrVariant::OMinimal;
  throw std::runtime_error("unknown variant: " + name);
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// ------------------------------------------------------------- commands ----

struct ParseArgs {
  std::string file;
  std::vector<std::string> sig_files;
  std::string formula_text, term_text;
  bool as_json = false;
};

int cmd_parse(const ParseArgs& args) {
  Document doc;
  for (const auto& path : args.sig_files)
    parse_document_into(read_file(path), doc);
  if (!args.formula_text.empty() || !args.term_text.empty()) {
    if (doc.signatures.size() != 1)
      throw std::runtime_error("provide exactly one --sig for inline parsing");
    const Signature& sig = doc.signatures.begin()->second;
    if (!args.formula_text.empty()) {
      const Formula f = parse_formula(args.formula_text, sig);
      std::cout << (args.as_json ? to_json(f).dump(2) : print(f)) << "\n";
    } else {
      const Term t = parse_term(args.term_text, sig);
      std::cout << (args.as_json ? to_json(t).dump(2) : print(t)) << "\n";
    }
    return kExitOk;
  }
  if (args.file.empty()) throw std::runtime_error("nothing to parse");
  parse_document_into(read_file(args.file), doc);
  if (args.as_json) {
    json out = json::array();
    for (const auto& [kind, name] : doc.order) {
      if (kind == "signature") out.push_back(to_json(doc.signatures.at(name)));
      else if (kind == "morphism") out.push_back(to_json(doc.morphisms.at(name)));
      else out.push_back(to_json(doc.structures.at(name)));
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& [kind, name] : doc.order) {
    if (kind == "signature") std::cout << print(doc.signatures.at(name));
    else if (kind == "morphism") std::cout << print(doc.morphisms.at(name));
    else std::cout << print(doc.structures.at(name));
  }
  return kExitOk;
}

struct TranslateArgs {
  std::string morphism_file, name;
  std::vector<std::string> sig_files;
  std::string formula_text, term_text;
  bool as_json = false;
};

int cmd_translate(const TranslateArgs& args) {
  const Loaded loaded = load_documents(args.sig_files, {args.morphism_file});
  const LanguageMorphism h{pick_morphism(loaded.doc, args.name)};
  if (!args.term_text.empty()) {
    const Term image = translate_term(h, parse_term(args.term_text, h.source()));
    std::cout << (args.as_json ? to_json(image).dump(2) : print(image)) << "\n";
    return kExitOk;
  }
  const Formula image =
      translate_formula(h, parse_formula(args.formula_text, h.source()));
  std::cout << (args.as_json ? to_json(image).dump(2) : print(image)) << "\n";
  return kExitOk;
}

struct EvalArgs {
  std::string structure_file, name;
  std::vector<std::string> sig_files;
  std::string formula_text, term_text;
  std::vector<std::string> valuation;
  bool as_json = false;
};

int cmd_eval(const EvalArgs& args) {
  const Loaded loaded = load_documents(args.sig_files, {args.structure_file});
  const FiniteStructure& m = pick_structure(loaded.doc, args.name);
  const Valuation nu = parse_valuation(args.valuation);
  if (!args.term_text.empty()) {
    const int value = eval_term(m, parse_term(args.term_text, m.sig), nu);
    if (args.as_json)
      std::cout << json{{"command", "eval"}, {"value", value}}.dump(2) << "\n";
    else
      std::cout << value << "\n";
    return kExitOk;
  }
  const bool value = holds(m, parse_formula(args.formula_text, m.sig), nu);
  if (args.as_json)
    std::cout << json{{"command", "eval"}, {"holds", value}}.dump(2) << "\n";
  else
    std::cout << (value ? "true" : "false") << "\n";
  return kExitOk;
}

struct ReductArgs {
  std::string morphism_file, structure_file, name, structure_name;
  std::vector<std::string> sig_files;
  bool as_json = false;
};

int cmd_reduct(const ReductArgs& args) {
  const Loaded loaded =
      load_documents(args.sig_files, {args.morphism_file, args.structure_file});
  const LanguageMorphism h{pick_morphism(loaded.doc, args.name)};
  FiniteStructure out =
      reduct(h, pick_structure(loaded.doc, args.structure_name));
  out.name = "Reduct";
  std::cout << (args.as_json ? to_json(out).dump(2) + "\n" : print(out));
  return kExitOk;
}

struct TransferArgs {
  std::string morphism_file, structure_file, name, structure_name;
  std::vector<std::string> sig_files;
  int random_cases = 0;
  std::uint64_t seed = 1;
  int max_size = 4, max_var = 1, max_qdepth = 1;
  bool as_json = false;
};

int cmd_check_transfer(const TransferArgs& args) {
  const Loaded loaded =
      load_documents(args.sig_files, {args.morphism_file, args.structure_file});
  const LanguageMorphism h{pick_morphism(loaded.doc, args.name)};
  const FiniteStructure& m = pick_structure(loaded.doc, args.structure_name);

  std::vector<Formula> corpus;
  if (args.random_cases > 0) {
    SplitMix64 rng(args.seed);
    for (int i = 0; i < args.random_cases; ++i)
      corpus.push_back(gen::random_formula(h.source(), rng, 12, args.max_qdepth,
                                           args.max_var));
  } else {
    corpus = enumerate_formulas(h.source(), args.max_size, args.max_var,
                                args.max_qdepth);
  }
  const TransferReport report = check_transfer(h, m, corpus);
  if (args.as_json) {
    json counterexamples = json::array();
    for (const auto& c : report.counterexamples) {
      json nu = json::object();
      for (const auto& [var, value] : c.valuation)
        nu["x" + std::to_string(var)] = value;
      counterexamples.push_back(json{{"formula", print(c.formula)},
                                     {"valuation", nu},
                                     {"holds_in_reduct", c.holds_in_reduct},
                                     {"holds_in_target", c.holds_in_target}});
    }
    std::cout << json{{"command", "check-transfer"},
                      {"seed", args.seed},
                      {"formulas", corpus.size()},
                      {"checked_pairs", report.checked_pairs},
                      {"counterexamples", counterexamples}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "seed " << args.seed << ": " << corpus.size() << " formulas, "
              << report.checked_pairs << " (formula, valuation) pairs, "
              << report.counterexamples.size() << " counterexamples "
              << paint(report.ok() ? "ok" : "FAIL", report.ok()) << "\n";
    for (const auto& c : report.counterexamples) {
      std::cout << "  " << print(c.formula) << " under";
      for (const auto& [var, value] : c.valuation)
        std::cout << " x" << var << "=" << value;
      std::cout << ": reduct " << (c.holds_in_reduct ? "true" : "false")
                << ", target " << (c.holds_in_target ? "true" : "false")
                << "\n";
    }
  }
  return report.ok() ? kExitOk : kExitCheckFailed;
}

struct LawsArgs {
  std::uint64_t seed = 1;
  int cases = 100;
  std::string variant = "plain";
  int max_structure = 3;
  bool as_json = false;
};

int cmd_check_laws(const LawsArgs& args) {
  HarnessConfig config;
  config.variant = parse_variant(args.variant);
  config.max_structure = args.max_structure;
  const LawReport report = law_harness(args.seed, args.cases, config);
  if (args.as_json) {
    json failures = json::array();
    for (const auto& f : report.failures)
      failures.push_back(json{{"law", f.law}, {"detail", f.detail}});
    std::cout << json{{"command", "check-laws"},
                      {"seed", report.seed},
                      {"variant", args.variant},
                      {"cases", report.cases},
                      {"failures", failures}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "seed " << report.seed << ", variant " << args.variant << ": "
              << report.cases << " cases, " << report.failures.size()
              << " failures " << paint(report.ok() ? "ok" : "FAIL", report.ok())
              << "\n";
    for (const auto& f : report.failures)
      std::cout << "  " << f.law << ": " << f.detail << "\n";
  }
  return report.ok() ? kExitOk : kExitCheckFailed;
}

struct DecomposeArgs {
  std::string theory = "odag";
  std::string formula_text;
  std::vector<std::string> params;
  std::string morphism_file, name;
  std::vector<std::string> sig_files;
  int max_atoms = 6;
  int max_quantifiers = 3;
  bool as_json = false;
};

int count_atoms(const Formula& f) {
  return std::visit(
      overloaded{[](const Formula::Eq&) { return 1; },
                 [](const Formula::Rel&) { return 1; },
                 [](const Formula::Not& n) { return count_atoms(n.arg); },
                 [](const Formula::Or& o) {
                   return count_atoms(o.left) + count_atoms(o.right);
                 },
                 [](const Formula::Exists& e) { return count_atoms(e.body); }},
      f.node().v);
}

int count_quantifiers(const Formula& f) {
  return std::visit(
      overloaded{[](const Formula::Eq&) { return 0; },
                 [](const Formula::Rel&) { return 0; },
                 [](const Formula::Not& n) { return count_quantifiers(n.arg); },
                 [](const Formula::Or& o) {
                   return count_quantifiers(o.left) + count_quantifiers(o.right);
                 },
                 [](const Formula::Exists& e) {
                   return 1 + count_quantifiers(e.body);
                 }},
      f.node().v);
}

int cmd_decompose(const DecomposeArgs& args) {
  const TheoryId theory = parse_theory(args.theory);
  const auto params = parse_params(args.params);
  auto guard = [&](const Formula& f) {
    if (count_atoms(f) > args.max_atoms)
      throw ResourceError("formula has more than " +
                          std::to_string(args.max_atoms) +
                          " atoms; raise --max-atoms to proceed");
    if (count_quantifiers(f) > args.max_quantifiers)
      throw ResourceError("formula has more than " +
                          std::to_string(args.max_quantifiers) +
                          " quantifiers; raise --max-quantifiers to proceed");
  };
  IntervalUnion result;
  if (!args.morphism_file.empty()) {
    const Loaded loaded = load_documents(args.sig_files, {args.morphism_file});
    const LanguageMorphism h{pick_morphism(loaded.doc, args.name)};
    const Formula f = parse_formula(args.formula_text, h.source());
    guard(f);
    result = decompose_via_morphism(h, f, params, theory);
  } else {
    const Formula f =
        parse_formula(args.formula_text, theory_signature(theory));
    guard(f);
    result = decompose_unary(f, params, theory);
  }
  if (args.as_json)
    std::cout << json{{"command", "decompose"},
                      {"theory", args.theory},
                      {"set", to_json(result)}}
                     .dump(2)
              << "\n";
  else
    std::cout << to_string(result) << "\n";
  return kExitOk;
}

struct ExamplesArgs {
  std::string name;
  std::string dir = "bundles";
  bool update = false;
  bool as_json = false;
};

int cmd_run_examples(const ExamplesArgs& args) {
  std::vector<std::string> names = bundle_names();
  if (!args.name.empty()) names = {args.name};
  bool all_ok = true;
  json out = json::array();
  for (const auto& name : names) {
    const BundleResult result = run_bundle(name, args.dir, args.update);
    all_ok = all_ok && result.ok;
    if (args.as_json) {
      out.push_back(json{{"bundle", name},
                         {"ok", result.ok},
                         {"failure", result.failure},
                         {"report", result.report}});
    } else {
      std::cout << result.report;
      std::cout << name << ": "
                << paint(result.ok ? "ok" : "FAIL: " + result.failure,
                         result.ok)
                << "\n";
    }
  }
  if (args.as_json) std::cout << out.dump(2) << "\n";
  return all_ok ? kExitOk : kExitCheckFailed;
}

struct ValidateArgs {
  std::string morphism_file, name;
  std::vector<std::string> sig_files;
  bool as_json = false;
};

int cmd_validate_morphism(const ValidateArgs& args) {
  const Loaded loaded = load_documents(args.sig_files, {args.morphism_file});
  const SymbolAssignment& a = pick_morphism(loaded.doc, args.name);
  const auto violations = validate(a);
  if (args.as_json) {
    json list = json::array();
    for (const auto& v : violations)
      list.push_back(
          json{{"symbol", v.symbol}, {"rule", v.rule}, {"message", v.message}});
    std::cout << json{{"command", "validate-morphism"},
                      {"morphism", a.name},
                      {"violations", list}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << a.name << ": " << violations.size() << " violations "
              << paint(violations.empty() ? "ok" : "FAIL", violations.empty())
              << "\n";
    for (const auto& v : violations)
      std::cout << "  [" << v.symbol << ": " << v.rule << "] " << v.message
                << "\n";
  }
  return violations.empty() ? kExitOk : kExitCheckFailed;
}

struct StrComposeArgs {
  std::string doc_file;
  std::string alpha1, alpha2;
  std::string variant = "plain";
  bool as_json = false;
};

int cmd_str_compose(const StrComposeArgs& args) {
  Document doc = parse_document(read_file(args.doc_file));
  // declaration order fixes the roles: morphisms f.H then g.H, structures
  // src, mid, dst
  std::vector<std::string> morphism_names, structure_names;
  for (const auto& [kind, name] : doc.order) {
    if (kind == "morphism") morphism_names.push_back(name);
    if (kind == "structure") structure_names.push_back(name);
  }
  if (morphism_names.size() != 2 || structure_names.size() != 3)
    throw std::runtime_error(
        "str-compose expects a document with two morphisms (f, g) and three "
        "structures (source, middle, target)");
  const LanguageMorphism hf{doc.morphisms.at(morphism_names[0])};
  const LanguageMorphism hg{doc.morphisms.at(morphism_names[1])};
  const StrObject src = StrObject::of(doc.structures.at(structure_names[0]));
  const StrObject mid = StrObject::of(doc.structures.at(structure_names[1]));
  const StrObject dst = StrObject::of(doc.structures.at(structure_names[2]));

  StrMorphism f{src, mid, hf,
                StructureMap{reduct(hf, mid.structure()), src.structure(),
                             parse_int_list(args.alpha1)}};
  StrMorphism g{mid, dst, hg,
                StructureMap{reduct(hg, dst.structure()), mid.structure(),
                             parse_int_list(args.alpha2)}};
  const StrVariant variant = parse_variant(args.variant);
  bool ok = true;
  std::ostringstream report;
  for (const auto& [label, m] : {std::pair<const char*, const StrMorphism*>{
                                     "f", &f},
                                 {"g", &g}}) {
    for (const auto& v : validate_str_morphism(*m, variant)) {
      report << label << ": [" << v.symbol << ": " << v.rule << "] "
             << v.message << "\n";
      ok = false;
    }
  }
  if (!ok) {
    std::cout << report.str();
    std::cout << paint("FAIL", false) << "\n";
    return kExitCheckFailed;
  }
  const StrMorphism composed = compose_str(g, f);
  if (args.as_json) {
    json alpha = json::array();
    for (int v : composed.alpha->map) alpha.push_back(v);
    std::cout << json{{"command", "str-compose"},
                      {"morphism", to_json(composed.lang_morphism.assignment())},
                      {"alpha", alpha}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << print(composed.lang_morphism.assignment());
    std::cout << "alpha:";
    for (int v : composed.alpha->map) std::cout << " " << v;
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order languages, morphisms, reducts and o-minimality"};
  app.require_subcommand(1);

  ParseArgs parse_args;
  auto* parse_cmd = app.add_subcommand("parse", "parse and reprint documents");
  parse_cmd->add_option("file", parse_args.file, ".fol document");
  parse_cmd->add_option("--sig", parse_args.sig_files, "signature document");
  parse_cmd->add_option("--formula", parse_args.formula_text, "inline formula");
  parse_cmd->add_option("--term", parse_args.term_text, "inline term");
  parse_cmd->add_flag("--json", parse_args.as_json, "JSON output");

  TranslateArgs translate_args;
  auto* translate_cmd =
      app.add_subcommand("translate", "apply a language morphism");
  translate_cmd->add_option("--morphism", translate_args.morphism_file)
      ->required();
  translate_cmd->add_option("--sig", translate_args.sig_files);
  translate_cmd->add_option("--name", translate_args.name);
  translate_cmd->add_option("--formula", translate_args.formula_text);
  translate_cmd->add_option("--term", translate_args.term_text);
  translate_cmd->add_flag("--json", translate_args.as_json);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate in a finite structure");
  eval_cmd->add_option("--structure", eval_args.structure_file)->required();
  eval_cmd->add_option("--sig", eval_args.sig_files);
  eval_cmd->add_option("--structure-name", eval_args.name);
  eval_cmd->add_option("--formula", eval_args.formula_text);
  eval_cmd->add_option("--term", eval_args.term_text);
  eval_cmd->add_option("--val", eval_args.valuation, "xk=v bindings");
  eval_cmd->add_flag("--json", eval_args.as_json);

  ReductArgs reduct_args;
  auto* reduct_cmd =
      app.add_subcommand("reduct", "structure induced along a morphism");
  reduct_cmd->add_option("--morphism", reduct_args.morphism_file)->required();
  reduct_cmd->add_option("--structure", reduct_args.structure_file)->required();
  reduct_cmd->add_option("--sig", reduct_args.sig_files);
  reduct_cmd->add_option("--name", reduct_args.name);
  reduct_cmd->add_option("--structure-name", reduct_args.structure_name);
  reduct_cmd->add_flag("--json", reduct_args.as_json);

  TransferArgs transfer_args;
  auto* transfer_cmd = app.add_subcommand(
      "check-transfer", "satisfaction transfer between reduct and target");
  transfer_cmd->add_option("--morphism", transfer_args.morphism_file)
      ->required();
  transfer_cmd->add_option("--structure", transfer_args.structure_file)
      ->required();
  transfer_cmd->add_option("--sig", transfer_args.sig_files);
  transfer_cmd->add_option("--name", transfer_args.name);
  transfer_cmd->add_option("--structure-name", transfer_args.structure_name);
  transfer_cmd->add_option("--random", transfer_args.random_cases,
                           "random corpus size (default: enumerate)");
  transfer_cmd->add_option("--seed", transfer_args.seed);
  transfer_cmd->add_option("--max-size", transfer_args.max_size);
  transfer_cmd->add_option("--max-var", transfer_args.max_var);
  transfer_cmd->add_option("--max-qdepth", transfer_args.max_qdepth);
  transfer_cmd->add_flag("--json", transfer_args.as_json);

  LawsArgs laws_args;
  auto* laws_cmd =
      app.add_subcommand("check-laws", "category law harness for FOL and STR");
  laws_cmd->add_option("--seed", laws_args.seed);
  laws_cmd->add_option("--cases", laws_args.cases);
  laws_cmd->add_option("--variant", laws_args.variant,
                       "plain | e | e1 | ordered | omin");
  laws_cmd->add_option("--max-structure", laws_args.max_structure);
  laws_cmd->add_flag("--json", laws_args.as_json);

  DecomposeArgs decompose_args;
  auto* decompose_cmd = app.add_subcommand(
      "decompose", "canonical interval decomposition of a unary definable set");
  decompose_cmd->add_option("--theory", decompose_args.theory, "dlo | odag");
  decompose_cmd->add_option("--formula", decompose_args.formula_text)
      ->required();
  decompose_cmd->add_option("--param", decompose_args.params, "xk=p/q");
  decompose_cmd->add_option("--morphism", decompose_args.morphism_file,
                            "decompose through this morphism");
  decompose_cmd->add_option("--sig", decompose_args.sig_files);
  decompose_cmd->add_option("--name", decompose_args.name);
  decompose_cmd->add_option("--max-atoms", decompose_args.max_atoms,
                            "input guard (default 6)");
  decompose_cmd->add_option("--max-quantifiers", decompose_args.max_quantifiers,
                            "input guard (default 3)");
  decompose_cmd->add_flag("--json", decompose_args.as_json);

  ExamplesArgs examples_args;
  auto* examples_cmd =
      app.add_subcommand("run-examples", "run the bundled example corpora");
  examples_cmd->add_option("name", examples_args.name, "bundle name");
  examples_cmd->add_option("--dir", examples_args.dir, "bundles directory");
  examples_cmd->add_flag("--update", examples_args.update,
                         "rewrite expected outputs");
  examples_cmd->add_flag("--json", examples_args.as_json);

  ValidateArgs validate_args;
  auto* validate_cmd =
      app.add_subcommand("validate-morphism", "validate a symbol assignment");
  validate_cmd->add_option("--morphism", validate_args.morphism_file)
      ->required();
  validate_cmd->add_option("--sig", validate_args.sig_files);
  validate_cmd->add_option("--name", validate_args.name);
  validate_cmd->add_flag("--json", validate_args.as_json);

  StrComposeArgs str_args;
  auto* str_cmd = app.add_subcommand(
      "str-compose", "compose two morphisms in the category of structures");
  str_cmd->add_option("doc", str_args.doc_file)->required();
  str_cmd->add_option("--alpha1", str_args.alpha1)->required();
  str_cmd->add_option("--alpha2", str_args.alpha2)->required();
  str_cmd->add_option("--variant", str_args.variant);
  str_cmd->add_flag("--json", str_args.as_json);

  try {
    app.parse(argc, argv);
    if (parse_cmd->parsed()) return cmd_parse(parse_args);
    if (translate_cmd->parsed()) return cmd_translate(translate_args);
    if (eval_cmd->parsed()) return cmd_eval(eval_args);
    if (reduct_cmd->parsed()) return cmd_reduct(reduct_args);
    if (transfer_cmd->parsed()) return cmd_check_transfer(transfer_args);
    if (laws_cmd->parsed()) return cmd_check_laws(laws_args);
    if (decompose_cmd->parsed()) return cmd_decompose(decompose_args);
    if (examples_cmd->parsed()) return cmd_run_examples(examples_args);
    if (validate_cmd->parsed()) return cmd_validate_morphism(validate_args);
    if (str_cmd->parsed()) return cmd_str_compose(str_args);
    return kExitError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
