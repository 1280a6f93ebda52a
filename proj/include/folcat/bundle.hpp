#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "folcat/category.hpp"
#include "folcat/ominimal.hpp"
#include "folcat/parse.hpp"
#include "folcat/print.hpp"

// Bundled example corpora: each bundle is a directory of .fol files plus a
// frozen expected.txt. Running a bundle executes its declared checks,
// renders a deterministic report and diffs it against the expectation.

namespace folcat {

struct BundleResult {
  std::string name;
  bool ok = false;
  std::string report;
  std::string failure;  // first mismatch or error, empty when ok
};

inline std::vector<std::string> bundle_names() {
  return {"fact1-syntactic", "fact2-syntactic", "fact1-semantic-odag",
          "grothendieck-identity"};
}

namespace bundle_detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Document load(const std::filesystem::path& dir,
                     const std::vector<std::string>& files) {
  Document doc;
  for (const auto& file : files) parse_document_into(read_file(dir / file), doc);
  return doc;
}

/// Validates the morphisms of an inclusion diagram and checks the
/// order-extension square on an enumerated corpus.
inline void syntactic_report(std::ostream& os, const Document& doc,
                             const std::string& base_sig,
                             const std::vector<std::string>& morphisms,
                             bool& ok) {
  const Signature& base = doc.signatures.at(base_sig);
  const auto corpus = enumerate_formulas(base, 4, 2, 1);
  for (const auto& name : morphisms) {
    const SymbolAssignment& a = doc.morphisms.at(name);
    const auto violations = validate(a);
    os << "validate " << name << ": "
       << (violations.empty() ? "ok" : violations.front().message) << "\n";
    ok = ok && violations.empty();
    const LanguageMorphism h{a};

    const LanguageMorphism left = compose(h, identity_morphism(h.source()));
    const LanguageMorphism right = compose(identity_morphism(h.target()), h);
    const bool identity_laws =
        assignments_equal(left.assignment(), h.assignment()) &&
        assignments_equal(right.assignment(), h.assignment());
    os << "identity laws " << name << ": " << (identity_laws ? "ok" : "FAIL")
       << "\n";
    ok = ok && identity_laws;

    const LanguageMorphism ho = extend_with_order(h);
    std::size_t square_ok = 0;
    for (const auto& f : corpus)
      if (translate_formula(ho, f) == translate_formula(h, f)) ++square_ok;
    os << "order square " << name << ": " << square_ok << "/" << corpus.size()
       << "\n";
    ok = ok && square_ok == corpus.size();
    const Formula order_atom =
        Formula::rel(kOrderSymbol, {Term::var(0), Term::var(1)});
    const bool fixes_order = translate_formula(ho, order_atom) == order_atom;
    os << "order atom " << name << ": " << (fixes_order ? "fixed" : "FAIL")
       << "\n";
    ok = ok && fixes_order;
  }
}

inline void decompose_report(std::ostream& os, const Document& doc,
                             const std::vector<std::string>& morphisms,
                             const std::vector<std::string>& formulas,
                             bool& ok) {
  const Signature odag = theory_signature(TheoryId::Odag);
  if (!(doc.signatures.at("ODAG") == odag)) {
    os << "ODAG signature: MISMATCH\n";
    ok = false;
    return;
  }
  os << "ODAG signature: ok\n";
  for (const auto& name : morphisms) {
    const LanguageMorphism h{doc.morphisms.at(name)};
    for (const auto& text : formulas) {
      const Formula f = parse_formula(text, h.source());
      const IntervalUnion via = decompose_via_morphism(h, f, {}, TheoryId::Odag);
      const IntervalUnion direct =
          decompose_unary(translate_formula(h, f), {}, TheoryId::Odag);
      const Dnf d =
          eliminate(compile_formula(translate_formula(h, f), TheoryId::Odag, {}));
      const auto probes = probe_points(unary_breakpoints(d));
      const auto bits =
          sampling_oracle(translate_formula(h, f), {}, TheoryId::Odag, probes);
      bool oracle_ok = true;
      for (std::size_t i = 0; i < probes.size(); ++i)
        oracle_ok = oracle_ok && via.contains(probes[i]) == bits[i];
      const bool agree = via == direct;
      os << name << " | " << text << " -> " << to_string(via)
         << (agree ? "" : "  [reduct/direct MISMATCH]")
         << (oracle_ok ? "" : "  [oracle MISMATCH]") << "\n";
      ok = ok && agree && oracle_ok;
    }
  }
}

}  // namespace bundle_detail

/// Executes one bundle's checks against the files under dir/name and diffs
/// the rendered report with expected.txt. With `update` set, rewrites
/// expected.txt instead of diffing.
inline BundleResult run_bundle(const std::string& name,
                               const std::filesystem::path& dir,
                               bool update = false) {
  namespace bd = bundle_detail;
  BundleResult result;
  result.name = name;
  const std::filesystem::path base = dir / name;
  std::ostringstream os;
  bool ok = true;
  try {
    if (name == "fact1-syntactic") {
      const Document doc = bd::load(base, {"fact1.fol"});
      os << "bundle fact1-syntactic\n";
      bd::syntactic_report(os, doc, "Log", {"j", "i"}, ok);
    } else if (name == "fact2-syntactic") {
      const Document doc = bd::load(base, {"fact2.fol"});
      os << "bundle fact2-syntactic\n";
      os << "note: signatures only; no decision procedure is attached to the "
            "ring or exponential languages\n";
      bd::syntactic_report(os, doc, "Lor", {"j", "i"}, ok);
    } else if (name == "fact1-semantic-odag") {
      const Document doc = bd::load(base, {"expansions.fol"});
      os << "bundle fact1-semantic-odag\n";
      bd::decompose_report(os, doc, {"dbl", "tpl"},
                           {"o() < g(x0)", "g(x0) = x0",
                            "exists x1 . (g(x1) = x0 & x1 < x0)",
                            "g(x0) < o() | x0 = o()"},
                           ok);
    } else if (name == "grothendieck-identity") {
      const Document doc = bd::load(base, {"expansions.fol"});
      os << "bundle grothendieck-identity\n";
      const Signature odag = theory_signature(TheoryId::Odag);
      const StrObject canonical =
          StrObject::of(QEPresentation{TheoryId::Odag, identity_morphism(odag)});
      for (const auto& mname : {"dbl", "tpl"}) {
        const LanguageMorphism h{doc.morphisms.at(mname)};
        const StrObject m = reduct_object(h, canonical);
        const StrMorphism fact{m, canonical, h, std::nullopt};
        for (const auto variant :
             {StrVariant::Plain, StrVariant::Ordered, StrVariant::OMinimal}) {
          const auto violations = validate_str_morphism(fact, variant);
          os << mname << " with identity map, variant " << variant_name(variant)
             << ": " << (violations.empty() ? "valid" : "INVALID") << "\n";
          ok = ok && violations.empty();
        }
        const StrMorphism round = compose_str(fact, id_str(m));
        const bool law = objects_equal(round.src, m) &&
                         assignments_equal(round.lang_morphism.assignment(),
                                           fact.lang_morphism.assignment());
        os << mname << " composed with the identity: " << (law ? "ok" : "FAIL")
           << "\n";
        ok = ok && law;
      }
    } else {
      result.failure = "unknown bundle: " + name;
      return result;
    }
  } catch (const std::exception& e) {
    result.failure = e.what();
    result.report = os.str();
    return result;
  }

  result.report = os.str();
  const std::filesystem::path expected_path = base / "expected.txt";
  if (update) {
    std::ofstream out(expected_path, std::ios::binary);
    out << result.report;
    result.ok = ok;
    if (!ok) result.failure = "checks failed";
    return result;
  }
  if (!std::filesystem::exists(expected_path)) {
    result.failure = "missing " + expected_path.string();
    return result;
  }
  const std::string expected = bd::read_file(expected_path);
  if (expected != result.report) {
    result.failure = "report differs from expected.txt";
    return result;
  }
  if (!ok) {
    result.failure = "checks failed";
    return result;
  }
  result.ok = true;
  return result;
}

}  // namespace folcat
