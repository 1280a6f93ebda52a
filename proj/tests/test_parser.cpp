#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folcat/parse.hpp"
#include "folcat/print.hpp"

using namespace folcat;

namespace {

const char* kSigText = "sig L { fun plus/2; fun zero/0; rel P/1; }";

Signature sig_l() { return parse_signature(kSigText); }

}  // namespace

TEST_CASE("parse_signature") {
  const Signature sig = sig_l();
  CHECK(sig.name == "L");
  CHECK(sig.function_arity("plus") == 2);
  CHECK(sig.function_arity("zero") == 0);
  CHECK(sig.relation_arity("P") == 1);
  CHECK_FALSE(sig.has_order);

  CHECK_THROWS_AS(parse_signature("sig L { fun plus/2; fun plus/1; }"),
                  ParseError);
  try {
    parse_signature("sig L { fun plus/2; fun plus/1; }");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::Validation);
    CHECK(e.message.find("duplicate") != std::string::npos);
  }

  const Signature ordered = parse_signature("sig O { rel </2; rel P/1; }");
  CHECK(ordered.has_order);
}

TEST_CASE("parse_formula matches the grammar example") {
  const Formula f = parse_formula("exists x1 . plus(x0,x1) = zero()", sig_l());
  const Formula expected = Formula::exists(
      1, Formula::eq(Term::app("plus", {Term::var(0), Term::var(1)}),
                     Term::app("zero", {})));
  CHECK(f == expected);
}

TEST_CASE("sugar is desugared while parsing") {
  const Signature sig = sig_l();
  const Formula p0 = Formula::rel("P", {Term::var(0)});
  const Formula p1 = Formula::rel("P", {Term::var(1)});

  CHECK(parse_formula("P(x0) -> P(x1)", sig) ==
        Formula::disjunction(Formula::negation(p0), p1));
  CHECK(parse_formula("P(x0) & P(x1)", sig) ==
        Formula::negation(Formula::disjunction(Formula::negation(p0),
                                               Formula::negation(p1))));
  CHECK(parse_formula("forall x0 . P(x0)", sig) ==
        Formula::negation(Formula::exists(0, Formula::negation(p0))));
}

TEST_CASE("precedence: ~ over & over | over ->") {
  const Signature sig = sig_l();
  const Formula a = parse_formula("~P(x0) & P(x1) | P(x2) -> P(x3)", sig);
  const Formula b = parse_formula("(((~P(x0)) & P(x1)) | P(x2)) -> P(x3)", sig);
  CHECK(a == b);
  // -> is right associative
  CHECK(parse_formula("P(x0) -> P(x1) -> P(x2)", sig) ==
        parse_formula("P(x0) -> (P(x1) -> P(x2))", sig));
  // quantifier body extends maximally
  CHECK(parse_formula("exists x1 . P(x1) | P(x0)", sig) ==
        Formula::exists(1, Formula::disjunction(Formula::rel("P", {Term::var(1)}),
                                                Formula::rel("P", {Term::var(0)}))));
}

TEST_CASE("order atoms parse infix") {
  const Signature sig = parse_signature("sig O { fun plus/2; rel </2; }");
  const Formula f = parse_formula("x0 < plus(x0,x1)", sig);
  CHECK(f == Formula::rel("<", {Term::var(0),
                                Term::app("plus", {Term::var(0), Term::var(1)})}));
  CHECK_THROWS_AS(parse_formula("x0 < x1", sig_l()), ParseError);
}

TEST_CASE("parse errors carry positions and kinds") {
  try {
    parse_formula("exists x1 .\n plus(x0,x1) = plus(x0)", sig_l());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::Validation);
    CHECK(e.line == 2);
    CHECK(e.column == 16);
  }
  try {
    parse_formula("P(x0", sig_l());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::Syntax);
    CHECK(e.line == 1);
  }
  CHECK_THROWS_AS(parse_term("unknown(x0)", sig_l()), ParseError);
  CHECK_THROWS_AS(parse_term("plus(x0,x1) junk", sig_l()), ParseError);
}

TEST_CASE("parse_morphism") {
  const Signature src = parse_signature("sig L { fun f/1; rel P/1; }");
  const Signature dst = parse_signature("sig K { fun plus/2; fun zero/0; rel P/1; }");
  const SymbolAssignment h = parse_morphism(
      "morphism H : L -> K { fun f := plus(x0,x0); rel P := P(x0); }", src, dst);
  CHECK(h.name == "H");
  CHECK(h.mode == MorphismMode::Strict);
  CHECK(h.fun_map.at("f") == Term::app("plus", {Term::var(0), Term::var(0)}));
  CHECK(validate(h).empty());

  const SymbolAssignment g = parse_morphism(
      "morphism G : L -> K generalized {"
      " fun f := plus(x0,x0);"
      " rel P := exists x1 . plus(x1,x1) = x0; }",
      src, dst);
  CHECK(g.mode == MorphismMode::Generalized);
  CHECK(validate(g).empty());

  CHECK_THROWS_AS(
      parse_morphism("morphism H : L -> K { fun g := zero(); }", src, dst),
      ParseError);
  CHECK_THROWS_AS(parse_morphism(
                      "morphism H : Wrong -> K { fun f := plus(x0,x0); }", src,
                      dst),
                  ParseError);
}

TEST_CASE("parse_structure") {
  const Signature sig =
      parse_signature("sig L { fun plus/2; fun zero/0; rel P/1; }");
  const FiniteStructure m = parse_structure(
      "structure Z4 : L {\n"
      "  domain 4;\n"
      "  fun plus := table [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]];\n"
      "  fun zero := table 0;\n"
      "  rel P := { (0), (2) };\n"
      "}",
      sig);
  CHECK(m.size == 4);
  CHECK(m.fun_tables.at("plus")[4 * 1 + 3] == 0);
  CHECK(m.fun_tables.at("zero") == std::vector<int>{0});
  CHECK(m.rel_tables.at("P").count({2}) == 1);
  CHECK(validate_structure(m).empty());

  // missing table is a validation error
  CHECK_THROWS_AS(
      parse_structure("structure M : L { domain 2; fun plus := table "
                      "[[0,0],[0,0]]; rel P := { }; }",
                      sig),
      ParseError);
  // entry out of range
  CHECK_THROWS_AS(
      parse_structure("structure M : L { domain 2; fun zero := table 7; fun "
                      "plus := table [[0,0],[0,0]]; rel P := { }; }",
                      sig),
      ParseError);
}

TEST_CASE("parse_document resolves references in order") {
  const Document doc = parse_document(
      "sig L { fun f/1; }\n"
      "sig K { fun plus/2; }\n"
      "morphism H : L -> K { fun f := plus(x0,x0); }\n"
      "structure M : K { domain 2; fun plus := table [[0,1],[1,0]]; }\n");
  CHECK(doc.signatures.count("L") == 1);
  CHECK(doc.morphisms.count("H") == 1);
  CHECK(doc.structures.count("M") == 1);
  CHECK(doc.order.size() == 4);
  CHECK_THROWS_AS(parse_document("morphism H : L -> K { }"), ParseError);
}

TEST_CASE("canonical printing") {
  CHECK(print(Formula::eq(Term::var(0), Term::var(0))) == "x0 = x0");
  const Formula a = Formula::rel("P", {Term::var(0)});
  const Formula b = Formula::rel("P", {Term::var(1)});
  CHECK(print(Formula::disjunction(a, b)) == "(P(x0) | P(x1))");
  CHECK(print(Formula::negation(a)) == "~P(x0)");
  CHECK(print(Formula::exists(1, Formula::disjunction(a, b))) ==
        "exists x1 . (P(x0) | P(x1))");
  CHECK(print(Formula::negation(Formula::exists(0, a))) ==
        "~(exists x0 . P(x0))");
  CHECK(print(Formula::rel("<", {Term::var(0), Term::var(1)})) == "x0 < x1");
  CHECK(print(Term::app("plus", {Term::var(0), Term::app("zero", {})})) ==
        "plus(x0,zero())");
}

TEST_CASE("round-trip on an enumerated corpus") {
  const Signature sig =
      parse_signature("sig L { fun f/1; fun zero/0; rel P/1; rel </2; }");
  const auto terms = enumerate_terms(sig, 3, 2);
  for (const auto& t : terms) CHECK(parse_term(print(t), sig) == t);

  auto corpus = enumerate_formulas(sig, 4, 2, 1);
  if (corpus.size() > 1200)
    corpus.erase(corpus.begin() + 1200, corpus.end());
  REQUIRE(corpus.size() >= 1000);
  for (const auto& f : corpus) CHECK(parse_formula(print(f), sig) == f);
}

TEST_CASE("round-trip on block documents") {
  const Signature sig =
      parse_signature("sig L { fun plus/2; fun zero/0; rel P/1; rel </2; }");
  CHECK(parse_signature(print(sig)) == sig);
  CHECK(parse_signature(print(sig)).name == sig.name);

  SymbolAssignment h;
  h.name = "H";
  h.source = parse_signature("sig S { fun f/1; rel Q/2; }");
  h.target = sig;
  h.fun_map.emplace("f", Term::app("plus", {Term::var(0), Term::var(0)}));
  h.rel_map.emplace("Q", Formula::rel("<", {Term::var(0), Term::var(1)}));
  CHECK(assignments_equal(parse_morphism(print(h), h.source, h.target), h));

  FiniteStructure m;
  m.name = "M";
  m.sig = sig;
  m.size = 2;
  m.fun_tables["plus"] = {0, 1, 1, 0};
  m.fun_tables["zero"] = {0};
  m.rel_tables["P"] = {{1}};
  m.rel_tables["<"] = {{0, 1}};
  REQUIRE(validate_structure(m).empty());
  CHECK(parse_structure(print(m), sig) == m);
}

TEST_CASE("propositional atoms: 0-ary relations and empty tuples") {
  const Signature sig = parse_signature("sig B { rel Top/0; rel P/1; }");
  const Formula atom = parse_formula("Top()", sig);
  CHECK(atom == Formula::rel("Top", {}));
  CHECK(print(atom) == "Top()");
  CHECK(parse_formula(print(atom), sig) == atom);

  FiniteStructure m;
  m.sig = sig;
  m.size = 2;
  m.rel_tables["Top"] = {{}};
  m.rel_tables["P"] = {{0}};
  REQUIRE(validate_structure(m).empty());
  CHECK(parse_structure(print(m), sig) == m);
  CHECK(holds(m, atom, {}));
  m.rel_tables["Top"] = {};
  CHECK_FALSE(holds(m, atom, {}));
}

TEST_CASE("json encoding is stable") {
  const Formula f = parse_formula("exists x1 . plus(x0,x1) = zero()", sig_l());
  const nlohmann::json j = to_json(f);
  CHECK(j["node"] == "exists");
  CHECK(j["var"] == 1);
  CHECK(j["body"]["node"] == "eq");
  CHECK(j["body"]["left"]["node"] == "app");
  CHECK(j["body"]["left"]["fun"] == "plus");
  CHECK(j["body"]["left"]["args"][0]["node"] == "var");
  CHECK(j["body"]["left"]["args"][0]["index"] == 0);
  CHECK(to_json(sig_l())["functions"]["plus"] == 2);
}
