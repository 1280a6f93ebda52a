#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folcat/gen.hpp"
#include "folcat/parse.hpp"
#include "folcat/print.hpp"
#include "folcat/structure.hpp"

using namespace folcat;

namespace {

Signature sig_group() {
  return parse_signature("sig G { fun plus/2; fun zero/0; }");
}

// Z modulo n with plus and zero; tables computed from modular arithmetic,
// which is the oracle the library tables are checked against.
FiniteStructure z_mod(int n) {
  FiniteStructure m;
  m.name = "Z" + std::to_string(n);
  m.sig = sig_group();
  m.size = n;
  std::vector<int> plus(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) plus[a * n + b] = (a + b) % n;
  m.fun_tables["plus"] = plus;
  m.fun_tables["zero"] = {0};
  return m;
}

Signature sig_src() { return parse_signature("sig S { fun f/1; rel P/1; }"); }

LanguageMorphism doubling_morphism() {
  return LanguageMorphism(parse_morphism(
      "morphism H : S -> G { fun f := plus(x0,x0); rel P := plus(x0,x0) = zero(); }",
      sig_src(), sig_group()));
}

FiniteStructure chain(int n) {
  FiniteStructure m;
  m.name = "C" + std::to_string(n);
  m.sig = parse_signature("sig O { rel </2; }");
  m.size = n;
  std::set<std::vector<int>> less;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) less.insert({a, b});
  m.rel_tables["<"] = less;
  return m;
}

}  // namespace

TEST_CASE("eval_term") {
  const FiniteStructure z4 = z_mod(4);
  REQUIRE(validate_structure(z4).empty());
  CHECK(eval_term(z4, Term::var(0), {{0, 3}}) == 3);
  CHECK(eval_term(z4, parse_term("plus(x0,x0)", z4.sig), {{0, 3}}) == (3 + 3) % 4);
  CHECK(eval_term(z4, parse_term("zero()", z4.sig), {}) == 0);
  CHECK_THROWS_AS(eval_term(z4, Term::var(7), {{0, 3}}), std::invalid_argument);
}

TEST_CASE("holds implements Tarskian satisfaction") {
  const FiniteStructure z4 = z_mod(4);
  CHECK(holds(z4, Formula::eq(Term::var(0), Term::var(0)), {{0, 2}}));

  const Formula halvable =
      parse_formula("exists x1 . plus(x1,x1) = x0", z4.sig);
  // exhaustive witness check: doubling mod 4 hits {0, 2} only
  for (int a = 0; a < 4; ++a) {
    bool expect = false;
    for (int w = 0; w < 4; ++w) expect = expect || (w + w) % 4 == a;
    CHECK(holds(z4, halvable, {{0, a}}) == expect);
  }
  CHECK_FALSE(holds(z4, halvable, {{0, 1}}));
  CHECK(holds(z4, halvable, {{0, 2}}));
}

TEST_CASE("reduct builds tables by evaluating the images") {
  const LanguageMorphism h = doubling_morphism();
  const FiniteStructure z4 = z_mod(4);
  const FiniteStructure m = reduct(h, z4);
  CHECK(m.sig == sig_src());
  CHECK(m.size == z4.size);
  CHECK(m.fun_tables.at("f") == std::vector<int>{0, 2, 0, 2});
  CHECK(m.rel_tables.at("P") ==
        std::set<std::vector<int>>{{0}, {2}});
}

TEST_CASE("reduct along the identity is the identity") {
  const FiniteStructure z4 = z_mod(4);
  CHECK(reduct(identity_morphism(z4.sig), z4) == z4);
}

TEST_CASE("reduct_map keeps the underlying function") {
  const FiniteStructure z2 = z_mod(2), z4 = z_mod(4);
  StructureMap alpha{z2, z4, {0, 2}};  // doubling Z2 -> Z4
  // exhaustive table walk: alpha(a + b mod 2) == alpha(a) + alpha(b) mod 4
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(alpha.map[(a + b) % 2] == (alpha.map[a] + alpha.map[b]) % 4);
  CHECK(is_homomorphism(alpha));
  CHECK(is_embedding(alpha));

  const LanguageMorphism h = doubling_morphism();
  const StructureMap mapped = reduct_map(h, alpha);
  CHECK(mapped.map == alpha.map);
  CHECK(mapped.source == reduct(h, z2));
  CHECK(mapped.target == reduct(h, z4));
  CHECK(is_homomorphism(mapped));

  const StructureMap id = identity_map(z4);
  CHECK(reduct_map(identity_morphism(z4.sig), id).map == id.map);
}

TEST_CASE("reduct_map preserves the homomorphism property on random cases") {
  SplitMix64 rng(555);
  const Signature src = sig_src(), dst = sig_group();
  for (int i = 0; i < 40; ++i) {
    auto a = gen::random_assignment(src, dst, rng);
    REQUIRE(a.has_value());
    const LanguageMorphism h{std::move(*a)};
    const FiniteStructure m = gen::random_structure(dst, rng, rng.range(1, 4));
    const std::vector<int> perm = gen::random_permutation(rng, m.size);
    const StructureMap alpha{m, gen::pushforward(m, perm), perm};
    REQUIRE(is_homomorphism(alpha));
    CHECK(is_homomorphism(reduct_map(h, alpha)));
  }
}

TEST_CASE("morphism equality: syntactic and corpus-extensional") {
  const LanguageMorphism h = doubling_morphism();
  const auto corpus = enumerate_formulas(sig_src(), 4, 1, 1);
  CHECK(extensionally_equal(h, h, corpus));
  SymbolAssignment other = h.assignment();
  other.fun_map.insert_or_assign(
      "f", parse_term("plus(x0,plus(x0,zero()))", sig_group()));
  const LanguageMorphism h2{other};
  CHECK_FALSE(assignments_equal(h.assignment(), h2.assignment()));
  // different assignments, same behavior on every corpus formula in the
  // structure: syntactic translations differ
  CHECK_FALSE(extensionally_equal(h, h2, corpus));
}

TEST_CASE("homomorphism and embedding checks") {
  const FiniteStructure c2 = chain(2);
  CHECK(is_homomorphism(identity_map(c2)));
  CHECK(is_embedding(identity_map(c2)));

  StructureMap constant{c2, c2, {0, 0}};
  CHECK_FALSE(is_embedding(constant));   // injectivity fails
  CHECK_FALSE(is_homomorphism(constant));  // (0,1) in < must map into <

  // a non-injective homomorphism without relations
  const FiniteStructure z2 = z_mod(2), z1 = z_mod(1);
  StructureMap collapse{z2, z1, {0, 0}};
  CHECK(is_homomorphism(collapse));
  CHECK_FALSE(is_embedding(collapse));
}

TEST_CASE("check_transfer finds no counterexamples") {
  const LanguageMorphism h = doubling_morphism();
  const FiniteStructure z4 = z_mod(4);

  // quantifier-free corpus: the reduct tables are built from these atoms
  const auto atoms = enumerate_formulas(sig_src(), 3, 1, 0);
  REQUIRE(atoms.size() > 10);
  const TransferReport qf = check_transfer(h, z4, atoms);
  CHECK(qf.ok());
  CHECK(qf.checked_pairs > 0);

  // quantified corpus
  const auto corpus = enumerate_formulas(sig_src(), 4, 1, 1);
  CHECK(check_transfer(h, z4, corpus).ok());

  // identity morphism: trivially zero counterexamples
  CHECK(check_transfer(identity_morphism(z4.sig), z4, enumerate_formulas(z4.sig, 3, 1, 1))
            .ok());
}

TEST_CASE("contravariant functoriality of reduct") {
  const Signature a = parse_signature("sig A { fun f/1; rel P/1; }");
  const Signature b = parse_signature("sig B { fun g/1; rel Q/1; }");
  const LanguageMorphism h0 = LanguageMorphism(parse_morphism(
      "morphism H0 : A -> B { fun f := g(x0); rel P := Q(g(x0)); }", a, b));
  const LanguageMorphism h1 = LanguageMorphism(parse_morphism(
      "morphism H1 : B -> G { fun g := plus(x0,x0); rel Q := x0 = zero(); }",
      b, sig_group()));
  const FiniteStructure z4 = z_mod(4);
  CHECK(reduct(compose(h1, h0), z4) == reduct(h0, reduct(h1, z4)));
}

TEST_CASE("bounded elementarity") {
  const FiniteStructure c1 = chain(1), c2 = chain(2);
  const ElementarityBounds bounds{4, 1, 1};

  CHECK(is_elementary_up_to(identity_map(c2), bounds));

  // an isomorphism transports satisfaction at every bound
  FiniteStructure c2_flipped = c2;
  c2_flipped.rel_tables["<"] = {{1, 0}};
  StructureMap iso{c2, c2_flipped, {1, 0}};
  CHECK(is_homomorphism(iso));
  CHECK(is_elementary_up_to(iso, bounds));
  CHECK(is_elementary_up_to(iso, ElementarityBounds{5, 2, 2}));

  // the 1-chain embeds into the 2-chain but fails at depth 1:
  // exists x1 . x0 < x1 distinguishes them
  StructureMap incl{c1, c2, {0}};
  CHECK(is_embedding(incl));
  CHECK(is_elementary_up_to(incl, ElementarityBounds{4, 0, 1}));
  CHECK_FALSE(is_elementary_up_to(incl, bounds));
}

TEST_CASE("unary preservation is weaker than elementarity") {
  const Signature sig = parse_signature("sig U { rel P/1; }");
  const ElementarityBounds bounds{3, 1, 1};

  // search all pairs of 2-element structures and all maps for a witness
  std::vector<std::set<std::vector<int>>> p_tables = {
      {}, {{0}}, {{1}}, {{0}, {1}}};
  bool found = false;
  for (const auto& pm : p_tables) {
    for (const auto& pn : p_tables) {
      FiniteStructure m, n;
      m.sig = n.sig = sig;
      m.size = n.size = 2;
      m.rel_tables["P"] = pm;
      n.rel_tables["P"] = pn;
      for (int i0 = 0; i0 < 2; ++i0)
        for (int i1 = 0; i1 < 2; ++i1) {
          StructureMap alpha{m, n, {i0, i1}};
          if (preserves_unary_up_to(alpha, bounds) &&
              !is_elementary_up_to(alpha, bounds))
            found = true;
        }
    }
  }
  CHECK(found);

  // frozen witness: collapsing both P-points onto one preserves every unary
  // formula but not the binary ~(x0 = x1)
  FiniteStructure m, n;
  m.sig = n.sig = sig;
  m.size = n.size = 2;
  m.rel_tables["P"] = {{0}, {1}};
  n.rel_tables["P"] = {{0}, {1}};
  StructureMap collapse{m, n, {0, 0}};
  CHECK(preserves_unary_up_to(collapse, bounds));
  CHECK_FALSE(is_elementary_up_to(collapse, bounds));

  // anything elementary also preserves unary formulas
  CHECK(preserves_unary_up_to(identity_map(m), bounds));
}

TEST_CASE("order preservation along an order extension") {
  const Signature src = parse_signature("sig S { fun f/1; rel P/1; }");
  const Signature dst = parse_signature("sig G { fun plus/2; fun zero/0; }");
  const LanguageMorphism h = LanguageMorphism(parse_morphism(
      "morphism H : S -> G { fun f := plus(x0,x0); rel P := x0 = zero(); }",
      src, dst));
  const LanguageMorphism ho = extend_with_order(h);

  FiniteStructure m = z_mod(3);
  m.sig = extend_with_order(m.sig);
  m.rel_tables["<"] = {{0, 1}, {0, 2}, {1, 2}};
  REQUIRE(validate_structure(m).empty());
  REQUIRE(is_strict_total_order(m));

  const FiniteStructure r = reduct(ho, m);
  CHECK(r.rel_tables.at("<") == m.rel_tables.at("<"));
  CHECK(r.size == m.size);
}

TEST_CASE("strict total order recognition") {
  CHECK(is_strict_total_order(chain(3)));
  FiniteStructure empty_order = chain(2);
  empty_order.rel_tables["<"] = {};
  CHECK_FALSE(is_strict_total_order(empty_order));
  FiniteStructure reflexive = chain(2);
  reflexive.rel_tables["<"].insert({0, 0});
  CHECK_FALSE(is_strict_total_order(reflexive));
}
