#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "folcat/gen.hpp"
#include "folcat/morphism.hpp"
#include "folcat/ominimal.hpp"
#include "folcat/structure.hpp"

// The category of all structures, built by the Grothendieck construction:
// objects pair a language with a structure over it, morphisms pair a
// language morphism H with a structure map out of the induced reduct.
// Laws are checked empirically by a seeded harness.

namespace folcat {

/// A language together with a structure over it: an explicit finite
/// structure, or a presentation backed by a QE theory.
struct StrObject {
  Signature lang;
  std::variant<FiniteStructure, QEPresentation> content;

  static StrObject of(FiniteStructure m) {
    Signature lang = m.sig;
    return StrObject{std::move(lang), std::move(m)};
  }
  static StrObject of(QEPresentation p) {
    Signature lang = p.lang();
    return StrObject{std::move(lang), std::move(p)};
  }

  bool finite() const {
    return std::holds_alternative<FiniteStructure>(content);
  }
  const FiniteStructure& structure() const {
    return std::get<FiniteStructure>(content);
  }
  const QEPresentation& presentation() const {
    return std::get<QEPresentation>(content);
  }
};

/// Structural object equality: same signature and tablewise-equal structure
/// (for presentations, the same theory and syntactically equal
/// interpretation).
inline bool objects_equal(const StrObject& a, const StrObject& b) {
  if (!(a.lang == b.lang) || a.finite() != b.finite()) return false;
  if (a.finite()) return a.structure() == b.structure();
  return a.presentation().theory == b.presentation().theory &&
         assignments_equal(a.presentation().interp.assignment(),
                           b.presentation().interp.assignment());
}

/// The reduct of an object along H into its language.
inline StrObject reduct_object(const LanguageMorphism& h, const StrObject& obj) {
  if (obj.finite()) return StrObject::of(reduct(h, obj.structure()));
  return StrObject::of(
      QEPresentation{obj.presentation().theory,
                     compose(obj.presentation().interp, h)});
}

/// A morphism (H, alpha): src -> dst, where H: src.lang -> dst.lang and
/// alpha maps reduct(H, dst) to src. For presentation-backed objects alpha
/// is the identity and is left empty.
struct StrMorphism {
  StrObject src;
  StrObject dst;
  LanguageMorphism lang_morphism;
  std::optional<StructureMap> alpha;
};

enum class StrVariant { Plain, Elementary, Unary, Ordered, OMinimal };

inline std::string variant_name(StrVariant v) {
  switch (v) {
    case StrVariant::Plain: return "plain";
    case StrVariant::Elementary: return "e";
    case StrVariant::Unary: return "e1";
    case StrVariant::Ordered: return "ordered";
    default: return "omin";
  }
}

inline StrMorphism id_str(const StrObject& obj) {
  StrMorphism out{obj, obj, identity_morphism(obj.lang), std::nullopt};
  if (obj.finite()) out.alpha = identity_map(obj.structure());
  return out;
}

/// (H', a') * (H, a) := (H' o H, a o E(H)(a')).
inline StrMorphism compose_str(const StrMorphism& g, const StrMorphism& f) {
  if (!objects_equal(f.dst, g.src))
    throw std::invalid_argument("compose_str: objects do not match");
  StrMorphism out{f.src, g.dst, compose(g.lang_morphism, f.lang_morphism),
                  std::nullopt};
  if (f.alpha.has_value() != g.alpha.has_value())
    throw std::invalid_argument("compose_str: mixed structure backings");
  if (f.alpha) {
    const StructureMap retyped = reduct_map(f.lang_morphism, *g.alpha);
    StructureMap composed;
    composed.source = reduct_object(out.lang_morphism, out.dst).structure();
    composed.target = f.src.structure();
    composed.map.resize(retyped.map.size());
    for (std::size_t i = 0; i < retyped.map.size(); ++i)
      composed.map[i] = f.alpha->map[retyped.map[i]];
    out.alpha = std::move(composed);
  }
  return out;
}

/// Checks that alpha starts at the reduct, is a homomorphism, and meets the
/// variant's extra condition at the given bounds.
inline std::vector<Violation> validate_str_morphism(
    const StrMorphism& m, StrVariant variant = StrVariant::Plain,
    const ElementarityBounds& bounds = {}) {
  std::vector<Violation> out;
  if (!(m.lang_morphism.source() == m.src.lang))
    out.push_back({"H", "source", "language morphism source differs"});
  if (!(m.lang_morphism.target() == m.dst.lang))
    out.push_back({"H", "target", "language morphism target differs"});
  if (!out.empty()) return out;

  const bool ordered_needed =
      variant == StrVariant::Ordered || variant == StrVariant::OMinimal;
  if (ordered_needed && !(m.src.lang.has_order && m.dst.lang.has_order))
    out.push_back({"lang", "order", "variant requires ordered languages"});

  if (m.src.finite() != m.dst.finite()) {
    out.push_back({"alpha", "backing", "objects have different backings"});
    return out;
  }

  if (!m.src.finite()) {
    if (m.alpha.has_value())
      out.push_back({"alpha", "identity",
                     "presentation-backed morphisms use the identity map"});
    const QEPresentation& src = m.src.presentation();
    const QEPresentation& dst = m.dst.presentation();
    if (src.theory != dst.theory)
      out.push_back({"alpha", "theory", "theories differ"});
    else if (!assignments_equal(
                 compose(dst.interp, m.lang_morphism).assignment(),
                 src.interp.assignment()))
      out.push_back({"alpha", "reduct",
                     "source is not the reduct of the target presentation"});
    if (variant == StrVariant::OMinimal && out.empty()) {
      // decomposition must go through on the source presentation
      const Formula probe = Formula::eq(Term::var(0), Term::var(0));
      try {
        decompose_via_morphism(compose(dst.interp, m.lang_morphism), probe, {},
                               dst.theory);
      } catch (const std::exception& e) {
        out.push_back({"omin", "decompose", e.what()});
      }
    }
    return out;
  }

  if (!m.alpha.has_value()) {
    out.push_back({"alpha", "total", "no structure map"});
    return out;
  }
  const FiniteStructure expected_source =
      reduct(m.lang_morphism, m.dst.structure());
  if (m.alpha->source != expected_source)
    out.push_back({"alpha", "reduct", "alpha source is not the reduct"});
  if (m.alpha->target != m.src.structure())
    out.push_back({"alpha", "target", "alpha target is not the source object"});
  if (!out.empty()) return out;
  if (!is_homomorphism(*m.alpha))
    out.push_back({"alpha", "homomorphism", "alpha is not a homomorphism"});
  if (variant == StrVariant::Elementary &&
      !is_elementary_up_to(*m.alpha, bounds))
    out.push_back({"alpha", "elementary",
                   "alpha is not elementary within the bounds"});
  if (variant == StrVariant::Unary && !preserves_unary_up_to(*m.alpha, bounds))
    out.push_back({"alpha", "unary",
                   "alpha does not preserve unary formulas within the bounds"});
  if (ordered_needed) {
    if (!is_strict_total_order(m.src.structure()))
      out.push_back({"src", "order", "source order is not a strict total order"});
    if (!is_strict_total_order(m.dst.structure()))
      out.push_back({"dst", "order", "target order is not a strict total order"});
  }
  if (variant == StrVariant::OMinimal && out.empty()) {
    if (!is_ominimal_finite(m.src.structure(), 2).ominimal)
      out.push_back({"src", "omin", "source fails the o-minimality check"});
    if (!is_ominimal_finite(m.dst.structure(), 2).ominimal)
      out.push_back({"dst", "omin", "target fails the o-minimality check"});
  }
  return out;
}

// ------------------------------------------------------------ law harness ----

struct LawFailure {
  std::string law;
  std::string detail;
};

struct LawReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<LawFailure> failures;
  bool ok() const { return failures.empty(); }
};

struct HarnessConfig {
  int max_structure = 3;      // domain bound for generated structures
  int corpus_max_size = 4;    // grammar-size bound for extension corpora
  int corpus_max_var = 2;
  int corpus_max_qdepth = 1;
  StrVariant variant = StrVariant::Plain;
};

namespace harness_detail {

inline std::vector<Signature> signature_chain(bool ordered) {
  std::vector<Signature> out = {
      make_signature("L0", {{"f", 1}, {"c", 0}}, {{"P", 1}}),
      make_signature("L1", {{"g", 2}, {"d", 0}}, {{"Q", 2}}),
      make_signature("L2", {{"plus", 2}, {"e", 0}}, {{"R", 1}}),
      make_signature("L3", {{"times", 2}, {"neg", 1}, {"u", 0}}, {{"S", 2}}),
  };
  if (ordered)
    for (auto& sig : out) sig = extend_with_order(sig);
  return out;
}

inline LanguageMorphism assignment_or_retry(const Signature& src,
                                            const Signature& dst,
                                            SplitMix64& rng, bool ordered) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto a = gen::random_assignment(src, dst, rng);
    if (!a) continue;
    // ordered variants work with order extensions: `<` maps to itself
    if (ordered && src.has_order)
      a->rel_map.insert_or_assign(
          kOrderSymbol, Formula::rel(kOrderSymbol, {Term::var(0), Term::var(1)}));
    return LanguageMorphism(std::move(*a));
  }
  throw std::logic_error("law_harness: could not generate an assignment");
}

/// f: A -> B out of a chosen target object: picks a permutation alpha so
/// that A is the relabeled reduct.
inline StrMorphism backward_step(const StrObject& target,
                                 const Signature& src_lang, SplitMix64& rng,
                                 bool ordered) {
  const LanguageMorphism h =
      assignment_or_retry(src_lang, target.lang, rng, ordered);
  const FiniteStructure red = reduct(h, target.structure());
  const std::vector<int> perm = gen::random_permutation(rng, red.size);
  const FiniteStructure src_structure = gen::pushforward(red, perm);
  StructureMap alpha{red, src_structure, perm};
  return StrMorphism{StrObject::of(src_structure), target, h, alpha};
}

}  // namespace harness_detail

/// Generates seeded composable chains in the category of languages and in
/// the category of structures, and checks the identity and associativity
/// laws componentwise, plus contravariant functoriality of the reduct.
inline LawReport law_harness(std::uint64_t seed, int case_count,
                             const HarnessConfig& config = {}) {
  LawReport report;
  report.seed = seed;
  SplitMix64 rng(seed);
  const bool ordered = config.variant == StrVariant::Ordered ||
                       config.variant == StrVariant::OMinimal;
  const auto sigs = harness_detail::signature_chain(ordered);
  const auto corpus =
      enumerate_formulas(sigs[0], config.corpus_max_size, config.corpus_max_var,
                         config.corpus_max_qdepth);
  auto fail = [&](const std::string& law, int case_index,
                  const std::string& detail) {
    report.failures.push_back(
        {law, "case " + std::to_string(case_index) + ": " + detail});
  };

  for (int case_index = 0; case_index < case_count; ++case_index) {
    ++report.cases;
    const LanguageMorphism h0 =
        harness_detail::assignment_or_retry(sigs[0], sigs[1], rng, ordered);
    const LanguageMorphism h1 =
        harness_detail::assignment_or_retry(sigs[1], sigs[2], rng, ordered);
    const LanguageMorphism h2 =
        harness_detail::assignment_or_retry(sigs[2], sigs[3], rng, ordered);

    // identity and associativity in the category of languages
    const LanguageMorphism left_id = compose(h0, identity_morphism(sigs[0]));
    const LanguageMorphism right_id = compose(identity_morphism(sigs[1]), h0);
    if (!assignments_equal(left_id.assignment(), h0.assignment()))
      fail("fol-identity-right", case_index, "H o id differs from H");
    if (!assignments_equal(right_id.assignment(), h0.assignment()))
      fail("fol-identity-left", case_index, "id o H differs from H");
    const LanguageMorphism assoc_a = compose(compose(h2, h1), h0);
    const LanguageMorphism assoc_b = compose(h2, compose(h1, h0));
    if (!assignments_equal(assoc_a.assignment(), assoc_b.assignment()))
      fail("fol-associativity", case_index, "assignments differ");
    for (const auto& f : corpus) {
      if (translate_formula(assoc_a, f) != translate_formula(assoc_b, f)) {
        fail("fol-associativity", case_index,
             "extensions differ on a corpus formula");
        break;
      }
    }

    // contravariant functoriality of the reduct
    const int domain = rng.range(1, config.max_structure);
    const FiniteStructure m2 =
        gen::random_structure(sigs[2], rng, domain, ordered);
    if (!(reduct(identity_morphism(sigs[2]), m2) == m2))
      fail("reduct-identity", case_index, "reduct along id changed tables");
    if (!(reduct(compose(h1, h0), m2) == reduct(h0, reduct(h1, m2))))
      fail("reduct-functoriality", case_index,
           "reduct of composite differs from composed reducts");

    // composable triple in the category of structures
    const StrObject obj_d = StrObject::of(
        gen::random_structure(sigs[3], rng, domain, ordered));
    const StrMorphism h =
        harness_detail::backward_step(obj_d, sigs[2], rng, ordered);
    const StrMorphism g =
        harness_detail::backward_step(h.src, sigs[1], rng, ordered);
    const StrMorphism f =
        harness_detail::backward_step(g.src, sigs[0], rng, ordered);

    for (const StrMorphism* m : {&f, &g, &h}) {
      const auto violations =
          validate_str_morphism(*m, config.variant, ElementarityBounds{3, 1, 1});
      if (!violations.empty())
        fail("str-valid", case_index,
             violations.front().symbol + ": " + violations.front().message);
    }

    auto same_str = [&](const StrMorphism& a, const StrMorphism& b) {
      return objects_equal(a.src, b.src) && objects_equal(a.dst, b.dst) &&
             assignments_equal(a.lang_morphism.assignment(),
                               b.lang_morphism.assignment()) &&
             a.alpha->map == b.alpha->map &&
             a.alpha->source == b.alpha->source &&
             a.alpha->target == b.alpha->target;
    };

    const StrMorphism left = compose_str(compose_str(h, g), f);
    const StrMorphism right = compose_str(h, compose_str(g, f));
    if (!same_str(left, right)) fail("str-associativity", case_index, "");
    if (!same_str(compose_str(f, id_str(f.src)), f))
      fail("str-identity-right", case_index, "");
    if (!same_str(compose_str(id_str(f.dst), f), f))
      fail("str-identity-left", case_index, "");

    // variant monotonicity on the generated morphism
    const ElementarityBounds bounds{3, 1, 1};
    const bool in_e =
        validate_str_morphism(f, StrVariant::Elementary, bounds).empty();
    const bool in_e1 = validate_str_morphism(f, StrVariant::Unary, bounds).empty();
    const bool in_plain =
        validate_str_morphism(f, StrVariant::Plain, bounds).empty();
    if (in_e && !in_e1)
      fail("variant-monotonicity", case_index, "e holds but e1 fails");
    if (in_e1 && !in_plain)
      fail("variant-monotonicity", case_index, "e1 holds but plain fails");
  }
  return report;
}

}  // namespace folcat
