#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "folcat/syntax.hpp"

// Language morphisms: a symbol assignment mapping every source symbol to a
// target term/formula whose variables are precisely x0..x_{n-1}, and the
// induced translation of all terms and formulas.

namespace folcat {

enum class MorphismMode { Strict, Generalized };

struct SymbolAssignment {
  std::string name = "H";
  Signature source;
  Signature target;
  std::map<std::string, Term> fun_map;
  std::map<std::string, Formula> rel_map;
  MorphismMode mode = MorphismMode::Strict;
};

inline bool assignments_equal(const SymbolAssignment& a,
                              const SymbolAssignment& b) {
  return a.source == b.source && a.target == b.target &&
         a.fun_map == b.fun_map && a.rel_map == b.rel_map && a.mode == b.mode;
}

struct Violation {
  std::string symbol;
  std::string rule;
  std::string message;
};

namespace detail {

inline std::set<VarId> prefix_vars(int n) {
  std::set<VarId> out;
  for (int i = 0; i < n; ++i) out.insert(VarId{i});
  return out;
}

inline std::string var_set_text(const std::set<VarId>& vars) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& v : vars) {
    if (!first) os << ", ";
    os << "x" << v.index;
    first = false;
  }
  os << "}";
  return os.str();
}

inline bool is_atomic(const Formula& f) {
  return std::holds_alternative<Formula::Eq>(f.node().v) ||
         std::holds_alternative<Formula::Rel>(f.node().v);
}

}  // namespace detail

/// Checks totality, well-formedness of every image over the target, and the
/// "variables precisely x0..x_{n-1}" discipline (free variables, for
/// generalized relation images). Returns an empty list iff valid.
inline std::vector<Violation> validate(const SymbolAssignment& h) {
  std::vector<Violation> out;
  for (const auto& [fun, arity] : h.source.functions) {
    auto it = h.fun_map.find(fun);
    if (it == h.fun_map.end()) {
      out.push_back({fun, "total", "no image for function symbol"});
      continue;
    }
    if (!well_formed(it->second, h.target)) {
      out.push_back({fun, "well-formed", "image not well formed over target"});
      continue;
    }
    auto vars = vars_of_term(it->second);
    if (vars != detail::prefix_vars(arity))
      out.push_back({fun, "precisely",
                     "image variables " + detail::var_set_text(vars) +
                         " differ from x0..x" + std::to_string(arity - 1)});
  }
  for (const auto& [fun, _] : h.fun_map)
    if (!h.source.functions.count(fun))
      out.push_back({fun, "unknown", "image for undeclared function symbol"});
  for (const auto& [rel, arity] : h.source.relations) {
    auto it = h.rel_map.find(rel);
    if (it == h.rel_map.end()) {
      out.push_back({rel, "total", "no image for relation symbol"});
      continue;
    }
    if (!well_formed(it->second, h.target)) {
      out.push_back({rel, "well-formed", "image not well formed over target"});
      continue;
    }
    if (h.mode == MorphismMode::Strict && !detail::is_atomic(it->second)) {
      out.push_back({rel, "atomic", "strict mode requires an atomic image"});
      continue;
    }
    auto vars = free_vars(it->second);
    if (vars != detail::prefix_vars(arity))
      out.push_back({rel, "precisely",
                     "image free variables " + detail::var_set_text(vars) +
                         " differ from x0..x" + std::to_string(arity - 1)});
  }
  for (const auto& [rel, _] : h.rel_map)
    if (!h.source.relations.count(rel))
      out.push_back({rel, "unknown", "image for undeclared relation symbol"});
  return out;
}

/// A validated symbol assignment; the extension to all terms and formulas is
/// computed on demand by translate_term / translate_formula.
class LanguageMorphism {
 public:
  explicit LanguageMorphism(SymbolAssignment assignment)
      : assignment_(std::move(assignment)) {
    auto violations = validate(assignment_);
    if (!violations.empty()) {
      std::ostringstream os;
      os << "invalid symbol assignment:";
      for (const auto& v : violations)
        os << " [" << v.symbol << ": " << v.rule << "] " << v.message << ";";
      throw std::invalid_argument(os.str());
    }
  }

  const SymbolAssignment& assignment() const { return assignment_; }
  const Signature& source() const { return assignment_.source; }
  const Signature& target() const { return assignment_.target; }
  MorphismMode mode() const { return assignment_.mode; }

 private:
  SymbolAssignment assignment_;
};

/// Variables map to themselves; applications unfold the assignment image by
/// simultaneous substitution.
inline Term translate_term(const LanguageMorphism& h, const Term& t) {
  return std::visit(
      overloaded{[&](const Term::Var&) { return t; },
                 [&](const Term::App& a) {
                   auto it = h.assignment().fun_map.find(a.fun);
                   if (it == h.assignment().fun_map.end())
                     throw std::invalid_argument(
                         "translate_term: symbol not in assignment: " + a.fun);
                   auto arity = h.source().function_arity(a.fun);
                   if (!arity || *arity != static_cast<int>(a.args.size()))
                     throw std::invalid_argument("translate_term: substitution arity for " +
                                                 a.fun);
                   std::vector<Term> images;
                   images.reserve(a.args.size());
                   for (const auto& arg : a.args)
                     images.push_back(translate_term(h, arg));
                   return substitute(it->second, images);
                 }},
      t.node());
}

/// Structural recursion over the formula: atoms unfold the assignment,
/// connectives are preserved, and the quantified variable stays unchanged.
inline Formula translate_formula(const LanguageMorphism& h, const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return Formula::eq(translate_term(h, e.left),
                               translate_term(h, e.right));
          },
          [&](const Formula::Rel& r) {
            auto it = h.assignment().rel_map.find(r.rel);
            if (it == h.assignment().rel_map.end())
              throw std::invalid_argument(
                  "translate_formula: symbol not in assignment: " + r.rel);
            auto arity = h.source().relation_arity(r.rel);
            if (!arity || *arity != static_cast<int>(r.args.size()))
              throw std::invalid_argument(
                  "translate_formula: substitution arity for " + r.rel);
            std::vector<Term> images;
            images.reserve(r.args.size());
            for (const auto& arg : r.args)
              images.push_back(translate_term(h, arg));
            auto mode = h.mode() == MorphismMode::Strict
                            ? SubstMode::Strict
                            : SubstMode::Generalized;
            return substitute(it->second, images, mode);
          },
          [&](const Formula::Not& n) {
            return Formula::negation(translate_formula(h, n.arg));
          },
          [&](const Formula::Or& o) {
            return Formula::disjunction(translate_formula(h, o.left),
                                        translate_formula(h, o.right));
          },
          [&](const Formula::Exists& e) {
            return Formula::exists(e.var, translate_formula(h, e.body));
          },
      },
      f.node().v);
}

namespace detail {

inline Term canonical_fun_image(const std::string& fun, int arity) {
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) args.push_back(Term::var(i));
  return Term::app(fun, std::move(args));
}

inline Formula canonical_rel_image(const std::string& rel, int arity) {
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) args.push_back(Term::var(i));
  return Formula::rel(rel, std::move(args));
}

}  // namespace detail

/// f |-> f(x0..x_{n-1}), R |-> R(x0..x_{n-1}); fixes every term and formula.
inline LanguageMorphism identity_morphism(const Signature& sig) {
  SymbolAssignment a;
  a.name = "id";
  a.source = sig;
  a.target = sig;
  for (const auto& [fun, arity] : sig.functions)
    a.fun_map.emplace(fun, detail::canonical_fun_image(fun, arity));
  for (const auto& [rel, arity] : sig.relations)
    a.rel_map.emplace(rel, detail::canonical_rel_image(rel, arity));
  return LanguageMorphism(std::move(a));
}

/// A morphism generated by an arity- and kind-preserving symbol renaming.
inline LanguageMorphism simple_morphism(
    const Signature& source, const Signature& target,
    const std::map<std::string, std::string>& rename) {
  SymbolAssignment a;
  a.source = source;
  a.target = target;
  auto image_name = [&](const std::string& s) {
    auto it = rename.find(s);
    return it != rename.end() ? it->second : s;
  };
  for (const auto& [fun, arity] : source.functions) {
    const std::string to = image_name(fun);
    auto target_arity = target.function_arity(to);
    if (!target_arity)
      throw std::invalid_argument("simple_morphism: " + fun +
                                  " maps to non-function " + to);
    if (*target_arity != arity)
      throw std::invalid_argument("simple_morphism: arity mismatch for " + fun);
    a.fun_map.emplace(fun, detail::canonical_fun_image(to, arity));
  }
  for (const auto& [rel, arity] : source.relations) {
    const std::string to = image_name(rel);
    auto target_arity = target.relation_arity(to);
    if (!target_arity)
      throw std::invalid_argument("simple_morphism: " + rel +
                                  " maps to non-relation " + to);
    if (*target_arity != arity)
      throw std::invalid_argument("simple_morphism: arity mismatch for " + rel);
    a.rel_map.emplace(rel, detail::canonical_rel_image(to, arity));
  }
  return LanguageMorphism(std::move(a));
}

/// The syntactic inclusion of a signature into a larger one.
inline LanguageMorphism inclusion_morphism(const Signature& sub,
                                           const Signature& super) {
  for (const auto& [fun, arity] : sub.functions)
    if (super.function_arity(fun) != arity)
      throw std::invalid_argument("inclusion_morphism: missing function " + fun);
  for (const auto& [rel, arity] : sub.relations)
    if (super.relation_arity(rel) != arity)
      throw std::invalid_argument("inclusion_morphism: missing relation " + rel);
  return simple_morphism(sub, super, {});
}

/// Composite assignment f |-> later(first(f)), R |-> later(first(R)); the
/// extension coincides with composing the two extensions.
inline LanguageMorphism compose(const LanguageMorphism& later,
                                const LanguageMorphism& first) {
  if (!(first.target() == later.source()))
    throw std::invalid_argument("compose: signature mismatch");
  SymbolAssignment a;
  a.name = later.assignment().name + "." + first.assignment().name;
  a.source = first.source();
  a.target = later.target();
  a.mode = (first.mode() == MorphismMode::Generalized ||
            later.mode() == MorphismMode::Generalized)
               ? MorphismMode::Generalized
               : MorphismMode::Strict;
  for (const auto& [fun, image] : first.assignment().fun_map)
    a.fun_map.emplace(fun, translate_term(later, image));
  for (const auto& [rel, image] : first.assignment().rel_map)
    a.rel_map.emplace(rel, translate_formula(later, image));
  return LanguageMorphism(std::move(a));
}

/// Extends H: L -> L' to H_<: L_< -> L'_< by fixing the order symbol, so
/// that translating an L-formula first and including it in L'_< agrees with
/// including it in L_< and translating.
inline LanguageMorphism extend_with_order(const LanguageMorphism& h) {
  SymbolAssignment a = h.assignment();
  a.source = extend_with_order(h.source());
  a.target = extend_with_order(h.target());
  if (!h.source().has_order)
    a.rel_map.emplace(kOrderSymbol, detail::canonical_rel_image(kOrderSymbol, 2));
  return LanguageMorphism(std::move(a));
}

/// Pointwise syntactic equality of the two extensions on a formula corpus.
inline bool extensionally_equal(const LanguageMorphism& a,
                                const LanguageMorphism& b,
                                const std::vector<Formula>& corpus) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) return false;
  for (const auto& f : corpus)
    if (translate_formula(a, f) != translate_formula(b, f)) return false;
  return true;
}

}  // namespace folcat
