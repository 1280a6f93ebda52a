#pragma once

#include <map>
#include <vector>

#include "folcat/gen.hpp"
#include "folcat/linear.hpp"

// Test-side generator for random DLO/ODAG formulas: one free variable x0,
// optional rational parameters in x8/x9, bound variables x1..x3.

namespace folcat::testgen {

struct TheoryCase {
  Formula formula;
  std::map<int, Rational> params;
};

inline Term random_theory_term(TheoryId theory, SplitMix64& rng,
                               const std::vector<int>& scope, int depth) {
  if (theory == TheoryId::Dlo || depth <= 0 || rng.below(3) == 0)
    return Term::var(rng.pick(scope));
  switch (rng.below(4)) {
    case 0:
      return Term::app("zero", {});
    case 1:
      return Term::app("minus",
                       {random_theory_term(theory, rng, scope, depth - 1)});
    default:
      return Term::app("plus",
                       {random_theory_term(theory, rng, scope, depth - 1),
                        random_theory_term(theory, rng, scope, depth - 1)});
  }
}

inline Formula random_theory_atom(TheoryId theory, SplitMix64& rng,
                                  const std::vector<int>& scope) {
  const Term l = random_theory_term(theory, rng, scope, 2);
  const Term r = random_theory_term(theory, rng, scope, 2);
  if (rng.coin()) return Formula::eq(l, r);
  return Formula::rel(kOrderSymbol, {l, r});
}

inline Formula random_theory_body(TheoryId theory, SplitMix64& rng,
                                  std::vector<int> scope, int atoms,
                                  int quantifiers, int next_bound) {
  if (quantifiers > 0 && atoms >= 2 && rng.below(3) == 0) {
    std::vector<int> inner = scope;
    inner.push_back(next_bound);
    return Formula::exists(
        next_bound, random_theory_body(theory, rng, std::move(inner), atoms,
                                       quantifiers - 1, next_bound + 1));
  }
  if (atoms <= 1) return random_theory_atom(theory, rng, scope);
  switch (rng.below(4)) {
    case 0:
      return Formula::negation(random_theory_body(
          theory, rng, scope, atoms - 1, quantifiers, next_bound));
    case 1: {
      const int left = 1 + static_cast<int>(rng.below(atoms - 1));
      return Formula::disjunction(
          random_theory_body(theory, rng, scope, left, quantifiers, next_bound),
          random_theory_body(theory, rng, scope, atoms - left, quantifiers,
                             next_bound));
    }
    case 2: {  // conjunction via the core connectives
      const int left = 1 + static_cast<int>(rng.below(atoms - 1));
      return Formula::negation(Formula::disjunction(
          Formula::negation(random_theory_body(theory, rng, scope, left,
                                               quantifiers, next_bound)),
          Formula::negation(random_theory_body(theory, rng, scope, atoms - left,
                                               quantifiers, next_bound))));
    }
    default:
      return random_theory_atom(theory, rng, scope);
  }
}

/// Up to `max_atoms` atoms, `max_quantifiers` nested exists and
/// `param_count` rational parameters.
inline TheoryCase random_theory_case(TheoryId theory, SplitMix64& rng,
                                     int max_atoms = 6, int max_quantifiers = 3,
                                     int param_count = 2) {
  TheoryCase out{Formula::eq(Term::var(0), Term::var(0)), {}};
  std::vector<int> scope = {0};
  for (int p = 0; p < param_count; ++p) {
    if (!rng.coin()) continue;
    const int var = 8 + p;
    scope.push_back(var);
    out.params.emplace(var, gen::random_rational(rng));
  }
  const int atoms = 1 + static_cast<int>(rng.below(max_atoms));
  out.formula =
      random_theory_body(theory, rng, std::move(scope), atoms, max_quantifiers, 1);
  return out;
}

}  // namespace folcat::testgen
