#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "folcat/morphism.hpp"
#include "folcat/rational.hpp"
#include "folcat/structure.hpp"
#include "folcat/syntax.hpp"

// Seeded, platform-independent generation of random terms, formulas,
// symbol assignments and structures. Everything here is deterministic in
// the generator state; reports built from these generators reproduce
// byte-identically for a fixed seed.

namespace folcat {

struct SplitMix64 {
  std::uint64_t state = 0;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin() { return (next() & 1) != 0; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
};

namespace gen {

inline std::vector<std::string> function_names(const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& [fun, _] : sig.functions) out.push_back(fun);
  return out;
}

inline std::vector<std::string> constant_names(const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& [fun, arity] : sig.functions)
    if (arity == 0) out.push_back(fun);
  return out;
}

/// A ground term, if the signature has a constant.
inline std::optional<Term> ground_term(const Signature& sig, SplitMix64& rng) {
  const auto constants = constant_names(sig);
  if (constants.empty()) return std::nullopt;
  return Term::app(rng.pick(constants), {});
}

inline Term random_term(const Signature& sig, SplitMix64& rng, int budget,
                        int max_var_index) {
  const auto funs = function_names(sig);
  if (budget <= 1 || funs.empty() || rng.below(3) == 0)
    return Term::var(rng.range(0, max_var_index));
  const std::string fun = rng.pick(funs);
  const int arity = sig.functions.at(fun);
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i)
    args.push_back(random_term(sig, rng, (budget - 1) / std::max(arity, 1), max_var_index));
  return Term::app(fun, std::move(args));
}

/// A term whose variable set is exactly `required`. Fails only when the
/// signature cannot provide one (no constants for the empty set, or no
/// function symbols wide enough to join several variables).
inline std::optional<Term> term_covering(const Signature& sig, SplitMix64& rng,
                                         const std::vector<int>& required,
                                         int budget) {
  const bool grounds = !constant_names(sig).empty();
  if (required.empty()) return ground_term(sig, rng);
  if (required.size() == 1 && (budget <= 0 || rng.coin()))
    return Term::var(required[0]);

  // candidate functions that can host the variable split
  std::vector<std::string> candidates;
  for (const auto& [fun, arity] : sig.functions) {
    if (arity == 0) continue;
    if (static_cast<std::size_t>(arity) > required.size() && !grounds) continue;
    candidates.push_back(fun);
  }
  if (candidates.empty()) {
    if (required.size() == 1) return Term::var(required[0]);
    return std::nullopt;
  }
  const std::string fun = rng.pick(candidates);
  const int arity = sig.functions.at(fun);

  // distribute every required variable over the argument slots; when the
  // signature has no constants each slot must receive at least one
  std::vector<std::vector<int>> slots(arity);
  if (!grounds && static_cast<std::size_t>(arity) <= required.size()) {
    std::vector<int> shuffled = required;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    for (int i = 0; i < arity; ++i) slots[i].push_back(shuffled[i]);
    for (std::size_t i = arity; i < shuffled.size(); ++i)
      slots[rng.below(arity)].push_back(shuffled[i]);
  } else {
    for (int v : required) slots[rng.below(arity)].push_back(v);
  }
  std::vector<Term> args;
  for (int i = 0; i < arity; ++i) {
    auto arg = term_covering(sig, rng, slots[i], budget - 1);
    if (!arg) return std::nullopt;
    args.push_back(std::move(*arg));
  }
  return Term::app(fun, std::move(args));
}

/// An atomic formula (Eq or Rel) whose free variables are exactly `required`.
inline std::optional<Formula> atom_covering(const Signature& sig,
                                            SplitMix64& rng,
                                            const std::vector<int>& required,
                                            int budget) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const bool use_rel = !sig.relations.empty() && rng.coin();
    if (use_rel) {
      std::vector<std::string> rels;
      for (const auto& [rel, arity] : sig.relations) {
        if (arity == 0 && !required.empty()) continue;
        if (arity > 0 && required.empty() && constant_names(sig).empty())
          continue;
        rels.push_back(rel);
      }
      if (rels.empty()) continue;
      const std::string rel = rng.pick(rels);
      const int arity = sig.relations.at(rel);
      if (arity == 0) {
        if (required.empty()) return Formula::rel(rel, {});
        continue;
      }
      std::vector<std::vector<int>> slots(arity);
      for (int v : required) slots[rng.below(arity)].push_back(v);
      std::vector<Term> args;
      bool ok = true;
      for (int i = 0; i < arity && ok; ++i) {
        auto arg = term_covering(sig, rng, slots[i], budget);
        if (!arg) ok = false;
        else args.push_back(std::move(*arg));
      }
      if (ok) return Formula::rel(rel, std::move(args));
      continue;
    }
    // equality: split the variables over the two sides
    std::vector<int> left, right;
    for (int v : required) {
      switch (rng.below(3)) {
        case 0: left.push_back(v); break;
        case 1: right.push_back(v); break;
        default:
          left.push_back(v);
          right.push_back(v);
      }
    }
    auto l = term_covering(sig, rng, left, budget);
    auto r = term_covering(sig, rng, right, budget);
    if (l && r) return Formula::eq(std::move(*l), std::move(*r));
  }
  return std::nullopt;
}

/// A well-formed random formula with full node count roughly `budget`,
/// quantifier depth at most `max_qdepth` and variables at most
/// x_max_var_index.
inline Formula random_formula(const Signature& sig, SplitMix64& rng, int budget,
                              int max_qdepth, int max_var_index) {
  const int kind = budget <= 4 ? 0 : rng.range(0, max_qdepth > 0 ? 3 : 2);
  switch (kind) {
    case 1:
      return Formula::negation(
          random_formula(sig, rng, budget - 1, max_qdepth, max_var_index));
    case 2: {
      const int half = (budget - 1) / 2;
      return Formula::disjunction(
          random_formula(sig, rng, half, max_qdepth, max_var_index),
          random_formula(sig, rng, budget - 1 - half, max_qdepth, max_var_index));
    }
    case 3:
      return Formula::exists(
          rng.range(0, max_var_index),
          random_formula(sig, rng, budget - 1, max_qdepth - 1, max_var_index));
    default: {
      // atom
      std::vector<std::string> rels;
      for (const auto& [rel, _] : sig.relations) rels.push_back(rel);
      if (!rels.empty() && rng.coin()) {
        const std::string rel = rng.pick(rels);
        const int arity = sig.relations.at(rel);
        std::vector<Term> args;
        for (int i = 0; i < arity; ++i)
          args.push_back(random_term(sig, rng, std::max(1, (budget - 1) / std::max(arity, 1)),
                                     max_var_index));
        return Formula::rel(rel, std::move(args));
      }
      const int half = std::max(1, (budget - 1) / 2);
      return Formula::eq(random_term(sig, rng, half, max_var_index),
                         random_term(sig, rng, half, max_var_index));
    }
  }
}

/// A validated symbol assignment from source to target, or nullopt when the
/// target signature cannot host one.
inline std::optional<SymbolAssignment> random_assignment(
    const Signature& source, const Signature& target, SplitMix64& rng,
    MorphismMode mode = MorphismMode::Strict, int budget = 4) {
  SymbolAssignment a;
  a.source = source;
  a.target = target;
  a.mode = mode;
  for (const auto& [fun, arity] : source.functions) {
    std::vector<int> required;
    for (int i = 0; i < arity; ++i) required.push_back(i);
    auto image = term_covering(target, rng, required, budget);
    if (!image) return std::nullopt;
    a.fun_map.emplace(fun, std::move(*image));
  }
  for (const auto& [rel, arity] : source.relations) {
    std::vector<int> required;
    for (int i = 0; i < arity; ++i) required.push_back(i);
    auto atom = atom_covering(target, rng, required, budget);
    if (!atom) return std::nullopt;
    Formula image = std::move(*atom);
    if (mode == MorphismMode::Generalized) {
      switch (rng.below(3)) {
        case 1:
          image = Formula::negation(std::move(image));
          break;
        case 2: {
          // exists b . atom(x0..x_{n-1}, b)
          const int bound = arity;
          std::vector<int> wider = required;
          wider.push_back(bound);
          auto inner = atom_covering(target, rng, wider, budget);
          if (inner) image = Formula::exists(bound, std::move(*inner));
          break;
        }
        default:
          break;
      }
    }
    a.rel_map.emplace(rel, std::move(image));
  }
  if (!validate(a).empty()) return std::nullopt;
  return a;
}

/// A random structure; when `ordered` is set and the signature declares
/// `<`, its table is a random strict total order.
inline FiniteStructure random_structure(const Signature& sig, SplitMix64& rng,
                                        int domain_size, bool ordered = false) {
  FiniteStructure m;
  m.sig = sig;
  m.size = domain_size;
  for (const auto& [fun, arity] : sig.functions) {
    std::vector<int> table(detail::int_pow(domain_size, arity));
    for (auto& v : table) v = rng.range(0, domain_size - 1);
    m.fun_tables.emplace(fun, std::move(table));
  }
  for (const auto& [rel, arity] : sig.relations) {
    std::set<std::vector<int>> table;
    if (ordered && rel == kOrderSymbol) {
      std::vector<int> rank(domain_size);
      for (int i = 0; i < domain_size; ++i) rank[i] = i;
      for (std::size_t i = rank.size(); i > 1; --i)
        std::swap(rank[i - 1], rank[rng.below(i)]);
      for (int a = 0; a < domain_size; ++a)
        for (int b = 0; b < domain_size; ++b)
          if (rank[a] < rank[b]) table.insert({a, b});
    } else {
      for (const auto& tuple : all_tuples(domain_size, arity))
        if (rng.coin()) table.insert(tuple);
    }
    m.rel_tables.emplace(rel, std::move(table));
  }
  return m;
}

/// Relabels a structure along a permutation of its domain; the permutation
/// becomes an isomorphism from `m` onto the result.
inline FiniteStructure pushforward(const FiniteStructure& m,
                                   const std::vector<int>& perm) {
  FiniteStructure out;
  out.name = m.name + "'";
  out.sig = m.sig;
  out.size = m.size;
  for (const auto& [fun, arity] : m.sig.functions) {
    const auto& table = m.fun_tables.at(fun);
    std::vector<int> image(table.size());
    for (const auto& tuple : all_tuples(m.size, arity)) {
      std::vector<int> mapped(tuple.size());
      for (std::size_t i = 0; i < tuple.size(); ++i) mapped[i] = perm[tuple[i]];
      image[detail::table_index(mapped, m.size)] =
          perm[table[detail::table_index(tuple, m.size)]];
    }
    out.fun_tables.emplace(fun, std::move(image));
  }
  for (const auto& [rel, table] : m.rel_tables) {
    std::set<std::vector<int>> image;
    for (const auto& tuple : table) {
      std::vector<int> mapped(tuple.size());
      for (std::size_t i = 0; i < tuple.size(); ++i) mapped[i] = perm[tuple[i]];
      image.insert(std::move(mapped));
    }
    out.rel_tables.emplace(rel, std::move(image));
  }
  return out;
}

inline std::vector<int> random_permutation(SplitMix64& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

inline Rational random_rational(SplitMix64& rng, int max_abs_num = 4,
                                int max_den = 4) {
  return Rational(rng.range(-max_abs_num, max_abs_num), rng.range(1, max_den));
}

}  // namespace gen
}  // namespace folcat
