#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "folcat/morphism.hpp"
#include "folcat/syntax.hpp"

// Finite structures, Tarskian satisfaction, the reduct of a structure along
// a language morphism, and bounded homomorphism/elementarity checks.

namespace folcat {

/// Explicit interpretation tables over the domain 0..size-1. Function
/// tables are stored flat, indexed row-major by the argument tuple.
struct FiniteStructure {
  std::string name = "M";
  Signature sig;
  int size = 1;
  std::map<std::string, std::vector<int>> fun_tables;
  std::map<std::string, std::set<std::vector<int>>> rel_tables;
};

/// Tablewise equality; names are labels and do not participate.
inline bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  return a.sig == b.sig && a.size == b.size && a.fun_tables == b.fun_tables &&
         a.rel_tables == b.rel_tables;
}
inline bool operator!=(const FiniteStructure& a, const FiniteStructure& b) {
  return !(a == b);
}

namespace detail {

inline long long int_pow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

inline std::size_t table_index(const std::vector<int>& tuple, int domain) {
  std::size_t idx = 0;
  for (int v : tuple) idx = idx * static_cast<std::size_t>(domain) + v;
  return idx;
}

}  // namespace detail

inline std::vector<Violation> validate_structure(const FiniteStructure& m) {
  std::vector<Violation> out;
  if (m.size <= 0) {
    out.push_back({"domain", "size", "domain must be nonempty"});
    return out;
  }
  for (const auto& [fun, arity] : m.sig.functions) {
    auto it = m.fun_tables.find(fun);
    if (it == m.fun_tables.end()) {
      out.push_back({fun, "total", "function symbol has no table"});
      continue;
    }
    if (static_cast<long long>(it->second.size()) !=
        detail::int_pow(m.size, arity)) {
      out.push_back({fun, "shape", "table size differs from size^arity"});
      continue;
    }
    for (int v : it->second)
      if (v < 0 || v >= m.size) {
        out.push_back({fun, "range", "table entry outside the domain"});
        break;
      }
  }
  for (const auto& [fun, _] : m.fun_tables)
    if (!m.sig.functions.count(fun))
      out.push_back({fun, "unknown", "table for undeclared function symbol"});
  for (const auto& [rel, arity] : m.sig.relations) {
    auto it = m.rel_tables.find(rel);
    if (it == m.rel_tables.end()) {
      out.push_back({rel, "total", "relation symbol has no table"});
      continue;
    }
    for (const auto& tuple : it->second) {
      if (static_cast<int>(tuple.size()) != arity) {
        out.push_back({rel, "shape", "tuple arity mismatch"});
        break;
      }
      bool in_range = true;
      for (int v : tuple) in_range = in_range && v >= 0 && v < m.size;
      if (!in_range) {
        out.push_back({rel, "range", "tuple entry outside the domain"});
        break;
      }
    }
  }
  for (const auto& [rel, _] : m.rel_tables)
    if (!m.sig.relations.count(rel))
      out.push_back({rel, "unknown", "table for undeclared relation symbol"});
  return out;
}

/// Finite assignment of domain elements to variable indices.
using Valuation = std::map<int, int>;

inline int eval_term(const FiniteStructure& m, const Term& t,
                     const Valuation& nu) {
  return std::visit(
      overloaded{[&](const Term::Var& v) {
                   auto it = nu.find(v.var.index);
                   if (it == nu.end())
                     throw std::invalid_argument(
                         "eval_term: unbound variable x" +
                         std::to_string(v.var.index));
                   return it->second;
                 },
                 [&](const Term::App& a) {
                   auto table = m.fun_tables.find(a.fun);
                   if (table == m.fun_tables.end())
                     throw std::invalid_argument(
                         "eval_term: no table for " + a.fun);
                   std::vector<int> tuple;
                   tuple.reserve(a.args.size());
                   for (const auto& arg : a.args)
                     tuple.push_back(eval_term(m, arg, nu));
                   return table->second[detail::table_index(tuple, m.size)];
                 }},
      t.node());
}

/// Tarskian satisfaction; exists ranges over the whole finite domain.
inline bool holds(const FiniteStructure& m, const Formula& f,
                  const Valuation& nu) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return eval_term(m, e.left, nu) == eval_term(m, e.right, nu);
          },
          [&](const Formula::Rel& r) {
            auto table = m.rel_tables.find(r.rel);
            if (table == m.rel_tables.end())
              throw std::invalid_argument("holds: no table for " + r.rel);
            std::vector<int> tuple;
            tuple.reserve(r.args.size());
            for (const auto& arg : r.args)
              tuple.push_back(eval_term(m, arg, nu));
            return table->second.count(tuple) > 0;
          },
          [&](const Formula::Not& n) { return !holds(m, n.arg, nu); },
          [&](const Formula::Or& o) {
            return holds(m, o.left, nu) || holds(m, o.right, nu);
          },
          [&](const Formula::Exists& e) {
            Valuation extended = nu;
            for (int a = 0; a < m.size; ++a) {
              extended[e.var.index] = a;
              if (holds(m, e.body, extended)) return true;
            }
            return false;
          },
      },
      f.node().v);
}

inline std::vector<std::vector<int>> all_tuples(int domain, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(arity, 0);
  while (true) {
    out.push_back(tuple);
    int pos = arity - 1;
    while (pos >= 0 && ++tuple[pos] == domain) tuple[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

inline std::vector<Valuation> all_valuations(const std::set<VarId>& vars,
                                             int domain) {
  std::vector<Valuation> out;
  std::vector<int> indices;
  for (const auto& v : vars) indices.push_back(v.index);
  for (const auto& tuple : all_tuples(domain, static_cast<int>(indices.size()))) {
    Valuation nu;
    for (std::size_t i = 0; i < indices.size(); ++i) nu[indices[i]] = tuple[i];
    out.push_back(std::move(nu));
  }
  return out;
}

/// The structure induced on the source language: same domain, each source
/// symbol interpreted as the evaluation of its image in the target structure.
inline FiniteStructure reduct(const LanguageMorphism& h,
                              const FiniteStructure& target) {
  if (!(target.sig == h.target()))
    throw std::invalid_argument("reduct: structure not over the morphism target");
  FiniteStructure out;
  out.name = target.name;
  out.sig = h.source();
  out.size = target.size;
  for (const auto& [fun, arity] : h.source().functions) {
    const Term& image = h.assignment().fun_map.at(fun);
    std::vector<int> table;
    table.reserve(detail::int_pow(target.size, arity));
    for (const auto& tuple : all_tuples(target.size, arity)) {
      Valuation nu;
      for (int i = 0; i < arity; ++i) nu[i] = tuple[i];
      table.push_back(eval_term(target, image, nu));
    }
    out.fun_tables.emplace(fun, std::move(table));
  }
  for (const auto& [rel, arity] : h.source().relations) {
    const Formula& image = h.assignment().rel_map.at(rel);
    std::set<std::vector<int>> table;
    for (const auto& tuple : all_tuples(target.size, arity)) {
      Valuation nu;
      for (int i = 0; i < arity; ++i) nu[i] = tuple[i];
      if (holds(target, image, nu)) table.insert(tuple);
    }
    out.rel_tables.emplace(rel, std::move(table));
  }
  return out;
}

/// A total map between the domains of two structures over one signature.
/// The homomorphism property is checked, never assumed.
struct StructureMap {
  FiniteStructure source;
  FiniteStructure target;
  std::vector<int> map;
};

inline StructureMap identity_map(const FiniteStructure& m) {
  StructureMap out{m, m, {}};
  out.map.resize(m.size);
  for (int i = 0; i < m.size; ++i) out.map[i] = i;
  return out;
}

/// The same underlying function, retyped between the reducts.
inline StructureMap reduct_map(const LanguageMorphism& h,
                               const StructureMap& alpha) {
  return StructureMap{reduct(h, alpha.source), reduct(h, alpha.target),
                      alpha.map};
}

inline bool is_homomorphism(const StructureMap& alpha) {
  const auto& src = alpha.source;
  const auto& dst = alpha.target;
  if (!(src.sig == dst.sig)) return false;
  if (static_cast<int>(alpha.map.size()) != src.size) return false;
  for (int v : alpha.map)
    if (v < 0 || v >= dst.size) return false;
  for (const auto& [fun, arity] : src.sig.functions) {
    for (const auto& tuple : all_tuples(src.size, arity)) {
      std::vector<int> mapped;
      mapped.reserve(tuple.size());
      for (int v : tuple) mapped.push_back(alpha.map[v]);
      const int here =
          alpha.map[src.fun_tables.at(fun)[detail::table_index(tuple, src.size)]];
      const int there =
          dst.fun_tables.at(fun)[detail::table_index(mapped, dst.size)];
      if (here != there) return false;
    }
  }
  for (const auto& [rel, _] : src.sig.relations) {
    for (const auto& tuple : src.rel_tables.at(rel)) {
      std::vector<int> mapped;
      mapped.reserve(tuple.size());
      for (int v : tuple) mapped.push_back(alpha.map[v]);
      if (!dst.rel_tables.at(rel).count(mapped)) return false;
    }
  }
  return true;
}

inline bool is_embedding(const StructureMap& alpha) {
  if (!is_homomorphism(alpha)) return false;
  std::set<int> image;
  for (int v : alpha.map)
    if (!image.insert(v).second) return false;  // injectivity
  // relations reflected
  for (const auto& [rel, arity] : alpha.source.sig.relations) {
    for (const auto& tuple : all_tuples(alpha.source.size, arity)) {
      std::vector<int> mapped;
      mapped.reserve(tuple.size());
      for (int v : tuple) mapped.push_back(alpha.map[v]);
      if (alpha.target.rel_tables.at(rel).count(mapped) &&
          !alpha.source.rel_tables.at(rel).count(tuple))
        return false;
    }
  }
  return true;
}

/// Bounds for the decidable fragment of elementarity checking.
struct ElementarityBounds {
  int max_size = 4;      // grammar size of the checked formulas
  int max_qdepth = 1;
  int max_var_index = 1;
};

/// True iff satisfaction transfers both ways along alpha for every formula
/// within the bounds and every valuation into the source. A bounded
/// approximation of elementarity, nothing more.
inline bool is_elementary_up_to(const StructureMap& alpha,
                                const ElementarityBounds& bounds) {
  const auto corpus =
      enumerate_formulas(alpha.source.sig, bounds.max_size,
                         bounds.max_var_index, bounds.max_qdepth);
  for (const auto& f : corpus) {
    for (const auto& nu : all_valuations(free_vars(f), alpha.source.size)) {
      Valuation mapped;
      for (const auto& [var, val] : nu) mapped[var] = alpha.map[val];
      if (holds(alpha.source, f, nu) != holds(alpha.target, f, mapped))
        return false;
    }
  }
  return true;
}

/// One-directional preservation, restricted to formulas with exactly one
/// free variable.
inline bool preserves_unary_up_to(const StructureMap& alpha,
                                  const ElementarityBounds& bounds) {
  const auto corpus =
      enumerate_formulas(alpha.source.sig, bounds.max_size,
                         bounds.max_var_index, bounds.max_qdepth);
  for (const auto& f : corpus) {
    auto fv = free_vars(f);
    if (fv.size() != 1) continue;
    for (const auto& nu : all_valuations(fv, alpha.source.size)) {
      Valuation mapped;
      for (const auto& [var, val] : nu) mapped[var] = alpha.map[val];
      if (holds(alpha.source, f, nu) && !holds(alpha.target, f, mapped))
        return false;
    }
  }
  return true;
}

/// Is the `<` table a strict total order?
inline bool is_strict_total_order(const FiniteStructure& m) {
  auto it = m.rel_tables.find(kOrderSymbol);
  if (it == m.rel_tables.end()) return false;
  const auto& table = it->second;
  auto less = [&](int a, int b) {
    return table.count(std::vector<int>{a, b}) > 0;
  };
  for (int a = 0; a < m.size; ++a)
    if (less(a, a)) return false;
  for (int a = 0; a < m.size; ++a)
    for (int b = 0; b < m.size; ++b) {
      if (a != b && !less(a, b) && !less(b, a)) return false;
      for (int c = 0; c < m.size; ++c)
        if (less(a, b) && less(b, c) && !less(a, c)) return false;
    }
  return true;
}

struct TransferCounterexample {
  Formula formula;
  Valuation valuation;
  bool holds_in_reduct = false;
  bool holds_in_target = false;
};

struct TransferReport {
  std::size_t checked_pairs = 0;
  std::vector<TransferCounterexample> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

/// Exhaustive check of the satisfaction-transfer biconditional: for every
/// corpus formula and every valuation on its free variables,
/// reduct(H, M') satisfies phi iff M' satisfies H(phi).
inline TransferReport check_transfer(const LanguageMorphism& h,
                                     const FiniteStructure& target,
                                     const std::vector<Formula>& corpus) {
  TransferReport report;
  const FiniteStructure source = reduct(h, target);
  for (const auto& f : corpus) {
    const Formula translated = translate_formula(h, f);
    for (const auto& nu : all_valuations(free_vars(f), target.size)) {
      ++report.checked_pairs;
      const bool lhs = holds(source, f, nu);
      const bool rhs = holds(target, translated, nu);
      if (lhs != rhs)
        report.counterexamples.push_back({f, nu, lhs, rhs});
    }
  }
  return report;
}

}  // namespace folcat
