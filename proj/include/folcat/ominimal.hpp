#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "folcat/interval.hpp"
#include "folcat/morphism.hpp"
#include "folcat/qe.hpp"
#include "folcat/structure.hpp"

// Canonical interval decomposition of unary definable sets over the two QE
// theories, the reduct-side decomposition through a language morphism, an
// elimination-free satisfaction oracle, and the finite o-minimality check.

namespace folcat {

/// The canonical rational model of a theory; satisfaction over it is
/// decided by quantifier elimination, never by enumeration.
struct QEStructure {
  TheoryId theory = TheoryId::Dlo;
};

/// A definable presentation of a structure over `lang`: the reduct of the
/// canonical rational model along `interp`. Reducts of presentations
/// compose on the interpretation side.
struct QEPresentation {
  TheoryId theory = TheoryId::Dlo;
  LanguageMorphism interp;  // lang -> theory signature
  const Signature& lang() const { return interp.source(); }
};

namespace omin_detail {

inline void collect_quantified_vars(const Formula& f, std::set<int>& out) {
  std::visit(overloaded{
                 [&](const Formula::Eq&) {},
                 [&](const Formula::Rel&) {},
                 [&](const Formula::Not& n) { collect_quantified_vars(n.arg, out); },
                 [&](const Formula::Or& o) {
                   collect_quantified_vars(o.left, out);
                   collect_quantified_vars(o.right, out);
                 },
                 [&](const Formula::Exists& e) {
                   out.insert(e.var.index);
                   collect_quantified_vars(e.body, out);
                 },
             },
             f.node().v);
}

}  // namespace omin_detail

// ------------------------------------------------------------ decompose ----

/// Rational roots of the x0-atoms of a quantifier-free DNF, sorted.
inline std::vector<Rational> unary_breakpoints(const Dnf& d) {
  std::vector<Rational> out;
  for (const auto& conj : d.disjuncts) {
    for (const auto& atom : conj) {
      for (const auto& [v, c] : atom.expr.coeffs) {
        if (v != 0)
          throw std::logic_error("unary_breakpoints: atom mentions x" +
                                 std::to_string(v));
        (void)c;
      }
      const Rational c = atom.expr.coeff(0);
      if (!c.is_zero()) out.push_back(-(atom.expr.constant / c));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The sample set the acceptance contract prescribes: every breakpoint,
/// every midpoint of consecutive breakpoints, and one rational beyond each
/// extreme (0 alone when there are no breakpoints).
inline std::vector<Rational> probe_points(const std::vector<Rational>& breaks) {
  if (breaks.empty()) return {Rational(0)};
  std::vector<Rational> out;
  out.push_back(breaks.front() - Rational(1));
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    out.push_back(breaks[i]);
    if (i + 1 < breaks.size())
      out.push_back((breaks[i] + breaks[i + 1]) * Rational(1, 2));
  }
  out.push_back(breaks.back() + Rational(1));
  return out;
}

namespace omin_detail {

inline void require_unary(const Formula& f,
                          const std::map<int, Rational>& params) {
  if (params.count(0))
    throw std::invalid_argument("decompose: x0 must stay free, not a parameter");
  for (const auto& v : free_vars(f)) {
    if (v.index == 0) continue;
    if (!params.count(v.index))
      throw std::invalid_argument("parameters missing: x" +
                                  std::to_string(v.index));
  }
}

}  // namespace omin_detail

/// Eliminates quantifiers, cuts the line at the remaining x0-roots, decides
/// each point and each open cell by one exact sample, and emits the
/// canonical union.
inline IntervalUnion decompose_unary(const Formula& f,
                                     const std::map<int, Rational>& params,
                                     TheoryId theory,
                                     const QeLimits& limits = {}) {
  omin_detail::require_unary(f, params);
  const Dnf d = eliminate(compile_formula(f, theory, params), limits);
  const std::vector<Rational> breaks = unary_breakpoints(d);

  IntervalUnion rough;
  auto holds_at = [&](const Rational& q) {
    return d.eval(std::map<int, Rational>{{0, q}});
  };
  Endpoint prev = Endpoint::neg_inf();
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    const Endpoint next =
        i < breaks.size() ? Endpoint::at(breaks[i]) : Endpoint::pos_inf();
    Rational sample(0);
    if (prev.finite() && next.finite())
      sample = (prev.value + next.value) * Rational(1, 2);
    else if (prev.finite())
      sample = prev.value + Rational(1);
    else if (next.finite())
      sample = next.value - Rational(1);
    if (holds_at(sample))
      rough.components.push_back(IntervalComponent::open(prev, next));
    if (i < breaks.size()) {
      if (holds_at(breaks[i]))
        rough.components.push_back(IntervalComponent::at(breaks[i]));
      prev = next;
    }
  }
  return normalize(rough);
}

/// Decides a formula whose free variables are all parameters.
inline bool qe_satisfies(const Formula& f,
                         const std::map<int, Rational>& params, TheoryId theory,
                         const QeLimits& limits = {}) {
  for (const auto& v : free_vars(f))
    if (!params.count(v.index))
      throw std::invalid_argument("parameters missing: x" +
                                  std::to_string(v.index));
  return eliminate(compile_formula(f, theory, params), limits)
      .eval(std::map<int, Rational>{});
}

/// The unary definable set of the reduct structure along H: translate the
/// formula and decompose over the theory. By satisfaction transfer this is
/// exactly the set defined in the reduct of the canonical model.
inline IntervalUnion decompose_via_morphism(
    const LanguageMorphism& h, const Formula& f,
    const std::map<int, Rational>& params, TheoryId theory,
    const QeLimits& limits = {}) {
  if (!(h.target() == theory_signature(theory)))
    throw std::invalid_argument(
        "decompose_via_morphism: morphism target is not the theory signature");
  if (!well_formed(f, h.source()))
    throw std::invalid_argument(
        "decompose_via_morphism: formula not over the morphism source");
  return decompose_unary(translate_formula(h, f), params, theory, limits);
}

// --------------------------------------------------------------- oracle ----

namespace omin_detail {

/// Exact rational term evaluation under the theory semantics; every
/// variable must be bound. This is the oracle's own evaluator, separate
/// from the compile path.
inline Rational eval_term_rational(const Term& t, TheoryId theory,
                                   const std::map<int, Rational>& env) {
  return std::visit(
      overloaded{[&](const Term::Var& v) {
                   auto it = env.find(v.var.index);
                   if (it == env.end())
                     throw std::invalid_argument("oracle: unbound variable x" +
                                                 std::to_string(v.var.index));
                   return it->second;
                 },
                 [&](const Term::App& a) {
                   if (theory == TheoryId::Dlo)
                     throw std::invalid_argument(
                         "oracle: symbol outside theory signature: " + a.fun);
                   if (a.fun == "plus" && a.args.size() == 2)
                     return eval_term_rational(a.args[0], theory, env) +
                            eval_term_rational(a.args[1], theory, env);
                   if (a.fun == "minus" && a.args.size() == 1)
                     return -eval_term_rational(a.args[0], theory, env);
                   if (a.fun == "zero" && a.args.empty()) return Rational(0);
                   throw std::invalid_argument(
                       "oracle: symbol outside theory signature: " + a.fun);
                 }},
      t.node());
}

/// The affine form of (left - right), extracted numerically: theory terms
/// are affine, so the intercept at zero and one probe per variable pin the
/// coefficients exactly.
inline LinearExpr oracle_affine(const Term& left, const Term& right,
                                TheoryId theory) {
  std::set<VarId> vars = vars_of_term(left);
  for (const auto& v : vars_of_term(right)) vars.insert(v);
  std::map<int, Rational> zeros;
  for (const auto& v : vars) zeros[v.index] = Rational(0);
  auto diff_at = [&](const std::map<int, Rational>& env) {
    return eval_term_rational(left, theory, env) -
           eval_term_rational(right, theory, env);
  };
  LinearExpr out;
  out.constant = diff_at(zeros);
  for (const auto& v : vars) {
    std::map<int, Rational> probe = zeros;
    probe[v.index] = Rational(1);
    out.add_coeff(v.index, diff_at(probe) - out.constant);
  }
  return out;
}

inline void collect_atom_forms(const Formula& f, TheoryId theory,
                               std::vector<LinearExpr>& out) {
  std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            out.push_back(oracle_affine(e.left, e.right, theory));
          },
          [&](const Formula::Rel& r) {
            if (r.rel != kOrderSymbol || r.args.size() != 2)
              throw std::invalid_argument(
                  "oracle: symbol outside theory signature: " + r.rel);
            out.push_back(oracle_affine(r.args[0], r.args[1], theory));
          },
          [&](const Formula::Not& n) { collect_atom_forms(n.arg, theory, out); },
          [&](const Formula::Or& o) {
            collect_atom_forms(o.left, theory, out);
            collect_atom_forms(o.right, theory, out);
          },
          [&](const Formula::Exists& e) {
            collect_atom_forms(e.body, theory, out);
          },
      },
      f.node().v);
}

inline LinearExpr scaled_canonical(const LinearExpr& e) {
  if (e.coeffs.empty()) return e;
  return e.scaled(Rational(1) / e.coeffs.begin()->second);
}

/// Saturates the atom forms under solve-and-substitute over the quantified
/// variables. A derivation eliminates each variable at most once along a
/// chain, so every form carries the set of variables already eliminated and
/// pairs only resolve on fresh ones. Every bound any elimination order can
/// derive appears here, so roots of closure forms are a complete breakpoint
/// supply for the witness search.
inline std::vector<LinearExpr> breakpoint_closure(
    std::vector<LinearExpr> forms, const std::set<int>& bound_vars,
    std::size_t cap = 500000) {
  struct Entry {
    LinearExpr expr;
    std::set<int> eliminated;
  };
  std::set<std::pair<LinearExpr, std::set<int>>> seen;
  std::vector<Entry> entries;
  auto push = [&](const LinearExpr& e, const std::set<int>& eliminated) {
    if (e.coeffs.empty()) return;
    const LinearExpr canon = scaled_canonical(e);
    if (seen.emplace(canon, eliminated).second)
      entries.push_back({canon, eliminated});
    if (entries.size() > cap)
      throw ResourceError("oracle: breakpoint closure too large");
  };
  for (const auto& f : forms) push(f, {});
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (int v : bound_vars) {
      if (entries[i].eliminated.count(v)) continue;
      const Rational c = entries[i].expr.coeff(v);
      if (c.is_zero()) continue;
      LinearExpr solution = entries[i].expr;
      solution.coeffs.erase(v);
      solution = solution.scaled(-(Rational(1) / c));
      const std::set<int> own = entries[i].eliminated;
      for (std::size_t j = 0; j < entries.size(); ++j) {
        if (j == i) continue;
        if (entries[j].eliminated.count(v)) continue;
        if (entries[j].expr.coeff(v).is_zero()) continue;
        std::set<int> merged = own;
        merged.insert(entries[j].eliminated.begin(),
                      entries[j].eliminated.end());
        merged.insert(v);
        push(entries[j].expr.substituted(v, solution), merged);
      }
    }
  }
  std::set<LinearExpr> unique;
  for (const auto& entry : entries) unique.insert(entry.expr);
  return std::vector<LinearExpr>(unique.begin(), unique.end());
}

struct OracleContext {
  TheoryId theory;
  std::vector<LinearExpr> closure;
};

inline bool oracle_eval(const OracleContext& ctx, const Formula& f,
                        const std::map<int, Rational>& env) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return eval_term_rational(e.left, ctx.theory, env) ==
                   eval_term_rational(e.right, ctx.theory, env);
          },
          [&](const Formula::Rel& r) {
            return eval_term_rational(r.args[0], ctx.theory, env) <
                   eval_term_rational(r.args[1], ctx.theory, env);
          },
          [&](const Formula::Not& n) { return !oracle_eval(ctx, n.arg, env); },
          [&](const Formula::Or& o) {
            return oracle_eval(ctx, o.left, env) ||
                   oracle_eval(ctx, o.right, env);
          },
          [&](const Formula::Exists& e) {
            // candidate witnesses: roots for this variable of every closure
            // form whose other variables are bound, plus midpoints and one
            // value beyond each extreme
            std::vector<Rational> roots;
            for (const auto& form : ctx.closure) {
              const Rational c = form.coeff(e.var.index);
              if (c.is_zero()) continue;
              bool solvable = true;
              Rational rest = form.constant;
              for (const auto& [v, coeff] : form.coeffs) {
                if (v == e.var.index) continue;
                auto it = env.find(v);
                if (it == env.end()) {
                  solvable = false;
                  break;
                }
                rest += coeff * it->second;
              }
              if (solvable) roots.push_back(-(rest / c));
            }
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            std::map<int, Rational> inner = env;
            for (const auto& q : probe_points(roots)) {
              inner[e.var.index] = q;
              if (oracle_eval(ctx, e.body, inner)) return true;
            }
            return false;
          },
      },
      f.node().v);
}

}  // namespace omin_detail

/// Elimination-free recursive satisfaction over the rationals. Exact for
/// these theories: satisfaction only depends on the position of each
/// variable relative to the derivable breakpoints, and the closure supplies
/// all of them.
inline bool oracle_holds(const Formula& f, const std::map<int, Rational>& env,
                         TheoryId theory) {
  std::vector<LinearExpr> forms;
  omin_detail::collect_atom_forms(f, theory, forms);
  std::set<int> bound;
  omin_detail::collect_quantified_vars(f, bound);
  omin_detail::OracleContext ctx{
      theory, omin_detail::breakpoint_closure(std::move(forms), bound)};
  return omin_detail::oracle_eval(ctx, f, env);
}

/// Membership bit per sample, decided by oracle_holds. Cross-validates
/// decompose_unary.
inline std::vector<bool> sampling_oracle(const Formula& f,
                                         const std::map<int, Rational>& params,
                                         TheoryId theory,
                                         const std::vector<Rational>& samples) {
  omin_detail::require_unary(f, params);
  std::vector<bool> out;
  out.reserve(samples.size());
  std::map<int, Rational> env = params;
  for (const auto& q : samples) {
    env[0] = q;
    out.push_back(oracle_holds(f, env, theory));
  }
  return out;
}

// ---------------------------------------------------- finite o-minimality ----

struct OminWitness {
  Formula formula;
  IntervalUnion definable_set;
};

struct OminResult {
  bool ominimal = false;
  std::string violation;  // the violated order axiom, when not o-minimal
  std::vector<OminWitness> witnesses;
};

/// A finite ordered structure is o-minimal exactly when `<` is a strict
/// total order; every unary definable set is then a finite set of points.
/// Witnesses enumerate the definable sets of small formulas, written as
/// point unions in the order's indexing (rank of each element).
inline OminResult is_ominimal_finite(const FiniteStructure& m,
                                     int max_formula_size = 4) {
  OminResult out;
  auto table = m.rel_tables.find(kOrderSymbol);
  if (!m.sig.has_order || table == m.rel_tables.end()) {
    out.violation = "no order relation";
    return out;
  }
  auto less = [&](int a, int b) {
    return table->second.count(std::vector<int>{a, b}) > 0;
  };
  for (int a = 0; a < m.size; ++a)
    if (less(a, a)) {
      out.violation = "irreflexivity fails at " + std::to_string(a);
      return out;
    }
  for (int a = 0; a < m.size; ++a)
    for (int b = 0; b < m.size; ++b) {
      if (a != b && !less(a, b) && !less(b, a)) {
        out.violation = "trichotomy fails at (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")";
        return out;
      }
      for (int c = 0; c < m.size; ++c)
        if (less(a, b) && less(b, c) && !less(a, c)) {
          out.violation = "transitivity fails at (" + std::to_string(a) + ", " +
                          std::to_string(b) + ", " + std::to_string(c) + ")";
          return out;
        }
    }
  out.ominimal = true;

  std::vector<int> rank(m.size, 0);
  for (int a = 0; a < m.size; ++a)
    for (int b = 0; b < m.size; ++b)
      if (less(b, a)) ++rank[a];

  for (const auto& f : enumerate_formulas(m.sig, max_formula_size, 1, 1)) {
    if (free_vars(f) != std::set<VarId>{VarId{0}}) continue;
    IntervalUnion set;
    std::set<Rational> points;
    for (int a = 0; a < m.size; ++a)
      if (holds(m, f, {{0, a}})) points.insert(Rational(rank[a]));
    for (const auto& q : points)
      set.components.push_back(IntervalComponent::at(q));
    out.witnesses.push_back({f, normalize(set)});
  }
  return out;
}

}  // namespace folcat
