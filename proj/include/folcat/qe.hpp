#pragma once

#include <algorithm>
#include <vector>

#include "folcat/linear.hpp"

// Quantifier elimination for DLO and ODAG over exact rationals. Working
// form is a disjunction of conjunctions of affine atoms; negation splits
// atoms (~(a<0) => -a<0 | a=0, ~(a=0) => a<0 | -a<0), and the innermost
// exists is eliminated per disjunct: equalities are solved by substitution
// first, otherwise lower/upper bounds are paired (Fourier-Motzkin; both
// theories are dense without endpoints, so strict pairing is complete).

namespace folcat {

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct QeLimits {
  std::size_t max_disjuncts = 50000;
  std::size_t max_atoms_per_conjunct = 512;
};

/// One conjunction of atoms; the empty conjunction is true.
using Conjunct = std::vector<LinearAtom>;

/// Disjunctive normal form; no disjuncts means false.
struct Dnf {
  std::vector<Conjunct> disjuncts;

  static Dnf top() { return Dnf{{Conjunct{}}}; }
  static Dnf bottom() { return Dnf{}; }
  bool is_false() const { return disjuncts.empty(); }

  bool eval(const std::map<int, Rational>& env) const {
    for (const auto& conj : disjuncts) {
      bool all = true;
      for (const auto& atom : conj) all = all && atom.eval(env);
      if (all) return true;
    }
    return false;
  }
};

namespace qe_detail {

/// Sorted, deduplicated conjunct; nullopt when a ground atom is false.
inline std::optional<Conjunct> tidy_conjunct(Conjunct conj,
                                             const QeLimits& limits) {
  Conjunct out;
  for (auto& atom : conj) {
    atom.normalize();
    if (atom.expr.is_constant()) {
      if (!atom.ground_truth()) return std::nullopt;
      continue;  // drop ground truths
    }
    out.push_back(std::move(atom));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > limits.max_atoms_per_conjunct)
    throw ResourceError("quantifier elimination: conjunct too large");
  return out;
}

inline void push_disjunct(Dnf& dnf, Conjunct conj, const QeLimits& limits) {
  auto tidied = tidy_conjunct(std::move(conj), limits);
  if (!tidied) return;
  dnf.disjuncts.push_back(std::move(*tidied));
  if (dnf.disjuncts.size() > limits.max_disjuncts)
    throw ResourceError("quantifier elimination: too many disjuncts");
}

inline Dnf dnf_or(Dnf a, const Dnf& b, const QeLimits& limits) {
  for (const auto& conj : b.disjuncts) push_disjunct(a, conj, limits);
  return a;
}

inline Dnf dnf_and(const Dnf& a, const Dnf& b, const QeLimits& limits) {
  Dnf out;
  for (const auto& ca : a.disjuncts)
    for (const auto& cb : b.disjuncts) {
      Conjunct merged = ca;
      merged.insert(merged.end(), cb.begin(), cb.end());
      push_disjunct(out, std::move(merged), limits);
    }
  return out;
}

/// Negation of one atom as a disjunction of at most two atoms.
inline Dnf negate_atom(const LinearAtom& atom, const QeLimits& limits) {
  Dnf out;
  if (atom.kind == AtomKind::LtZero) {
    push_disjunct(out, {LinearAtom{-atom.expr, AtomKind::LtZero}}, limits);
    push_disjunct(out, {LinearAtom{atom.expr, AtomKind::EqZero}}, limits);
  } else {
    push_disjunct(out, {LinearAtom{atom.expr, AtomKind::LtZero}}, limits);
    push_disjunct(out, {LinearAtom{-atom.expr, AtomKind::LtZero}}, limits);
  }
  return out;
}

inline Dnf negate_dnf(const Dnf& d, const QeLimits& limits) {
  Dnf acc = Dnf::top();
  for (const auto& conj : d.disjuncts) {
    Dnf clause;  // negation of one conjunct
    for (const auto& atom : conj) clause = dnf_or(clause, negate_atom(atom, limits), limits);
    acc = dnf_and(acc, clause, limits);
  }
  return acc;
}

/// Eliminates exists x from a single conjunction.
inline Dnf eliminate_var(const Conjunct& conj, int var, const QeLimits& limits) {
  // an equality mentioning x: solve and substitute
  for (std::size_t i = 0; i < conj.size(); ++i) {
    const LinearAtom& eq = conj[i];
    if (eq.kind != AtomKind::EqZero) continue;
    const Rational c = eq.expr.coeff(var);
    if (c.is_zero()) continue;
    LinearExpr solution = eq.expr;            // c*x + rest = 0
    solution.coeffs.erase(var);               // rest
    solution = solution.scaled(-(Rational(1) / c));  // x = -rest/c
    Conjunct rest;
    for (std::size_t j = 0; j < conj.size(); ++j) {
      if (j == i) continue;
      rest.push_back(
          LinearAtom{conj[j].expr.substituted(var, solution), conj[j].kind});
    }
    Dnf out;
    push_disjunct(out, std::move(rest), limits);
    return out;
  }
  // otherwise pair strict lower and upper bounds
  std::vector<LinearExpr> lowers, uppers;
  Conjunct rest;
  for (const auto& atom : conj) {
    const Rational c = atom.expr.coeff(var);
    if (c.is_zero()) {
      rest.push_back(atom);
      continue;
    }
    // c*x + r < 0  <=>  x < -r/c (c>0: upper)   or   x > -r/c (c<0: lower)
    LinearExpr bound = atom.expr;
    bound.coeffs.erase(var);
    bound = bound.scaled(-(Rational(1) / c));
    (c < Rational(0) ? lowers : uppers).push_back(std::move(bound));
  }
  for (const auto& lo : lowers)
    for (const auto& hi : uppers)
      rest.push_back(LinearAtom{lo - hi, AtomKind::LtZero});  // lo < hi
  Dnf out;
  push_disjunct(out, std::move(rest), limits);
  return out;
}

inline Dnf to_dnf(const LinFormula& f, bool negated, const QeLimits& limits);

inline Dnf eliminate_exists(const Dnf& body, int var, const QeLimits& limits) {
  Dnf out;
  for (const auto& conj : body.disjuncts)
    out = dnf_or(out, eliminate_var(conj, var, limits), limits);
  return out;
}

inline Dnf to_dnf(const LinFormula& f, bool negated, const QeLimits& limits) {
  return std::visit(
      overloaded{
          [&](const LinFormula::Atom& a) {
            if (!negated) {
              Dnf out;
              push_disjunct(out, {a.atom}, limits);
              return out;
            }
            return negate_atom(a.atom, limits);
          },
          [&](const LinFormula::Truth& t) {
            return t.value != negated ? Dnf::top() : Dnf::bottom();
          },
          [&](const LinFormula::Not& n) { return to_dnf(n.arg, !negated, limits); },
          [&](const LinFormula::Or& o) {
            if (!negated)
              return dnf_or(to_dnf(o.left, false, limits),
                            to_dnf(o.right, false, limits), limits);
            return dnf_and(to_dnf(o.left, true, limits),
                           to_dnf(o.right, true, limits), limits);
          },
          [&](const LinFormula::Exists& e) {
            const Dnf body = to_dnf(e.body, false, limits);
            const Dnf eliminated = eliminate_exists(body, e.var, limits);
            return negated ? negate_dnf(eliminated, limits) : eliminated;
          },
      },
      f.node().v);
}

}  // namespace qe_detail

/// A logically equivalent quantifier-free DNF over the free variables of f.
inline Dnf eliminate(const LinFormula& f, const QeLimits& limits = {}) {
  Dnf out = qe_detail::to_dnf(f, false, limits);
  std::sort(out.disjuncts.begin(), out.disjuncts.end());
  out.disjuncts.erase(std::unique(out.disjuncts.begin(), out.disjuncts.end()),
                      out.disjuncts.end());
  return out;
}

inline std::string to_string(const Dnf& d) {
  if (d.is_false()) return "false";
  std::string out;
  for (const auto& conj : d.disjuncts) {
    if (!out.empty()) out += "  |  ";
    if (conj.empty()) {
      out += "true";
      continue;
    }
    std::string c;
    for (const auto& atom : conj) {
      if (!c.empty()) c += " & ";
      c += to_string(atom);
    }
    out += c;
  }
  return out;
}

}  // namespace folcat
