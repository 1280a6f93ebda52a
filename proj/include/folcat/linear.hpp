#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "folcat/rational.hpp"
#include "folcat/syntax.hpp"

// Affine normal form over exact rationals for the two decidable theories:
// DLO (signature {<}, terms are variables) and ODAG (ordered divisible
// abelian groups, signature {plus/2, minus/1, zero/0, <}).

namespace folcat {

enum class TheoryId { Dlo, Odag };

inline std::string theory_name(TheoryId theory) {
  return theory == TheoryId::Dlo ? "dlo" : "odag";
}

inline Signature theory_signature(TheoryId theory) {
  if (theory == TheoryId::Dlo) return make_signature("DLO", {}, {{"<", 2}});
  return make_signature(
      "ODAG", {{"plus", 2}, {"minus", 1}, {"zero", 0}}, {{"<", 2}});
}

/// An affine form: sum of coeffs[v] * x_v plus a constant. Zero
/// coefficients are never stored.
struct LinearExpr {
  std::map<int, Rational> coeffs;
  Rational constant;

  bool is_constant() const { return coeffs.empty(); }

  void add_coeff(int var, const Rational& c) {
    auto it = coeffs.find(var);
    if (it == coeffs.end()) {
      if (!c.is_zero()) coeffs.emplace(var, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }

  friend LinearExpr operator+(const LinearExpr& a, const LinearExpr& b) {
    LinearExpr out = a;
    out.constant += b.constant;
    for (const auto& [v, c] : b.coeffs) out.add_coeff(v, c);
    return out;
  }
  friend LinearExpr operator-(const LinearExpr& a, const LinearExpr& b) {
    LinearExpr out = a;
    out.constant -= b.constant;
    for (const auto& [v, c] : b.coeffs) out.add_coeff(v, -c);
    return out;
  }
  friend LinearExpr operator-(const LinearExpr& a) {
    LinearExpr out;
    out.constant = -a.constant;
    for (const auto& [v, c] : a.coeffs) out.coeffs.emplace(v, -c);
    return out;
  }

  LinearExpr scaled(const Rational& factor) const {
    LinearExpr out;
    if (factor.is_zero()) return out;
    out.constant = constant * factor;
    for (const auto& [v, c] : coeffs) out.coeffs.emplace(v, c * factor);
    return out;
  }

  Rational coeff(int var) const {
    auto it = coeffs.find(var);
    return it == coeffs.end() ? Rational(0) : it->second;
  }

  /// Replaces x_var by the given affine form.
  LinearExpr substituted(int var, const LinearExpr& value) const {
    LinearExpr out = *this;
    const Rational c = out.coeff(var);
    if (c.is_zero()) return out;
    out.coeffs.erase(var);
    return out + value.scaled(c);
  }

  Rational eval(const std::map<int, Rational>& env) const {
    Rational out = constant;
    for (const auto& [v, c] : coeffs) {
      auto it = env.find(v);
      if (it == env.end())
        throw std::invalid_argument("linear eval: unbound variable x" +
                                    std::to_string(v));
      out += c * it->second;
    }
    return out;
  }

  friend bool operator==(const LinearExpr& a, const LinearExpr& b) {
    return a.coeffs == b.coeffs && a.constant == b.constant;
  }
  friend bool operator<(const LinearExpr& a, const LinearExpr& b) {
    if (a.constant != b.constant) return a.constant < b.constant;
    return a.coeffs < b.coeffs;
  }
};

enum class AtomKind { EqZero, LtZero };

/// expr = 0 or expr < 0, scaled so the leading coefficient has magnitude 1;
/// equalities are signed leading-positive.
struct LinearAtom {
  LinearExpr expr;
  AtomKind kind = AtomKind::LtZero;

  void normalize() {
    if (expr.coeffs.empty()) return;
    const Rational lead = expr.coeffs.begin()->second;
    Rational factor(1);
    if (kind == AtomKind::EqZero) {
      factor = Rational(1) / lead;  // leading coefficient becomes +1
    } else {
      factor = lead.num < 0 ? -(Rational(1) / lead) : Rational(1) / lead;
    }
    expr = expr.scaled(factor);
  }

  /// For atoms without variables.
  bool ground_truth() const {
    if (!expr.is_constant())
      throw std::logic_error("ground_truth on non-ground atom");
    return kind == AtomKind::EqZero ? expr.constant.is_zero()
                                    : expr.constant < Rational(0);
  }

  bool eval(const std::map<int, Rational>& env) const {
    const Rational v = expr.eval(env);
    return kind == AtomKind::EqZero ? v.is_zero() : v < Rational(0);
  }

  friend bool operator==(const LinearAtom& a, const LinearAtom& b) {
    return a.kind == b.kind && a.expr == b.expr;
  }
  friend bool operator<(const LinearAtom& a, const LinearAtom& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.expr < b.expr;
  }
};

inline std::string to_string(const LinearExpr& e) {
  std::string out;
  for (const auto& [v, c] : e.coeffs) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + "*x" + std::to_string(v);
  }
  if (out.empty() || !e.constant.is_zero()) {
    if (!out.empty()) out += " + ";
    out += to_string(e.constant);
  }
  return out;
}

inline std::string to_string(const LinearAtom& a) {
  return to_string(a.expr) + (a.kind == AtomKind::EqZero ? " = 0" : " < 0");
}

// -------------------------------------------------------------- compile ----

/// Compiled formula over the theory: quantifiers survive, atoms are affine.
class LinFormula {
 public:
  struct Atom {
    LinearAtom atom;
  };
  struct Truth {
    bool value;
  };
  struct Not;
  struct Or;
  struct Exists;
  struct Node;

  static LinFormula atom(LinearAtom a);
  static LinFormula truth(bool value);
  static LinFormula negation(LinFormula f);
  static LinFormula disjunction(LinFormula l, LinFormula r);
  static LinFormula exists(int var, LinFormula body);

  const Node& node() const { return *node_; }

 private:
  explicit LinFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct LinFormula::Not {
  LinFormula arg;
};
struct LinFormula::Or {
  LinFormula left, right;
};
struct LinFormula::Exists {
  int var;
  LinFormula body;
};
struct LinFormula::Node {
  std::variant<Atom, Truth, Not, Or, Exists> v;
};

inline LinFormula LinFormula::atom(LinearAtom a) {
  a.normalize();
  if (a.expr.is_constant()) return truth(a.ground_truth());
  return LinFormula(std::make_shared<const Node>(Node{Atom{std::move(a)}}));
}
inline LinFormula LinFormula::truth(bool value) {
  return LinFormula(std::make_shared<const Node>(Node{Truth{value}}));
}
inline LinFormula LinFormula::negation(LinFormula f) {
  return LinFormula(std::make_shared<const Node>(Node{Not{std::move(f)}}));
}
inline LinFormula LinFormula::disjunction(LinFormula l, LinFormula r) {
  return LinFormula(
      std::make_shared<const Node>(Node{Or{std::move(l), std::move(r)}}));
}
inline LinFormula LinFormula::exists(int var, LinFormula body) {
  return LinFormula(
      std::make_shared<const Node>(Node{Exists{var, std::move(body)}}));
}

/// Compiles a theory term to its affine form; parameters become rational
/// constants. DLO admits variables only; ODAG unfolds plus/minus/zero.
inline LinearExpr compile_term(const Term& t, TheoryId theory,
                               const std::map<int, Rational>& params) {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) {
            LinearExpr out;
            auto it = params.find(v.var.index);
            if (it != params.end())
              out.constant = it->second;
            else
              out.coeffs.emplace(v.var.index, Rational(1));
            return out;
          },
          [&](const Term::App& a) {
            if (theory == TheoryId::Dlo)
              throw std::invalid_argument(
                  "compile: symbol outside theory signature: " + a.fun);
            if (a.fun == "plus" && a.args.size() == 2)
              return compile_term(a.args[0], theory, params) +
                     compile_term(a.args[1], theory, params);
            if (a.fun == "minus" && a.args.size() == 1)
              return -compile_term(a.args[0], theory, params);
            if (a.fun == "zero" && a.args.empty()) return LinearExpr{};
            throw std::invalid_argument(
                "compile: symbol outside theory signature: " + a.fun);
          }},
      t.node());
}

/// Compiles t = s to (t - s = 0) and t < s to (t - s < 0); the boolean
/// structure and quantifiers carry over unchanged.
inline LinFormula compile_formula(const Formula& f, TheoryId theory,
                                  const std::map<int, Rational>& params) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return LinFormula::atom(
                {compile_term(e.left, theory, params) -
                     compile_term(e.right, theory, params),
                 AtomKind::EqZero});
          },
          [&](const Formula::Rel& r) {
            if (r.rel != kOrderSymbol || r.args.size() != 2)
              throw std::invalid_argument(
                  "compile: symbol outside theory signature: " + r.rel);
            return LinFormula::atom(
                {compile_term(r.args[0], theory, params) -
                     compile_term(r.args[1], theory, params),
                 AtomKind::LtZero});
          },
          [&](const Formula::Not& n) {
            return LinFormula::negation(compile_formula(n.arg, theory, params));
          },
          [&](const Formula::Or& o) {
            return LinFormula::disjunction(
                compile_formula(o.left, theory, params),
                compile_formula(o.right, theory, params));
          },
          [&](const Formula::Exists& e) {
            std::map<int, Rational> inner = params;
            inner.erase(e.var.index);  // the binder shadows a parameter
            return LinFormula::exists(e.var.index,
                                      compile_formula(e.body, theory, inner));
          },
      },
      f.node().v);
}

}  // namespace folcat
