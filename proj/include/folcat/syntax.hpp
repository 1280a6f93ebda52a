#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// First-order syntax: signatures, terms, formulas over the fixed variable
// pool {x0, x1, ...}, plus free-variable computation, simultaneous
// substitution and bounded formula enumeration.

namespace folcat {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// A variable x_i from the single countable pool.
struct VarId {
  int index = 0;
  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

inline const std::string kOrderSymbol = "<";

/// Function and relation symbols with arities. Names are disjoint across the
/// two kinds; `has_order` records whether the distinguished binary relation
/// `<` is declared. The `name` is a label for concrete syntax only and does
/// not take part in equality.
struct Signature {
  std::string name = "L";
  std::map<std::string, int> functions;
  std::map<std::string, int> relations;
  bool has_order = false;

  bool declares(const std::string& s) const {
    return functions.count(s) > 0 || relations.count(s) > 0;
  }
  std::optional<int> function_arity(const std::string& s) const {
    auto it = functions.find(s);
    if (it == functions.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> relation_arity(const std::string& s) const {
    auto it = relations.find(s);
    if (it == relations.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.functions == b.functions && a.relations == b.relations &&
           a.has_order == b.has_order;
  }
};

inline Signature make_signature(std::string name,
                                std::map<std::string, int> functions,
                                std::map<std::string, int> relations) {
  for (const auto& [f, ar] : functions) {
    if (relations.count(f))
      throw std::invalid_argument("signature: symbol declared twice: " + f);
    if (ar < 0) throw std::invalid_argument("signature: negative arity: " + f);
  }
  for (const auto& [r, ar] : relations) {
    if (ar < 0) throw std::invalid_argument("signature: negative arity: " + r);
  }
  Signature sig;
  sig.name = std::move(name);
  sig.functions = std::move(functions);
  sig.relations = std::move(relations);
  auto it = sig.relations.find(kOrderSymbol);
  sig.has_order = it != sig.relations.end() && it->second == 2;
  if (it != sig.relations.end() && it->second != 2)
    throw std::invalid_argument("signature: `<` must be a binary relation");
  if (sig.functions.count(kOrderSymbol))
    throw std::invalid_argument("signature: `<` declared as a function symbol");
  return sig;
}

/// Adds the distinguished binary relation `<`. Idempotent; rejects
/// signatures that use `<` as a function name.
inline Signature extend_with_order(const Signature& sig) {
  if (sig.functions.count(kOrderSymbol))
    throw std::invalid_argument("extend_with_order: `<` is a function symbol");
  if (sig.has_order) return sig;
  Signature out = sig;
  out.relations[kOrderSymbol] = 2;
  out.has_order = true;
  return out;
}

// ---------------------------------------------------------------- terms ----

class Term {
 public:
  struct Var {
    VarId var;
  };
  struct App {
    std::string fun;
    std::vector<Term> args;
  };
  using Node = std::variant<Var, App>;

  static Term var(int index) { return Term(Node(Var{VarId{index}})); }
  static Term var(VarId v) { return Term(Node(Var{v})); }
  static Term app(std::string fun, std::vector<Term> args = {}) {
    return Term(Node(App{std::move(fun), std::move(args)}));
  }

  const Node& node() const { return *node_; }
  bool is_var() const { return std::holds_alternative<Var>(*node_); }
  bool is_app() const { return std::holds_alternative<App>(*node_); }

 private:
  explicit Term(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

inline int compare(const Term& a, const Term& b) {
  const auto& na = a.node();
  const auto& nb = b.node();
  if (na.index() != nb.index()) return na.index() < nb.index() ? -1 : 1;
  if (const auto* va = std::get_if<Term::Var>(&na)) {
    const auto& vb = std::get<Term::Var>(nb);
    if (va->var.index != vb.var.index)
      return va->var.index < vb.var.index ? -1 : 1;
    return 0;
  }
  const auto& fa = std::get<Term::App>(na);
  const auto& fb = std::get<Term::App>(nb);
  if (fa.fun != fb.fun) return fa.fun < fb.fun ? -1 : 1;
  if (fa.args.size() != fb.args.size())
    return fa.args.size() < fb.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < fa.args.size(); ++i) {
    int c = compare(fa.args[i], fb.args[i]);
    if (c != 0) return c;
  }
  return 0;
}

inline bool operator==(const Term& a, const Term& b) {
  return compare(a, b) == 0;
}
inline bool operator!=(const Term& a, const Term& b) {
  return compare(a, b) != 0;
}
inline bool operator<(const Term& a, const Term& b) {
  return compare(a, b) < 0;
}

// ------------------------------------------------------------- formulas ----

// Connectives are exactly {=, Rel, ~, |, exists}; everything else is
// parser-level sugar.
class Formula {
 public:
  struct Eq;
  struct Rel;
  struct Not;
  struct Or;
  struct Exists;
  struct Node;

  static Formula eq(Term left, Term right);
  static Formula rel(std::string rel, std::vector<Term> args = {});
  static Formula negation(Formula arg);
  static Formula disjunction(Formula left, Formula right);
  static Formula exists(VarId var, Formula body);
  static Formula exists(int var_index, Formula body);

  const Node& node() const { return *node_; }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Eq {
  Term left, right;
};
struct Formula::Rel {
  std::string rel;
  std::vector<Term> args;
};
struct Formula::Not {
  Formula arg;
};
struct Formula::Or {
  Formula left, right;
};
struct Formula::Exists {
  VarId var;
  Formula body;
};
struct Formula::Node {
  std::variant<Eq, Rel, Not, Or, Exists> v;
};

inline Formula Formula::eq(Term left, Term right) {
  return Formula(std::make_shared<const Node>(
      Node{Eq{std::move(left), std::move(right)}}));
}
inline Formula Formula::rel(std::string rel, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(
      Node{Rel{std::move(rel), std::move(args)}}));
}
inline Formula Formula::negation(Formula arg) {
  return Formula(std::make_shared<const Node>(Node{Not{std::move(arg)}}));
}
inline Formula Formula::disjunction(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{Or{std::move(left), std::move(right)}}));
}
inline Formula Formula::exists(VarId var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Exists{var, std::move(body)}}));
}
inline Formula Formula::exists(int var_index, Formula body) {
  return exists(VarId{var_index}, std::move(body));
}

inline int compare(const Formula& a, const Formula& b) {
  const auto& na = a.node().v;
  const auto& nb = b.node().v;
  if (na.index() != nb.index()) return na.index() < nb.index() ? -1 : 1;
  return std::visit(
      overloaded{
          [&](const Formula::Eq& x) {
            const auto& y = std::get<Formula::Eq>(nb);
            int c = compare(x.left, y.left);
            return c != 0 ? c : compare(x.right, y.right);
          },
          [&](const Formula::Rel& x) {
            const auto& y = std::get<Formula::Rel>(nb);
            if (x.rel != y.rel) return x.rel < y.rel ? -1 : 1;
            if (x.args.size() != y.args.size())
              return x.args.size() < y.args.size() ? -1 : 1;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              int c = compare(x.args[i], y.args[i]);
              if (c != 0) return c;
            }
            return 0;
          },
          [&](const Formula::Not& x) {
            return compare(x.arg, std::get<Formula::Not>(nb).arg);
          },
          [&](const Formula::Or& x) {
            const auto& y = std::get<Formula::Or>(nb);
            int c = compare(x.left, y.left);
            return c != 0 ? c : compare(x.right, y.right);
          },
          [&](const Formula::Exists& x) {
            const auto& y = std::get<Formula::Exists>(nb);
            if (x.var != y.var) return x.var < y.var ? -1 : 1;
            return compare(x.body, y.body);
          },
      },
      na);
}

inline bool operator==(const Formula& a, const Formula& b) {
  return compare(a, b) == 0;
}
inline bool operator!=(const Formula& a, const Formula& b) {
  return compare(a, b) != 0;
}
inline bool operator<(const Formula& a, const Formula& b) {
  return compare(a, b) < 0;
}

// ------------------------------------------------------------ observers ----

inline void collect_vars(const Term& t, std::set<VarId>& out) {
  std::visit(overloaded{[&](const Term::Var& v) { out.insert(v.var); },
                        [&](const Term::App& a) {
                          for (const auto& arg : a.args) collect_vars(arg, out);
                        }},
             t.node());
}

/// All variables occurring in t.
inline std::set<VarId> vars_of_term(const Term& t) {
  std::set<VarId> out;
  collect_vars(t, out);
  return out;
}

/// The standard free-variable set; exists x . φ removes x.
inline std::set<VarId> free_vars(const Formula& f) {
  std::set<VarId> out;
  std::visit(overloaded{
                 [&](const Formula::Eq& e) {
                   collect_vars(e.left, out);
                   collect_vars(e.right, out);
                 },
                 [&](const Formula::Rel& r) {
                   for (const auto& t : r.args) collect_vars(t, out);
                 },
                 [&](const Formula::Not& n) { out = free_vars(n.arg); },
                 [&](const Formula::Or& o) {
                   out = free_vars(o.left);
                   auto rhs = free_vars(o.right);
                   out.insert(rhs.begin(), rhs.end());
                 },
                 [&](const Formula::Exists& e) {
                   out = free_vars(e.body);
                   out.erase(e.var);
                 },
             },
             f.node().v);
  return out;
}

/// All variables occurring in f, bound or free.
inline std::set<VarId> all_vars(const Formula& f) {
  std::set<VarId> out;
  std::visit(overloaded{
                 [&](const Formula::Eq& e) {
                   collect_vars(e.left, out);
                   collect_vars(e.right, out);
                 },
                 [&](const Formula::Rel& r) {
                   for (const auto& t : r.args) collect_vars(t, out);
                 },
                 [&](const Formula::Not& n) { out = all_vars(n.arg); },
                 [&](const Formula::Or& o) {
                   out = all_vars(o.left);
                   auto rhs = all_vars(o.right);
                   out.insert(rhs.begin(), rhs.end());
                 },
                 [&](const Formula::Exists& e) {
                   out = all_vars(e.body);
                   out.insert(e.var);
                 },
             },
             f.node().v);
  return out;
}

inline bool well_formed(const Term& t, const Signature& sig) {
  return std::visit(
      overloaded{[&](const Term::Var&) { return true; },
                 [&](const Term::App& a) {
                   auto ar = sig.function_arity(a.fun);
                   if (!ar || *ar != static_cast<int>(a.args.size()))
                     return false;
                   for (const auto& arg : a.args)
                     if (!well_formed(arg, sig)) return false;
                   return true;
                 }},
      t.node());
}

inline bool well_formed(const Formula& f, const Signature& sig) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return well_formed(e.left, sig) && well_formed(e.right, sig);
          },
          [&](const Formula::Rel& r) {
            auto ar = sig.relation_arity(r.rel);
            if (!ar || *ar != static_cast<int>(r.args.size())) return false;
            for (const auto& t : r.args)
              if (!well_formed(t, sig)) return false;
            return true;
          },
          [&](const Formula::Not& n) { return well_formed(n.arg, sig); },
          [&](const Formula::Or& o) {
            return well_formed(o.left, sig) && well_formed(o.right, sig);
          },
          [&](const Formula::Exists& e) { return well_formed(e.body, sig); },
      },
      f.node().v);
}

// -------------------------------------------------------------- metrics ----

/// Full node count, variables included.
inline int size(const Term& t) {
  return std::visit(overloaded{[&](const Term::Var&) { return 1; },
                               [&](const Term::App& a) {
                                 int n = 1;
                                 for (const auto& arg : a.args)
                                   n += size(arg);
                                 return n;
                               }},
                    t.node());
}

inline int size(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) { return 1 + size(e.left) + size(e.right); },
          [&](const Formula::Rel& r) {
            int n = 1;
            for (const auto& t : r.args) n += size(t);
            return n;
          },
          [&](const Formula::Not& n) { return 1 + size(n.arg); },
          [&](const Formula::Or& o) {
            return 1 + size(o.left) + size(o.right);
          },
          [&](const Formula::Exists& e) { return 1 + size(e.body); },
      },
      f.node().v);
}

/// Maximal nesting of exists.
inline int qdepth(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq&) { return 0; },
          [&](const Formula::Rel&) { return 0; },
          [&](const Formula::Not& n) { return qdepth(n.arg); },
          [&](const Formula::Or& o) {
            return std::max(qdepth(o.left), qdepth(o.right));
          },
          [&](const Formula::Exists& e) { return 1 + qdepth(e.body); },
      },
      f.node().v);
}

/// Grammar size used by the enumerator: applied and connective nodes count
/// one each, variables are free. Keeps every size class finite once the
/// variable pool is bounded.
inline int grammar_size(const Term& t) {
  return std::visit(overloaded{[&](const Term::Var&) { return 0; },
                               [&](const Term::App& a) {
                                 int n = 1;
                                 for (const auto& arg : a.args)
                                   n += grammar_size(arg);
                                 return n;
                               }},
                    t.node());
}

inline int grammar_size(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return 1 + grammar_size(e.left) + grammar_size(e.right);
          },
          [&](const Formula::Rel& r) {
            int n = 1;
            for (const auto& t : r.args) n += grammar_size(t);
            return n;
          },
          [&](const Formula::Not& n) { return 1 + grammar_size(n.arg); },
          [&](const Formula::Or& o) {
            return 1 + grammar_size(o.left) + grammar_size(o.right);
          },
          [&](const Formula::Exists& e) { return 1 + grammar_size(e.body); },
      },
      f.node().v);
}

// --------------------------------------------------------- substitution ----

enum class SubstMode { Strict, Generalized };

namespace detail {

using Subst = std::map<int, Term>;

inline Term subst_term(const Term& t, const Subst& subst) {
  return std::visit(
      overloaded{[&](const Term::Var& v) {
                   auto it = subst.find(v.var.index);
                   return it != subst.end() ? it->second : t;
                 },
                 [&](const Term::App& a) {
                   std::vector<Term> args;
                   args.reserve(a.args.size());
                   for (const auto& arg : a.args)
                     args.push_back(subst_term(arg, subst));
                   return Term::app(a.fun, std::move(args));
                 }},
      t.node());
}

inline bool has_quantifier(const Formula& f) { return qdepth(f) > 0; }

// Fresh indices for capture-avoiding renaming: the smallest indices not
// occurring in the target, in any argument, or in the substitution domain,
// handed out in ascending order.
struct FreshPool {
  std::set<int> excluded;
  int next = 0;
  int take() {
    while (excluded.count(next)) ++next;
    return next++;
  }
};

inline Formula rename_free(const Formula& f, int from, int to);

inline Term rename_free(const Term& t, int from, int to) {
  return std::visit(
      overloaded{[&](const Term::Var& v) {
                   return v.var.index == from ? Term::var(to) : t;
                 },
                 [&](const Term::App& a) {
                   std::vector<Term> args;
                   args.reserve(a.args.size());
                   for (const auto& arg : a.args)
                     args.push_back(rename_free(arg, from, to));
                   return Term::app(a.fun, std::move(args));
                 }},
      t.node());
}

inline Formula rename_free(const Formula& f, int from, int to) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return Formula::eq(rename_free(e.left, from, to),
                               rename_free(e.right, from, to));
          },
          [&](const Formula::Rel& r) {
            std::vector<Term> args;
            args.reserve(r.args.size());
            for (const auto& t : r.args)
              args.push_back(rename_free(t, from, to));
            return Formula::rel(r.rel, std::move(args));
          },
          [&](const Formula::Not& n) {
            return Formula::negation(rename_free(n.arg, from, to));
          },
          [&](const Formula::Or& o) {
            return Formula::disjunction(rename_free(o.left, from, to),
                                        rename_free(o.right, from, to));
          },
          [&](const Formula::Exists& e) {
            if (e.var.index == from) return f;  // rebound below
            return Formula::exists(e.var, rename_free(e.body, from, to));
          },
      },
      f.node().v);
}

inline Formula subst_formula(const Formula& f, const Subst& subst,
                             FreshPool& pool) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return Formula::eq(subst_term(e.left, subst),
                               subst_term(e.right, subst));
          },
          [&](const Formula::Rel& r) {
            std::vector<Term> args;
            args.reserve(r.args.size());
            for (const auto& t : r.args) args.push_back(subst_term(t, subst));
            return Formula::rel(r.rel, std::move(args));
          },
          [&](const Formula::Not& n) {
            return Formula::negation(subst_formula(n.arg, subst, pool));
          },
          [&](const Formula::Or& o) {
            return Formula::disjunction(subst_formula(o.left, subst, pool),
                                        subst_formula(o.right, subst, pool));
          },
          [&](const Formula::Exists& e) {
            Subst inner = subst;
            inner.erase(e.var.index);
            // The binder is renamed only when a free variable of an
            // incoming argument would be captured.
            bool capture = false;
            auto body_free = free_vars(e.body);
            for (const auto& [idx, replacement] : inner) {
              if (!body_free.count(VarId{idx})) continue;
              if (vars_of_term(replacement).count(e.var)) {
                capture = true;
                break;
              }
            }
            if (!capture)
              return Formula::exists(e.var, subst_formula(e.body, inner, pool));
            const int fresh = pool.take();
            Formula body = rename_free(e.body, e.var.index, fresh);
            return Formula::exists(fresh, subst_formula(body, inner, pool));
          },
      },
      f.node().v);
}

}  // namespace detail

/// Simultaneous replacement of x_i by args[i] for i < args.size().
inline Term substitute(const Term& target, const std::vector<Term>& args) {
  detail::Subst subst;
  for (std::size_t i = 0; i < args.size(); ++i)
    subst.emplace(static_cast<int>(i), args[i]);
  return detail::subst_term(target, subst);
}

/// Simultaneous replacement of x_i by args[i] for i < args.size(). Strict
/// mode rejects quantified targets; generalized mode renames bound variables
/// to the smallest indices not occurring in the target, any argument, or the
/// substitution domain, so no free variable of an argument is captured.
inline Formula substitute(const Formula& target, const std::vector<Term>& args,
                          SubstMode mode = SubstMode::Strict) {
  detail::Subst subst;
  detail::FreshPool pool;
  for (std::size_t i = 0; i < args.size(); ++i) {
    subst.emplace(static_cast<int>(i), args[i]);
    pool.excluded.insert(static_cast<int>(i));
    for (const auto& v : vars_of_term(args[i])) pool.excluded.insert(v.index);
  }
  for (const auto& v : all_vars(target)) pool.excluded.insert(v.index);
  if (mode == SubstMode::Strict && detail::has_quantifier(target))
    throw std::invalid_argument(
        "substitute: quantified target in strict mode");
  return detail::subst_formula(target, subst, pool);
}

/// Equality up to renaming of bound variables.
inline bool alpha_equal(const Formula& a, const Formula& b) {
  struct Cmp {
    std::map<int, int> ab, ba;
    bool term(const Term& x, const Term& y) {
      if (x.node().index() != y.node().index()) return false;
      if (const auto* vx = std::get_if<Term::Var>(&x.node())) {
        const auto& vy = std::get<Term::Var>(y.node());
        auto ia = ab.find(vx->var.index);
        auto ib = ba.find(vy.var.index);
        if (ia != ab.end() || ib != ba.end())
          return ia != ab.end() && ib != ba.end() &&
                 ia->second == vy.var.index && ib->second == vx->var.index;
        return vx->var.index == vy.var.index;
      }
      const auto& fx = std::get<Term::App>(x.node());
      const auto& fy = std::get<Term::App>(y.node());
      if (fx.fun != fy.fun || fx.args.size() != fy.args.size()) return false;
      for (std::size_t i = 0; i < fx.args.size(); ++i)
        if (!term(fx.args[i], fy.args[i])) return false;
      return true;
    }
    bool formula(const Formula& x, const Formula& y) {
      if (x.node().v.index() != y.node().v.index()) return false;
      return std::visit(
          overloaded{
              [&](const Formula::Eq& ex) {
                const auto& ey = std::get<Formula::Eq>(y.node().v);
                return term(ex.left, ey.left) && term(ex.right, ey.right);
              },
              [&](const Formula::Rel& rx) {
                const auto& ry = std::get<Formula::Rel>(y.node().v);
                if (rx.rel != ry.rel || rx.args.size() != ry.args.size())
                  return false;
                for (std::size_t i = 0; i < rx.args.size(); ++i)
                  if (!term(rx.args[i], ry.args[i])) return false;
                return true;
              },
              [&](const Formula::Not& nx) {
                return formula(nx.arg, std::get<Formula::Not>(y.node().v).arg);
              },
              [&](const Formula::Or& ox) {
                const auto& oy = std::get<Formula::Or>(y.node().v);
                return formula(ox.left, oy.left) && formula(ox.right, oy.right);
              },
              [&](const Formula::Exists& ex) {
                const auto& ey = std::get<Formula::Exists>(y.node().v);
                Cmp inner = *this;
                inner.ab[ex.var.index] = ey.var.index;
                inner.ba[ey.var.index] = ex.var.index;
                return inner.formula(ex.body, ey.body);
              },
          },
          x.node().v);
    }
  };
  return Cmp{}.formula(a, b);
}

// ----------------------------------------------------------- enumeration ---

namespace detail {

inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  for (int head = 0; head <= total; ++head)
    for (auto tail : compositions(total - head, parts - 1)) {
      tail.insert(tail.begin(), head);
      out.push_back(std::move(tail));
    }
  return out;
}

}  // namespace detail

/// All well-formed terms of grammar size <= max_size over variables
/// x0..x_max_var_index, in ascending size and the fixed term order within
/// each size class. Deterministic and duplicate free.
inline std::vector<Term> enumerate_terms(const Signature& sig, int max_size,
                                         int max_var_index) {
  std::vector<std::vector<Term>> by_size(std::max(max_size, 0) + 1);
  for (int i = 0; i <= max_var_index; ++i) by_size[0].push_back(Term::var(i));
  for (int s = 1; s <= max_size; ++s) {
    std::vector<Term>& bucket = by_size[s];
    for (const auto& [fun, arity] : sig.functions) {
      for (const auto& split : detail::compositions(s - 1, arity)) {
        std::vector<Term> current;
        std::function<void(std::size_t)> emit = [&](std::size_t k) {
          if (k == split.size()) {
            bucket.push_back(Term::app(fun, current));
            return;
          }
          for (const auto& t : by_size[split[k]]) {
            current.push_back(t);
            emit(k + 1);
            current.pop_back();
          }
        };
        emit(0);
      }
    }
    std::sort(bucket.begin(), bucket.end());
  }
  std::vector<Term> out;
  for (const auto& bucket : by_size)
    out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

/// All well-formed formulas of grammar size <= max_size, variables bounded
/// by max_var_index and quantifier depth by max_qdepth. Ordered by size,
/// then by the fixed formula order; deterministic and duplicate free.
inline std::vector<Formula> enumerate_formulas(const Signature& sig,
                                               int max_size, int max_var_index,
                                               int max_qdepth) {
  if (max_size < 0 || max_var_index < 0 || max_qdepth < 0)
    throw std::invalid_argument("enumerate_formulas: negative bound");
  std::vector<Term> terms = enumerate_terms(sig, max_size, max_var_index);
  std::vector<std::vector<Term>> terms_by_size(max_size + 1);
  for (const auto& t : terms) terms_by_size[grammar_size(t)].push_back(t);

  std::vector<std::vector<Formula>> by_size(max_size + 1);
  for (int s = 1; s <= max_size; ++s) {
    std::vector<Formula>& bucket = by_size[s];
    // atoms: t = s and R(t...)
    for (const auto& split : detail::compositions(s - 1, 2))
      for (const auto& l : terms_by_size[split[0]])
        for (const auto& r : terms_by_size[split[1]])
          bucket.push_back(Formula::eq(l, r));
    for (const auto& [rel, arity] : sig.relations) {
      for (const auto& split : detail::compositions(s - 1, arity)) {
        std::vector<Term> current;
        std::function<void(std::size_t)> emit = [&](std::size_t k) {
          if (k == split.size()) {
            bucket.push_back(Formula::rel(rel, current));
            return;
          }
          for (const auto& t : terms_by_size[split[k]]) {
            current.push_back(t);
            emit(k + 1);
            current.pop_back();
          }
        };
        emit(0);
      }
    }
    for (const auto& body : by_size[s - 1])
      bucket.push_back(Formula::negation(body));
    for (int sl = 1; sl <= s - 2; ++sl)
      for (const auto& l : by_size[sl])
        for (const auto& r : by_size[s - 1 - sl])
          bucket.push_back(Formula::disjunction(l, r));
    if (max_qdepth > 0)
      for (int v = 0; v <= max_var_index; ++v)
        for (const auto& body : by_size[s - 1])
          if (qdepth(body) < max_qdepth)
            bucket.push_back(Formula::exists(v, body));
    std::sort(bucket.begin(), bucket.end());
  }
  std::vector<Formula> out;
  for (const auto& bucket : by_size)
    out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

}  // namespace folcat
