#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "folcat/morphism.hpp"
#include "folcat/structure.hpp"
#include "folcat/syntax.hpp"

// Canonical text rendering. parse(print(x)) is structurally x for every
// well-formed object; disjunctions are fully parenthesized and quantified
// operands of ~ and | get explicit parentheses.

namespace folcat {

inline std::string print(const Term& t) {
  return std::visit(
      overloaded{[&](const Term::Var& v) {
                   return "x" + std::to_string(v.var.index);
                 },
                 [&](const Term::App& a) {
                   std::string out = a.fun + "(";
                   for (std::size_t i = 0; i < a.args.size(); ++i) {
                     if (i) out += ",";
                     out += print(a.args[i]);
                   }
                   out += ")";
                   return out;
                 }},
      t.node());
}

namespace detail {

inline bool is_exists(const Formula& f) {
  return std::holds_alternative<Formula::Exists>(f.node().v);
}

}  // namespace detail

inline std::string print(const Formula& f) {
  auto operand = [&](const Formula& g) {
    return detail::is_exists(g) ? "(" + print(g) + ")" : print(g);
  };
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return print(e.left) + " = " + print(e.right);
          },
          [&](const Formula::Rel& r) {
            if (r.rel == kOrderSymbol && r.args.size() == 2)
              return print(r.args[0]) + " < " + print(r.args[1]);
            std::string out = r.rel + "(";
            for (std::size_t i = 0; i < r.args.size(); ++i) {
              if (i) out += ",";
              out += print(r.args[i]);
            }
            out += ")";
            return out;
          },
          [&](const Formula::Not& n) { return "~" + operand(n.arg); },
          [&](const Formula::Or& o) {
            return "(" + operand(o.left) + " | " + operand(o.right) + ")";
          },
          [&](const Formula::Exists& e) {
            return "exists x" + std::to_string(e.var.index) + " . " +
                   print(e.body);
          },
      },
      f.node().v);
}

inline std::string print(const Signature& sig) {
  std::ostringstream os;
  os << "sig " << sig.name << " {\n";
  for (const auto& [fun, arity] : sig.functions)
    os << "  fun " << fun << "/" << arity << ";\n";
  for (const auto& [rel, arity] : sig.relations)
    os << "  rel " << rel << "/" << arity << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string print(const SymbolAssignment& h) {
  std::ostringstream os;
  os << "morphism " << h.name << " : " << h.source.name << " -> "
     << h.target.name;
  if (h.mode == MorphismMode::Generalized) os << " generalized";
  os << " {\n";
  for (const auto& [fun, image] : h.fun_map)
    os << "  fun " << fun << " := " << print(image) << ";\n";
  for (const auto& [rel, image] : h.rel_map)
    os << "  rel " << rel << " := " << print(image) << ";\n";
  os << "}\n";
  return os.str();
}

namespace detail {

inline void print_table(std::ostream& os, const std::vector<int>& table,
                        int domain, int arity, std::size_t offset,
                        std::size_t stride) {
  if (arity == 0) {
    os << table[offset];
    return;
  }
  os << "[";
  const std::size_t inner = stride / domain;
  for (int i = 0; i < domain; ++i) {
    if (i) os << ",";
    print_table(os, table, domain, arity - 1, offset + i * inner, inner);
  }
  os << "]";
}

}  // namespace detail

inline std::string print(const FiniteStructure& m) {
  std::ostringstream os;
  os << "structure " << m.name << " : " << m.sig.name << " {\n";
  os << "  domain " << m.size << ";\n";
  for (const auto& [fun, arity] : m.sig.functions) {
    os << "  fun " << fun << " := table ";
    const auto& table = m.fun_tables.at(fun);
    detail::print_table(os, table, m.size, arity, 0, table.size());
    os << ";\n";
  }
  for (const auto& [rel, _] : m.sig.relations) {
    os << "  rel " << rel << " := {";
    bool first = true;
    for (const auto& tuple : m.rel_tables.at(rel)) {
      os << (first ? " (" : ", (");
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << ",";
        os << tuple[i];
      }
      os << ")";
      first = false;
    }
    os << (first ? "};\n" : " };\n");
  }
  os << "}\n";
  return os.str();
}

// ------------------------------------------------------------------ json ----

inline nlohmann::json to_json(const Term& t) {
  return std::visit(
      overloaded{[&](const Term::Var& v) {
                   return nlohmann::json{{"node", "var"}, {"index", v.var.index}};
                 },
                 [&](const Term::App& a) {
                   nlohmann::json args = nlohmann::json::array();
                   for (const auto& arg : a.args) args.push_back(to_json(arg));
                   return nlohmann::json{
                       {"node", "app"}, {"fun", a.fun}, {"args", args}};
                 }},
      t.node());
}

inline nlohmann::json to_json(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const Formula::Eq& e) {
            return nlohmann::json{{"node", "eq"},
                                  {"left", to_json(e.left)},
                                  {"right", to_json(e.right)}};
          },
          [&](const Formula::Rel& r) {
            nlohmann::json args = nlohmann::json::array();
            for (const auto& arg : r.args) args.push_back(to_json(arg));
            return nlohmann::json{
                {"node", "rel"}, {"rel", r.rel}, {"args", args}};
          },
          [&](const Formula::Not& n) {
            return nlohmann::json{{"node", "not"}, {"arg", to_json(n.arg)}};
          },
          [&](const Formula::Or& o) {
            return nlohmann::json{{"node", "or"},
                                  {"left", to_json(o.left)},
                                  {"right", to_json(o.right)}};
          },
          [&](const Formula::Exists& e) {
            return nlohmann::json{{"node", "exists"},
                                  {"var", e.var.index},
                                  {"body", to_json(e.body)}};
          },
      },
      f.node().v);
}

inline nlohmann::json to_json(const Signature& sig) {
  return nlohmann::json{{"node", "signature"},
                        {"name", sig.name},
                        {"functions", sig.functions},
                        {"relations", sig.relations},
                        {"has_order", sig.has_order}};
}

inline nlohmann::json to_json(const SymbolAssignment& h) {
  nlohmann::json funs = nlohmann::json::object();
  for (const auto& [fun, image] : h.fun_map) funs[fun] = to_json(image);
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& [rel, image] : h.rel_map) rels[rel] = to_json(image);
  return nlohmann::json{
      {"node", "morphism"},
      {"name", h.name},
      {"source", to_json(h.source)},
      {"target", to_json(h.target)},
      {"mode", h.mode == MorphismMode::Generalized ? "generalized" : "strict"},
      {"fun_map", funs},
      {"rel_map", rels}};
}

inline nlohmann::json to_json(const FiniteStructure& m) {
  nlohmann::json funs = nlohmann::json::object();
  for (const auto& [fun, table] : m.fun_tables) funs[fun] = table;
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& [rel, table] : m.rel_tables) {
    nlohmann::json tuples = nlohmann::json::array();
    for (const auto& tuple : table) tuples.push_back(tuple);
    rels[rel] = tuples;
  }
  return nlohmann::json{{"node", "structure"},
                        {"name", m.name},
                        {"signature", to_json(m.sig)},
                        {"domain", m.size},
                        {"fun_tables", funs},
                        {"rel_tables", rels}};
}

}  // namespace folcat
