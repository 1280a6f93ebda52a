#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folcat/morphism.hpp"
#include "folcat/structure.hpp"
#include "folcat/syntax.hpp"

// Concrete syntax for .fol documents.
//
//   sig L { fun plus/2; fun zero/0; rel P/1; }
//   morphism H : L -> K [generalized] { fun f := <K-term>; rel R := <K-formula>; }
//   structure M : L { domain 4; fun f := table [...]; rel R := { (0,1), ... }; }
//
// Formulas use ~ & | -> with precedence ~ > & > | > ->, quantifiers
// `exists xk . phi` / `forall xk . phi`, infix `=` and `<`, and application
// `name(args)`; constants are written `name()`. The sugar &, ->, forall is
// desugared while parsing; the AST keeps only {=, Rel, ~, |, exists}.
// `#` starts a line comment.

namespace folcat {

struct ParseError : std::runtime_error {
  enum class Kind { Syntax, Validation };
  int line;
  int column;
  Kind kind;
  std::string message;

  ParseError(int line_, int column_, Kind kind_, const std::string& msg)
      : std::runtime_error((kind_ == Kind::Syntax ? "syntax error at "
                                                  : "validation error at ") +
                           std::to_string(line_) + ":" +
                           std::to_string(column_) + ": " + msg),
        line(line_),
        column(column_),
        kind(kind_),
        message(msg) {}
};

/// Parsed multi-declaration document; later declarations may refer to
/// earlier ones by name.
struct Document {
  std::map<std::string, Signature> signatures;
  std::map<std::string, SymbolAssignment> morphisms;
  std::map<std::string, FiniteStructure> structures;
  std::vector<std::pair<std::string, std::string>> order;  // (kind, name)
};

namespace detail {

enum class Tok {
  Ident,
  Var,
  Nat,
  KwSig,
  KwFun,
  KwRel,
  KwMorphism,
  KwStructure,
  KwDomain,
  KwTable,
  KwExists,
  KwForall,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Semi,
  Colon,
  Assign,
  Comma,
  Dot,
  Slash,
  Eq,
  Less,
  Tilde,
  Pipe,
  Amp,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  int line = 1;
  int column = 1;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto error = [&](const std::string& msg) {
    throw ParseError(line, column, ParseError::Kind::Syntax, msg);
  };
  auto push = [&](Tok kind, std::string t, long long value = 0) {
    out.push_back({kind, std::move(t), value, line, column});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      const std::string word = text.substr(i, j - i);
      if (word == "sig") push(Tok::KwSig, word);
      else if (word == "fun") push(Tok::KwFun, word);
      else if (word == "rel") push(Tok::KwRel, word);
      else if (word == "morphism") push(Tok::KwMorphism, word);
      else if (word == "structure") push(Tok::KwStructure, word);
      else if (word == "domain") push(Tok::KwDomain, word);
      else if (word == "table") push(Tok::KwTable, word);
      else if (word == "exists") push(Tok::KwExists, word);
      else if (word == "forall") push(Tok::KwForall, word);
      else if (word.size() > 1 && word[0] == 'x' &&
               word.find_first_not_of("0123456789", 1) == std::string::npos) {
        if (word.size() > 2 && word[1] == '0')
          error("variable index with leading zero: " + word);
        push(Tok::Var, word, std::stoll(word.substr(1)));
      } else {
        push(Tok::Ident, word);
      }
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      const std::string digits = text.substr(i, j - i);
      if (digits.size() > 18) error("number too large: " + digits);
      push(Tok::Nat, digits, std::stoll(digits));
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '{': push(Tok::LBrace, "{"); break;
      case '}': push(Tok::RBrace, "}"); break;
      case '(': push(Tok::LParen, "("); break;
      case ')': push(Tok::RParen, ")"); break;
      case '[': push(Tok::LBracket, "["); break;
      case ']': push(Tok::RBracket, "]"); break;
      case ';': push(Tok::Semi, ";"); break;
      case ',': push(Tok::Comma, ","); break;
      case '.': push(Tok::Dot, "."); break;
      case '/': push(Tok::Slash, "/"); break;
      case '=': push(Tok::Eq, "="); break;
      case '<': push(Tok::Less, "<"); break;
      case '~': push(Tok::Tilde, "~"); break;
      case '|': push(Tok::Pipe, "|"); break;
      case '&': push(Tok::Amp, "&"); break;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::Assign, ":=");
          ++i;
          ++column;
        } else {
          push(Tok::Colon, ":");
        }
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, "->");
          ++i;
          ++column;
        } else {
          error("stray '-'; did you mean '->'?");
        }
        break;
      default:
        error(std::string("unexpected character '") + c + "'");
    }
    ++column;
    ++i;
  }
  out.push_back({Tok::End, "", 0, line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  // --- token plumbing ---
  const Token& peek(int ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what + ", found '" + peek().text + "'");
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().column, ParseError::Kind::Syntax, msg);
  }
  [[noreturn]] void invalid(const std::string& msg) const {
    throw ParseError(peek().line, peek().column, ParseError::Kind::Validation,
                     msg);
  }
  [[noreturn]] void invalid_at(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, ParseError::Kind::Validation, msg);
  }
  void expect_end() {
    if (!at(Tok::End)) fail("trailing input after document");
  }

  // --- symbol names: identifiers, plus `<` in declaration position ---
  std::string symbol_name() {
    if (at(Tok::Less)) {
      next();
      return kOrderSymbol;
    }
    return expect(Tok::Ident, "a symbol name").text;
  }

  // --- signatures ---
  Signature signature() {
    expect(Tok::KwSig, "'sig'");
    const std::string name = expect(Tok::Ident, "a signature name").text;
    expect(Tok::LBrace, "'{'");
    std::map<std::string, int> functions, relations;
    while (!accept(Tok::RBrace)) {
      const bool is_fun = at(Tok::KwFun);
      if (!is_fun && !at(Tok::KwRel)) fail("expected 'fun', 'rel' or '}'");
      next();
      const Token sym_tok = peek();
      const std::string sym = symbol_name();
      expect(Tok::Slash, "'/'");
      const int arity = static_cast<int>(expect(Tok::Nat, "an arity").value);
      expect(Tok::Semi, "';'");
      if (functions.count(sym) || relations.count(sym))
        invalid_at(sym_tok, "duplicate symbol: " + sym);
      if (is_fun && sym == kOrderSymbol)
        invalid_at(sym_tok, "`<` cannot be a function symbol");
      if (!is_fun && sym == kOrderSymbol && arity != 2)
        invalid_at(sym_tok, "`<` must be binary");
      (is_fun ? functions : relations).emplace(sym, arity);
    }
    return make_signature(name, std::move(functions), std::move(relations));
  }

  // --- terms ---
  Term term(const Signature& sig) {
    if (at(Tok::Var)) {
      const Token v = next();
      return Term::var(static_cast<int>(v.value));
    }
    const Token name_tok = peek();
    const std::string name = expect(Tok::Ident, "a term").text;
    expect(Tok::LParen, "'(' (constants are written name())");
    std::vector<Term> args;
    if (!at(Tok::RParen)) {
      args.push_back(term(sig));
      while (accept(Tok::Comma)) args.push_back(term(sig));
    }
    expect(Tok::RParen, "')'");
    auto arity = sig.function_arity(name);
    if (!arity) invalid_at(name_tok, "unknown function symbol: " + name);
    if (*arity != static_cast<int>(args.size()))
      invalid_at(name_tok, "arity mismatch: " + name + " expects " +
                               std::to_string(*arity) + " arguments, got " +
                               std::to_string(args.size()));
    return Term::app(name, std::move(args));
  }

  // --- formulas (precedence ~ > & > | > ->, quantifier body maximal) ---
  Formula formula(const Signature& sig) {
    Formula left = or_formula(sig);
    if (accept(Tok::Arrow)) {
      Formula right = formula(sig);  // right associative
      return Formula::disjunction(Formula::negation(std::move(left)),
                                  std::move(right));
    }
    return left;
  }

  Formula or_formula(const Signature& sig) {
    Formula out = and_formula(sig);
    while (accept(Tok::Pipe))
      out = Formula::disjunction(std::move(out), and_formula(sig));
    return out;
  }

  Formula and_formula(const Signature& sig) {
    Formula out = unary_formula(sig);
    while (accept(Tok::Amp)) {
      Formula rhs = unary_formula(sig);
      out = Formula::negation(Formula::disjunction(
          Formula::negation(std::move(out)), Formula::negation(std::move(rhs))));
    }
    return out;
  }

  Formula unary_formula(const Signature& sig) {
    if (accept(Tok::Tilde)) return Formula::negation(unary_formula(sig));
    if (at(Tok::KwExists) || at(Tok::KwForall)) {
      const bool universal = next().kind == Tok::KwForall;
      const Token v = expect(Tok::Var, "a variable");
      expect(Tok::Dot, "'.'");
      Formula body = formula(sig);
      if (universal)
        return Formula::negation(Formula::exists(
            static_cast<int>(v.value), Formula::negation(std::move(body))));
      return Formula::exists(static_cast<int>(v.value), std::move(body));
    }
    if (accept(Tok::LParen)) {
      Formula out = formula(sig);
      expect(Tok::RParen, "')'");
      return out;
    }
    return atom(sig);
  }

  Formula atom(const Signature& sig) {
    // A relation application, or a comparison between two terms.
    if (at(Tok::Ident) && sig.relation_arity(peek().text)) {
      const Token name_tok = next();
      expect(Tok::LParen, "'('");
      std::vector<Term> args;
      if (!at(Tok::RParen)) {
        args.push_back(term(sig));
        while (accept(Tok::Comma)) args.push_back(term(sig));
      }
      expect(Tok::RParen, "')'");
      const int arity = *sig.relation_arity(name_tok.text);
      if (arity != static_cast<int>(args.size()))
        invalid_at(name_tok, "arity mismatch: " + name_tok.text + " expects " +
                                 std::to_string(arity) + " arguments, got " +
                                 std::to_string(args.size()));
      return Formula::rel(name_tok.text, std::move(args));
    }
    const Token start = peek();
    Term left = term(sig);
    if (accept(Tok::Eq)) return Formula::eq(std::move(left), term(sig));
    if (at(Tok::Less)) {
      const Token less_tok = next();
      if (!sig.has_order)
        invalid_at(less_tok, "signature does not declare the order symbol `<`");
      Term right = term(sig);
      return Formula::rel(kOrderSymbol, {std::move(left), std::move(right)});
    }
    throw ParseError(start.line, start.column, ParseError::Kind::Syntax,
                     "expected '=' or '<' after term");
  }

  // --- morphisms ---
  SymbolAssignment morphism(const Signature& source, const Signature& target) {
    expect(Tok::KwMorphism, "'morphism'");
    SymbolAssignment h;
    h.name = expect(Tok::Ident, "a morphism name").text;
    expect(Tok::Colon, "':'");
    const Token src_tok = expect(Tok::Ident, "the source signature name");
    expect(Tok::Arrow, "'->'");
    const Token dst_tok = expect(Tok::Ident, "the target signature name");
    if (src_tok.text != source.name)
      invalid_at(src_tok, "source signature mismatch: expected " + source.name);
    if (dst_tok.text != target.name)
      invalid_at(dst_tok, "target signature mismatch: expected " + target.name);
    h.source = source;
    h.target = target;
    if (at(Tok::Ident) && peek().text == "generalized") {
      next();
      h.mode = MorphismMode::Generalized;
    }
    expect(Tok::LBrace, "'{'");
    while (!accept(Tok::RBrace)) {
      const bool is_fun = at(Tok::KwFun);
      if (!is_fun && !at(Tok::KwRel)) fail("expected 'fun', 'rel' or '}'");
      next();
      const Token sym_tok = peek();
      const std::string sym = symbol_name();
      expect(Tok::Assign, "':='");
      if (is_fun) {
        if (!source.function_arity(sym))
          invalid_at(sym_tok, "unknown source function symbol: " + sym);
        if (h.fun_map.count(sym)) invalid_at(sym_tok, "duplicate clause: " + sym);
        h.fun_map.emplace(sym, term(target));
      } else {
        if (!source.relation_arity(sym))
          invalid_at(sym_tok, "unknown source relation symbol: " + sym);
        if (h.rel_map.count(sym)) invalid_at(sym_tok, "duplicate clause: " + sym);
        h.rel_map.emplace(sym, formula(target));
      }
      expect(Tok::Semi, "';'");
    }
    return h;
  }

  // Reads the morphism header names without consuming tokens.
  std::pair<std::string, std::string> morphism_header_names() const {
    // morphism NAME : SRC -> DST ...
    if (peek(0).kind != Tok::KwMorphism) return {"", ""};
    return {peek(3).text, peek(5).text};
  }

  // --- structures ---
  FiniteStructure structure(const Signature& sig) {
    expect(Tok::KwStructure, "'structure'");
    FiniteStructure m;
    m.name = expect(Tok::Ident, "a structure name").text;
    expect(Tok::Colon, "':'");
    const Token sig_tok = expect(Tok::Ident, "the signature name");
    if (sig_tok.text != sig.name)
      invalid_at(sig_tok, "signature mismatch: expected " + sig.name);
    m.sig = sig;
    expect(Tok::LBrace, "'{'");
    expect(Tok::KwDomain, "'domain'");
    const Token size_tok = expect(Tok::Nat, "the domain size");
    if (size_tok.value <= 0) invalid_at(size_tok, "domain must be nonempty");
    m.size = static_cast<int>(size_tok.value);
    expect(Tok::Semi, "';'");
    while (!accept(Tok::RBrace)) {
      const bool is_fun = at(Tok::KwFun);
      if (!is_fun && !at(Tok::KwRel)) fail("expected 'fun', 'rel' or '}'");
      next();
      const Token sym_tok = peek();
      const std::string sym = symbol_name();
      expect(Tok::Assign, "':='");
      if (is_fun) {
        auto arity = sig.function_arity(sym);
        if (!arity) invalid_at(sym_tok, "unknown function symbol: " + sym);
        if (m.fun_tables.count(sym))
          invalid_at(sym_tok, "duplicate table: " + sym);
        expect(Tok::KwTable, "'table'");
        std::vector<int> table;
        read_table(table, m.size, *arity);
        m.fun_tables.emplace(sym, std::move(table));
      } else {
        auto arity = sig.relation_arity(sym);
        if (!arity) invalid_at(sym_tok, "unknown relation symbol: " + sym);
        if (m.rel_tables.count(sym))
          invalid_at(sym_tok, "duplicate table: " + sym);
        std::set<std::vector<int>> tuples;
        expect(Tok::LBrace, "'{'");
        if (!at(Tok::RBrace)) {
          tuples.insert(read_tuple(m.size, *arity));
          while (accept(Tok::Comma)) tuples.insert(read_tuple(m.size, *arity));
        }
        expect(Tok::RBrace, "'}'");
        m.rel_tables.emplace(sym, std::move(tuples));
      }
      expect(Tok::Semi, "';'");
    }
    auto violations = validate_structure(m);
    if (!violations.empty())
      invalid("structure invalid: [" + violations.front().symbol + ": " +
              violations.front().rule + "] " + violations.front().message);
    return m;
  }

  void read_table(std::vector<int>& out, int domain, int depth) {
    if (depth == 0) {
      const Token v = expect(Tok::Nat, "a domain element");
      if (v.value < 0 || v.value >= domain)
        invalid_at(v, "table entry outside the domain");
      out.push_back(static_cast<int>(v.value));
      return;
    }
    expect(Tok::LBracket, "'['");
    for (int i = 0; i < domain; ++i) {
      if (i) expect(Tok::Comma, "','");
      read_table(out, domain, depth - 1);
    }
    expect(Tok::RBracket, "']'");
  }

  std::vector<int> read_tuple(int domain, int arity) {
    expect(Tok::LParen, "'('");
    std::vector<int> tuple;
    if (!at(Tok::RParen)) {
      do {
        const Token v = expect(Tok::Nat, "a domain element");
        if (v.value < 0 || v.value >= domain)
          invalid_at(v, "tuple entry outside the domain");
        tuple.push_back(static_cast<int>(v.value));
      } while (accept(Tok::Comma));
    }
    const Token close = expect(Tok::RParen, "')'");
    if (static_cast<int>(tuple.size()) != arity)
      invalid_at(close, "tuple arity mismatch");
    return tuple;
  }

  // --- documents ---
  void document_into(Document& doc) {
    while (!at(Tok::End)) {
      if (at(Tok::KwSig)) {
        Signature sig = signature();
        if (doc.signatures.count(sig.name))
          invalid("duplicate signature name: " + sig.name);
        doc.order.emplace_back("signature", sig.name);
        doc.signatures.emplace(sig.name, std::move(sig));
      } else if (at(Tok::KwMorphism)) {
        auto [src_name, dst_name] = morphism_header_names();
        auto src = doc.signatures.find(src_name);
        auto dst = doc.signatures.find(dst_name);
        if (src == doc.signatures.end())
          invalid("unknown source signature: " + src_name);
        if (dst == doc.signatures.end())
          invalid("unknown target signature: " + dst_name);
        SymbolAssignment h = morphism(src->second, dst->second);
        if (doc.morphisms.count(h.name))
          invalid("duplicate morphism name: " + h.name);
        doc.order.emplace_back("morphism", h.name);
        doc.morphisms.emplace(h.name, std::move(h));
      } else if (at(Tok::KwStructure)) {
        // structure NAME : SIG { ... }
        const std::string sig_name = peek(3).text;
        auto sig = doc.signatures.find(sig_name);
        if (sig == doc.signatures.end())
          invalid("unknown signature: " + sig_name);
        FiniteStructure m = structure(sig->second);
        if (doc.structures.count(m.name))
          invalid("duplicate structure name: " + m.name);
        doc.order.emplace_back("structure", m.name);
        doc.structures.emplace(m.name, std::move(m));
      } else {
        fail("expected 'sig', 'morphism' or 'structure'");
      }
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Signature parse_signature(const std::string& text) {
  detail::Parser p(text);
  Signature sig = p.signature();
  p.expect_end();
  return sig;
}

inline Term parse_term(const std::string& text, const Signature& sig) {
  detail::Parser p(text);
  Term t = p.term(sig);
  p.expect_end();
  return t;
}

inline Formula parse_formula(const std::string& text, const Signature& sig) {
  detail::Parser p(text);
  Formula f = p.formula(sig);
  p.expect_end();
  return f;
}

inline SymbolAssignment parse_morphism(const std::string& text,
                                       const Signature& source,
                                       const Signature& target) {
  detail::Parser p(text);
  SymbolAssignment h = p.morphism(source, target);
  p.expect_end();
  return h;
}

inline FiniteStructure parse_structure(const std::string& text,
                                       const Signature& sig) {
  detail::Parser p(text);
  FiniteStructure m = p.structure(sig);
  p.expect_end();
  return m;
}

/// Parses a sequence of declarations into a fresh document.
inline Document parse_document(const std::string& text) {
  Document doc;
  detail::Parser p(text);
  p.document_into(doc);
  return doc;
}

/// Parses declarations into an existing document, resolving names against
/// what is already there.
inline void parse_document_into(const std::string& text, Document& doc) {
  detail::Parser p(text);
  p.document_into(doc);
}

}  // namespace folcat
