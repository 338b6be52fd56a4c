#pragma once

// Reader and printer for the typed-STRIPS subset of PDDL used for Roth
// domains and decomposition problems. See docs/grammar.md.

#include <string>
#include <string_view>
#include <vector>

#include "fdplan/core.hpp"

namespace fdplan::pddl {

enum class TokenKind { lparen, rparen, symbol, keyword, variable };

struct Token {
  TokenKind kind;
  std::string text;  // lower-cased
  int line = 1;
  int column = 1;

  bool operator==(const Token&) const = default;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
  int line = 1;
  int column = 1;

  std::string str() const;  // "3:7: error: ..."
};

// Throws LexError at the first illegal character.
std::vector<Token> tokenize(std::string_view text);

// Lexes the whole input, skipping illegal characters and recording one
// diagnostic for each.
std::vector<Token> tokenize(std::string_view text, std::vector<Diagnostic>& diagnostics);

struct TypedName {
  std::string name;
  std::string type;  // empty when untyped

  bool operator==(const TypedName&) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> parameters;

  bool operator==(const PredicateDecl&) const = default;
};

struct ActionDecl {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<Literal> precondition;
  std::vector<Literal> effect;  // negative literals are deletes

  bool operator==(const ActionDecl&) const = default;
};

struct DomainAst {
  std::string name;
  std::vector<std::string> requirements;  // without the leading ':'
  std::vector<std::string> types;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionDecl> actions;

  bool operator==(const DomainAst&) const = default;
};

struct ProblemAst {
  std::string name;
  std::string domain;
  std::vector<TypedName> objects;
  std::vector<Literal> init;
  std::vector<Literal> goal;

  bool operator==(const ProblemAst&) const = default;
};

template <typename Ast>
struct ParseResult {
  Ast ast;
  std::vector<Diagnostic> diagnostics;

  bool ok() const {
    for (const Diagnostic& d : diagnostics) {
      if (d.severity == Severity::error) return false;
    }
    return true;
  }
  std::size_t error_count() const {
    std::size_t n = 0;
    for (const Diagnostic& d : diagnostics) n += d.severity == Severity::error;
    return n;
  }
};

ParseResult<DomainAst> parse_domain(std::string_view text);
ParseResult<ProblemAst> parse_problem(std::string_view text);

// A single literal such as "(guided ?x)" or "(not (stored water))".
ParseResult<Literal> parse_literal(std::string_view text);

std::string print_domain(const DomainAst& domain);
std::string print_problem(const ProblemAst& problem);

// Semantic conversion; throws ValidationError.
Problem to_problem(const ProblemAst& ast);
ProblemAst to_ast(const Problem& problem);

}  // namespace fdplan::pddl
