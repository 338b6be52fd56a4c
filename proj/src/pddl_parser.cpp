#include <algorithm>
#include <optional>
#include <set>

#include "fdplan/error.hpp"
#include "fdplan/pddl.hpp"

namespace fdplan::pddl {
namespace {

constexpr std::size_t kMaxDepth = 64;

// Parenthesised tree built from the token stream before interpretation.
struct Node {
  bool is_list = false;
  Token token;  // the atom, or the opening parenthesis of a list
  std::vector<Node> items;

  bool is_symbol() const { return !is_list && token.kind == TokenKind::symbol; }
  // Keyword without its leading ':'.
  std::string keyword() const { return token.text.substr(1); }
  bool head_is(std::string_view symbol) const {
    return is_list && !items.empty() && items[0].is_symbol() && items[0].token.text == symbol;
  }
  bool head_keyword() const {
    return is_list && !items.empty() && !items[0].is_list &&
           items[0].token.kind == TokenKind::keyword;
  }
};

struct SyntaxError {
  std::string message;
  int line;
  int column;
};

[[noreturn]] void fail(const Node& at, std::string message) {
  throw SyntaxError{std::move(message), at.token.line, at.token.column};
}

std::string describe(const Node& n) {
  if (n.is_list) return "a list";
  return "'" + n.token.text + "'";
}

std::vector<Node> build_forest(const std::vector<Token>& tokens,
                               std::vector<Diagnostic>& diagnostics) {
  std::vector<Node> top;
  std::vector<Node> stack;
  std::size_t skipped_depth = 0;  // nesting beyond kMaxDepth is discarded
  for (const Token& t : tokens) {
    if (skipped_depth > 0) {
      if (t.kind == TokenKind::lparen) ++skipped_depth;
      if (t.kind == TokenKind::rparen) --skipped_depth;
      continue;
    }
    if (t.kind == TokenKind::lparen) {
      if (stack.size() >= kMaxDepth) {
        diagnostics.push_back({Severity::error, "nesting too deep", t.line, t.column});
        skipped_depth = 1;
        continue;
      }
      Node list;
      list.is_list = true;
      list.token = t;
      stack.push_back(std::move(list));
    } else if (t.kind == TokenKind::rparen) {
      if (stack.empty()) {
        diagnostics.push_back({Severity::error, "unmatched ')'", t.line, t.column});
        continue;
      }
      Node done = std::move(stack.back());
      stack.pop_back();
      (stack.empty() ? top : stack.back().items).push_back(std::move(done));
    } else {
      Node atom;
      atom.token = t;
      (stack.empty() ? top : stack.back().items).push_back(std::move(atom));
    }
  }
  if (!stack.empty()) {
    diagnostics.push_back({Severity::error, "missing ')' for list opened here",
                           stack.front().token.line, stack.front().token.column});
    while (!stack.empty()) {
      Node done = std::move(stack.back());
      stack.pop_back();
      (stack.empty() ? top : stack.back().items).push_back(std::move(done));
    }
  }
  return top;
}

const Node& item(const Node& list, std::size_t i, const std::string& what) {
  if (i >= list.items.size()) fail(list, "expected " + what);
  return list.items[i];
}

std::string expect_symbol(const Node& n, const char* what) {
  if (!n.is_symbol()) fail(n, std::string("expected ") + what + ", found " + describe(n));
  return n.token.text;
}

// name* [- type] ... ; `variables` selects ?var or plain symbols.
std::vector<TypedName> parse_typed_list(const Node& list, std::size_t first, bool variables) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = first; i < list.items.size(); ++i) {
    const Node& n = list.items[i];
    if (n.is_symbol() && n.token.text == "-") {
      if (pending == 0) fail(n, "type annotation without names");
      const Node& type = item(list, i + 1, "a type name after '-'");
      std::string type_name = expect_symbol(type, "a type name");
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = type_name;
      pending = 0;
      ++i;
      continue;
    }
    const TokenKind want = variables ? TokenKind::variable : TokenKind::symbol;
    if (n.is_list || n.token.kind != want) {
      fail(n, std::string("expected ") + (variables ? "a ?variable" : "a name") + ", found " +
                  describe(n));
    }
    out.push_back({n.token.text, ""});
    ++pending;
  }
  return out;
}

std::string parse_argument(const Node& n, bool allow_variables) {
  if (n.is_list) fail(n, "expected an argument, found a list");
  if (n.token.kind == TokenKind::symbol) return n.token.text;
  if (allow_variables && n.token.kind == TokenKind::variable) return n.token.text;
  fail(n, "unexpected " + describe(n) + " as argument");
}

Atom parse_atom(const Node& n, bool allow_variables) {
  if (!n.is_list) fail(n, "expected an atom, found " + describe(n));
  if (n.items.empty()) fail(n, "empty atom");
  std::string predicate = expect_symbol(n.items[0], "a predicate name");
  if (predicate == "and" || predicate == "not") fail(n.items[0], "unexpected '" + predicate + "'");
  if (n.items.size() != 2) {
    fail(n, "predicate '" + predicate + "' takes exactly one argument, found " +
                std::to_string(n.items.size() - 1));
  }
  return {predicate, parse_argument(n.items[1], allow_variables)};
}

Literal parse_literal_node(const Node& n, bool allow_variables, bool allow_negation) {
  if (n.head_is("not")) {
    if (!allow_negation) fail(n, "negation is not allowed here");
    if (n.items.size() != 2) fail(n, "'not' takes exactly one atom");
    return {parse_atom(n.items[1], allow_variables), Polarity::negative};
  }
  return {parse_atom(n, allow_variables), Polarity::positive};
}

std::vector<Literal> parse_conjunction(const Node& n, bool allow_variables) {
  std::vector<Literal> out;
  if (n.head_is("and")) {
    for (std::size_t i = 1; i < n.items.size(); ++i) {
      out.push_back(parse_literal_node(n.items[i], allow_variables, true));
    }
  } else {
    out.push_back(parse_literal_node(n, allow_variables, true));
  }
  return out;
}

struct Document {
  std::vector<Node> forest;
  const Node* define = nullptr;
};

// Locates (define (<kind> NAME) ...) and reports stray top-level forms.
Document open_document(std::string_view text, std::vector<Diagnostic>& diagnostics,
                       std::string_view kind, std::string& name) {
  Document doc;
  doc.forest = build_forest(tokenize(text, diagnostics), diagnostics);
  for (const Node& n : doc.forest) {
    if (doc.define == nullptr && n.head_is("define")) {
      doc.define = &n;
      continue;
    }
    diagnostics.push_back({Severity::error,
                           doc.define ? "unexpected form after (define ...)"
                                      : "expected (define ...), found " + describe(n),
                           n.token.line, n.token.column});
  }
  if (doc.define == nullptr) {
    if (doc.forest.empty()) {
      diagnostics.push_back({Severity::error, "expected (define ...), found end of input", 1, 1});
    }
    return doc;
  }
  try {
    const std::string expected = "(" + std::string(kind) + " NAME)";
    const Node& header = item(*doc.define, 1, expected);
    if (!header.head_is(kind) || header.items.size() != 2) fail(header, "expected " + expected);
    name = expect_symbol(header.items[1], "a name");
  } catch (const SyntaxError& e) {
    diagnostics.push_back({Severity::error, e.message, e.line, e.column});
  }
  return doc;
}

ActionDecl parse_action(const Node& n, std::vector<Diagnostic>& diagnostics) {
  ActionDecl action;
  action.name = expect_symbol(item(n, 1, "an action name"), "an action name");
  bool seen_parameters = false, seen_precondition = false, seen_effect = false;
  for (std::size_t i = 2; i < n.items.size(); i += 2) {
    const Node& key = n.items[i];
    if (key.is_list || key.token.kind != TokenKind::keyword) {
      fail(key, "expected :parameters, :precondition or :effect in action '" + action.name +
                    "', found " + describe(key));
    }
    const Node& value = item(n, i + 1, "a value for " + key.token.text);
    auto once = [&](bool& seen) {
      if (seen) fail(key, "duplicate " + key.token.text + " in action '" + action.name + "'");
      seen = true;
    };
    const std::string field = key.keyword();
    if (field == "parameters") {
      once(seen_parameters);
      if (!value.is_list) fail(value, "expected a parameter list");
      action.parameters = parse_typed_list(value, 0, true);
    } else if (field == "precondition") {
      once(seen_precondition);
      action.precondition = parse_conjunction(value, true);
    } else if (field == "effect") {
      once(seen_effect);
      action.effect = parse_conjunction(value, true);
    } else {
      fail(key, "unsupported action field " + key.token.text);
    }
  }
  if (!seen_effect) {
    diagnostics.push_back({Severity::error, "action '" + action.name + "' has no :effect",
                           n.token.line, n.token.column});
  }
  return action;
}

const std::set<std::string>& supported_requirements() {
  static const std::set<std::string> known{"strips", "typing", "negative-preconditions"};
  return known;
}

}  // namespace

ParseResult<DomainAst> parse_domain(std::string_view text) {
  ParseResult<DomainAst> result;
  auto& diags = result.diagnostics;
  Document doc = open_document(text, diags, "domain", result.ast.name);
  if (doc.define == nullptr) return result;
  std::set<std::string> sections;
  std::set<std::string> action_names;
  for (std::size_t i = 2; i < doc.define->items.size(); ++i) {
    const Node& form = doc.define->items[i];
    try {
      if (!form.head_keyword()) fail(form, "expected a section such as (:action ...)");
      const std::string section = form.items[0].keyword();
      if (section != "action" && !sections.insert(section).second) {
        fail(form, "duplicate (:" + section + " ...) section");
      }
      if (section == "requirements") {
        for (std::size_t k = 1; k < form.items.size(); ++k) {
          const Node& r = form.items[k];
          if (r.is_list || r.token.kind != TokenKind::keyword) {
            fail(r, "expected a requirement flag, found " + describe(r));
          }
          if (!supported_requirements().contains(r.keyword())) {
            diags.push_back({Severity::warning,
                             "unsupported requirement " + r.token.text + " ignored",
                             r.token.line, r.token.column});
          }
          result.ast.requirements.push_back(r.keyword());
        }
      } else if (section == "types") {
        for (const TypedName& t : parse_typed_list(form, 1, false)) {
          if (!t.type.empty() && t.type != "object") {
            fail(form, "type hierarchies are not supported (" + t.name + " - " + t.type + ")");
          }
          result.ast.types.push_back(t.name);
        }
      } else if (section == "predicates") {
        for (std::size_t k = 1; k < form.items.size(); ++k) {
          const Node& p = form.items[k];
          if (!p.is_list || p.items.empty()) fail(p, "expected a predicate declaration");
          PredicateDecl decl{expect_symbol(p.items[0], "a predicate name"),
                             parse_typed_list(p, 1, true)};
          if (decl.parameters.size() != 1) {
            fail(p, "predicate '" + decl.name + "' must take exactly one parameter");
          }
          result.ast.predicates.push_back(std::move(decl));
        }
      } else if (section == "action") {
        ActionDecl action = parse_action(form, diags);
        if (!action_names.insert(action.name).second) {
          fail(form, "duplicate action '" + action.name + "'");
        }
        result.ast.actions.push_back(std::move(action));
      } else {
        fail(form.items[0], "unsupported section :" + section);
      }
    } catch (const SyntaxError& e) {
      diags.push_back({Severity::error, e.message, e.line, e.column});
    }
  }
  return result;
}

ParseResult<ProblemAst> parse_problem(std::string_view text) {
  ParseResult<ProblemAst> result;
  auto& diags = result.diagnostics;
  Document doc = open_document(text, diags, "problem", result.ast.name);
  if (doc.define == nullptr) return result;
  std::set<std::string> sections;
  const Node* goal_form = nullptr;
  // Literal positions, for reporting undeclared objects afterwards.
  std::vector<std::pair<const Node*, std::string>> references;
  for (std::size_t i = 2; i < doc.define->items.size(); ++i) {
    const Node& form = doc.define->items[i];
    try {
      if (!form.head_keyword()) fail(form, "expected a section such as (:init ...)");
      const std::string section = form.items[0].keyword();
      if (!sections.insert(section).second) fail(form, "duplicate (:" + section + " ...) section");
      if (section == "domain") {
        if (form.items.size() != 2) fail(form, "expected (:domain NAME)");
        result.ast.domain = expect_symbol(form.items[1], "a domain name");
      } else if (section == "objects") {
        result.ast.objects = parse_typed_list(form, 1, false);
      } else if (section == "init") {
        for (std::size_t k = 1; k < form.items.size(); ++k) {
          const Node& a = form.items[k];
          if (a.head_is("not")) fail(a, "negative literals are not allowed in :init");
          Literal l{parse_atom(a, false), Polarity::positive};
          references.emplace_back(&a, l.atom.argument);
          result.ast.init.push_back(std::move(l));
        }
      } else if (section == "goal") {
        goal_form = &form;
        if (form.items.size() != 2) fail(form, "expected (:goal <conjunction>)");
        result.ast.goal = parse_conjunction(form.items[1], false);
        const Node& body = form.items[1];
        if (body.head_is("and")) {
          for (std::size_t k = 1; k < body.items.size(); ++k) {
            references.emplace_back(&body.items[k], result.ast.goal[k - 1].atom.argument);
          }
        } else {
          references.emplace_back(&body, result.ast.goal[0].atom.argument);
        }
      } else {
        fail(form.items[0], "unsupported section :" + section);
      }
    } catch (const SyntaxError& e) {
      diags.push_back({Severity::error, e.message, e.line, e.column});
    }
  }
  if (goal_form == nullptr && !sections.contains("goal")) {
    diags.push_back({Severity::error, "problem has no (:goal ...)", doc.define->token.line,
                     doc.define->token.column});
  }
  std::set<std::string> declared;
  for (const TypedName& o : result.ast.objects) {
    if (!declared.insert(o.name).second) {
      diags.push_back({Severity::error, "object '" + o.name + "' declared twice",
                       doc.define->token.line, doc.define->token.column});
    }
  }
  for (const auto& [node, object] : references) {
    if (!declared.contains(object)) {
      diags.push_back({Severity::error, "undeclared object '" + object + "'", node->token.line,
                       node->token.column});
    }
  }
  return result;
}

ParseResult<Literal> parse_literal(std::string_view text) {
  ParseResult<Literal> result;
  std::vector<Node> forest = build_forest(tokenize(text, result.diagnostics), result.diagnostics);
  if (forest.size() != 1) {
    const int line = forest.size() > 1 ? forest[1].token.line : 1;
    const int column = forest.size() > 1 ? forest[1].token.column : 1;
    result.diagnostics.push_back({Severity::error, "expected exactly one literal", line, column});
    return result;
  }
  try {
    result.ast = parse_literal_node(forest[0], true, true);
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back({Severity::error, e.message, e.line, e.column});
  }
  return result;
}

Problem to_problem(const ProblemAst& ast) {
  Problem problem;
  problem.name = ast.name;
  problem.domain = ast.domain;
  for (const TypedName& o : ast.objects) {
    auto cls = parse_entity_class(o.type);
    if (!cls) {
      throw ValidationError(o.name, o.type.empty()
                                        ? "object has no type"
                                        : "unknown entity class '" + o.type + "'");
    }
    problem.objects.push_back({o.name, *cls});
  }
  for (const Literal& l : ast.init) {
    if (!l.positive()) throw ValidationError(l.str(), "negative literal in init");
    problem.init.insert(l.atom);
  }
  problem.goal = ast.goal;
  problem.validate();
  return problem;
}

ProblemAst to_ast(const Problem& problem) {
  ProblemAst ast;
  ast.name = problem.name;
  ast.domain = problem.domain;
  for (const ObjectRef& o : problem.objects) {
    ast.objects.push_back({o.name, std::string(to_string(o.entity_class))});
  }
  for (const Atom& a : problem.init) ast.init.push_back({a, Polarity::positive});
  ast.goal = problem.goal;
  return ast;
}

}  // namespace fdplan::pddl
