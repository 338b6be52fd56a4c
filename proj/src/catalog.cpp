#include "fdplan/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fdplan/error.hpp"
#include "json.hpp"
#include "json_rows.hpp"

namespace fdplan {

using nlohmann::json;

namespace {

std::string class_name(EntityClass c) { return std::string(to_string(c)); }

Atom var_atom(const std::string& predicate, const std::string& variable) {
  return {predicate, variable};
}

ActionSchema unary(std::string name, EntityClass c, std::string pre, std::string add) {
  ActionSchema s;
  s.name = std::move(name);
  s.parameters = {{"?x", c}};
  s.precondition = {{var_atom(pre, "?x"), Polarity::positive}};
  s.add = {var_atom(add, "?x")};
  return s;
}

}  // namespace

const std::vector<std::string>& roth_predicates() {
  static const std::vector<std::string> predicates{
      "stored",         "guided",           "transformed",
      "converted",      "added-energy",     "added-material",
      "added-information", "separated-energy", "separated-material",
      "separated-information", "distributed"};
  return predicates;
}

FunctionCatalog built_in_catalog() {
  FunctionCatalog catalog;
  for (EntityClass c : kEntityClasses) catalog.types.push_back(class_name(c));
  catalog.predicates = roth_predicates();
  auto& out = catalog.schemas;

  for (EntityClass c : kEntityClasses) {
    const std::string e = class_name(c);
    out.push_back(unary("store-" + e, c, "guided", "stored"));
    out.push_back(unary("guide-" + e, c, "stored", "guided"));
    out.push_back(unary("transform-" + e, c, "guided", "transformed"));
    out.push_back(unary("convert-" + e, c, "guided", "converted"));
  }
  // Summative link of two carriers of the same class.
  for (EntityClass c : kEntityClasses) {
    ActionSchema s;
    s.name = "sum-link-equal-" + class_name(c);
    s.parameters = {{"?x", c}, {"?y", c}};
    s.precondition = {pos("guided", "?x"), pos("guided", "?y")};
    s.add = {var_atom("added-" + class_name(c), "?y")};
    out.push_back(std::move(s));
  }
  // Distributive link of the same class: one guided flow feeds another.
  for (EntityClass c : kEntityClasses) {
    ActionSchema s;
    s.name = "dist-link-equal-" + class_name(c);
    s.parameters = {{"?x", c}, {"?y", c}};
    s.precondition = {pos("guided", "?x")};
    s.add = {var_atom("guided", "?y"), var_atom("distributed", "?x")};
    out.push_back(std::move(s));
  }
  // Summative link adding a carrier of class E into one of class F.
  for (EntityClass from : kEntityClasses) {
    for (EntityClass into : kEntityClasses) {
      if (from == into) continue;
      ActionSchema s;
      s.name = "add-" + class_name(from) + "-to-" + class_name(into);
      s.parameters = {{"?x", from}, {"?y", into}};
      s.precondition = {pos("guided", "?x"), pos("guided", "?y")};
      s.add = {var_atom("added-" + class_name(from), "?y")};
      out.push_back(std::move(s));
    }
  }
  // Distributive link separating E back out of a carrier of class F.
  for (EntityClass what : kEntityClasses) {
    for (EntityClass from : kEntityClasses) {
      if (what == from) continue;
      ActionSchema s;
      s.name = "separate-" + class_name(what) + "-from-" + class_name(from);
      s.parameters = {{"?x", from}};
      s.precondition = {pos("added-" + class_name(what), "?x")};
      s.add = {var_atom("separated-" + class_name(what), "?x")};
      out.push_back(std::move(s));
    }
  }
  return catalog;
}

const ActionSchema* FunctionCatalog::find(std::string_view name) const {
  for (const ActionSchema& s : schemas) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void FunctionCatalog::validate() const {
  std::set<std::string> seen_types;
  for (const std::string& t : types) {
    if (!parse_entity_class(t)) throw ValidationError(t, "unknown entity class");
    if (!seen_types.insert(t).second) throw ValidationError(t, "type declared twice");
  }
  std::set<std::string> vocabulary;
  for (const std::string& p : predicates) {
    if (!is_identifier(p)) throw ValidationError(p, "invalid predicate name");
    if (!vocabulary.insert(p).second) throw ValidationError(p, "predicate declared twice");
  }
  std::set<std::string> names;
  for (const ActionSchema& s : schemas) {
    if (!names.insert(s.name).second) throw ValidationError(s.name, "duplicate schema name");
    s.validate();
    for (const Parameter& p : s.parameters) {
      if (!seen_types.contains(class_name(p.entity_class))) {
        throw ValidationError(s.name, "parameter " + p.variable + " uses undeclared type " +
                                          class_name(p.entity_class));
      }
    }
    auto known = [&](const Atom& a) {
      if (!vocabulary.contains(a.predicate)) {
        throw ValidationError(s.name, "unknown predicate '" + a.predicate + "'");
      }
    };
    for (const Literal& l : s.precondition) known(l.atom);
    for (const Atom& a : s.add) known(a);
    for (const Atom& a : s.del) known(a);
  }
}

namespace {

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Literal literal_field(const std::string& schema, const json& value, bool allow_negation) {
  if (!value.is_string()) throw ValidationError(schema, "literals must be strings");
  const std::string text = value.get<std::string>();
  auto parsed = pddl::parse_literal(text);
  if (!parsed.ok()) {
    throw ValidationError(schema, "bad literal \"" + text + "\": " + parsed.diagnostics[0].message);
  }
  if (!allow_negation && !parsed.ast.positive()) {
    throw ValidationError(schema, "effect lists take positive atoms, got \"" + text + "\"");
  }
  return parsed.ast;
}

const json& array_field(const json& object, const char* key, const std::string& owner) {
  static const json empty = json::array();
  auto it = object.find(key);
  if (it == object.end()) return empty;
  if (!it->is_array()) throw ValidationError(owner, std::string("'") + key + "' must be an array");
  return *it;
}

}  // namespace

FunctionCatalog parse_catalog_json(std::string_view text, std::string source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, column);
  }
  if (!doc.is_object()) throw ValidationError(source, "catalog must be a JSON object");

  FunctionCatalog catalog;
  catalog.source = std::move(source);
  for (const json& t : array_field(doc, "types", catalog.source)) {
    if (!t.is_string()) throw ValidationError(catalog.source, "types must be strings");
    catalog.types.push_back(t.get<std::string>());
  }
  for (const json& p : array_field(doc, "predicates", catalog.source)) {
    if (!p.is_string()) throw ValidationError(catalog.source, "predicates must be strings");
    catalog.predicates.push_back(p.get<std::string>());
  }
  if (!doc.contains("actions")) throw ValidationError(catalog.source, "missing 'actions'");
  for (const json& a : array_field(doc, "actions", catalog.source)) {
    if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) {
      throw ValidationError(catalog.source, "every action needs a string 'name'");
    }
    ActionSchema s;
    s.name = a["name"].get<std::string>();
    for (const json& p : array_field(a, "params", s.name)) {
      if (!p.is_object() || !p.contains("var") || !p.contains("type") || !p["var"].is_string() ||
          !p["type"].is_string()) {
        throw ValidationError(s.name, "params entries need string 'var' and 'type'");
      }
      auto cls = parse_entity_class(p["type"].get<std::string>());
      if (!cls) {
        throw ValidationError(s.name, "unknown entity class '" + p["type"].get<std::string>() + "'");
      }
      s.parameters.push_back({p["var"].get<std::string>(), *cls});
    }
    for (const json& l : array_field(a, "pre", s.name)) {
      s.precondition.push_back(literal_field(s.name, l, true));
    }
    for (const json& l : array_field(a, "add", s.name)) {
      s.add.push_back(literal_field(s.name, l, false).atom);
    }
    for (const json& l : array_field(a, "del", s.name)) {
      s.del.push_back(literal_field(s.name, l, false).atom);
    }
    catalog.schemas.push_back(std::move(s));
  }
  catalog.validate();
  return catalog;
}

FunctionCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog_text(buffer.str(), path.string());
}

std::string save_catalog(const FunctionCatalog& catalog) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  doc["types"] = catalog.types;
  doc["predicates"] = catalog.predicates;
  ojson actions = ojson::array();
  for (const ActionSchema& s : catalog.schemas) {
    ojson a;
    a["name"] = s.name;
    a["params"] = ojson::array();
    for (const Parameter& p : s.parameters) {
      a["params"].push_back({{"var", p.variable}, {"type", class_name(p.entity_class)}});
    }
    a["pre"] = ojson::array();
    for (const Literal& l : s.precondition) a["pre"].push_back(l.str());
    a["add"] = ojson::array();
    for (const Atom& x : s.add) a["add"].push_back(x.str());
    a["del"] = ojson::array();
    for (const Atom& x : s.del) a["del"].push_back(x.str());
    actions.push_back(std::move(a));
  }
  doc["actions"] = std::move(actions);
  return detail::dump_rows(doc);
}

std::vector<GroundAction> ground_all(const FunctionCatalog& catalog,
                                     std::span<const ObjectRef> objects) {
  std::vector<GroundAction> out;
  for (const ActionSchema& s : catalog.schemas) {
    for (GroundAction& g : ground(s, objects)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<GroundAction> achievers(const Atom& goal, const FunctionCatalog& catalog,
                                    std::span<const ObjectRef> objects) {
  std::vector<GroundAction> out;
  for (const ActionSchema& s : catalog.schemas) {
    const bool may_add = std::any_of(s.add.begin(), s.add.end(),
                                     [&](const Atom& a) { return a.predicate == goal.predicate; });
    if (!may_add) continue;
    for (GroundAction& g : ground(s, objects)) {
      if (std::find(g.add.begin(), g.add.end(), goal) != g.add.end()) out.push_back(std::move(g));
    }
  }
  return out;
}

pddl::DomainAst to_domain_ast(const FunctionCatalog& catalog, std::string_view name) {
  pddl::DomainAst d;
  d.name = std::string(name);
  d.requirements = {"strips", "typing"};
  const bool negative = std::any_of(catalog.schemas.begin(), catalog.schemas.end(), [](auto& s) {
    return std::any_of(s.precondition.begin(), s.precondition.end(),
                       [](const Literal& l) { return !l.positive(); });
  });
  if (negative) d.requirements.push_back("negative-preconditions");
  d.types = catalog.types;
  for (const std::string& p : catalog.predicates) d.predicates.push_back({p, {{"?x", ""}}});
  for (const ActionSchema& s : catalog.schemas) {
    pddl::ActionDecl a;
    a.name = s.name;
    for (const Parameter& p : s.parameters) a.parameters.push_back({p.variable, class_name(p.entity_class)});
    a.precondition = s.precondition;
    for (const Atom& x : s.add) a.effect.push_back({x, Polarity::positive});
    for (const Atom& x : s.del) a.effect.push_back({x, Polarity::negative});
    d.actions.push_back(std::move(a));
  }
  return d;
}

std::string emit_domain(const FunctionCatalog& catalog, std::string_view name) {
  return pddl::print_domain(to_domain_ast(catalog, name));
}

FunctionCatalog catalog_from_domain(const pddl::DomainAst& domain, std::string source) {
  FunctionCatalog catalog;
  catalog.source = std::move(source);
  catalog.types = domain.types;
  for (const pddl::PredicateDecl& p : domain.predicates) catalog.predicates.push_back(p.name);
  for (const pddl::ActionDecl& a : domain.actions) {
    ActionSchema s;
    s.name = a.name;
    for (const pddl::TypedName& p : a.parameters) {
      auto cls = parse_entity_class(p.type);
      if (!cls) {
        throw ValidationError(a.name, p.type.empty() ? "parameter " + p.name + " has no type"
                                                     : "unknown entity class '" + p.type + "'");
      }
      s.parameters.push_back({p.name, *cls});
    }
    s.precondition = a.precondition;
    for (const Literal& l : a.effect) (l.positive() ? s.add : s.del).push_back(l.atom);
    catalog.schemas.push_back(std::move(s));
  }
  catalog.validate();
  return catalog;
}

FunctionCatalog parse_catalog_text(std::string_view text, std::string source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return parse_catalog_json(text, std::move(source));
  }
  auto parsed = pddl::parse_domain(text);
  for (const pddl::Diagnostic& d : parsed.diagnostics) {
    if (d.severity == pddl::Severity::error) throw ParseError(d.message, d.line, d.column);
  }
  return catalog_from_domain(parsed.ast, std::move(source));
}

}  // namespace fdplan
