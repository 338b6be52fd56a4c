#include "fdplan/core.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "fdplan/error.hpp"

namespace fdplan {

std::string_view to_string(EntityClass c) {
  switch (c) {
    case EntityClass::material:
      return "material";
    case EntityClass::energy:
      return "energy";
    case EntityClass::information:
      return "information";
  }
  return "?";
}

std::optional<EntityClass> parse_entity_class(std::string_view text) {
  for (EntityClass c : kEntityClasses) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

namespace {

bool is_ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
}

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty() || !is_ident_start(text.front())) return false;
  return std::all_of(text.begin(), text.end(), is_ident_char);
}

bool is_variable(std::string_view text) {
  return text.size() > 1 && text.front() == '?' && is_identifier(text.substr(1));
}

std::string Atom::str() const { return "(" + predicate + " " + argument + ")"; }

std::string Literal::str() const {
  return positive() ? atom.str() : "(not " + atom.str() + ")";
}

bool State::satisfies(const Literal& literal) const {
  return contains(literal.atom) == literal.positive();
}

bool State::satisfies(std::span<const Literal> conjunction) const {
  return std::all_of(conjunction.begin(), conjunction.end(),
                     [this](const Literal& l) { return satisfies(l); });
}

std::optional<Literal> State::first_unsatisfied(std::span<const Literal> conjunction) const {
  for (const Literal& l : conjunction) {
    if (!satisfies(l)) return l;
  }
  return std::nullopt;
}

const Parameter* ActionSchema::find_parameter(std::string_view variable) const {
  for (const Parameter& p : parameters) {
    if (p.variable == variable) return &p;
  }
  return nullptr;
}

void ActionSchema::validate() const {
  if (!is_identifier(name)) throw ValidationError(name, "invalid action name");
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (!is_variable(parameters[i].variable)) {
      throw ValidationError(name, "invalid parameter '" + parameters[i].variable + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (parameters[j].variable == parameters[i].variable) {
        throw ValidationError(name, "duplicate parameter " + parameters[i].variable);
      }
    }
  }
  auto check_atom = [this](const Atom& atom, const char* where) {
    if (!is_identifier(atom.predicate)) {
      throw ValidationError(name, "invalid predicate '" + atom.predicate + "'");
    }
    if (find_parameter(atom.argument) == nullptr) {
      throw ValidationError(name, std::string("undeclared variable ") + atom.argument + " in " +
                                      where);
    }
  };
  for (const Literal& l : precondition) check_atom(l.atom, "precondition");
  for (const Atom& a : add) check_atom(a, "effect");
  for (const Atom& a : del) check_atom(a, "effect");
  for (const Atom& a : add) {
    if (std::find(del.begin(), del.end(), a) != del.end()) {
      throw ValidationError(name, a.str() + " is both added and deleted");
    }
  }
}

std::string_view to_string(Semantics s) {
  return s == Semantics::monotone ? "monotone" : "consume";
}

std::optional<Semantics> parse_semantics(std::string_view text) {
  if (text == "monotone") return Semantics::monotone;
  if (text == "consume") return Semantics::consume;
  return std::nullopt;
}

std::vector<Atom> GroundAction::deletes(Semantics semantics) const {
  std::vector<Atom> out;
  if (semantics == Semantics::monotone) return out;
  auto push = [&](const Atom& a) {
    if (std::find(add.begin(), add.end(), a) != add.end()) return;
    if (std::find(out.begin(), out.end(), a) != out.end()) return;
    out.push_back(a);
  };
  for (const Atom& a : del) push(a);
  for (const Literal& l : precondition) {
    if (l.positive()) push(l.atom);
  }
  return out;
}

std::string GroundAction::label() const {
  std::string out = schema + "(";
  for (std::size_t i = 0; i < arguments.size(); ++i) {
    if (i > 0) out += ", ";
    out += arguments[i].name;
  }
  return out + ")";
}

GroundAction instantiate(const ActionSchema& schema, std::span<const ObjectRef> binding) {
  if (binding.size() != schema.parameters.size()) {
    throw ValidationError(schema.name, "expected " + std::to_string(schema.parameters.size()) +
                                           " arguments, got " + std::to_string(binding.size()));
  }
  for (std::size_t i = 0; i < binding.size(); ++i) {
    if (binding[i].entity_class != schema.parameters[i].entity_class) {
      throw ValidationError(schema.name, binding[i].name + " is " +
                                             std::string(to_string(binding[i].entity_class)) +
                                             ", parameter " + schema.parameters[i].variable +
                                             " expects " +
                                             std::string(to_string(schema.parameters[i].entity_class)));
    }
  }
  auto subst = [&](const Atom& a) {
    for (std::size_t i = 0; i < schema.parameters.size(); ++i) {
      if (schema.parameters[i].variable == a.argument) return Atom{a.predicate, binding[i].name};
    }
    throw ValidationError(schema.name, "undeclared variable " + a.argument);
  };
  GroundAction g;
  g.schema = schema.name;
  g.arguments.assign(binding.begin(), binding.end());
  for (const Literal& l : schema.precondition) g.precondition.push_back({subst(l.atom), l.polarity});
  for (const Atom& a : schema.add) g.add.push_back(subst(a));
  for (const Atom& a : schema.del) g.del.push_back(subst(a));
  return g;
}

std::vector<GroundAction> ground(const ActionSchema& schema, std::span<const ObjectRef> objects) {
  std::vector<GroundAction> out;
  std::vector<ObjectRef> binding;
  std::vector<bool> used(objects.size(), false);
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == schema.parameters.size()) {
      out.push_back(instantiate(schema, binding));
      return;
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (used[i] || objects[i].entity_class != schema.parameters[k].entity_class) continue;
      used[i] = true;
      binding.push_back(objects[i]);
      extend(k + 1);
      binding.pop_back();
      used[i] = false;
    }
  };
  if (!objects.empty()) extend(0);
  return out;
}

bool applicable(const State& state, const GroundAction& action) {
  return state.satisfies(action.precondition);
}

State apply(const State& state, const GroundAction& action, Semantics semantics) {
  if (auto missing = state.first_unsatisfied(action.precondition)) {
    throw NotApplicable(action.label() + " requires " + missing->str());
  }
  State next = state;
  for (const Atom& a : action.deletes(semantics)) next.erase(a);
  for (const Atom& a : action.add) next.insert(a);
  return next;
}

const ObjectRef* Problem::find_object(std::string_view object_name) const {
  for (const ObjectRef& o : objects) {
    if (o.name == object_name) return &o;
  }
  return nullptr;
}

void Problem::validate() const {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!is_identifier(objects[i].name)) {
      throw ValidationError(objects[i].name, "invalid object name");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (objects[j].name == objects[i].name) {
        throw ValidationError(objects[i].name, "object declared twice");
      }
    }
  }
  for (const Atom& a : init) {
    if (find_object(a.argument) == nullptr) {
      throw ValidationError(a.str(), "init references undeclared object " + a.argument);
    }
  }
  for (const Literal& l : goal) {
    if (find_object(l.atom.argument) == nullptr) {
      throw ValidationError(l.str(), "goal references undeclared object " + l.atom.argument);
    }
  }
}

}  // namespace fdplan
