#pragma once

// Planning-domain data model: entity classes, objects, literals, states,
// action schemas and their ground instances.

#include <array>
#include <compare>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdplan {

enum class EntityClass { material, energy, information };

inline constexpr std::array<EntityClass, 3> kEntityClasses{
    EntityClass::material, EntityClass::energy, EntityClass::information};

std::string_view to_string(EntityClass c);
std::optional<EntityClass> parse_entity_class(std::string_view text);

// Lower-case identifier: letter, then letters, digits, '-' or '_'.
bool is_identifier(std::string_view text);
bool is_variable(std::string_view text);

struct ObjectRef {
  std::string name;
  EntityClass entity_class = EntityClass::material;

  auto operator<=>(const ObjectRef&) const = default;
};

// A unary predicate applied to one argument. Inside schemas the argument is
// a `?variable`; in states and ground actions it is an object name.
struct Atom {
  std::string predicate;
  std::string argument;

  auto operator<=>(const Atom&) const = default;

  std::string str() const;  // "(stored water)"
};

enum class Polarity { positive, negative };

struct Literal {
  Atom atom;
  Polarity polarity = Polarity::positive;

  auto operator<=>(const Literal&) const = default;

  bool positive() const { return polarity == Polarity::positive; }
  std::string str() const;  // "(stored water)" or "(not (stored water))"
};

inline Literal pos(std::string predicate, std::string argument) {
  return {{std::move(predicate), std::move(argument)}, Polarity::positive};
}
inline Literal neg(std::string predicate, std::string argument) {
  return {{std::move(predicate), std::move(argument)}, Polarity::negative};
}

// Closed-world state: a set of positive atoms, absence means false.
class State {
 public:
  State() = default;
  State(std::initializer_list<Atom> atoms) : atoms_(atoms) {}
  template <typename It>
  State(It first, It last) : atoms_(first, last) {}

  bool contains(const Atom& atom) const { return atoms_.contains(atom); }
  bool satisfies(const Literal& literal) const;
  bool satisfies(std::span<const Literal> conjunction) const;

  // First conjunct the state fails, if any.
  std::optional<Literal> first_unsatisfied(std::span<const Literal> conjunction) const;

  void insert(Atom atom) { atoms_.insert(std::move(atom)); }
  void erase(const Atom& atom) { atoms_.erase(atom); }

  const std::set<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }

  bool operator==(const State&) const = default;
  auto operator<=>(const State&) const = default;

 private:
  std::set<Atom> atoms_;
};

struct Parameter {
  std::string variable;  // includes the leading '?'
  EntityClass entity_class = EntityClass::material;

  bool operator==(const Parameter&) const = default;
};

// A function (n, p, e). Literal arguments are parameter variables.
struct ActionSchema {
  std::string name;
  std::vector<Parameter> parameters;
  std::vector<Literal> precondition;
  std::vector<Atom> add;
  std::vector<Atom> del;

  bool operator==(const ActionSchema&) const = default;

  const Parameter* find_parameter(std::string_view variable) const;

  // Throws ValidationError naming the schema: undeclared variables, duplicate
  // parameters, overlapping add/delete lists.
  void validate() const;
};

// How a transition treats the precondition of the applied action.
//   monotone: s' = s + add            (delete-lists ignored)
//   consume:  s' = (s - del - pre+) + add
enum class Semantics { monotone, consume };

std::string_view to_string(Semantics s);
std::optional<Semantics> parse_semantics(std::string_view text);

struct GroundAction {
  std::string schema;
  std::vector<ObjectRef> arguments;  // parallel to the schema's parameters
  std::vector<Literal> precondition;
  std::vector<Atom> add;
  std::vector<Atom> del;  // explicit delete-list of the schema

  bool operator==(const GroundAction&) const = default;

  // Effective delete-list under `semantics`; never overlaps `add`.
  std::vector<Atom> deletes(Semantics semantics) const;

  std::string label() const;  // "add-energy-to-material(electric, water)"
};

// Substitutes `binding` (parallel to schema.parameters) into the schema.
// Throws ValidationError on arity or class mismatch.
GroundAction instantiate(const ActionSchema& schema, std::span<const ObjectRef> binding);

// Every class-respecting injective binding, enumerated lexicographically in
// object declaration order.
std::vector<GroundAction> ground(const ActionSchema& schema, std::span<const ObjectRef> objects);

bool applicable(const State& state, const GroundAction& action);

// Throws NotApplicable when the precondition does not hold.
State apply(const State& state, const GroundAction& action, Semantics semantics);

struct Problem {
  std::string name = "problem";
  std::string domain = "roth";
  std::vector<ObjectRef> objects;
  State init;
  std::vector<Literal> goal;

  bool operator==(const Problem&) const = default;

  const ObjectRef* find_object(std::string_view name) const;

  // Unique object names, every init/goal literal names a declared object.
  void validate() const;
};

}  // namespace fdplan
