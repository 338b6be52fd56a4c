#pragma once

// The Roth function library as a data-driven set of action schemas.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdplan/core.hpp"
#include "fdplan/pddl.hpp"

namespace fdplan {

struct FunctionCatalog {
  std::vector<std::string> types;       // entity classes used, in declaration order
  std::vector<std::string> predicates;  // unary predicate vocabulary
  std::vector<ActionSchema> schemas;
  std::string source = "built-in";

  // Equality ignores `source`.
  bool operator==(const FunctionCatalog& other) const {
    return types == other.types && predicates == other.predicates && schemas == other.schemas;
  }

  std::size_t size() const { return schemas.size(); }
  const ActionSchema* find(std::string_view name) const;

  // Unique schema names, declared variables, known types and predicates.
  // Throws ValidationError naming the first offending schema.
  void validate() const;
};

// The eleven allocated-entity predicates.
const std::vector<std::string>& roth_predicates();

// store/guide/transform/convert per class, equal summative and distributive
// links per class, and unequal links for each ordered pair of classes.
FunctionCatalog built_in_catalog();

// JSON catalog file. ParseError carries line/column; ValidationError names
// the schema.
FunctionCatalog load_catalog(const std::filesystem::path& path);
FunctionCatalog parse_catalog_json(std::string_view text, std::string source = "<memory>");
std::string save_catalog(const FunctionCatalog& catalog);

std::vector<GroundAction> ground_all(const FunctionCatalog& catalog,
                                     std::span<const ObjectRef> objects);

// Ground instances whose add-list contains `goal`, in catalog order.
std::vector<GroundAction> achievers(const Atom& goal, const FunctionCatalog& catalog,
                                    std::span<const ObjectRef> objects);

pddl::DomainAst to_domain_ast(const FunctionCatalog& catalog, std::string_view name = "roth");
std::string emit_domain(const FunctionCatalog& catalog, std::string_view name = "roth");

// Throws ValidationError.
FunctionCatalog catalog_from_domain(const pddl::DomainAst& domain, std::string source);

// Accepts either a JSON catalog or a PDDL domain; throws ParseError on the
// first diagnostic.
FunctionCatalog parse_catalog_text(std::string_view text, std::string source);

}  // namespace fdplan
