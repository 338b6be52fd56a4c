#pragma once

// Plan documents (JSON, docs/plan.schema.json) and human-readable renderings.

#include <string>
#include <string_view>
#include <vector>

#include "fdplan/catalog.hpp"
#include "fdplan/pop.hpp"

namespace fdplan {

// {"steps":[{id,name,args}], "ordering":[[b,a]], "links":[{producerId,atom,
// consumerId}], "layers":[[ids]], "linear":[ids]}
std::string plan_to_json(const PartialPlan& plan);

struct PlanDocument {
  PartialPlan plan;
  std::vector<StepId> linear;  // empty when the document has none
};

// Rebuilds a plan against `problem` and `catalog`. Arguments that are not
// declared objects of the problem are bound with the schema's parameter
// class so that execution can report the failure. Throws ParseError or
// ValidationError.
PlanDocument plan_from_json(std::string_view text, const Problem& problem,
                            const FunctionCatalog& catalog, Semantics semantics);

// Bracketed layers: [{start}, {a, b}, {c}, {finish}]
std::string plan_to_text(const PartialPlan& plan);

// Graphviz digraph with one node per action step and one edge per causal
// link, labelled with the link condition.
std::string plan_to_dot(const PartialPlan& plan, bool show_dummies = false);

}  // namespace fdplan
