#include "fdplan/plan_io.hpp"

#include <sstream>

#include "fdplan/error.hpp"
#include "json.hpp"
#include "json_rows.hpp"

namespace fdplan {

using nlohmann::json;

namespace {

std::string schema_name(const Step& s) {
  switch (s.kind) {
    case StepKind::start:
      return "start";
    case StepKind::finish:
      return "finish";
    case StepKind::action:
      return s.action->schema;
  }
  return "?";
}

ObjectRef resolve_object(const std::string& name, const Parameter& parameter,
                         const Problem& problem) {
  if (const ObjectRef* o = problem.find_object(name)) return *o;
  return {name, parameter.entity_class};
}

std::string flow_label(const Literal& l) {
  std::string out = l.atom.predicate + "(" + l.atom.argument + ")";
  return l.positive() ? out : "not " + out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string plan_to_json(const PartialPlan& plan) {
  nlohmann::ordered_json doc;
  doc["steps"] = nlohmann::ordered_json::array();
  for (const Step& s : plan.steps) {
    nlohmann::ordered_json args = nlohmann::ordered_json::array();
    if (s.action) {
      for (const ObjectRef& o : s.action->arguments) args.push_back(o.name);
    }
    doc["steps"].push_back({{"id", s.id}, {"name", schema_name(s)}, {"args", args}});
  }
  doc["ordering"] = nlohmann::ordered_json::array();
  for (const auto& [before, after] : plan.ordering.constraints()) {
    doc["ordering"].push_back({before, after});
  }
  doc["links"] = nlohmann::ordered_json::array();
  for (const CausalLink& l : plan.links) {
    doc["links"].push_back(
        {{"producerId", l.producer}, {"atom", l.condition.str()}, {"consumerId", l.consumer}});
  }
  doc["layers"] = layering(plan);
  doc["linear"] = linearize(plan);
  return detail::dump_rows(doc);
}

PlanDocument plan_from_json(std::string_view text, const Problem& problem,
                            const FunctionCatalog& catalog, Semantics semantics) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
  try {
    PlanDocument out;
    PartialPlan& plan = out.plan;
    const json& steps = doc.at("steps");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const json& s = steps.at(i);
      const StepId id = s.at("id").get<StepId>();
      const std::string name = s.at("name").get<std::string>();
      if (id != i) throw ValidationError("step " + std::to_string(id), "step ids must be 0, 1, 2, ...");
      if (i == kStartStep || i == kFinishStep) {
        const char* expected = i == kStartStep ? "start" : "finish";
        if (name != expected) {
          throw ValidationError("step " + std::to_string(i), std::string("must be ") + expected);
        }
        plan.steps.push_back(i == kStartStep ? make_start_step(problem) : make_finish_step(problem));
        continue;
      }
      const ActionSchema* schema = catalog.find(name);
      if (schema == nullptr) throw ValidationError(name, "unknown function");
      const auto args = s.at("args").get<std::vector<std::string>>();
      if (args.size() != schema->parameters.size()) {
        throw ValidationError(name, "expected " + std::to_string(schema->parameters.size()) +
                                        " arguments");
      }
      std::vector<ObjectRef> binding;
      for (std::size_t k = 0; k < args.size(); ++k) {
        binding.push_back(resolve_object(args[k], schema->parameters[k], problem));
      }
      plan.steps.push_back(make_action_step(id, instantiate(*schema, binding), semantics));
    }
    if (plan.steps.size() < 2) throw ValidationError("steps", "start and finish are required");

    plan.ordering = OrderingConstraints(plan.steps.size());
    for (const json& pair : doc.at("ordering")) {
      const auto before = pair.at(0).get<StepId>();
      const auto after = pair.at(1).get<StepId>();
      if (before >= plan.steps.size() || after >= plan.steps.size()) {
        throw ValidationError("ordering", "unknown step id");
      }
      if (!plan.ordering.try_add(before, after)) {
        throw ValidationError("ordering", std::to_string(before) + " < " + std::to_string(after) +
                                              " closes a cycle");
      }
    }
    for (const json& l : doc.value("links", json::array())) {
      const std::string atom = l.at("atom").get<std::string>();
      auto parsed = pddl::parse_literal(atom);
      if (!parsed.ok()) throw ValidationError(atom, "malformed link condition");
      plan.links.push_back(
          {l.at("producerId").get<StepId>(), parsed.ast, l.at("consumerId").get<StepId>()});
    }
    if (doc.contains("linear")) out.linear = doc["linear"].get<std::vector<StepId>>();
    return out;
  } catch (const json::exception& e) {
    throw ValidationError("plan", e.what());
  }
}

std::string plan_to_text(const PartialPlan& plan) {
  std::ostringstream os;
  os << "[{start},\n";
  for (const auto& layer : layering(plan)) {
    os << " {";
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (i > 0) os << ", ";
      os << plan.step(layer[i]).label();
    }
    os << "},\n";
  }
  os << " {finish}]\n";
  return os.str();
}

std::string plan_to_dot(const PartialPlan& plan, bool show_dummies) {
  std::ostringstream os;
  os << "digraph functional_structure {\n  rankdir=LR;\n  node [shape=box];\n";
  for (const Step& s : plan.steps) {
    if (s.is_dummy() && !show_dummies) continue;
    os << "  s" << s.id << " [label=" << quoted(s.label());
    if (s.is_dummy()) os << ", shape=ellipse";
    os << "];\n";
  }
  for (const CausalLink& l : plan.links) {
    if (!show_dummies && (plan.step(l.producer).is_dummy() || plan.step(l.consumer).is_dummy())) {
      continue;
    }
    os << "  s" << l.producer << " -> s" << l.consumer << " [label=" << quoted(flow_label(l.condition))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fdplan
