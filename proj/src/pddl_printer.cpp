#include <sstream>

#include "fdplan/pddl.hpp"

namespace fdplan::pddl {
namespace {

// Consecutive names sharing a type are grouped: "?x ?y - material".
void print_typed_list(std::ostream& os, const std::vector<TypedName>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) os << ' ';
    os << names[i].name;
    const bool last_of_group = i + 1 == names.size() || names[i + 1].type != names[i].type;
    if (last_of_group && !names[i].type.empty()) os << " - " << names[i].type;
  }
}

void print_conjunction(std::ostream& os, const std::vector<Literal>& literals) {
  if (literals.size() == 1) {
    os << literals[0].str();
    return;
  }
  os << "(and";
  for (const Literal& l : literals) os << ' ' << l.str();
  os << ')';
}

}  // namespace

std::string print_domain(const DomainAst& domain) {
  std::ostringstream os;
  os << "(define (domain " << domain.name << ")\n";
  if (!domain.requirements.empty()) {
    os << "  (:requirements";
    for (const std::string& r : domain.requirements) os << " :" << r;
    os << ")\n";
  }
  if (!domain.types.empty()) {
    os << "  (:types";
    for (const std::string& t : domain.types) os << ' ' << t;
    os << ")\n";
  }
  if (!domain.predicates.empty()) {
    os << "  (:predicates";
    for (const PredicateDecl& p : domain.predicates) {
      os << "\n    (" << p.name << ' ';
      print_typed_list(os, p.parameters);
      os << ')';
    }
    os << ")\n";
  }
  for (const ActionDecl& a : domain.actions) {
    os << "  (:action " << a.name << "\n    :parameters (";
    print_typed_list(os, a.parameters);
    os << ")\n    :precondition ";
    print_conjunction(os, a.precondition);
    os << "\n    :effect ";
    print_conjunction(os, a.effect);
    os << ")\n";
  }
  os << ")\n";
  return os.str();
}

std::string print_problem(const ProblemAst& problem) {
  std::ostringstream os;
  os << "(define (problem " << problem.name << ")\n";
  if (!problem.domain.empty()) os << "  (:domain " << problem.domain << ")\n";
  os << "  (:objects";
  if (!problem.objects.empty()) os << ' ';
  print_typed_list(os, problem.objects);
  os << ")\n  (:init";
  for (const Literal& l : problem.init) os << "\n    " << l.str();
  os << ")\n  (:goal ";
  print_conjunction(os, problem.goal);
  os << "))\n";
  return os.str();
}

}  // namespace fdplan::pddl
