#include "generators.hpp"

#include <algorithm>

namespace fdplan::testing {
namespace {

std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& items) {
  return items[uniform(rng, 0, items.size() - 1)];
}

std::vector<std::string> vocabulary() {
  std::vector<std::string> words = roth_predicates();
  words.push_back("heated");
  words.push_back("p-2");
  words.push_back("sensed_value");
  return words;
}

}  // namespace

WalkProblem random_walk_problem(std::mt19937& rng, const FunctionCatalog& catalog,
                                std::size_t max_objects, std::size_t max_walk) {
  WalkProblem out;
  Problem& p = out.problem;
  p.name = "walk";
  const std::size_t n = uniform(rng, 1, max_objects);
  for (std::size_t i = 0; i < n; ++i) {
    const EntityClass c = kEntityClasses[uniform(rng, 0, 2)];
    p.objects.push_back({std::string(1, to_string(c)[0]) + std::to_string(i), c});
  }
  for (const ObjectRef& o : p.objects) {
    if (coin(rng, 0.75)) p.init.insert({"stored", o.name});
    if (coin(rng, 0.15)) p.init.insert({"guided", o.name});
  }
  const std::vector<GroundAction> actions = ground_all(catalog, p.objects);
  State state = p.init;
  const std::size_t length = uniform(rng, 1, max_walk);
  for (std::size_t step = 0; step < length; ++step) {
    std::vector<const GroundAction*> useful;
    for (const GroundAction& a : actions) {
      if (!applicable(state, a)) continue;
      const bool adds_new = std::any_of(a.add.begin(), a.add.end(),
                                        [&](const Atom& x) { return !state.contains(x); });
      if (adds_new) useful.push_back(&a);
    }
    if (useful.empty()) break;
    const GroundAction& chosen = *pick(rng, useful);
    state = apply(state, chosen, Semantics::monotone);
    out.walk.push_back(chosen);
  }
  std::vector<Atom> added;
  for (const Atom& a : state) {
    if (!p.init.contains(a)) added.push_back(a);
  }
  for (const Atom& a : added) {
    if (coin(rng, 0.5)) p.goal.push_back({a, Polarity::positive});
  }
  if (p.goal.empty() && !added.empty()) p.goal.push_back({pick(rng, added), Polarity::positive});
  if (p.goal.empty() && !p.init.empty()) {
    std::vector<Atom> init(p.init.begin(), p.init.end());
    p.goal.push_back({pick(rng, init), Polarity::positive});
  }
  return out;
}

pddl::DomainAst random_domain(std::mt19937& rng) {
  pddl::DomainAst d;
  d.name = "dom-" + std::to_string(uniform(rng, 0, 999));
  d.requirements = {"strips", "typing"};
  std::vector<std::string> classes{"material", "energy", "information"};
  std::shuffle(classes.begin(), classes.end(), rng);
  d.types.assign(classes.begin(), classes.begin() + static_cast<long>(uniform(rng, 1, 3)));
  std::vector<std::string> words = vocabulary();
  std::shuffle(words.begin(), words.end(), rng);
  const std::size_t predicates = uniform(rng, 1, 6);
  for (std::size_t i = 0; i < predicates; ++i) d.predicates.push_back({words[i], {{"?x", ""}}});
  const std::size_t actions = uniform(rng, 0, 5);
  for (std::size_t i = 0; i < actions; ++i) {
    pddl::ActionDecl a;
    a.name = "act-" + std::to_string(i);
    const std::vector<std::string> vars{"?a", "?b", "?c"};
    const std::size_t arity = uniform(rng, 0, 3);
    for (std::size_t k = 0; k < arity; ++k) a.parameters.push_back({vars[k], pick(rng, d.types)});
    auto literal = [&] {
      const std::string arg = arity == 0 ? "const" : a.parameters[uniform(rng, 0, arity - 1)].name;
      return Literal{{d.predicates[uniform(rng, 0, predicates - 1)].name, arg},
                     coin(rng, 0.3) ? Polarity::negative : Polarity::positive};
    };
    const std::size_t pre = uniform(rng, 0, 3);
    for (std::size_t k = 0; k < pre; ++k) a.precondition.push_back(literal());
    const std::size_t eff = uniform(rng, 1, 3);
    for (std::size_t k = 0; k < eff; ++k) a.effect.push_back(literal());
    d.actions.push_back(std::move(a));
  }
  return d;
}

pddl::ProblemAst random_problem_ast(std::mt19937& rng) {
  pddl::ProblemAst p;
  p.name = "prob-" + std::to_string(uniform(rng, 0, 999));
  p.domain = coin(rng, 0.9) ? "roth" : "";
  const std::vector<std::string> classes{"material", "energy", "information"};
  const std::size_t n = uniform(rng, 1, 5);
  for (std::size_t i = 0; i < n; ++i) p.objects.push_back({"o" + std::to_string(i), pick(rng, classes)});
  const std::vector<std::string> words = vocabulary();
  const std::size_t init = uniform(rng, 0, 5);
  for (std::size_t i = 0; i < init; ++i) {
    p.init.push_back({{pick(rng, words), pick(rng, p.objects).name}, Polarity::positive});
  }
  const std::size_t goal = uniform(rng, 1, 4);
  for (std::size_t i = 0; i < goal; ++i) {
    p.goal.push_back({{pick(rng, words), pick(rng, p.objects).name},
                      coin(rng, 0.25) ? Polarity::negative : Polarity::positive});
  }
  return p;
}

FunctionCatalog random_catalog(std::mt19937& rng) {
  FunctionCatalog c;
  c.source = "random";
  c.types = {"material", "energy", "information"};
  c.predicates = roth_predicates();
  if (coin(rng, 0.5)) c.predicates.push_back("heated");
  const std::size_t n = uniform(rng, 1, 8);
  for (std::size_t i = 0; i < n; ++i) {
    ActionSchema s;
    s.name = "f-" + std::to_string(i);
    const std::size_t arity = uniform(rng, 1, 2);
    for (std::size_t k = 0; k < arity; ++k) {
      s.parameters.push_back({k == 0 ? "?x" : "?y", kEntityClasses[uniform(rng, 0, 2)]});
    }
    auto atom = [&] {
      return Atom{pick(rng, c.predicates), s.parameters[uniform(rng, 0, arity - 1)].variable};
    };
    const std::size_t pre = uniform(rng, 0, 2);
    for (std::size_t k = 0; k < pre; ++k) {
      s.precondition.push_back({atom(), coin(rng, 0.2) ? Polarity::negative : Polarity::positive});
    }
    const std::size_t adds = uniform(rng, 1, 2);
    for (std::size_t k = 0; k < adds; ++k) {
      Atom a = atom();
      if (std::find(s.add.begin(), s.add.end(), a) == s.add.end()) s.add.push_back(a);
    }
    if (coin(rng, 0.4)) {
      Atom d = atom();
      if (std::find(s.add.begin(), s.add.end(), d) == s.add.end()) s.del.push_back(d);
    }
    c.schemas.push_back(std::move(s));
  }
  return c;
}

}  // namespace fdplan::testing
