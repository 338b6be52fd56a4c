// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fdplan/catalog.hpp"
#include "fdplan/pddl.hpp"
#include "fdplan/pop.hpp"
#include "fdplan/validate.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace fdplan;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("[%s] %s %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  failures += !ok;
}

std::multiset<std::string> action_labels(const PartialPlan& plan) {
  std::multiset<std::string> out;
  for (StepId id : plan.action_steps()) out.insert(plan.step(id).label());
  return out;
}

std::optional<StepId> find_step(const PartialPlan& plan, const std::string& label) {
  for (const Step& s : plan.steps) {
    if (s.label() == label) return s.id;
  }
  return std::nullopt;
}

// Kahn's algorithm over the recorded constraints.
bool acyclic(const PartialPlan& plan) {
  const std::size_t n = plan.steps.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<StepId>> next(n);
  for (const auto& [a, b] : plan.ordering.constraints()) {
    next[a].push_back(b);
    ++indegree[b];
  }
  std::vector<StepId> ready;
  for (StepId i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const StepId x = ready.back();
    ready.pop_back();
    ++seen;
    for (StepId y : next[x]) {
      if (--indegree[y] == 0) ready.push_back(y);
    }
  }
  return seen == n;
}

bool links_sound(const PartialPlan& plan) {
  for (const CausalLink& l : plan.links) {
    const Step& producer = plan.step(l.producer);
    const Step& consumer = plan.step(l.consumer);
    if (std::find(consumer.precondition.begin(), consumer.precondition.end(), l.condition) ==
        consumer.precondition.end()) {
      return false;
    }
    if (l.condition.positive() && !producer.adds(l.condition.atom)) return false;
    if (!plan.ordering.precedes(l.producer, l.consumer)) return false;
    for (const Step& s : plan.steps) {
      if (s.id == l.producer || s.id == l.consumer) continue;
      const bool negates = l.condition.positive() ? s.deletes(l.condition.atom) : s.adds(l.condition.atom);
      if (negates && !plan.ordering.precedes(s.id, l.producer) && !plan.ordering.precedes(l.consumer, s.id)) {
        return false;
      }
    }
  }
  return true;
}

const FunctionCatalog& roth() {
  static const FunctionCatalog c = built_in_catalog();
  return c;
}

void ac1() {
  const Problem p = testing::coffee();
  const auto t0 = Clock::now();
  const SolveResult r = solve(p, roth());
  const double elapsed = seconds_since(t0);
  if (r.status != SolveStatus::solved) return report("AC1", false, "coffee maker not solved");
  const PartialPlan& plan = *r.plan;
  const std::multiset<std::string> expected{
      "guide-material(water)", "guide-energy(electric)", "convert-energy(electric)",
      "guide-material(powder)", "add-energy-to-material(electric, water)",
      "sum-link-equal-material(water, powder)"};
  const auto ge = find_step(plan, "guide-energy(electric)");
  const auto ce = find_step(plan, "convert-energy(electric)");
  const bool ordered = ge && ce && plan.ordering.precedes(*ge, *ce);
  const bool valid = validate_partial(plan, p, Semantics::monotone).ok;
  const bool ok = action_labels(plan) == expected && ordered && valid && elapsed < 1.0 &&
                  r.iterations < 10000;
  std::ostringstream d;
  d << "coffee maker: " << plan.action_steps().size() << " actions, set "
    << (action_labels(plan) == expected ? "exact" : "differs") << ", guide-energy<convert-energy "
    << (ordered ? "yes" : "no") << ", valid " << (valid ? "yes" : "no") << ", " << r.iterations
    << " iterations (< 10000), " << elapsed << " s (< 1)";
  report("AC1", ok, d.str());
}

void ac2() {
  const Problem p = testing::siege();
  const auto t0 = Clock::now();
  const SolveResult r = solve(p, roth());
  const double elapsed = seconds_since(t0);
  if (r.status != SolveStatus::solved) return report("AC2", false, "siege engine not solved");
  const PartialPlan& plan = *r.plan;
  const std::multiset<std::string> expected{"guide-energy(kinetic)", "guide-material(timber)",
                                            "transform-energy(kinetic)",
                                            "add-energy-to-material(kinetic, timber)"};
  const auto ge = find_step(plan, "guide-energy(kinetic)");
  const auto gm = find_step(plan, "guide-material(timber)");
  bool unordered = ge && gm && !plan.ordering.precedes(*ge, *gm) && !plan.ordering.precedes(*gm, *ge);
  bool same_layer = false;
  if (ge && gm) {
    for (const auto& layer : layering(plan)) {
      same_layer = same_layer || (std::count(layer.begin(), layer.end(), *ge) &&
                                  std::count(layer.begin(), layer.end(), *gm));
    }
  }
  const bool valid = validate_partial(plan, p, Semantics::monotone).ok;
  const bool ok = action_labels(plan) == expected && unordered && same_layer && valid && elapsed < 1.0;
  std::ostringstream d;
  d << "siege engine: " << plan.action_steps().size() << " actions, set "
    << (action_labels(plan) == expected ? "exact" : "differs") << ", guides unordered "
    << (unordered ? "yes" : "no") << ", same layer " << (same_layer ? "yes" : "no") << ", valid "
    << (valid ? "yes" : "no") << ", " << elapsed << " s (< 1)";
  report("AC2", ok, d.str());
}

void ac3() {
  std::ostringstream d;
  bool ok = true;
  for (auto [fixture, expected] : {std::pair{"coffee.pddl", std::size_t{6}}, std::pair{"siege.pddl", std::size_t{4}}}) {
    const Problem p = testing::load_problem(fixture);
    const OracleResult oracle = bfs_shortest_plan(p, roth(), 8, Semantics::monotone);
    const SolveResult r = solve(p, roth());
    const std::size_t bfs = oracle.plan ? oracle.plan->size() : 0;
    const std::size_t pop = r.plan ? r.plan->action_steps().size() : 0;
    ok = ok && oracle.plan && bfs == expected && pop == bfs;
    d << fixture << " bfs=" << bfs << " (expected " << expected << ", " << oracle.explored
      << " states) pop=" << pop << "; ";
  }
  report("AC3", ok, d.str());
}

void ac4() {
  std::ostringstream d;
  bool ok = true;
  for (const char* fixture : {"siege.pddl", "coffee.pddl"}) {
    const Problem p = testing::load_problem(fixture);
    const SolveResult r = solve(p, roth());
    if (!r.plan) {
      ok = false;
      d << fixture << " unsolved; ";
      continue;
    }
    const PlanVerdict v = validate_partial(*r.plan, p, Semantics::monotone);
    ok = ok && v.ok && v.mode == ValidationMode::exhaustive && v.extensions_checked > 0 &&
         v.extensions_passed == v.extensions_checked;
    d << fixture << " " << v.extensions_passed << "/" << v.extensions_checked << " extensions pass; ";
  }
  report("AC4", ok, d.str());
}

void ac5() {
  std::mt19937 rng(20240501);
  const auto t0 = Clock::now();
  std::size_t solved = 0, valid = 0, acyclic_count = 0, sound = 0, max_iterations = 0;
  const std::size_t total = 100;
  for (std::size_t i = 0; i < total; ++i) {
    const auto w = testing::random_walk_problem(rng, roth(), 5, 5);
    const SolveResult r = solve(w.problem, roth());
    max_iterations = std::max(max_iterations, r.iterations);
    if (r.status != SolveStatus::solved) continue;
    ++solved;
    valid += validate_partial(*r.plan, w.problem, Semantics::monotone).ok;
    acyclic_count += acyclic(*r.plan);
    sound += links_sound(*r.plan);
  }
  const double elapsed = seconds_since(t0);
  const bool ok = solved == total && valid == total && acyclic_count == total && sound == total &&
                  elapsed < 30.0;
  std::ostringstream d;
  d << "random walks: solved " << solved << "/" << total << ", valid " << valid << ", acyclic "
    << acyclic_count << ", links sound " << sound << ", max iterations " << max_iterations << ", "
    << elapsed << " s (< 30)";
  report("AC5", ok, d.str());
}

void ac6() {
  std::mt19937 rng(6);
  std::size_t round_trips = 0;
  for (int i = 0; i < 100; ++i) {
    const pddl::DomainAst d = testing::random_domain(rng);
    const auto back = pddl::parse_domain(pddl::print_domain(d));
    round_trips += back.ok() && back.ast == d;
  }
  for (int i = 0; i < 100; ++i) {
    const pddl::ProblemAst p = testing::random_problem_ast(rng);
    const auto back = pddl::parse_problem(pddl::print_problem(p));
    round_trips += back.ok() && back.ast == p;
  }
  std::size_t fuzz_ok = 0;
  std::uniform_int_distribution<int> len(0, 200), byte(0, 255);
  const std::string bias = "(():?-; \nand not define";
  for (int i = 0; i < 1000; ++i) {
    std::string input;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) {
      const int b = byte(rng);
      input += b < 128 ? bias[b % bias.size()] : static_cast<char>(byte(rng));
    }
    try {
      const auto d = pddl::parse_domain(input);
      const auto p = pddl::parse_problem(input);
      fuzz_ok += !d.diagnostics.empty() && !p.diagnostics.empty();
    } catch (...) {
    }
  }
  std::ostringstream d;
  d << "round trips " << round_trips << "/200, fuzz inputs handled with diagnostics " << fuzz_ok << "/1000";
  report("AC6", round_trips == 200 && fuzz_ok == 1000, d.str());
}

void ac7() {
  const FunctionCatalog& c = roth();
  const auto parsed = pddl::parse_domain(emit_domain(c));
  const bool identical = parsed.ok() && parsed.ast == to_domain_ast(c) &&
                         catalog_from_domain(parsed.ast, "emitted") == c;
  const std::vector<ObjectRef> universe{{"m1", EntityClass::material},
                                        {"m2", EntityClass::material},
                                        {"e1", EntityClass::energy},
                                        {"e2", EntityClass::energy},
                                        {"i1", EntityClass::information}};
  const std::vector<GroundAction> all = ground_all(c, universe);
  std::size_t goals = 0, agree = 0;
  for (const std::string& predicate : c.predicates) {
    for (const ObjectRef& o : universe) {
      const Atom goal{predicate, o.name};
      std::vector<GroundAction> brute;
      for (const GroundAction& a : all) {
        if (std::find(a.add.begin(), a.add.end(), goal) != a.add.end()) brute.push_back(a);
      }
      ++goals;
      agree += achievers(goal, c, universe) == brute;
    }
  }
  std::ostringstream d;
  d << c.size() << " schemas (expected 30), emit/parse identical " << (identical ? "yes" : "no")
    << ", achievers agree on " << agree << "/" << goals << " goals";
  report("AC7", c.size() == 30 && identical && agree == goals, d.str());
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  return failures == 0 ? 0 : 1;
}
