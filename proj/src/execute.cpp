#include <algorithm>
#include <map>
#include <set>

#include "fdplan/validate.hpp"

namespace fdplan {

std::string ExecutionTrace::describe() const {
  switch (verdict) {
    case Verdict::goal_satisfied:
      return "goal satisfied after " + std::to_string(actions.size()) + " steps";
    case Verdict::precondition_failed:
      return "step " + std::to_string(failed_step) + " is missing precondition " +
             missing->str();
    case Verdict::goal_unsatisfied:
      return "goal literal " + missing->str() + " does not hold after the last step";
  }
  return "?";
}

ExecutionTrace execute(const Problem& problem, std::span<const GroundAction> sequence,
                       Semantics semantics) {
  ExecutionTrace trace;
  trace.states.push_back(problem.init);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const State& current = trace.states.back();
    if (auto missing = current.first_unsatisfied(sequence[i].precondition)) {
      trace.verdict = Verdict::precondition_failed;
      trace.failed_step = i + 1;
      trace.missing = missing;
      return trace;
    }
    trace.states.push_back(apply(current, sequence[i], semantics));
    trace.actions.push_back(sequence[i]);
  }
  if (auto missing = trace.final_state().first_unsatisfied(problem.goal)) {
    trace.verdict = Verdict::goal_unsatisfied;
    trace.failed_step = sequence.size() + 1;
    trace.missing = missing;
  }
  return trace;
}

void for_each_linear_extension(const PartialPlan& plan,
                               const std::function<bool(const std::vector<StepId>&)>& visit) {
  const std::vector<StepId> steps = plan.action_steps();
  std::vector<StepId> prefix;
  std::vector<bool> used(steps.size(), false);
  bool stop = false;
  std::function<void()> extend = [&] {
    if (stop) return;
    if (prefix.size() == steps.size()) {
      if (!visit(prefix)) stop = true;
      return;
    }
    for (std::size_t i = 0; i < steps.size() && !stop; ++i) {
      if (used[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < steps.size() && ready; ++j) {
        if (!used[j] && j != i && plan.ordering.precedes(steps[j], steps[i])) ready = false;
      }
      if (!ready) continue;
      used[i] = true;
      prefix.push_back(steps[i]);
      extend();
      prefix.pop_back();
      used[i] = false;
    }
  };
  extend();
}

std::vector<std::string> check_structure(const PartialPlan& plan, const Problem& problem) {
  std::vector<std::string> out;
  const std::size_t n = plan.steps.size();
  if (n < 2 || plan.steps[kStartStep].kind != StepKind::start ||
      plan.steps[kFinishStep].kind != StepKind::finish) {
    out.push_back("plan must begin with start and finish steps");
    return out;
  }
  if (plan.ordering.size() != n) {
    out.push_back("ordering covers " + std::to_string(plan.ordering.size()) + " steps, plan has " +
                  std::to_string(n));
    return out;
  }
  for (StepId s = 0; s < n; ++s) {
    if (plan.ordering.precedes(s, s)) out.push_back("ordering is cyclic at step " + std::to_string(s));
    if (s != kStartStep && !plan.ordering.precedes(kStartStep, s)) {
      out.push_back("start does not precede step " + std::to_string(s));
    }
    if (s != kFinishStep && !plan.ordering.precedes(s, kFinishStep)) {
      out.push_back("step " + std::to_string(s) + " does not precede finish");
    }
  }
  if (plan.steps[kStartStep].add != std::vector<Atom>(problem.init.begin(), problem.init.end())) {
    out.push_back("start does not supply the problem's initial state");
  }
  if (plan.steps[kFinishStep].precondition != problem.goal) {
    out.push_back("finish does not require the problem's goal");
  }
  if (!plan.agenda.empty()) out.push_back(std::to_string(plan.agenda.size()) + " open goals remain");

  // Every precondition must be supported by exactly one incoming link.
  std::map<std::pair<StepId, Literal>, std::size_t> support;
  for (const CausalLink& link : plan.links) {
    const std::string name = "link " + std::to_string(link.producer) + " --" +
                             link.condition.str() + "--> " + std::to_string(link.consumer);
    if (link.producer >= n || link.consumer >= n) {
      out.push_back(name + " references an unknown step");
      continue;
    }
    const Step& producer = plan.step(link.producer);
    const Step& consumer = plan.step(link.consumer);
    const bool supplies = link.condition.positive()
                              ? producer.adds(link.condition.atom)
                              : (producer.kind == StepKind::start ? !producer.adds(link.condition.atom)
                                                                  : producer.deletes(link.condition.atom));
    if (!supplies) out.push_back(name + ": producer does not supply the condition");
    if (std::find(consumer.precondition.begin(), consumer.precondition.end(), link.condition) ==
        consumer.precondition.end()) {
      out.push_back(name + ": condition is not a precondition of the consumer");
    }
    if (!plan.ordering.precedes(link.producer, link.consumer)) {
      out.push_back(name + ": producer is not ordered before consumer");
    }
    for (const Step& s : plan.steps) {
      if (threatens(s, link, plan.ordering)) out.push_back(name + " is threatened by step " + std::to_string(s.id));
    }
    ++support[{link.consumer, link.condition}];
  }
  for (const Step& s : plan.steps) {
    std::set<Literal> distinct(s.precondition.begin(), s.precondition.end());
    for (const Literal& p : distinct) {
      const std::size_t count = support[{s.id, p}];
      if (count != 1) {
        out.push_back("precondition " + p.str() + " of step " + std::to_string(s.id) + " has " +
                      std::to_string(count) + " supporting links");
      }
    }
  }
  return out;
}

PlanVerdict validate_partial(const PartialPlan& plan, const Problem& problem, Semantics semantics,
                             std::size_t exhaustive_limit) {
  PlanVerdict verdict;
  verdict.problems = check_structure(plan, problem);
  const std::vector<StepId> steps = plan.action_steps();
  if (steps.size() > exhaustive_limit) {
    verdict.mode = ValidationMode::structural;
    verdict.ok = verdict.problems.empty();
    return verdict;
  }
  verdict.mode = ValidationMode::exhaustive;
  // Cyclic orderings admit no extension at all.
  bool cyclic = false;
  for (StepId s = 0; s < plan.ordering.size(); ++s) cyclic = cyclic || plan.ordering.precedes(s, s);
  if (cyclic) {
    verdict.ok = false;
    return verdict;
  }
  for_each_linear_extension(plan, [&](const std::vector<StepId>& order) {
    std::vector<GroundAction> sequence;
    sequence.reserve(order.size());
    for (StepId id : order) sequence.push_back(*plan.step(id).action);
    ExecutionTrace trace = execute(problem, sequence, semantics);
    ++verdict.extensions_checked;
    if (trace.ok()) {
      ++verdict.extensions_passed;
    } else if (!verdict.failure) {
      verdict.counterexample = order;
      verdict.failure = std::move(trace);
    }
    return true;
  });
  verdict.ok = verdict.extensions_checked > 0 &&
               verdict.extensions_passed == verdict.extensions_checked;
  return verdict;
}

}  // namespace fdplan
