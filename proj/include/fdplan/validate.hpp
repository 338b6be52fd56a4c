#pragma once

// Independent checks for plans: a sequential executor, an exhaustive
// linear-extension validator, and a breadth-first reference planner.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdplan/catalog.hpp"
#include "fdplan/core.hpp"
#include "fdplan/pop.hpp"

namespace fdplan {

enum class Verdict { goal_satisfied, precondition_failed, goal_unsatisfied };

struct ExecutionTrace {
  std::vector<GroundAction> actions;  // actions applied, in order
  std::vector<State> states;          // states[0] is init; states[i] follows actions[i-1]
  Verdict verdict = Verdict::goal_satisfied;
  std::size_t failed_step = 0;  // 1-based; sequence length + 1 for a goal failure
  std::optional<Literal> missing;

  bool ok() const { return verdict == Verdict::goal_satisfied; }
  const State& final_state() const { return states.back(); }
  std::string describe() const;
};

// Applies `sequence` left to right, stopping at the first inapplicable action.
ExecutionTrace execute(const Problem& problem, std::span<const GroundAction> sequence,
                       Semantics semantics);

enum class ValidationMode { exhaustive, structural };

struct PlanVerdict {
  bool ok = false;
  ValidationMode mode = ValidationMode::exhaustive;
  std::size_t extensions_checked = 0;
  std::size_t extensions_passed = 0;
  std::vector<StepId> counterexample;      // failing extension, action steps only
  std::optional<ExecutionTrace> failure;   // trace of the counterexample
  std::vector<std::string> problems;       // structural findings
};

inline constexpr std::size_t kExhaustiveLimit = 10;

// Visits every linear extension of the ordering restricted to action steps,
// in lexicographic order of step ids. Returning false from `visit` stops.
void for_each_linear_extension(const PartialPlan& plan,
                               const std::function<bool(const std::vector<StepId>&)>& visit);

// Causal-link soundness, threat freedom, acyclicity and an empty agenda.
std::vector<std::string> check_structure(const PartialPlan& plan, const Problem& problem);

// Exhaustive when the plan has at most `exhaustive_limit` action steps (every
// linear extension must execute to the goal), structural otherwise.
PlanVerdict validate_partial(const PartialPlan& plan, const Problem& problem, Semantics semantics,
                             std::size_t exhaustive_limit = kExhaustiveLimit);

struct OracleResult {
  std::optional<std::vector<GroundAction>> plan;
  std::size_t explored = 0;
  std::size_t depth_bound = 0;
};

// Shortest sequential plan by breadth-first search over states. Throws
// ResourceExhausted once more than `state_cap` states are explored.
OracleResult bfs_shortest_plan(const Problem& problem, const FunctionCatalog& catalog,
                               std::size_t depth_bound, Semantics semantics,
                               std::size_t state_cap = 2'000'000);

}  // namespace fdplan
