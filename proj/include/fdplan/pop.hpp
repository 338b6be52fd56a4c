#pragma once

// Partial-order causal-link planner over a function catalog.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fdplan/catalog.hpp"
#include "fdplan/core.hpp"

namespace fdplan {

using StepId = std::size_t;
inline constexpr StepId kStartStep = 0;
inline constexpr StepId kFinishStep = 1;

enum class StepKind { start, finish, action };

struct Step {
  StepId id = 0;
  StepKind kind = StepKind::action;
  std::optional<GroundAction> action;  // set iff kind == action
  std::vector<Literal> precondition;
  std::vector<Atom> add;
  std::vector<Atom> del;  // effective delete-list under the plan's semantics

  bool is_dummy() const { return kind != StepKind::action; }
  bool adds(const Atom& atom) const;
  bool deletes(const Atom& atom) const;
  std::string label() const;  // "start", "finish" or the action label

  bool operator==(const Step&) const = default;
};

Step make_start_step(const Problem& problem);
Step make_finish_step(const Problem& problem);
Step make_action_step(StepId id, GroundAction action, Semantics semantics);

// Strict partial order over step ids, kept transitively closed.
class OrderingConstraints {
 public:
  OrderingConstraints() = default;
  explicit OrderingConstraints(std::size_t steps);

  std::size_t size() const { return reach_.size(); }
  void add_step();

  bool precedes(StepId before, StepId after) const;

  // Adds before < after. Returns false and leaves the relation untouched
  // when `after` already precedes (or is) `before`.
  bool try_add(StepId before, StepId after);

  // Constraints as added, excluding ones already implied when added.
  const std::set<std::pair<StepId, StepId>>& constraints() const { return direct_; }

  bool operator==(const OrderingConstraints&) const = default;

 private:
  std::vector<std::vector<bool>> reach_;
  std::set<std::pair<StepId, StepId>> direct_;
};

// Throws CycleError.
OrderingConstraints add_constraint(OrderingConstraints ordering, StepId before, StepId after);

struct CausalLink {
  StepId producer = 0;
  Literal condition;
  StepId consumer = 0;

  auto operator<=>(const CausalLink&) const = default;
};

struct OpenGoal {
  Literal goal;
  StepId consumer = 0;

  bool operator==(const OpenGoal&) const = default;
};

struct PartialPlan {
  std::vector<Step> steps;  // steps[i].id == i
  OrderingConstraints ordering;
  std::vector<CausalLink> links;
  std::vector<OpenGoal> agenda;

  const Step& step(StepId id) const { return steps.at(id); }
  std::vector<StepId> action_steps() const;  // non-dummy ids, ascending

  bool operator==(const PartialPlan&) const = default;
};

// {start, finish}, start < finish, one open goal per goal conjunct.
PartialPlan initial_plan(const Problem& problem);

struct SolverConfig {
  std::size_t max_iterations = 10000;
  Semantics semantics = Semantics::monotone;
  bool reuse_existing_steps = true;
};

enum class SolveStatus { solved, unsolvable, resource_exhausted };

struct SolveResult {
  SolveStatus status = SolveStatus::unsolvable;
  std::optional<PartialPlan> plan;
  std::size_t iterations = 0;
};

SolveResult solve(const Problem& problem, const FunctionCatalog& catalog,
                  const SolverConfig& config = {});

// Lowest consumer id, then the lexicographically first literal.
OpenGoal select_open_goal(std::span<const OpenGoal> agenda);

// Either an existing step or a fresh ground action.
using Achiever = std::variant<StepId, GroundAction>;

// Existing steps that supply `goal` (start only, unless reuse is enabled),
// followed by fresh catalog instances. Negative goals are supplied by start
// when absent from init, or by existing steps deleting the atom.
std::vector<Achiever> choose_achiever(const Literal& goal, const PartialPlan& plan,
                                      const FunctionCatalog& catalog,
                                      std::span<const ObjectRef> objects,
                                      const SolverConfig& config = {});

// True if `step` negates the link condition and may fall between producer
// and consumer.
bool threatens(const Step& step, const CausalLink& link, const OrderingConstraints& ordering);

// Orderings resolving a threat of `step` against `link`: promotion then
// demotion, whichever are consistent. Unchanged ordering when no threat.
std::vector<OrderingConstraints> protect(const CausalLink& link, const Step& step,
                                         const OrderingConstraints& ordering);

// Topological order; ties broken by lowest step id.
std::vector<StepId> linearize(const PartialPlan& plan);

// Non-dummy steps grouped by longest ordering path from start (layer 1 first).
std::vector<std::vector<StepId>> layering(const PartialPlan& plan);

}  // namespace fdplan
