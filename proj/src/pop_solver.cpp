#include <algorithm>
#include <limits>
#include <map>

#include "fdplan/error.hpp"
#include "fdplan/pop.hpp"

namespace fdplan {

bool Step::adds(const Atom& atom) const {
  return std::find(add.begin(), add.end(), atom) != add.end();
}

bool Step::deletes(const Atom& atom) const {
  return std::find(del.begin(), del.end(), atom) != del.end();
}

std::string Step::label() const {
  switch (kind) {
    case StepKind::start:
      return "start";
    case StepKind::finish:
      return "finish";
    case StepKind::action:
      return action->label();
  }
  return "?";
}

Step make_start_step(const Problem& problem) {
  Step s;
  s.id = kStartStep;
  s.kind = StepKind::start;
  s.add.assign(problem.init.begin(), problem.init.end());
  return s;
}

Step make_finish_step(const Problem& problem) {
  Step s;
  s.id = kFinishStep;
  s.kind = StepKind::finish;
  s.precondition = problem.goal;
  return s;
}

Step make_action_step(StepId id, GroundAction action, Semantics semantics) {
  Step s;
  s.id = id;
  s.kind = StepKind::action;
  s.precondition = action.precondition;
  s.add = action.add;
  s.del = action.deletes(semantics);
  s.action = std::move(action);
  return s;
}

std::vector<StepId> PartialPlan::action_steps() const {
  std::vector<StepId> out;
  for (const Step& s : steps) {
    if (!s.is_dummy()) out.push_back(s.id);
  }
  return out;
}

PartialPlan initial_plan(const Problem& problem) {
  PartialPlan plan;
  plan.steps = {make_start_step(problem), make_finish_step(problem)};
  plan.ordering = OrderingConstraints(2);
  plan.ordering.try_add(kStartStep, kFinishStep);
  for (const Literal& g : problem.goal) plan.agenda.push_back({g, kFinishStep});
  return plan;
}

OpenGoal select_open_goal(std::span<const OpenGoal> agenda) {
  return *std::min_element(agenda.begin(), agenda.end(), [](const OpenGoal& a, const OpenGoal& b) {
    if (a.consumer != b.consumer) return a.consumer < b.consumer;
    return a.goal < b.goal;
  });
}

namespace {

// Existing steps able to supply `goal` to a consumer.
std::vector<StepId> existing_achievers(const Literal& goal, const PartialPlan& plan,
                                       bool reuse) {
  std::vector<StepId> out;
  for (const Step& s : plan.steps) {
    if (!reuse && s.kind != StepKind::start) continue;
    const bool supplies = goal.positive()
                              ? s.adds(goal.atom)
                              : (s.kind == StepKind::start ? !s.adds(goal.atom)
                                                           : s.deletes(goal.atom));
    if (supplies) out.push_back(s.id);
  }
  return out;
}

}  // namespace

std::vector<Achiever> choose_achiever(const Literal& goal, const PartialPlan& plan,
                                      const FunctionCatalog& catalog,
                                      std::span<const ObjectRef> objects,
                                      const SolverConfig& config) {
  std::vector<Achiever> out;
  for (StepId id : existing_achievers(goal, plan, config.reuse_existing_steps)) out.emplace_back(id);
  if (goal.positive()) {
    for (GroundAction& g : achievers(goal.atom, catalog, objects)) out.emplace_back(std::move(g));
  }
  return out;
}

bool threatens(const Step& step, const CausalLink& link, const OrderingConstraints& ordering) {
  if (step.id == link.producer || step.id == link.consumer) return false;
  const bool negates = link.condition.positive() ? step.deletes(link.condition.atom)
                                                 : step.adds(link.condition.atom);
  if (!negates) return false;
  return !ordering.precedes(step.id, link.producer) && !ordering.precedes(link.consumer, step.id);
}

std::vector<OrderingConstraints> protect(const CausalLink& link, const Step& step,
                                         const OrderingConstraints& ordering) {
  if (!threatens(step, link, ordering)) return {ordering};
  std::vector<OrderingConstraints> out;
  OrderingConstraints promoted = ordering;
  if (promoted.try_add(step.id, link.producer)) out.push_back(std::move(promoted));
  OrderingConstraints demoted = ordering;
  if (demoted.try_add(link.consumer, step.id)) out.push_back(std::move(demoted));
  return out;
}

std::vector<StepId> linearize(const PartialPlan& plan) {
  const std::size_t n = plan.steps.size();
  std::vector<bool> placed(n, false);
  std::vector<StepId> order;
  order.reserve(n);
  while (order.size() < n) {
    bool progressed = false;
    for (StepId s = 0; s < n; ++s) {
      if (placed[s]) continue;
      bool ready = true;
      for (StepId p = 0; p < n && ready; ++p) {
        if (!placed[p] && plan.ordering.precedes(p, s)) ready = false;
      }
      if (ready) {
        placed[s] = true;
        order.push_back(s);
        progressed = true;
        break;
      }
    }
    if (!progressed) throw Error("ordering is cyclic");
  }
  return order;
}

std::vector<std::vector<StepId>> layering(const PartialPlan& plan) {
  const std::vector<StepId> order = linearize(plan);
  std::vector<std::size_t> depth(plan.steps.size(), 0);
  for (StepId s : order) {
    for (StepId p : order) {
      if (p == s) break;
      if (plan.ordering.precedes(p, s)) depth[s] = std::max(depth[s], depth[p] + 1);
    }
  }
  std::vector<std::vector<StepId>> layers;
  for (StepId s : plan.action_steps()) {
    const std::size_t k = std::max<std::size_t>(depth[s], 1);
    if (layers.size() < k) layers.resize(k);
    layers[k - 1].push_back(s);
  }
  return layers;
}

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct IterationCapReached {};

// Depth-first refinement of partial plans under a bound on the number of
// action steps; the bound is raised between rounds.
class Search {
 public:
  Search(const Problem& problem, const FunctionCatalog& catalog, const SolverConfig& config)
      : problem_(problem), config_(config) {
    for (GroundAction& g : ground_all(catalog, problem.objects)) ground_.push_back(std::move(g));
    compute_reachable();
  }

  bool goals_reachable() const {
    return std::all_of(problem_.goal.begin(), problem_.goal.end(), [this](const Literal& g) {
      return !g.positive() || reachable_.contains(g.atom);
    });
  }

  // Largest plan the search ever needs to consider, or kUnbounded.
  std::size_t max_bound() const {
    if (config_.semantics != Semantics::monotone || !config_.reuse_existing_steps) return kUnbounded;
    std::size_t fresh = 0;
    for (const Atom& a : reachable_) fresh += !problem_.init.contains(a);
    return fresh;
  }

  std::size_t lower_bound(const PartialPlan& plan) const {
    std::size_t open = 0;
    std::vector<Atom> counted;
    for (const OpenGoal& g : plan.agenda) {
      if (!g.goal.positive()) continue;
      if (std::find(counted.begin(), counted.end(), g.goal.atom) != counted.end()) continue;
      if (!existing_achievers(g.goal, plan, config_.reuse_existing_steps).empty()) continue;
      counted.push_back(g.goal.atom);
      ++open;
    }
    return (open + max_add_ - 1) / max_add_;
  }

  SolveResult run() {
    SolveResult result;
    if (!goals_reachable()) return result;
    const PartialPlan root = initial_plan(problem_);
    const std::size_t limit = max_bound();
    try {
      for (bound_ = lower_bound(root);; ++bound_) {
        pruned_ = false;
        if (auto plan = refine(root)) {
          result.status = SolveStatus::solved;
          result.plan = std::move(plan);
          break;
        }
        // Exhausted without cutting any branch: the choice tree is finite
        // and holds no solution.
        if (!pruned_ || bound_ >= limit) break;
      }
    } catch (const IterationCapReached&) {
      result.status = SolveStatus::resource_exhausted;
    }
    result.iterations = iterations_;
    return result;
  }

 private:
  void compute_reachable() {
    reachable_.insert(problem_.init.begin(), problem_.init.end());
    std::vector<bool> fired(ground_.size(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < ground_.size(); ++i) {
        if (fired[i]) continue;
        const auto& pre = ground_[i].precondition;
        const bool ok = std::all_of(pre.begin(), pre.end(), [this](const Literal& l) {
          return !l.positive() || reachable_.contains(l.atom);
        });
        if (!ok) continue;
        fired[i] = true;
        changed = true;
        for (const Atom& a : ground_[i].add) reachable_.insert(a);
      }
    }
    for (std::size_t i = 0; i < ground_.size(); ++i) {
      if (!fired[i]) continue;
      max_add_ = std::max(max_add_, ground_[i].add.size());
      for (const Atom& a : ground_[i].add) index_[a].push_back(i);
    }
  }

  const std::vector<std::size_t>& fresh_achievers(const Atom& atom) const {
    static const std::vector<std::size_t> none;
    auto it = index_.find(atom);
    return it == index_.end() ? none : it->second;
  }

  std::optional<std::pair<std::size_t, StepId>> find_threat(const PartialPlan& plan) const {
    for (std::size_t l = 0; l < plan.links.size(); ++l) {
      for (const Step& s : plan.steps) {
        if (threatens(s, plan.links[l], plan.ordering)) return std::pair{l, s.id};
      }
    }
    return std::nullopt;
  }

  std::optional<PartialPlan> refine(const PartialPlan& plan) {
    if (iterations_ == config_.max_iterations) throw IterationCapReached{};
    ++iterations_;

    if (auto threat = find_threat(plan)) {
      const CausalLink& link = plan.links[threat->first];
      for (OrderingConstraints& resolved : protect(link, plan.step(threat->second), plan.ordering)) {
        PartialPlan next = plan;
        next.ordering = std::move(resolved);
        if (auto done = refine(next)) return done;
      }
      return std::nullopt;
    }
    if (plan.agenda.empty()) return plan;

    const std::size_t used = plan.steps.size() - 2;
    if (used + lower_bound(plan) > bound_) {
      pruned_ = true;
      return std::nullopt;
    }

    const OpenGoal open = select_open_goal(plan.agenda);
    PartialPlan base = plan;
    base.agenda.erase(std::find(base.agenda.begin(), base.agenda.end(), open));

    for (StepId producer : existing_achievers(open.goal, plan, config_.reuse_existing_steps)) {
      PartialPlan next = base;
      if (!next.ordering.try_add(producer, open.consumer)) continue;
      next.links.push_back({producer, open.goal, open.consumer});
      if (auto done = refine(next)) return done;
    }
    if (!open.goal.positive()) return std::nullopt;
    // A fresh step above the bound cannot complete this round.
    if (used + 1 > bound_) {
      pruned_ = true;
      return std::nullopt;
    }
    for (std::size_t index : fresh_achievers(open.goal.atom)) {
      PartialPlan next = base;
      const StepId id = next.steps.size();
      next.steps.push_back(make_action_step(id, ground_[index], config_.semantics));
      next.ordering.add_step();
      next.ordering.try_add(kStartStep, id);
      next.ordering.try_add(id, kFinishStep);
      if (!next.ordering.try_add(id, open.consumer)) continue;
      for (const Literal& p : next.steps.back().precondition) next.agenda.push_back({p, id});
      next.links.push_back({id, open.goal, open.consumer});
      if (auto done = refine(next)) return done;
    }
    return std::nullopt;
  }

  const Problem& problem_;
  SolverConfig config_;
  std::vector<GroundAction> ground_;
  std::set<Atom> reachable_;
  std::map<Atom, std::vector<std::size_t>> index_;
  std::size_t max_add_ = 1;
  std::size_t iterations_ = 0;
  std::size_t bound_ = 0;
  bool pruned_ = false;
};

}  // namespace

SolveResult solve(const Problem& problem, const FunctionCatalog& catalog,
                  const SolverConfig& config) {
  problem.validate();
  return Search(problem, catalog, config).run();
}

}  // namespace fdplan
