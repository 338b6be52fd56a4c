#include <set>

#include "fdplan/error.hpp"
#include "fdplan/validate.hpp"

namespace fdplan {

OracleResult bfs_shortest_plan(const Problem& problem, const FunctionCatalog& catalog,
                               std::size_t depth_bound, Semantics semantics,
                               std::size_t state_cap) {
  OracleResult result;
  result.depth_bound = depth_bound;
  const std::vector<GroundAction> actions = ground_all(catalog, problem.objects);

  struct Node {
    State state;
    std::size_t parent;
    std::size_t action;
    std::size_t depth;
  };
  std::vector<Node> nodes{{problem.init, 0, 0, 0}};
  std::set<State> seen{problem.init};

  auto extract = [&](std::size_t index) {
    std::vector<GroundAction> plan;
    while (index != 0) {
      plan.push_back(actions[nodes[index].action]);
      index = nodes[index].parent;
    }
    return std::vector<GroundAction>(plan.rbegin(), plan.rend());
  };

  if (problem.init.satisfies(problem.goal)) {
    result.plan = std::vector<GroundAction>{};
    return result;
  }
  // `nodes` doubles as the FIFO queue.
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= depth_bound) continue;
    if (++result.explored > state_cap) {
      throw ResourceExhausted("breadth-first search explored more than " +
                              std::to_string(state_cap) + " states");
    }
    for (std::size_t a = 0; a < actions.size(); ++a) {
      if (!applicable(nodes[head].state, actions[a])) continue;
      State next = apply(nodes[head].state, actions[a], semantics);
      if (!seen.insert(next).second) continue;
      const bool goal = next.satisfies(problem.goal);
      nodes.push_back({std::move(next), head, a, nodes[head].depth + 1});
      if (goal) {
        result.plan = extract(nodes.size() - 1);
        return result;
      }
    }
  }
  return result;
}

}  // namespace fdplan
