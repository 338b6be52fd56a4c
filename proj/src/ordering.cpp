#include "fdplan/error.hpp"
#include "fdplan/pop.hpp"

namespace fdplan {

OrderingConstraints::OrderingConstraints(std::size_t steps)
    : reach_(steps, std::vector<bool>(steps, false)) {}

void OrderingConstraints::add_step() {
  for (auto& row : reach_) row.push_back(false);
  reach_.emplace_back(reach_.size() + 1, false);
}

bool OrderingConstraints::precedes(StepId before, StepId after) const {
  return before < reach_.size() && after < reach_.size() && reach_[before][after];
}

bool OrderingConstraints::try_add(StepId before, StepId after) {
  if (before >= reach_.size() || after >= reach_.size()) return false;
  if (before == after || reach_[after][before]) return false;
  if (reach_[before][after]) return true;
  const std::size_t n = reach_.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (x != before && !reach_[x][before]) continue;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == after || reach_[after][y]) reach_[x][y] = true;
    }
  }
  direct_.emplace(before, after);
  return true;
}

OrderingConstraints add_constraint(OrderingConstraints ordering, StepId before, StepId after) {
  if (!ordering.try_add(before, after)) throw CycleError(before, after);
  return ordering;
}

}  // namespace fdplan
