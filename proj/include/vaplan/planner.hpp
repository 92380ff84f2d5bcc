#pragma once

#include "vaplan/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace vaplan {

struct Plan {
  std::vector<GroundAction> steps;
  std::int64_t total_cost = 0;

  bool operator==(const Plan &) const = default;
};

/// Search outcome: a plan, or unsolvable with the number of nodes popped
/// after exhausting everything reachable within the step bound.
struct SearchResult {
  std::optional<Plan> plan;
  std::size_t explored = 0;

  bool solvable() const { return plan.has_value(); }
};

/// Minimum-total-cost plan of length <= max_steps, or unsolvable.
/// Ties: fewer virtual actions, then fewer steps, then virtual steps as
/// late as possible, then lexicographically smallest action-name sequence.
/// Deterministic. Throws ConfigError when max_steps < 1.
SearchResult plan(const State &init, const std::vector<Atom> &facts,
                  const std::vector<Literal> &goal,
                  const std::vector<GroundAction> &actions, int max_steps);

struct ValidationReport {
  bool valid = false;
  std::optional<std::size_t> failed_step; // 0-based
  std::string reason;
  State final_state;
};

/// Simulates the plan step by step; reports the first inapplicable step or
/// a goal miss.
ValidationReport validate_plan(const State &init,
                               const std::vector<Atom> &facts,
                               const Plan &plan,
                               const std::vector<Literal> &goal);

} // namespace vaplan
