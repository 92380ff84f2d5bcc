#pragma once

#include "vaplan/model.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace vaplan {

/// Generated virtual action schemas. Every member has exactly one
/// unconditional effect; names carry the full_e_/full_d_/semi_e_/semi_d_
/// prefixes followed by the dynamic predicate name (and `_k` for DNF case
/// k >= 2).
struct VirtualActionSet {
  std::vector<ActionSchema> full;
  std::vector<ActionSchema> semi;

  std::vector<ActionSchema> all() const;
};

/// For each non-excluded dynamic predicate and each DNF requirement case,
/// emits a positive-effect schema (preconditions: case atoms plus `not s`,
/// effect s) and a negative-effect schema (case atoms plus s, effect -s).
/// A schema is semi-virtual when its effect literal unifies with an effect
/// of some normal schema, full-virtual otherwise.
VirtualActionSet generate_virtual_actions(
    const Domain &d, const std::vector<ActionSchema> &schemas,
    const std::set<std::string> &exclusions);

/// Sets semi costs to C*N and full costs to C*N*N, and validates that every
/// normal schema's declared cost is at most C. Returns the complete
/// name-to-cost table. Throws ConfigError on violations.
std::map<std::string, std::int64_t> assign_costs(
    VirtualActionSet &set, const std::vector<ActionSchema> &normals,
    std::int64_t max_normal_cost, std::int64_t max_steps);

} // namespace vaplan
