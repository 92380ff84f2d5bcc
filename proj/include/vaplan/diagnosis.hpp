#pragma once

#include "vaplan/grounder.hpp"
#include "vaplan/model.hpp"
#include "vaplan/planner.hpp"
#include "vaplan/virtual_actions.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace vaplan {

struct DiagnosisConfig {
  std::int64_t max_normal_cost = 10; // C
  int max_steps = 20;                // N
  std::set<std::string> exclusions;  // dynamic predicates without virtuals
  int static_check_depth = 1;
};

/// A goal is a conjunction of ground literals; appended goals are single
/// effect literals of semi-virtual steps.
using Goal = std::vector<Literal>;
using GoalList = std::vector<Goal>;

/// Case 1: the plan needs effects no normal action can achieve.
struct MissingCapability {
  Plan plan;
  std::vector<Literal> missing; // distinct full-virtual effects, plan order

  bool operator==(const MissingCapability &) const = default;
};

/// Case 2: regression over semi-virtual effects revisited a goal.
struct LayoutRing {
  GoalList goal_list; // full progression, repeated goal last
  std::vector<Goal> ring;

  bool operator==(const LayoutRing &) const = default;
};

/// Case 4: a stage-2 plan still required a full-virtual step.
struct MixedMissing {
  Plan plan;
  std::vector<Literal> missing;

  bool operator==(const MixedMissing &) const = default;
};

struct ChainEntry {
  Condition condition;      // dynamic precondition, common bindings applied
  std::string action;       // related action, parameters renamed
  std::vector<Atom> statics; // its condition-relevant static preconditions
  std::vector<Atom> unmet;

  bool operator==(const ChainEntry &) const = default;
};

/// Case 3: a static precondition of the goal-related action, or of an
/// action achieving one of its dynamic preconditions, cannot be met.
struct StaticUnmet {
  Literal goal;
  std::string action; // goal-related schema name (empty when none exists)
  Binding goal_binding;
  std::vector<Binding> satisfiable_bindings; // over static-precondition vars
  std::vector<Atom> unmet;  // unsatisfiable statics of the goal-related action
  std::vector<ChainEntry> chain;
  std::string note;

  bool informative() const;
  bool operator==(const StaticUnmet &) const = default;
};

using Explanation =
    std::variant<MissingCapability, LayoutRing, MixedMissing, StaticUnmet>;

struct Undiagnosed {};

using Outcome = std::variant<Plan, Explanation, Undiagnosed>;

/// Ground action sets used by the progressive stages. Stage 1 plans with
/// normal+full, stage 2 with normal+full+semi.
struct StageActions {
  std::vector<GroundAction> normal;
  std::vector<GroundAction> full;
  std::vector<GroundAction> semi;
};

StageActions build_stage_actions(const Domain &d, const Problem &p,
                                 const DiagnosisConfig &cfg);

/// Plans with normal actions only; on failure walks the three diagnosis
/// stages and returns the first explanation found.
Outcome progressive_diagnose(const Domain &d, const Problem &p,
                             const DiagnosisConfig &cfg);

/// Stage-2 goal-list loop. Returns an explanation, or the final goal list
/// for stage 3 when no plan can be found.
std::variant<Explanation, GoalList> stage2_loop(const Domain &d,
                                                const Problem &p,
                                                const DiagnosisConfig &cfg,
                                                const StageActions &stage);

/// Stage-3 static-precondition analysis for a single ground goal literal.
StaticUnmet stage3_static(const Literal &goal, const Domain &d,
                          const Problem &p, const DiagnosisConfig &cfg);

/// If g equals a prior goal, the sub-list from that goal through g.
std::optional<std::vector<Goal>> detect_ring(const GoalList &lg,
                                             const Goal &g);

std::optional<GroundAction> first_semi_virtual(const Plan &plan);

std::string to_string(const Goal &g);

} // namespace vaplan
