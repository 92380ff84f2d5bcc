#include "vaplan/virtual_actions.hpp"

#include <algorithm>

namespace vaplan {

namespace {

// Whether a literal with this predicate and polarity is an effect of any of
// the given schemas (conditional effects included).
bool achieved_by_some_action(const std::string &pred, std::size_t arity,
                             bool negated,
                             const std::vector<ActionSchema> &schemas) {
  for (const ActionSchema &schema : schemas) {
    for (const Effect &e : schema.effects) {
      if (e.literal.atom.pred == pred &&
          e.literal.atom.args.size() == arity &&
          e.literal.negated == negated) {
        return true;
      }
    }
  }
  return false;
}

} // namespace

std::vector<ActionSchema> VirtualActionSet::all() const {
  std::vector<ActionSchema> out = full;
  out.insert(out.end(), semi.begin(), semi.end());
  return out;
}

VirtualActionSet generate_virtual_actions(
    const Domain &d, const std::vector<ActionSchema> &schemas,
    const std::set<std::string> &exclusions) {
  VirtualActionSet out;
  for (const DynamicPredicate &dp : d.dynamic_decls) {
    if (exclusions.count(dp.head.pred) != 0) {
      continue;
    }
    for (std::size_t k = 0; k < dp.requirements.cases.size(); ++k) {
      const std::vector<Atom> &case_atoms = dp.requirements.cases[k];
      std::string suffix = k == 0 ? "" : "_" + std::to_string(k + 1);
      Literal s{dp.head, false};

      // Positive-effect schema: case atoms plus the `not s` guard.
      ActionSchema add;
      add.head = dp.head;
      for (const Atom &a : case_atoms) {
        add.preconditions.push_back(Condition{{a, false}, false});
      }
      add.preconditions.push_back(Condition{s, true});
      add.effects.push_back(Effect{s, {}});
      bool semi_add = achieved_by_some_action(
          dp.head.pred, dp.head.args.size(), false, schemas);
      add.kind = semi_add ? ActionKind::semi_virtual : ActionKind::full_virtual;
      add.head.pred = std::string(semi_add ? "semi_e_" : "full_e_") +
                      dp.head.pred + suffix;
      (semi_add ? out.semi : out.full).push_back(std::move(add));

      // Negative-effect schema: case atoms plus s itself.
      ActionSchema del;
      del.head = dp.head;
      for (const Atom &a : case_atoms) {
        del.preconditions.push_back(Condition{{a, false}, false});
      }
      del.preconditions.push_back(Condition{s, false});
      del.effects.push_back(Effect{complement(s), {}});
      bool semi_del = achieved_by_some_action(
          dp.head.pred, dp.head.args.size(), true, schemas);
      del.kind = semi_del ? ActionKind::semi_virtual : ActionKind::full_virtual;
      del.head.pred = std::string(semi_del ? "semi_d_" : "full_d_") +
                      dp.head.pred + suffix;
      (semi_del ? out.semi : out.full).push_back(std::move(del));
    }
  }
  return out;
}

std::map<std::string, std::int64_t> assign_costs(
    VirtualActionSet &set, const std::vector<ActionSchema> &normals,
    std::int64_t max_normal_cost, std::int64_t max_steps) {
  if (max_normal_cost < 1) {
    throw ConfigError("max normal cost C must be at least 1");
  }
  if (max_steps < 1) {
    throw ConfigError("max steps N must be at least 1");
  }
  std::map<std::string, std::int64_t> table;
  for (const ActionSchema &schema : normals) {
    if (schema.cost > max_normal_cost) {
      throw ConfigError("action '" + schema.name() + "' declares cost " +
                        std::to_string(schema.cost) +
                        " > max normal cost " +
                        std::to_string(max_normal_cost));
    }
    table[schema.name()] = schema.cost;
  }
  std::int64_t semi_cost = max_normal_cost * max_steps;
  std::int64_t full_cost = semi_cost * max_steps;
  for (ActionSchema &schema : set.semi) {
    schema.cost = semi_cost;
    table[schema.name()] = semi_cost;
  }
  for (ActionSchema &schema : set.full) {
    schema.cost = full_cost;
    table[schema.name()] = full_cost;
  }
  return table;
}

} // namespace vaplan
