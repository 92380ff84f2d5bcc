#include "vaplan/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_map>

namespace vaplan {

namespace {

// Literals are interned so that complement(id) == id ^ 1.
class LiteralTable {
public:
  std::uint32_t intern(const Literal &l) {
    auto [it, inserted] = atom_ids_.emplace(l.atom, 0);
    if (inserted) {
      it->second = static_cast<std::uint32_t>(atoms_.size());
      atoms_.push_back(l.atom);
    }
    return (it->second << 1) | (l.negated ? 1u : 0u);
  }

private:
  std::map<Atom, std::uint32_t> atom_ids_;
  std::vector<Atom> atoms_;
};

struct CompiledCondition {
  std::uint32_t lit;
  bool default_negated;
};

struct CompiledEffect {
  std::uint32_t add;
  std::vector<CompiledCondition> conditions;
};

struct CompiledAction {
  std::vector<CompiledCondition> preconditions;
  std::vector<CompiledEffect> effects;
  std::int64_t cost = 1;
  bool is_virtual = false;
  std::uint32_t name_rank = 0;
};

using StateVec = std::vector<std::uint32_t>;

bool state_contains(const StateVec &s, std::uint32_t lit) {
  return std::binary_search(s.begin(), s.end(), lit);
}

bool condition_holds(const StateVec &s, const CompiledCondition &c) {
  return state_contains(s, c.lit) != c.default_negated;
}

struct StateHash {
  std::size_t operator()(const StateVec &s) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t v : s) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Node {
  StateVec state;
  std::int64_t cost = 0;
  std::uint32_t vcount = 0;
  std::uint32_t steps = 0;
  std::vector<std::uint32_t> path;
  std::uint64_t seq = 0;
};

// Composite plan-quality order shared by the queue and the frontier:
// (cost, virtual count, steps, virtual-steps-late, name sequence).
int compare_paths(const std::vector<CompiledAction> &actions, const Node &a,
                  const Node &b) {
  if (a.cost != b.cost) {
    return a.cost < b.cost ? -1 : 1;
  }
  if (a.vcount != b.vcount) {
    return a.vcount < b.vcount ? -1 : 1;
  }
  if (a.steps != b.steps) {
    return a.steps < b.steps ? -1 : 1;
  }
  std::size_t n = std::min(a.path.size(), b.path.size());
  for (std::size_t i = 0; i < n; ++i) {
    bool va = actions[a.path[i]].is_virtual;
    bool vb = actions[b.path[i]].is_virtual;
    if (va != vb) {
      return va ? 1 : -1; // normal steps first: virtuals as late as possible
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t ra = actions[a.path[i]].name_rank;
    std::uint32_t rb = actions[b.path[i]].name_rank;
    if (ra != rb) {
      return ra < rb ? -1 : 1;
    }
  }
  return 0;
}

struct FrontierEntry {
  std::int64_t cost;
  std::uint32_t vcount;
  std::uint32_t steps;
  std::vector<std::uint32_t> path;
  bool closed = false;
};

Node entry_as_node(const FrontierEntry &e) {
  Node n;
  n.cost = e.cost;
  n.vcount = e.vcount;
  n.steps = e.steps;
  n.path = e.path;
  return n;
}

} // namespace

SearchResult plan(const State &init, const std::vector<Atom> &facts,
                  const std::vector<Literal> &goal,
                  const std::vector<GroundAction> &actions, int max_steps) {
  (void)facts;
  if (max_steps < 1) {
    throw ConfigError("max steps N must be at least 1");
  }

  LiteralTable table;
  std::vector<CompiledAction> compiled(actions.size());
  std::vector<std::string> names(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const GroundAction &ga = actions[i];
    CompiledAction &ca = compiled[i];
    ca.cost = ga.cost;
    ca.is_virtual = ga.is_virtual();
    names[i] = to_string(ga.head);
    for (const Condition &c : ga.preconditions) {
      ca.preconditions.push_back({table.intern(c.literal), c.default_negated});
    }
    for (const Effect &e : ga.effects) {
      CompiledEffect ce;
      ce.add = table.intern(e.literal);
      for (const Condition &c : e.conditions) {
        ce.conditions.push_back({table.intern(c.literal), c.default_negated});
      }
      ca.effects.push_back(std::move(ce));
    }
  }
  {
    std::vector<std::size_t> order(actions.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return names[a] < names[b];
    });
    std::uint32_t rank = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0 && names[order[i]] != names[order[i - 1]]) {
        ++rank;
      }
      compiled[order[i]].name_rank = rank;
    }
  }

  std::vector<std::uint32_t> goal_lits;
  for (const Literal &l : goal) {
    goal_lits.push_back(table.intern(l));
  }
  std::sort(goal_lits.begin(), goal_lits.end());
  goal_lits.erase(std::unique(goal_lits.begin(), goal_lits.end()),
                  goal_lits.end());

  StateVec start;
  for (const Literal &l : init.literals) {
    start.push_back(table.intern(l));
  }
  std::sort(start.begin(), start.end());

  auto is_goal = [&](const StateVec &s) {
    return std::all_of(goal_lits.begin(), goal_lits.end(),
                       [&](std::uint32_t g) { return state_contains(s, g); });
  };

  auto node_less = [&](const Node &a, const Node &b) {
    int c = compare_paths(compiled, a, b);
    if (c != 0) {
      return c < 0;
    }
    return a.seq < b.seq;
  };
  auto pq_greater = [&](const Node &a, const Node &b) {
    return node_less(b, a);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(pq_greater)> queue(
      pq_greater);

  // a dominates b when a is at most as deep and at least as good; any
  // completion of b is then also available from a, no worse.
  auto dominates = [&](const FrontierEntry &a, const Node &b) {
    if (a.steps > b.steps) {
      return false;
    }
    return compare_paths(compiled, entry_as_node(a), b) <= 0;
  };

  std::unordered_map<StateVec, std::vector<FrontierEntry>, StateHash> frontier;

  std::uint64_t seq = 0;
  auto offer = [&](Node &&n) {
    std::vector<FrontierEntry> &entries = frontier[n.state];
    for (const FrontierEntry &e : entries) {
      if (dominates(e, n)) {
        return;
      }
    }
    // Expanded entries stay for dominance; only queued ones are replaced.
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [&](const FrontierEntry &e) {
                                   if (e.closed) {
                                     return false;
                                   }
                                   Node en = entry_as_node(e);
                                   return e.steps >= n.steps &&
                                          compare_paths(compiled, n, en) <= 0;
                                 }),
                  entries.end());
    entries.push_back({n.cost, n.vcount, n.steps, n.path, false});
    n.seq = seq++;
    queue.push(std::move(n));
  };

  offer(Node{start, 0, 0, 0, {}, 0});

  std::size_t explored = 0;
  while (!queue.empty()) {
    Node n = queue.top();
    queue.pop();
    auto it = frontier.find(n.state);
    FrontierEntry *entry = nullptr;
    if (it != frontier.end()) {
      for (FrontierEntry &e : it->second) {
        if (e.steps == n.steps && e.cost == n.cost && e.vcount == n.vcount &&
            e.path == n.path) {
          entry = &e;
          break;
        }
      }
    }
    if (entry == nullptr || entry->closed) {
      continue;
    }
    entry->closed = true;
    ++explored;

    if (is_goal(n.state)) {
      Plan result;
      result.total_cost = n.cost;
      for (std::uint32_t a : n.path) {
        result.steps.push_back(actions[a]);
      }
      return {result, explored};
    }
    if (n.steps >= static_cast<std::uint32_t>(max_steps)) {
      continue;
    }

    for (std::size_t ai = 0; ai < compiled.size(); ++ai) {
      const CompiledAction &ca = compiled[ai];
      bool applicable =
          std::all_of(ca.preconditions.begin(), ca.preconditions.end(),
                      [&](const CompiledCondition &c) {
                        return condition_holds(n.state, c);
                      });
      if (!applicable) {
        continue;
      }
      StateVec next = n.state;
      for (const CompiledEffect &e : ca.effects) {
        bool fire = std::all_of(e.conditions.begin(), e.conditions.end(),
                                [&](const CompiledCondition &c) {
                                  return condition_holds(n.state, c);
                                });
        if (!fire) {
          continue;
        }
        auto drop = std::lower_bound(next.begin(), next.end(), e.add ^ 1u);
        if (drop != next.end() && *drop == (e.add ^ 1u)) {
          next.erase(drop);
        }
        auto pos = std::lower_bound(next.begin(), next.end(), e.add);
        if (pos == next.end() || *pos != e.add) {
          next.insert(pos, e.add);
        }
      }
      Node child;
      child.state = std::move(next);
      child.cost = n.cost + ca.cost;
      child.vcount = n.vcount + (ca.is_virtual ? 1 : 0);
      child.steps = n.steps + 1;
      child.path = n.path;
      child.path.push_back(static_cast<std::uint32_t>(ai));
      offer(std::move(child));
    }
  }
  return {std::nullopt, explored};
}

ValidationReport validate_plan(const State &init,
                               const std::vector<Atom> &facts,
                               const Plan &plan,
                               const std::vector<Literal> &goal) {
  ValidationReport report;
  State current = init;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const GroundAction &step = plan.steps[i];
    if (auto failed = failing_precondition(current, step, &facts)) {
      report.valid = false;
      report.failed_step = i;
      report.reason = "step " + std::to_string(i + 1) + " (" +
                      to_string(step.head) + ") inapplicable: " +
                      to_string(*failed) + " does not hold";
      report.final_state = current;
      return report;
    }
    current = apply(current, step);
  }
  report.final_state = current;
  if (!satisfies_goal(current, goal)) {
    report.valid = false;
    report.reason = "goal not satisfied in final state";
    return report;
  }
  report.valid = true;
  return report;
}

} // namespace vaplan
