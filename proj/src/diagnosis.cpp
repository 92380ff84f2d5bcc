#include "vaplan/diagnosis.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace vaplan {

namespace {

Goal canonical(Goal g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::vector<Literal> full_virtual_effects(const Plan &plan) {
  std::vector<Literal> out;
  for (const GroundAction &step : plan.steps) {
    if (step.kind != ActionKind::full_virtual) {
      continue;
    }
    const Literal &eff = step.effects.front().literal;
    if (std::find(out.begin(), out.end(), eff) == out.end()) {
      out.push_back(eff);
    }
  }
  return out;
}

std::vector<GroundAction> concat(const std::vector<GroundAction> &a,
                                 const std::vector<GroundAction> &b) {
  std::vector<GroundAction> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Unifies a schema-effect literal against a (possibly partially ground)
// condition literal. Effect variables map to the condition's terms; effect
// constants must match condition constants (a condition variable accepts
// any effect constant).
std::optional<std::map<std::string, Term>> unify_effect(
    const Literal &effect, const Literal &target) {
  if (effect.negated != target.negated ||
      effect.atom.pred != target.atom.pred ||
      effect.atom.args.size() != target.atom.args.size()) {
    return std::nullopt;
  }
  std::map<std::string, Term> mapping;
  for (std::size_t i = 0; i < effect.atom.args.size(); ++i) {
    const Term &pat = effect.atom.args[i];
    const Term &tgt = target.atom.args[i];
    if (pat.is_variable) {
      auto [it, inserted] = mapping.emplace(pat.text, tgt);
      if (!inserted && !(it->second == tgt)) {
        return std::nullopt;
      }
    } else if (!tgt.is_variable && pat.text != tgt.text) {
      return std::nullopt;
    }
  }
  return mapping;
}

Atom rename_atom(const Atom &a, const std::map<std::string, Term> &mapping) {
  Atom out = a;
  for (Term &t : out.args) {
    if (t.is_variable) {
      auto it = mapping.find(t.text);
      if (it != mapping.end()) {
        t = it->second;
      }
    }
  }
  return out;
}

// Extends an effect-unification mapping with fresh display names for the
// remaining schema parameters: strip trailing digits, then append the
// smallest free index (moveTo(R2,R1,D) against robAt(R1) becomes
// moveTo(R1,R0,D0)).
void rename_remaining(const ActionSchema &schema,
                      std::map<std::string, Term> &mapping,
                      const std::set<std::string> &reserved) {
  std::set<std::string> used = reserved;
  for (const auto &[from, to] : mapping) {
    if (to.is_variable) {
      used.insert(to.text);
    }
  }
  std::vector<std::string> pending;
  auto note = [&](const Atom &a) {
    for (const Term &t : a.args) {
      if (t.is_variable && mapping.count(t.text) == 0 &&
          std::find(pending.begin(), pending.end(), t.text) ==
              pending.end()) {
        pending.push_back(t.text);
      }
    }
  };
  note(schema.head);
  for (const PrecondItem &item : schema.preconditions) {
    if (const Condition *c = std::get_if<Condition>(&item)) {
      note(c->literal.atom);
    } else {
      for (const auto &branch : std::get<RequirementFormula>(item).cases) {
        for (const Atom &a : branch) {
          note(a);
        }
      }
    }
  }
  for (const std::string &v : pending) {
    std::string base = v;
    while (!base.empty() && std::isdigit(static_cast<unsigned char>(
                                base.back()))) {
      base.pop_back();
    }
    if (base.empty()) {
      base = "V";
    }
    for (int k = 0;; ++k) {
      std::string candidate = base + std::to_string(k);
      if (used.insert(candidate).second) {
        mapping[v] = Term::variable(candidate);
        break;
      }
    }
  }
}

// Whether some ground instance of the pattern literal is in the state.
bool some_instance_in_state(const State &s, const Literal &pattern) {
  for (const Literal &l : s.literals) {
    if (l.negated != pattern.negated) {
      continue;
    }
    if (unify_effect(pattern, l).has_value()) {
      return true;
    }
  }
  return false;
}

// Whether some fact matches the pattern atom.
bool atom_satisfiable(const Atom &pattern, const std::vector<Atom> &facts) {
  for (const Atom &f : facts) {
    if (f.pred != pattern.pred || f.args.size() != pattern.args.size()) {
      continue;
    }
    if (unify_effect({pattern, false}, {f, false}).has_value()) {
      return true;
    }
  }
  return false;
}

struct StaticAnalysis {
  std::vector<Binding> bindings; // satisfying assignments over static vars
  std::vector<Atom> unmet;       // individually unsatisfiable atoms
};

// Satisfying assignments of a schema's static preconditions under a fixed
// partial binding. When none exist, reports the atoms that fail on their
// own (or every atom of a jointly unsatisfiable set).
StaticAnalysis analyze_statics(const ActionSchema &schema, const Binding &fixed,
                               const std::vector<Atom> &facts,
                               const Domain &d) {
  std::vector<Atom> plain;
  std::vector<const RequirementFormula *> groups;
  for (const PrecondItem &item : schema.preconditions) {
    if (const Condition *c = std::get_if<Condition>(&item)) {
      if (d.is_static(c->literal.atom.pred) && !c->default_negated) {
        plain.push_back(substitute(c->literal.atom, fixed));
      }
    } else {
      groups.push_back(&std::get<RequirementFormula>(item));
    }
  }

  StaticAnalysis out;
  // Enumerate joint assignments by backtracking over the plain atoms, then
  // check each group against every extension.
  std::vector<std::string> vars;
  for (const Atom &a : plain) {
    for (const Term &t : a.args) {
      if (t.is_variable &&
          std::find(vars.begin(), vars.end(), t.text) == vars.end()) {
        vars.push_back(t.text);
      }
    }
  }
  std::vector<Binding> partial{{}};
  for (const Atom &a : plain) {
    std::vector<Binding> next;
    for (const Binding &b : partial) {
      Atom bound = substitute(a, b);
      for (const Atom &f : facts) {
        if (f.pred != bound.pred || f.args.size() != bound.args.size()) {
          continue;
        }
        Binding extended = b;
        bool match = true;
        for (std::size_t i = 0; i < bound.args.size(); ++i) {
          const Term &pat = bound.args[i];
          if (!pat.is_variable) {
            if (pat.text != f.args[i].text) {
              match = false;
              break;
            }
          } else {
            auto [it, inserted] =
                extended.emplace(pat.text, f.args[i].text);
            if (!inserted && it->second != f.args[i].text) {
              match = false;
              break;
            }
          }
        }
        if (match) {
          next.push_back(std::move(extended));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    partial = std::move(next);
    if (partial.empty()) {
      break;
    }
  }
  for (const Binding &b : partial) {
    bool groups_ok = true;
    for (const RequirementFormula *g : groups) {
      bool some_branch = false;
      for (const std::vector<Atom> &branch : g->cases) {
        bool all = true;
        for (const Atom &a : branch) {
          if (!atom_satisfiable(substitute(substitute(a, fixed), b), facts)) {
            all = false;
            break;
          }
        }
        if (all) {
          some_branch = true;
          break;
        }
      }
      if (!some_branch) {
        groups_ok = false;
        break;
      }
    }
    if (groups_ok) {
      Binding merged = fixed;
      for (const auto &[k, v] : b) {
        merged[k] = v;
      }
      out.bindings.push_back(std::move(merged));
    }
  }

  if (out.bindings.empty()) {
    for (const Atom &a : plain) {
      if (!atom_satisfiable(a, facts)) {
        out.unmet.push_back(a);
      }
    }
    for (const RequirementFormula *g : groups) {
      bool some_branch = false;
      for (const std::vector<Atom> &branch : g->cases) {
        bool all = true;
        for (const Atom &a : branch) {
          if (!atom_satisfiable(substitute(a, fixed), facts)) {
            all = false;
            break;
          }
        }
        if (all) {
          some_branch = true;
          break;
        }
      }
      if (!some_branch && !g->cases.empty()) {
        for (const Atom &a : g->cases.front()) {
          out.unmet.push_back(substitute(a, fixed));
        }
      }
    }
    if (out.unmet.empty()) {
      // Jointly unsatisfiable though each atom matches some fact.
      out.unmet = plain;
    }
  }
  return out;
}

bool shares_variable(const Atom &a, const Condition &c) {
  if (a.is_ground()) {
    return true;
  }
  for (const Term &t : a.args) {
    if (!t.is_variable) {
      continue;
    }
    for (const Term &u : c.literal.atom.args) {
      if (u.is_variable && u.text == t.text) {
        return true;
      }
    }
  }
  return false;
}

void chain_for_condition(const Condition &cond, const Domain &d,
                         const Problem &p,
                         const std::vector<ActionSchema> &candidates,
                         int depth, std::set<std::string> &visited,
                         std::vector<ChainEntry> &out) {
  if (depth < 1) {
    return;
  }
  for (const ActionSchema &schema : candidates) {
    for (const Effect &e : schema.effects) {
      auto mapping = unify_effect(e.literal, cond.literal);
      if (!mapping) {
        continue;
      }
      std::set<std::string> reserved;
      for (const Term &t : cond.literal.atom.args) {
        if (t.is_variable) {
          reserved.insert(t.text);
        }
      }
      rename_remaining(schema, *mapping, reserved);
      Atom display_head = rename_atom(schema.head, *mapping);
      std::string key = to_string(cond) + "/" + to_string(display_head);
      if (!visited.insert(key).second) {
        continue;
      }
      ChainEntry entry;
      entry.condition = cond;
      entry.action = to_string(display_head);
      std::vector<Condition> dynamic_next;
      for (const PrecondItem &item : schema.preconditions) {
        if (const Condition *pc = std::get_if<Condition>(&item)) {
          Atom renamed = rename_atom(pc->literal.atom, *mapping);
          if (d.is_static(pc->literal.atom.pred) && !pc->default_negated) {
            if (shares_variable(renamed, cond)) {
              entry.statics.push_back(renamed);
            }
            if (!atom_satisfiable(renamed, p.static_facts)) {
              entry.unmet.push_back(renamed);
              if (std::find(entry.statics.begin(), entry.statics.end(),
                            renamed) == entry.statics.end()) {
                entry.statics.push_back(renamed);
              }
            }
          } else if (d.is_dynamic(pc->literal.atom.pred) &&
                     !pc->default_negated) {
            dynamic_next.push_back(
                {{renamed, pc->literal.negated}, false});
          }
        } else {
          for (const auto &branch :
               std::get<RequirementFormula>(item).cases) {
            for (const Atom &a : branch) {
              Atom renamed = rename_atom(a, *mapping);
              if (shares_variable(renamed, cond)) {
                entry.statics.push_back(renamed);
              }
            }
          }
        }
      }
      out.push_back(entry);
      if (depth > 1) {
        for (const Condition &nc : dynamic_next) {
          if (some_instance_in_state(p.init, nc.literal)) {
            continue;
          }
          chain_for_condition(nc, d, p, candidates, depth - 1, visited, out);
        }
      }
      break; // one entry per schema: its first unifying effect
    }
  }
}

} // namespace

bool StaticUnmet::informative() const {
  if (!unmet.empty() || !note.empty()) {
    return true;
  }
  return std::any_of(chain.begin(), chain.end(), [](const ChainEntry &e) {
    return !e.unmet.empty();
  });
}

StageActions build_stage_actions(const Domain &d, const Problem &p,
                                 const DiagnosisConfig &cfg) {
  VirtualActionSet virtuals =
      generate_virtual_actions(d, d.actions, cfg.exclusions);
  assign_costs(virtuals, d.actions, cfg.max_normal_cost, cfg.max_steps);
  StageActions out;
  out.normal = ground_actions(d, p, d.actions);
  out.full = ground_actions(d, p, virtuals.full);
  out.semi = ground_actions(d, p, virtuals.semi);
  return out;
}

std::optional<std::vector<Goal>> detect_ring(const GoalList &lg,
                                             const Goal &g) {
  Goal gc = canonical(g);
  for (std::size_t i = 0; i < lg.size(); ++i) {
    if (canonical(lg[i]) == gc) {
      std::vector<Goal> ring(lg.begin() + static_cast<std::ptrdiff_t>(i),
                             lg.end());
      ring.push_back(g);
      return ring;
    }
  }
  return std::nullopt;
}

std::optional<GroundAction> first_semi_virtual(const Plan &plan) {
  for (const GroundAction &step : plan.steps) {
    if (step.kind == ActionKind::semi_virtual) {
      return step;
    }
  }
  return std::nullopt;
}

std::variant<Explanation, GoalList> stage2_loop(const Domain &d,
                                                const Problem &p,
                                                const DiagnosisConfig &cfg,
                                                const StageActions &stage) {
  GoalList lg{p.goal};
  std::size_t cap = stage.full.size() + stage.semi.size() + 2;
  for (std::size_t iteration = 0; iteration < cap; ++iteration) {
    const Goal &g = lg.back();
    std::vector<GroundAction> actions = stage.normal;
    auto enabled = [&](const GroundAction &ga) {
      const Literal &eff = ga.effects.front().literal;
      return std::find(g.begin(), g.end(), eff) == g.end();
    };
    for (const GroundAction &ga : stage.full) {
      if (enabled(ga)) {
        actions.push_back(ga);
      }
    }
    for (const GroundAction &ga : stage.semi) {
      if (enabled(ga)) {
        actions.push_back(ga);
      }
    }
    SearchResult res = plan(p.init, p.static_facts, g, actions,
                            cfg.max_steps);
    if (!res.plan) {
      return lg;
    }
    std::vector<Literal> missing = full_virtual_effects(*res.plan);
    if (!missing.empty()) {
      return Explanation{MixedMissing{*res.plan, std::move(missing)}};
    }
    std::optional<GroundAction> semi = first_semi_virtual(*res.plan);
    if (!semi) {
      // A normal plan for a regressed goal gives the loop nothing to
      // regress further; let stage 3 look at the statics.
      return lg;
    }
    Goal next{semi->effects.front().literal};
    if (auto ring = detect_ring(lg, next)) {
      GoalList full_list = lg;
      full_list.push_back(next);
      return Explanation{LayoutRing{std::move(full_list), std::move(*ring)}};
    }
    lg.push_back(std::move(next));
  }
  return lg;
}

StaticUnmet stage3_static(const Literal &goal, const Domain &d,
                          const Problem &p, const DiagnosisConfig &cfg) {
  StaticUnmet out;
  out.goal = goal;

  VirtualActionSet virtuals =
      generate_virtual_actions(d, d.actions, cfg.exclusions);
  std::vector<ActionSchema> candidates = d.actions;
  for (const ActionSchema &schema : virtuals.full) {
    candidates.push_back(schema);
  }
  for (const ActionSchema &schema : virtuals.semi) {
    candidates.push_back(schema);
  }

  // (a) goal-related normal schemas and their static satisfiability.
  struct Related {
    const ActionSchema *schema;
    Binding binding;
  };
  std::vector<Related> related;
  for (const ActionSchema &schema : d.actions) {
    for (const Effect &e : schema.effects) {
      auto mapping = unify_effect(e.literal, goal);
      if (!mapping) {
        continue;
      }
      Binding b;
      bool ground_ok = true;
      for (const auto &[var, term] : *mapping) {
        if (term.is_variable) {
          ground_ok = false;
          break;
        }
        b[var] = term.text;
      }
      if (ground_ok) {
        related.push_back({&schema, std::move(b)});
      }
      break;
    }
  }
  if (related.empty()) {
    out.note = "no action achieves " + to_string(goal);
    return out;
  }

  out.action = related.front().schema->name();
  out.goal_binding = related.front().binding;

  std::vector<std::pair<const Related *, StaticAnalysis>> satisfiable;
  for (const Related &r : related) {
    StaticAnalysis analysis =
        analyze_statics(*r.schema, r.binding, p.static_facts, d);
    if (analysis.bindings.empty()) {
      out.action = r.schema->name();
      out.goal_binding = r.binding;
      out.unmet = analysis.unmet;
      return out;
    }
    satisfiable.emplace_back(&r, std::move(analysis));
  }

  out.satisfiable_bindings = satisfiable.front().second.bindings;

  // (b) chain over the dynamic preconditions of each goal-related schema.
  for (const auto &[r, analysis] : satisfiable) {
    // Fix variables that take one value across all satisfying bindings.
    Binding common = r->binding;
    if (!analysis.bindings.empty()) {
      for (const auto &[var, val] : analysis.bindings.front()) {
        bool same = std::all_of(
            analysis.bindings.begin(), analysis.bindings.end(),
            [&](const Binding &b) {
              auto it = b.find(var);
              return it != b.end() && it->second == val;
            });
        if (same) {
          common[var] = val;
        }
      }
    }
    std::set<std::string> visited;
    for (const PrecondItem &item : r->schema->preconditions) {
      const Condition *pc = std::get_if<Condition>(&item);
      if (pc == nullptr || !d.is_dynamic(pc->literal.atom.pred) ||
          pc->default_negated) {
        continue;
      }
      Condition cond = substitute(*pc, common);
      // Skip conditions the initial state already satisfies under every
      // statically satisfiable binding.
      bool satisfied_everywhere = !analysis.bindings.empty();
      for (const Binding &b : analysis.bindings) {
        Condition cb = substitute(*pc, b);
        if (!some_instance_in_state(p.init, cb.literal)) {
          satisfied_everywhere = false;
          break;
        }
      }
      if (satisfied_everywhere) {
        continue;
      }
      chain_for_condition(cond, d, p, candidates, cfg.static_check_depth,
                          visited, out.chain);
    }
  }
  for (const ChainEntry &entry : out.chain) {
    for (const Atom &a : entry.unmet) {
      if (std::find(out.unmet.begin(), out.unmet.end(), a) ==
          out.unmet.end()) {
        out.unmet.push_back(a);
      }
    }
  }
  return out;
}

Outcome progressive_diagnose(const Domain &d, const Problem &p,
                             const DiagnosisConfig &cfg) {
  StageActions stage = build_stage_actions(d, p, cfg);

  SearchResult normal_only =
      plan(p.init, p.static_facts, p.goal, stage.normal, cfg.max_steps);
  if (normal_only.plan) {
    return *normal_only.plan;
  }

  SearchResult with_full = plan(p.init, p.static_facts, p.goal,
                                concat(stage.normal, stage.full),
                                cfg.max_steps);
  if (with_full.plan) {
    return Explanation{MissingCapability{
        *with_full.plan, full_virtual_effects(*with_full.plan)}};
  }

  std::variant<Explanation, GoalList> second =
      stage2_loop(d, p, cfg, stage);
  if (Explanation *expl = std::get_if<Explanation>(&second)) {
    return *expl;
  }

  const GoalList &lg = std::get<GoalList>(second);
  for (const Literal &lit : lg.back()) {
    StaticUnmet su = stage3_static(lit, d, p, cfg);
    if (su.informative()) {
      return Explanation{su};
    }
  }
  return Undiagnosed{};
}

std::string to_string(const Goal &g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) {
      out += " & ";
    }
    out += to_string(g[i]);
  }
  return out;
}

} // namespace vaplan
