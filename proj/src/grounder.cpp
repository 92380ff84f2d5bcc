#include "vaplan/grounder.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace vaplan {

namespace {

// One join constraint: candidate constant rows for the variables of a
// pattern atom.
struct Table {
  std::vector<std::string> vars; // distinct, first-occurrence order
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> pattern_vars(const Atom &pattern) {
  std::vector<std::string> vars;
  for (const Term &t : pattern.args) {
    if (t.is_variable &&
        std::find(vars.begin(), vars.end(), t.text) == vars.end()) {
      vars.push_back(t.text);
    }
  }
  return vars;
}

// Matches a ground tuple against pattern args; returns the row of constants
// for the pattern's distinct variables, or nothing on mismatch.
std::optional<std::vector<std::string>> match_tuple(
    const Atom &pattern, const std::vector<std::string> &vars,
    const std::vector<Term> &ground_args) {
  if (pattern.args.size() != ground_args.size()) {
    return std::nullopt;
  }
  std::map<std::string, std::string> assignment;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term &pat = pattern.args[i];
    const std::string &value = ground_args[i].text;
    if (!pat.is_variable) {
      if (pat.text != value) {
        return std::nullopt;
      }
    } else {
      auto [it, inserted] = assignment.emplace(pat.text, value);
      if (!inserted && it->second != value) {
        return std::nullopt;
      }
    }
  }
  std::vector<std::string> row;
  row.reserve(vars.size());
  for (const std::string &v : vars) {
    row.push_back(assignment.at(v));
  }
  return row;
}

Table table_from_facts(const Atom &pattern, const std::vector<Atom> &facts) {
  Table t;
  t.vars = pattern_vars(pattern);
  for (const Atom &f : facts) {
    if (f.pred != pattern.pred) {
      continue;
    }
    if (auto row = match_tuple(pattern, t.vars, f.args)) {
      t.rows.push_back(*row);
    }
  }
  std::sort(t.rows.begin(), t.rows.end());
  t.rows.erase(std::unique(t.rows.begin(), t.rows.end()), t.rows.end());
  return t;
}

// Backtracking join over tables; calls sink for every consistent total
// binding of the tables' variables.
void join(const std::vector<Table> &tables, std::size_t index,
          Binding &current, const std::function<void(const Binding &)> &sink) {
  if (index == tables.size()) {
    sink(current);
    return;
  }
  const Table &t = tables[index];
  for (const std::vector<std::string> &row : t.rows) {
    std::vector<std::string> added;
    bool compatible = true;
    for (std::size_t i = 0; i < t.vars.size(); ++i) {
      auto it = current.find(t.vars[i]);
      if (it == current.end()) {
        current[t.vars[i]] = row[i];
        added.push_back(t.vars[i]);
      } else if (it->second != row[i]) {
        compatible = false;
        break;
      }
    }
    if (compatible) {
      join(tables, index + 1, current, sink);
    }
    for (const std::string &v : added) {
      current.erase(v);
    }
  }
}

// Well-typed ground instances of a dynamic predicate, as atoms.
std::vector<Atom> typed_instances(const Domain &d, const std::string &pred,
                                  const std::vector<Atom> &facts) {
  const DynamicPredicate *dp = d.find_dynamic(pred);
  std::vector<Atom> out;
  if (dp == nullptr) {
    return out;
  }
  for (const Binding &b : requirement_groundings(*dp, facts)) {
    out.push_back(substitute(dp->head, b));
  }
  return out;
}

Table table_for_condition(const Domain &d, const Atom &pattern,
                          const std::vector<Atom> &facts) {
  if (d.is_dynamic(pattern.pred)) {
    return table_from_facts(pattern, typed_instances(d, pattern.pred, facts));
  }
  return table_from_facts(pattern, facts);
}

Table table_for_group(const RequirementFormula &group,
                      const std::vector<Atom> &facts) {
  Table out;
  bool first = true;
  for (const std::vector<Atom> &branch : group.cases) {
    std::vector<Table> tables;
    std::vector<std::string> vars;
    for (const Atom &a : branch) {
      tables.push_back(table_from_facts(a, facts));
      for (const std::string &v : tables.back().vars) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
          vars.push_back(v);
        }
      }
    }
    std::sort(vars.begin(), vars.end());
    if (first) {
      out.vars = vars;
      first = false;
    }
    // Branches over differing variable sets would leave some variable
    // unconstrained when the other branch holds; restrict to the common
    // case of identical sets (the parser's groups come from one formula).
    Binding scratch;
    join(tables, 0, scratch, [&](const Binding &b) {
      std::vector<std::string> row;
      for (const std::string &v : out.vars) {
        auto it = b.find(v);
        row.push_back(it == b.end() ? std::string() : it->second);
      }
      out.rows.push_back(row);
    });
  }
  std::sort(out.rows.begin(), out.rows.end());
  out.rows.erase(std::unique(out.rows.begin(), out.rows.end()),
                 out.rows.end());
  return out;
}

// Expands one schema effect under an action binding. Effect-local variables
// range over their typed instances as constrained by the effect's own
// conditions. Statically false effects are dropped; satisfied static
// conditions are elided.
void expand_effect(const Domain &d, const Problem &p, const Effect &effect,
                   const Binding &action_binding,
                   std::vector<Effect> &out) {
  Effect seed;
  seed.literal = substitute(effect.literal, action_binding);
  for (const Condition &c : effect.conditions) {
    seed.conditions.push_back(substitute(c, action_binding));
  }

  std::set<std::string> locals;
  auto collect = [&](const Atom &a) {
    for (const Term &t : a.args) {
      if (t.is_variable) {
        locals.insert(t.text);
      }
    }
  };
  collect(seed.literal.atom);
  for (const Condition &c : seed.conditions) {
    collect(c.literal.atom);
  }

  std::vector<Binding> local_bindings;
  if (locals.empty()) {
    local_bindings.push_back({});
  } else {
    std::vector<Table> tables;
    for (const Condition &c : seed.conditions) {
      if (c.default_negated || c.literal.negated) {
        continue; // negative conditions do not bind
      }
      tables.push_back(table_for_condition(d, c.literal.atom, p.static_facts));
    }
    Binding scratch;
    join(tables, 0, scratch, [&](const Binding &b) {
      local_bindings.push_back(b);
    });
    std::sort(local_bindings.begin(), local_bindings.end());
    local_bindings.erase(
        std::unique(local_bindings.begin(), local_bindings.end()),
        local_bindings.end());
  }

  for (const Binding &lb : local_bindings) {
    Effect ground;
    ground.literal = substitute(seed.literal, lb);
    bool feasible = true;
    for (const Condition &c : seed.conditions) {
      Condition gc = substitute(c, lb);
      if (d.is_static(gc.literal.atom.pred)) {
        bool present = p.has_fact(gc.literal.atom);
        bool satisfied = gc.default_negated ? !present : present;
        if (!satisfied) {
          feasible = false;
          break;
        }
        continue; // satisfied static condition: elide
      }
      ground.conditions.push_back(gc);
    }
    if (feasible) {
      out.push_back(std::move(ground));
    }
  }
}

} // namespace

Atom substitute(const Atom &a, const Binding &b) {
  Atom out = a;
  for (Term &t : out.args) {
    if (t.is_variable) {
      auto it = b.find(t.text);
      if (it != b.end()) {
        t = Term::constant(it->second);
      }
    }
  }
  return out;
}

Literal substitute(const Literal &l, const Binding &b) {
  return {substitute(l.atom, b), l.negated};
}

Condition substitute(const Condition &c, const Binding &b) {
  return {substitute(c.literal, b), c.default_negated};
}

std::vector<Binding> requirement_groundings(const DynamicPredicate &dp,
                                            const std::vector<Atom> &facts) {
  std::vector<Binding> out;
  std::set<std::vector<std::string>> seen;
  std::vector<std::string> head_vars;
  for (const Term &t : dp.head.args) {
    head_vars.push_back(t.text);
  }
  for (const std::vector<Atom> &c : dp.requirements.cases) {
    std::vector<Table> tables;
    for (const Atom &a : c) {
      tables.push_back(table_from_facts(a, facts));
    }
    Binding scratch;
    join(tables, 0, scratch, [&](const Binding &b) {
      std::vector<std::string> tuple;
      for (const std::string &v : head_vars) {
        tuple.push_back(b.at(v));
      }
      if (seen.insert(tuple).second) {
        Binding restricted;
        for (std::size_t i = 0; i < head_vars.size(); ++i) {
          restricted[head_vars[i]] = tuple[i];
        }
        out.push_back(std::move(restricted));
      }
    });
  }
  std::sort(out.begin(), out.end(),
            [&](const Binding &a, const Binding &b) {
              for (const std::string &v : head_vars) {
                int cmp = a.at(v).compare(b.at(v));
                if (cmp != 0) {
                  return cmp < 0;
                }
              }
              return false;
            });
  return out;
}

std::vector<GroundAction> ground_actions(
    const Domain &d, const Problem &p,
    const std::vector<ActionSchema> &schemas) {
  std::vector<GroundAction> out;
  for (const ActionSchema &schema : schemas) {
    std::vector<std::string> params;
    for (const Term &t : schema.head.args) {
      params.push_back(t.text);
    }

    std::vector<Table> tables;
    for (const PrecondItem &item : schema.preconditions) {
      if (const Condition *c = std::get_if<Condition>(&item)) {
        tables.push_back(
            table_for_condition(d, c->literal.atom, p.static_facts));
      } else {
        tables.push_back(
            table_for_group(std::get<RequirementFormula>(item),
                            p.static_facts));
      }
    }

    std::vector<Binding> bindings;
    std::set<std::vector<std::string>> seen;
    Binding scratch;
    join(tables, 0, scratch, [&](const Binding &b) {
      std::vector<std::string> tuple;
      for (const std::string &v : params) {
        tuple.push_back(b.at(v));
      }
      if (seen.insert(tuple).second) {
        Binding restricted;
        for (std::size_t i = 0; i < params.size(); ++i) {
          restricted[params[i]] = tuple[i];
        }
        bindings.push_back(std::move(restricted));
      }
    });
    std::sort(bindings.begin(), bindings.end(),
              [&](const Binding &a, const Binding &b) {
                for (const std::string &v : params) {
                  int cmp = a.at(v).compare(b.at(v));
                  if (cmp != 0) {
                    return cmp < 0;
                  }
                }
                return false;
              });

    for (const Binding &b : bindings) {
      GroundAction ga;
      ga.head = substitute(schema.head, b);
      ga.cost = schema.cost;
      ga.kind = schema.kind;
      for (const PrecondItem &item : schema.preconditions) {
        if (const Condition *c = std::get_if<Condition>(&item)) {
          if (d.is_dynamic(c->literal.atom.pred)) {
            ga.preconditions.push_back(substitute(*c, b));
          }
        }
      }
      for (const Effect &e : schema.effects) {
        expand_effect(d, p, e, b, ga.effects);
      }
      out.push_back(std::move(ga));
    }
  }
  return out;
}

std::vector<Diagnostic> check_init_consistency(const Domain &d,
                                               const Problem &p) {
  std::vector<Diagnostic> out;
  std::map<std::string, std::set<Atom>> typed;
  auto well_typed = [&](const Atom &a) {
    const DynamicPredicate *dp = d.find_dynamic(a.pred);
    if (dp == nullptr) {
      return false;
    }
    auto it = typed.find(a.pred);
    if (it == typed.end()) {
      std::set<Atom> instances;
      for (const Atom &inst : typed_instances(d, a.pred, p.static_facts)) {
        instances.insert(inst);
      }
      it = typed.emplace(a.pred, std::move(instances)).first;
    }
    return it->second.count(a) != 0;
  };
  auto check = [&](const Literal &l, const char *where) {
    if (d.find_dynamic(l.atom.pred) == nullptr) {
      out.push_back({l.atom, std::string(where) + " literal " + to_string(l) +
                                 " uses undeclared dynamic predicate '" +
                                 l.atom.pred + "'"});
    } else if (!well_typed(l.atom)) {
      out.push_back({l.atom, std::string(where) + " literal " + to_string(l) +
                                 " has no satisfying requirement grounding"});
    }
  };
  for (const Literal &l : p.init.literals) {
    check(l, "init");
  }
  for (const Literal &l : p.goal) {
    check(l, "goal");
  }
  return out;
}

} // namespace vaplan
