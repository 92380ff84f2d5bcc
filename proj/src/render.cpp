#include "vaplan/render.hpp"

#include "vaplan/parser.hpp"

#include <sstream>

namespace vaplan {

using nlohmann::json;

namespace {

Literal must_literal(const std::string &text) {
  auto r = parse_literal_text(text);
  if (!ok(r)) {
    throw DomainError("bad literal in json: " + text);
  }
  return value(r);
}

Condition must_condition(const std::string &text) {
  auto r = parse_condition_text(text);
  if (!ok(r)) {
    throw DomainError("bad condition in json: " + text);
  }
  return value(r);
}

Goal must_goal(const std::string &text) {
  auto r = parse_goal_text(text);
  if (!ok(r)) {
    throw DomainError("bad goal in json: " + text);
  }
  return value(r);
}

json condition_to_json(const Condition &c) { return to_string(c); }

json effect_to_json(const Effect &e) {
  json j;
  j["literal"] = to_string(e.literal);
  json conds = json::array();
  for (const Condition &c : e.conditions) {
    conds.push_back(condition_to_json(c));
  }
  j["conditions"] = conds;
  return j;
}

Effect effect_from_json(const json &j) {
  Effect e;
  e.literal = must_literal(j.at("literal").get<std::string>());
  for (const json &c : j.at("conditions")) {
    e.conditions.push_back(must_condition(c.get<std::string>()));
  }
  return e;
}

ActionKind kind_from_string(const std::string &s) {
  if (s == "semi_virtual") {
    return ActionKind::semi_virtual;
  }
  if (s == "full_virtual") {
    return ActionKind::full_virtual;
  }
  return ActionKind::normal;
}

json binding_to_json(const Binding &b) {
  json j = json::object();
  for (const auto &[var, val] : b) {
    j[var] = val;
  }
  return j;
}

Binding binding_from_json(const json &j) {
  Binding b;
  for (auto it = j.begin(); it != j.end(); ++it) {
    b[it.key()] = it.value().get<std::string>();
  }
  return b;
}

std::string ring_arrows(const std::vector<Goal> &goals) {
  std::string out;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i > 0) {
      out += " <- ";
    }
    out += to_string(goals[i]);
  }
  return out;
}

std::string ring_sentence(const std::vector<Goal> &ring) {
  std::ostringstream out;
  out << "the required state " << to_string(ring.front())
      << " is unreachable: achieving it requires ";
  for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
    if (i > 1) {
      out << ", which requires ";
    }
    out << to_string(ring[i]);
  }
  out << ", which in turn requires " << to_string(ring.back());
  return out.str();
}

json chain_entry_to_json(const ChainEntry &entry) {
  json j;
  j["condition"] = to_string(entry.condition);
  j["action"] = entry.action;
  json statics = json::array();
  for (const Atom &a : entry.statics) {
    statics.push_back(to_string(a));
  }
  j["statics"] = statics;
  json unmet = json::array();
  for (const Atom &a : entry.unmet) {
    unmet.push_back(to_string(a));
  }
  j["unmet"] = unmet;
  return j;
}

ChainEntry chain_entry_from_json(const json &j) {
  ChainEntry entry;
  entry.condition = must_condition(j.at("condition").get<std::string>());
  entry.action = j.at("action").get<std::string>();
  for (const json &a : j.at("statics")) {
    entry.statics.push_back(must_literal(a.get<std::string>()).atom);
  }
  for (const json &a : j.at("unmet")) {
    entry.unmet.push_back(must_literal(a.get<std::string>()).atom);
  }
  return entry;
}

std::string static_unmet_text(const StaticUnmet &e) {
  std::ostringstream out;
  out << "planning failed: static preconditions cannot be met\n";
  if (!e.note.empty()) {
    out << e.note << "\n";
    return out.str();
  }
  out << "goal " << to_string(e.goal) << " relates to action " << e.action;
  if (!e.goal_binding.empty()) {
    out << " (";
    bool first = true;
    for (const auto &[var, val] : e.goal_binding) {
      if (!first) {
        out << ", ";
      }
      first = false;
      out << var << "=" << val;
    }
    out << ")";
  }
  out << "\n";
  if (!e.satisfiable_bindings.empty()) {
    out << "its static preconditions are satisfiable for: ";
    for (std::size_t i = 0; i < e.satisfiable_bindings.size(); ++i) {
      if (i > 0) {
        out << " | ";
      }
      bool first = true;
      for (const auto &[var, val] : e.satisfiable_bindings[i]) {
        if (!first) {
          out << ", ";
        }
        first = false;
        out << var << "=" << val;
      }
    }
    out << "\n";
  } else if (!e.unmet.empty() && e.chain.empty()) {
    out << "unmet static preconditions:";
    for (const Atom &a : e.unmet) {
      out << " " << to_string(a);
    }
    out << "\n";
  }
  for (const ChainEntry &entry : e.chain) {
    out << "dynamic condition " << to_string(entry.condition) << ": action "
        << entry.action;
    if (!entry.statics.empty()) {
      out << " requires ";
      for (std::size_t i = 0; i < entry.statics.size(); ++i) {
        if (i > 0) {
          out << " & ";
        }
        out << to_string(entry.statics[i]);
      }
    }
    if (entry.unmet.empty()) {
      out << " -- satisfiable\n";
    } else {
      out << " -- unmet:";
      for (const Atom &a : entry.unmet) {
        out << " " << to_string(a);
      }
      out << "\n";
    }
  }
  bool any = false;
  for (const ChainEntry &entry : e.chain) {
    for (const Atom &a : entry.unmet) {
      out << "the robot can not " << entry.action
          << " due to unmet static condition " << to_string(a)
          << ", but it needs " << to_string(entry.condition.literal)
          << " to achieve " << to_string(e.goal) << "\n";
      any = true;
    }
  }
  if (!any && e.chain.empty() && !e.unmet.empty()) {
    for (const Atom &a : e.unmet) {
      out << "static condition " << to_string(a) << " can not be met\n";
      any = true;
    }
  }
  if (!any) {
    out << "no unmet static condition found (inconclusive)\n";
  }
  return out.str();
}

} // namespace

std::string render_plan_text(const Plan &plan) {
  std::ostringstream out;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    out << (i + 1) << ". " << to_string(plan.steps[i].head) << "\n";
  }
  out << "total cost: " << plan.total_cost << "\n";
  return out.str();
}

json plan_to_json(const Plan &plan) {
  json steps = json::array();
  for (const GroundAction &step : plan.steps) {
    json s;
    s["name"] = step.head.pred;
    json args = json::array();
    for (const Term &t : step.head.args) {
      args.push_back(t.text);
    }
    s["args"] = args;
    s["kind"] = to_string(step.kind);
    s["cost"] = step.cost;
    json pre = json::array();
    for (const Condition &c : step.preconditions) {
      pre.push_back(condition_to_json(c));
    }
    s["preconditions"] = pre;
    json effects = json::array();
    for (const Effect &e : step.effects) {
      effects.push_back(effect_to_json(e));
    }
    s["effects"] = effects;
    steps.push_back(s);
  }
  json j;
  j["steps"] = steps;
  j["total_cost"] = plan.total_cost;
  return j;
}

Plan plan_from_json(const json &j) {
  Plan plan;
  plan.total_cost = j.at("total_cost").get<std::int64_t>();
  for (const json &s : j.at("steps")) {
    GroundAction ga;
    ga.head.pred = s.at("name").get<std::string>();
    for (const json &a : s.at("args")) {
      ga.head.args.push_back(Term::constant(a.get<std::string>()));
    }
    ga.kind = kind_from_string(s.at("kind").get<std::string>());
    ga.cost = s.at("cost").get<std::int64_t>();
    for (const json &c : s.at("preconditions")) {
      ga.preconditions.push_back(must_condition(c.get<std::string>()));
    }
    for (const json &e : s.at("effects")) {
      ga.effects.push_back(effect_from_json(e));
    }
    plan.steps.push_back(std::move(ga));
  }
  return plan;
}

json explanation_to_json(const Explanation &e) {
  json j;
  if (const MissingCapability *mc = std::get_if<MissingCapability>(&e)) {
    j["kind"] = "missing_capability";
    j["plan"] = plan_to_json(mc->plan);
    json missing = json::array();
    for (const Literal &l : mc->missing) {
      missing.push_back(to_string(l));
    }
    j["missing"] = missing;
  } else if (const LayoutRing *lr = std::get_if<LayoutRing>(&e)) {
    j["kind"] = "layout_ring";
    json goals = json::array();
    for (const Goal &g : lr->goal_list) {
      goals.push_back(to_string(g));
    }
    j["goal_list"] = goals;
    json ring = json::array();
    for (const Goal &g : lr->ring) {
      ring.push_back(to_string(g));
    }
    j["ring"] = ring;
  } else if (const MixedMissing *mm = std::get_if<MixedMissing>(&e)) {
    j["kind"] = "mixed_missing";
    j["plan"] = plan_to_json(mm->plan);
    json missing = json::array();
    for (const Literal &l : mm->missing) {
      missing.push_back(to_string(l));
    }
    j["missing"] = missing;
  } else {
    const StaticUnmet &su = std::get<StaticUnmet>(e);
    j["kind"] = "static_unmet";
    j["goal"] = to_string(su.goal);
    j["action"] = su.action;
    j["binding"] = binding_to_json(su.goal_binding);
    json sat = json::array();
    for (const Binding &b : su.satisfiable_bindings) {
      sat.push_back(binding_to_json(b));
    }
    j["satisfiable_bindings"] = sat;
    json unmet = json::array();
    for (const Atom &a : su.unmet) {
      unmet.push_back(to_string(a));
    }
    j["unmet"] = unmet;
    json chain = json::array();
    for (const ChainEntry &entry : su.chain) {
      chain.push_back(chain_entry_to_json(entry));
    }
    j["chain"] = chain;
    if (!su.note.empty()) {
      j["note"] = su.note;
    }
  }
  return j;
}

Explanation explanation_from_json(const json &j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "missing_capability" || kind == "mixed_missing") {
    Plan plan = plan_from_json(j.at("plan"));
    std::vector<Literal> missing;
    for (const json &m : j.at("missing")) {
      missing.push_back(must_literal(m.get<std::string>()));
    }
    if (kind == "missing_capability") {
      return MissingCapability{std::move(plan), std::move(missing)};
    }
    return MixedMissing{std::move(plan), std::move(missing)};
  }
  if (kind == "layout_ring") {
    LayoutRing lr;
    for (const json &g : j.at("goal_list")) {
      lr.goal_list.push_back(must_goal(g.get<std::string>()));
    }
    for (const json &g : j.at("ring")) {
      lr.ring.push_back(must_goal(g.get<std::string>()));
    }
    return lr;
  }
  StaticUnmet su;
  su.goal = must_literal(j.at("goal").get<std::string>());
  su.action = j.at("action").get<std::string>();
  su.goal_binding = binding_from_json(j.at("binding"));
  for (const json &b : j.at("satisfiable_bindings")) {
    su.satisfiable_bindings.push_back(binding_from_json(b));
  }
  for (const json &a : j.at("unmet")) {
    su.unmet.push_back(must_literal(a.get<std::string>()).atom);
  }
  for (const json &c : j.at("chain")) {
    su.chain.push_back(chain_entry_from_json(c));
  }
  if (j.contains("note")) {
    su.note = j.at("note").get<std::string>();
  }
  return su;
}

std::string render_explanation(const Explanation &e, OutputFormat format) {
  if (format == OutputFormat::json) {
    return explanation_to_json(e).dump(2) + "\n";
  }
  std::ostringstream out;
  if (const MissingCapability *mc = std::get_if<MissingCapability>(&e)) {
    out << "planning failed: missing capability\n";
    for (const Literal &l : mc->missing) {
      out << "the robot has no action achieving " << to_string(l) << "\n";
    }
    out << "plan with virtual actions:\n" << render_plan_text(mc->plan);
  } else if (const LayoutRing *lr = std::get_if<LayoutRing>(&e)) {
    out << "planning failed: layout deadlock\n";
    out << "deadlock ring: " << ring_arrows(lr->ring) << "\n";
    out << ring_sentence(lr->ring) << "\n";
    out << "goal list: " << ring_arrows(lr->goal_list) << "\n";
  } else if (const MixedMissing *mm = std::get_if<MixedMissing>(&e)) {
    out << "planning failed: missing capability combined with environmental "
           "obstruction\n";
    for (const Literal &l : mm->missing) {
      out << "the robot has no action achieving " << to_string(l) << "\n";
    }
    out << "plan with virtual actions:\n" << render_plan_text(mm->plan);
  } else {
    out << static_unmet_text(std::get<StaticUnmet>(e));
  }
  return out.str();
}

json outcome_to_json(const Outcome &o) {
  json j;
  if (const Plan *p = std::get_if<Plan>(&o)) {
    j["outcome"] = "normal_plan";
    j["plan"] = plan_to_json(*p);
  } else if (const Explanation *e = std::get_if<Explanation>(&o)) {
    j["outcome"] = "diagnosed";
    j["explanation"] = explanation_to_json(*e);
  } else {
    j["outcome"] = "undiagnosed";
  }
  return j;
}

std::string render_outcome(const Outcome &o, OutputFormat format) {
  if (format == OutputFormat::json) {
    return outcome_to_json(o).dump(2) + "\n";
  }
  if (const Plan *p = std::get_if<Plan>(&o)) {
    return "plan found:\n" + render_plan_text(*p);
  }
  if (const Explanation *e = std::get_if<Explanation>(&o)) {
    return render_explanation(*e, OutputFormat::text);
  }
  return "planning failed: no explanation found (undiagnosed)\n";
}

} // namespace vaplan
