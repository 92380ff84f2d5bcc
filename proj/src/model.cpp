#include "vaplan/model.hpp"

#include <algorithm>
#include <sstream>

namespace vaplan {

bool Atom::is_ground() const {
  return std::none_of(args.begin(), args.end(),
                      [](const Term &t) { return t.is_variable; });
}

const char *to_string(ActionKind kind) {
  switch (kind) {
  case ActionKind::normal:
    return "normal";
  case ActionKind::semi_virtual:
    return "semi_virtual";
  case ActionKind::full_virtual:
    return "full_virtual";
  }
  return "normal";
}

void State::assert_literal(const Literal &l) {
  literals.erase(complement(l));
  literals.insert(l);
}

bool State::consistent() const {
  for (const Literal &l : literals) {
    if (literals.count(complement(l)) != 0) {
      return false;
    }
  }
  return true;
}

bool Domain::is_static(const std::string &pred) const {
  return std::any_of(static_decls.begin(), static_decls.end(),
                     [&](const Atom &a) { return a.pred == pred; });
}

bool Domain::is_dynamic(const std::string &pred) const {
  return find_dynamic(pred) != nullptr;
}

const DynamicPredicate *Domain::find_dynamic(const std::string &pred) const {
  for (const DynamicPredicate &dp : dynamic_decls) {
    if (dp.head.pred == pred) {
      return &dp;
    }
  }
  return nullptr;
}

std::optional<std::size_t> Domain::arity_of(const std::string &pred) const {
  for (const Atom &a : static_decls) {
    if (a.pred == pred) {
      return a.args.size();
    }
  }
  if (const DynamicPredicate *dp = find_dynamic(pred)) {
    return dp->head.args.size();
  }
  return std::nullopt;
}

bool Problem::has_fact(const Atom &a) const {
  return std::find(static_facts.begin(), static_facts.end(), a) !=
         static_facts.end();
}

Literal complement(Literal l) {
  l.negated = !l.negated;
  return l;
}

bool holds(const Domain &d, const State &s, const std::vector<Atom> &facts,
           const Condition &c) {
  const std::string &pred = c.literal.atom.pred;
  if (d.is_dynamic(pred)) {
    bool member = s.contains(c.literal);
    return c.default_negated ? !member : member;
  }
  if (d.is_static(pred)) {
    bool member = std::find(facts.begin(), facts.end(), c.literal.atom) !=
                  facts.end();
    if (c.literal.negated) {
      throw DomainError("classical negation on static predicate '" + pred +
                        "'");
    }
    return c.default_negated ? !member : member;
  }
  throw DomainError("unknown predicate '" + pred + "'");
}

namespace {

// Domain-free condition test used on grounder output, where every retained
// condition is dynamic. `facts` covers hand-built actions that still carry
// static atoms.
bool condition_holds(const State &s, const Condition &c,
                     const std::vector<Atom> *facts) {
  bool member = s.contains(c.literal);
  if (!member && facts != nullptr && !c.literal.negated) {
    member = std::find(facts->begin(), facts->end(), c.literal.atom) !=
             facts->end();
  }
  return c.default_negated ? !member : member;
}

} // namespace

std::optional<Condition> failing_precondition(const State &s,
                                              const GroundAction &a,
                                              const std::vector<Atom> *facts) {
  for (const Condition &c : a.preconditions) {
    if (!condition_holds(s, c, facts)) {
      return c;
    }
  }
  return std::nullopt;
}

State apply(const State &s, const GroundAction &a) {
  if (auto failed = failing_precondition(s, a)) {
    throw InapplicableActionError("action " + to_string(a.head) +
                                  " inapplicable: condition " +
                                  to_string(*failed) + " does not hold");
  }
  State result = s;
  for (const Effect &e : a.effects) {
    bool fire = std::all_of(
        e.conditions.begin(), e.conditions.end(),
        [&](const Condition &c) { return condition_holds(s, c, nullptr); });
    if (fire) {
      result.assert_literal(e.literal);
    }
  }
  return result;
}

bool satisfies_goal(const State &s, const std::vector<Literal> &goal) {
  return std::all_of(goal.begin(), goal.end(),
                     [&](const Literal &l) { return s.contains(l); });
}

std::string to_string(const Term &t) { return t.text; }

std::string to_string(const Atom &a) {
  std::string out = a.pred;
  if (!a.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += a.args[i].text;
    }
    out += ')';
  }
  return out;
}

std::string to_string(const Literal &l) {
  return l.negated ? "-" + to_string(l.atom) : to_string(l.atom);
}

std::string to_string(const Condition &c) {
  return c.default_negated ? "not " + to_string(c.literal)
                           : to_string(c.literal);
}

std::string to_string(const Effect &e) {
  if (e.conditions.empty()) {
    return to_string(e.literal);
  }
  std::string out = "(" + to_string(e.literal) + " <- ";
  for (std::size_t i = 0; i < e.conditions.size(); ++i) {
    if (i > 0) {
      out += " & ";
    }
    out += to_string(e.conditions[i]);
  }
  out += ')';
  return out;
}

std::string to_string(const RequirementFormula &f) {
  std::string out;
  for (std::size_t i = 0; i < f.cases.size(); ++i) {
    if (i > 0) {
      out += " | ";
    }
    for (std::size_t j = 0; j < f.cases[i].size(); ++j) {
      if (j > 0) {
        out += " & ";
      }
      out += to_string(f.cases[i][j]);
    }
  }
  return out;
}

std::string to_string(const State &s) {
  std::string out = "{";
  bool first = true;
  for (const Literal &l : s.literals) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += to_string(l);
  }
  out += '}';
  return out;
}

} // namespace vaplan
