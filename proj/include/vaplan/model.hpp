#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vaplan {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InapplicableActionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A term is either a variable (leading uppercase in the surface syntax)
/// or a constant (leading lowercase).
struct Term {
  bool is_variable = false;
  std::string text;

  static Term variable(std::string name) { return {true, std::move(name)}; }
  static Term constant(std::string name) { return {false, std::move(name)}; }

  auto operator<=>(const Term &) const = default;
};

struct Atom {
  std::string pred;
  std::vector<Term> args;

  bool is_ground() const;
  auto operator<=>(const Atom &) const = default;
};

/// Literal with optional classical negation (written `-p` in the surface
/// syntax). Distinct from default negation, which lives on Condition.
struct Literal {
  Atom atom;
  bool negated = false;

  auto operator<=>(const Literal &) const = default;
};

/// A precondition entry: a literal, optionally under default negation
/// (`not p`). `not` and `-` never combine on the same condition.
struct Condition {
  Literal literal;
  bool default_negated = false;

  auto operator<=>(const Condition &) const = default;
};

/// Disjunctive normal form over static atoms: a nonempty list of cases,
/// each case a nonempty conjunction.
struct RequirementFormula {
  std::vector<std::vector<Atom>> cases;

  auto operator<=>(const RequirementFormula &) const = default;
};

struct DynamicPredicate {
  Atom head;
  RequirementFormula requirements;

  auto operator<=>(const DynamicPredicate &) const = default;
};

/// Effect literal, fired when every condition holds in the pre-transition
/// state. An empty condition list means unconditional.
struct Effect {
  Literal literal;
  std::vector<Condition> conditions;

  auto operator<=>(const Effect &) const = default;
};

enum class ActionKind { normal, semi_virtual, full_virtual };

const char *to_string(ActionKind kind);

/// One conjunct of an action precondition: either a single condition or a
/// parenthesized disjunction of static atoms.
using PrecondItem = std::variant<Condition, RequirementFormula>;

struct ActionSchema {
  Atom head; // name plus parameter variables
  std::vector<PrecondItem> preconditions;
  std::vector<Effect> effects;
  std::int64_t cost = 1;
  ActionKind kind = ActionKind::normal;

  const std::string &name() const { return head.pred; }
  bool operator==(const ActionSchema &) const = default;
};

/// Fully instantiated action. Static preconditions are already checked and
/// dropped at grounding time; only dynamic conditions remain.
struct GroundAction {
  Atom head;
  std::vector<Condition> preconditions;
  std::vector<Effect> effects;
  std::int64_t cost = 1;
  ActionKind kind = ActionKind::normal;

  bool is_virtual() const { return kind != ActionKind::normal; }
  bool operator==(const GroundAction &) const = default;
};

/// Set of ground dynamic literals. Never holds a literal together with its
/// complement.
struct State {
  std::set<Literal> literals;

  bool contains(const Literal &l) const { return literals.count(l) != 0; }
  /// Inserts l and drops complement(l) if present.
  void assert_literal(const Literal &l);
  bool consistent() const;

  bool operator==(const State &) const = default;
};

struct Domain {
  std::vector<Atom> static_decls;
  std::vector<DynamicPredicate> dynamic_decls;
  std::vector<ActionSchema> actions;

  bool is_static(const std::string &pred) const;
  bool is_dynamic(const std::string &pred) const;
  const DynamicPredicate *find_dynamic(const std::string &pred) const;
  std::optional<std::size_t> arity_of(const std::string &pred) const;

  bool operator==(const Domain &) const = default;
};

struct Problem {
  std::vector<Atom> static_facts; // ground, deduplicated, input order
  State init;
  std::vector<Literal> goal;

  bool has_fact(const Atom &a) const;
};

Literal complement(Literal l);

/// Truth of a ground condition against a state and the static facts.
/// Positive and classically negated dynamic literals hold by membership in
/// the state; static atoms hold by membership in the facts; a
/// default-negated condition holds when its literal is absent (closed
/// world). Throws DomainError for predicates the domain does not declare.
bool holds(const Domain &d, const State &s, const std::vector<Atom> &facts,
           const Condition &c);

/// First failing precondition of a, if any. Static atoms that survived into
/// conditions (hand-built actions) are checked against `facts` when given.
std::optional<Condition> failing_precondition(
    const State &s, const GroundAction &a,
    const std::vector<Atom> *facts = nullptr);

/// Applies a to s. Conditional effects are evaluated against the
/// pre-transition state; each added literal evicts its complement.
/// Throws InapplicableActionError naming the first failing condition.
State apply(const State &s, const GroundAction &a);

bool satisfies_goal(const State &s, const std::vector<Literal> &goal);

std::string to_string(const Term &t);
std::string to_string(const Atom &a);
std::string to_string(const Literal &l);
std::string to_string(const Condition &c);
std::string to_string(const Effect &e);
std::string to_string(const RequirementFormula &f);
std::string to_string(const State &s);

} // namespace vaplan
