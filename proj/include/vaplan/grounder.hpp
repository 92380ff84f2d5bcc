#pragma once

#include "vaplan/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace vaplan {

/// Total assignment of a schema's variables to constants.
using Binding = std::map<std::string, std::string>;

Atom substitute(const Atom &a, const Binding &b);
Literal substitute(const Literal &l, const Binding &b);
Condition substitute(const Condition &c, const Binding &b);

struct Diagnostic {
  Atom subject;
  std::string message;
};

/// All bindings of dp's head variables for which at least one requirement
/// case is satisfied by the facts. Sorted lexicographically by the
/// head-argument constant tuple.
std::vector<Binding> requirement_groundings(const DynamicPredicate &dp,
                                            const std::vector<Atom> &facts);

/// Instantiates each schema over the problem's constants: static
/// preconditions must be satisfied by the facts and are dropped; dynamic
/// conditions are restricted to well-typed instances and retained.
/// Conditional-effect variables not bound by the parameters are expanded
/// over their typed range. Output order is schema order, then lexicographic
/// binding order.
std::vector<GroundAction> ground_actions(
    const Domain &d, const Problem &p,
    const std::vector<ActionSchema> &schemas);

/// Reports init and goal literals whose predicate has no satisfying
/// requirement grounding (ill-typed state).
std::vector<Diagnostic> check_init_consistency(const Domain &d,
                                               const Problem &p);

} // namespace vaplan
