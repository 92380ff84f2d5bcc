#include "vaplan/grounder.hpp"

#include "doctest.h"
#include "util.hpp"
#include "world_gen.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace vaplan;
using namespace vaplan::test;

namespace {

std::vector<GroundAction> ground_schema(const Domain &d, const Problem &p,
                                        const std::string &name) {
  for (const ActionSchema &schema : d.actions) {
    if (schema.name() == name) {
      return ground_actions(d, p, {schema});
    }
  }
  FAIL("no schema " << name);
  return {};
}

// Brute-force reference: every tuple of constants, checked directly.
std::vector<std::string> all_constants(const Problem &p) {
  std::set<std::string> seen;
  for (const Atom &f : p.static_facts) {
    for (const Term &t : f.args) {
      seen.insert(t.text);
    }
  }
  return {seen.begin(), seen.end()};
}

bool binding_satisfies(const Domain &d, const Problem &p,
                       const ActionSchema &schema, const Binding &b,
                       std::map<std::string, std::set<Atom>> &typed_cache) {
  auto typed_ok = [&](const Atom &ground_atom) {
    auto it = typed_cache.find(ground_atom.pred);
    if (it == typed_cache.end()) {
      const DynamicPredicate *dp = d.find_dynamic(ground_atom.pred);
      REQUIRE(dp != nullptr);
      std::set<Atom> instances;
      for (const Binding &rb : requirement_groundings(*dp, p.static_facts)) {
        instances.insert(substitute(dp->head, rb));
      }
      it = typed_cache.emplace(ground_atom.pred, std::move(instances)).first;
    }
    return it->second.count(ground_atom) != 0;
  };
  for (const PrecondItem &item : schema.preconditions) {
    if (const Condition *c = std::get_if<Condition>(&item)) {
      Atom ground_atom = substitute(c->literal.atom, b);
      if (d.is_static(ground_atom.pred)) {
        if (!p.has_fact(ground_atom)) {
          return false;
        }
      } else if (!typed_ok(ground_atom)) {
        return false;
      }
    } else {
      const auto &group = std::get<RequirementFormula>(item);
      bool some = false;
      for (const auto &branch : group.cases) {
        bool all = true;
        for (const Atom &a : branch) {
          if (!p.has_fact(substitute(a, b))) {
            all = false;
            break;
          }
        }
        if (all) {
          some = true;
          break;
        }
      }
      if (!some) {
        return false;
      }
    }
  }
  return true;
}

std::set<Atom> brute_force_heads(const Domain &d, const Problem &p,
                                 const ActionSchema &schema) {
  std::vector<std::string> constants = all_constants(p);
  std::vector<std::string> params;
  for (const Term &t : schema.head.args) {
    params.push_back(t.text);
  }
  std::map<std::string, std::set<Atom>> typed_cache;
  std::set<Atom> heads;
  std::vector<std::size_t> idx(params.size(), 0);
  while (true) {
    Binding b;
    for (std::size_t i = 0; i < params.size(); ++i) {
      b[params[i]] = constants[idx[i]];
    }
    if (binding_satisfies(d, p, schema, b, typed_cache)) {
      heads.insert(substitute(schema.head, b));
    }
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < constants.size()) {
        break;
      }
      idx[k] = 0;
    }
    if (k == idx.size()) {
      break;
    }
  }
  return heads;
}

} // namespace

TEST_CASE("moveTo grounds to two directed instances per door") {
  Domain d = load_domain("case1/domain.vad");
  Problem p = load_problem("case1/world.vap", d).problem;
  std::vector<GroundAction> moves = ground_schema(d, p, "moveTo");
  CHECK(moves.size() == 14);
  // Static preconditions are dropped; the dynamic ones stay.
  for (const GroundAction &ga : moves) {
    REQUIRE(ga.preconditions.size() == 2);
    CHECK(ga.preconditions[0].literal.atom.pred == "robAt");
    CHECK(ga.preconditions[1].literal.atom.pred == "doorStatus");
    CHECK(ga.head.is_ground());
  }
}

TEST_CASE("schemas with unsatisfiable statics ground to nothing") {
  Domain d = load_domain("case1/domain.vad");
  Problem p;
  p.goal.push_back(lit("robAt", {"room0"}));
  CHECK(ground_actions(d, p, d.actions).empty());
}

TEST_CASE("pickup grounds only over key/table/room combinations") {
  Domain d = load_domain("case1/domain.vad");
  Problem p = load_problem("case1/world.vap", d).problem;
  std::vector<GroundAction> pickups = ground_schema(d, p, "pickup");
  CHECK(pickups.size() == 7 * 2 * 6); // keys x hands x co-located (L,R)
  for (const GroundAction &ga : pickups) {
    const std::string &table = ga.head.args[2].text;
    const std::string &room = ga.head.args[3].text;
    CHECK(p.has_fact(atom("inRoom", {table, room})));
    CHECK(p.has_fact(atom("key", {ga.head.args[0].text})));
  }
}

TEST_CASE("requirement_groundings enumerates typed instances") {
  Domain d = load_domain("case1/domain.vad");
  Problem p = load_problem("case1/world.vap", d).problem;
  const DynamicPredicate *door_status = d.find_dynamic("doorStatus");
  REQUIRE(door_status != nullptr);
  CHECK(requirement_groundings(*door_status, p.static_facts).size() ==
        7 * 2);

  DynamicPredicate unsat{atom("p", {"A"}), {{{atom("noFacts", {"A"})}}}};
  CHECK(requirement_groundings(unsat, p.static_facts).empty());
}

TEST_CASE("requirement_groundings unions DNF cases") {
  auto r = parse_domain(R"(
static { human(B). location(B). }
dynamic { isNear(B) : human(B) | location(B). }
)");
  REQUIRE(ok(r));
  std::vector<Atom> facts{atom("human", {"h1"}), atom("location", {"l1"}),
                          atom("location", {"l2"})};
  const DynamicPredicate &is_near = value(r).dynamic_decls[0];
  std::vector<Binding> bindings = requirement_groundings(is_near, facts);
  REQUIRE(bindings.size() == 3);
  CHECK(bindings[0].at("B") == "h1");
  CHECK(bindings[1].at("B") == "l1");
  CHECK(bindings[2].at("B") == "l2");
}

TEST_CASE("ground_actions matches brute-force enumeration on small worlds") {
  std::mt19937 rng(7);
  const Domain &d = standard_domain();
  for (int round = 0; round < 5; ++round) {
    WorldOptions opt;
    opt.max_rooms = 2;
    opt.max_keys = 1;
    Problem p = gen_problem(rng, opt);
    for (const ActionSchema &schema : d.actions) {
      std::set<Atom> expected = brute_force_heads(d, p, schema);
      std::set<Atom> actual;
      for (const GroundAction &ga : ground_actions(d, p, {schema})) {
        actual.insert(ga.head);
      }
      CHECK(actual == expected);
    }
  }
}

TEST_CASE("grounding drops only statics that the facts satisfy") {
  Domain d = load_domain("case1/domain.vad");
  Problem p = load_problem("case1/world.vap", d).problem;
  for (const ActionSchema &schema : d.actions) {
    std::map<std::string, std::set<Atom>> typed_cache;
    for (const GroundAction &ga : ground_actions(d, p, {schema})) {
      Binding b;
      for (std::size_t i = 0; i < schema.head.args.size(); ++i) {
        b[schema.head.args[i].text] = ga.head.args[i].text;
      }
      CHECK(binding_satisfies(d, p, schema, b, typed_cache));
    }
  }
}

TEST_CASE("grounding is deterministic") {
  Domain d = load_domain("case2/domain.vad");
  Problem p = load_problem("case2/world.vap", d).problem;
  std::vector<GroundAction> first = ground_actions(d, p, d.actions);
  std::vector<GroundAction> second = ground_actions(d, p, d.actions);
  CHECK(first == second);
}

TEST_CASE("conditional-effect variables expand over their typed range") {
  auto r = parse_domain(R"(
static { human(B). location(B). }
dynamic { isNear(B) : human(B) | location(B). }
action {
  name: moveTo(L).
  precondition: location(L) & not isNear(L).
  effect: isNear(L) & (-isNear(L1) <- isNear(L1)).
}
)");
  REQUIRE(ok(r));
  Problem p;
  p.static_facts = {atom("human", {"h1"}), atom("location", {"l1"}),
                    atom("location", {"l2"})};
  p.goal.push_back(lit("isNear", {"l1"}));
  std::vector<GroundAction> ground =
      ground_actions(value(r), p, value(r).actions);
  REQUIRE(ground.size() == 2);
  // One unconditional effect plus one expanded conditional per instance.
  CHECK(ground[0].effects.size() == 1 + 3);
  State s = state({lit("isNear", {"h1"})});
  State after = apply(s, ground[0]); // moveTo(l1)
  CHECK(after == state({lit("isNear", {"l1"}), neg("isNear", {"h1"})}));
}

TEST_CASE("check_init_consistency reports ill-typed literals") {
  Domain d = load_domain("case1/domain.vad");
  Problem p = load_problem("case1/world.vap", d).problem;
  CHECK(check_init_consistency(d, p).empty());

  Problem bad = p;
  bad.init.literals.insert(lit("robAt", {"table0"}));
  std::vector<Diagnostic> diags = check_init_consistency(d, bad);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].subject == atom("robAt", {"table0"}));

  Problem bad_goal = p;
  bad_goal.goal = {lit("isPlaced", {"key01", "room0"})};
  diags = check_init_consistency(d, bad_goal);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("goal") != std::string::npos);
}
