#pragma once

#include "vaplan/model.hpp"
#include "vaplan/parser.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vaplan::test {

inline const char *standard_domain_text() {
  return R"(
static {
  room(A). table(A). door(A). key(A). hand(A).
  doorStatusValue(A). handStatusValue(A).
  inRoom(A,B). connected(A,B,C). isCard(A). keyDoor(A,B).
}
dynamic {
  doorStatus(A,B) : door(A) & doorStatusValue(B).
  handStatus(A,B) : hand(A) & handStatusValue(B).
  isPlaced(A,B) : key(A) & table(B).
  isHeld(A,B) : key(A) & hand(B).
  robAt(A) : room(A).
}
action {
  name: moveTo(R2,R1,D).
  precondition: robAt(R1) & connected(D,R1,R2) & doorStatus(D,opened).
  effect: robAt(R2) & -robAt(R1).
}
action {
  name: pickup(O,G,L,R).
  precondition: handStatus(G,empty) & key(O) & isPlaced(O,L) & robAt(R) & inRoom(L,R).
  effect: -handStatus(G,empty) & -isPlaced(O,L) & isHeld(O,G).
}
action {
  name: putdown(O,G,L,R).
  precondition: robAt(R) & isHeld(O,G) & table(L) & key(O) & inRoom(L,R).
  effect: isPlaced(O,L) & handStatus(G,empty) & -isHeld(O,G).
}
action {
  name: openDoor(D,G,K,R1,R2).
  precondition: robAt(R1) & connected(D,R1,R2) & keyDoor(K,D) & isHeld(K,G) & doorStatus(D,closed).
  effect: -doorStatus(D,closed) & doorStatus(D,opened).
}
)";
}

inline const Domain &standard_domain() {
  static Domain d = [] {
    auto r = parse_domain(standard_domain_text());
    if (!ok(r)) {
      throw std::runtime_error("standard domain failed to parse: " +
                               error(r).message);
    }
    return value(r);
  }();
  return d;
}

struct WorldOptions {
  int min_rooms = 2;
  int max_rooms = 4;
  int max_keys = 2;
  double door_open_bias = 0.6;
  bool placed_goals = true; // allow isPlaced goals besides robAt
};

/// Random rooms-doors-keys problem over the standard domain. The problem is
/// valid by construction; solvability is up to chance.
inline Problem gen_problem(std::mt19937 &rng, const WorldOptions &opt = {}) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  };

  int rooms = pick(opt.min_rooms, opt.max_rooms);
  Problem p;
  auto fact = [&](const std::string &pred,
                  const std::vector<std::string> &args) {
    Atom a;
    a.pred = pred;
    for (const std::string &arg : args) {
      a.args.push_back(Term::constant(arg));
    }
    if (!p.has_fact(a)) {
      p.static_facts.push_back(a);
    }
  };
  auto lit = [](const std::string &pred,
                const std::vector<std::string> &args) {
    Atom a;
    a.pred = pred;
    for (const std::string &arg : args) {
      a.args.push_back(Term::constant(arg));
    }
    return Literal{a, false};
  };

  std::vector<std::string> room_names;
  std::vector<std::string> table_names;
  for (int i = 0; i < rooms; ++i) {
    std::string room = "room" + std::to_string(i);
    std::string table = "table" + std::to_string(i);
    room_names.push_back(room);
    table_names.push_back(table);
    fact("room", {room});
    fact("table", {table});
    fact("inRoom", {table, room});
  }
  fact("doorStatusValue", {"opened"});
  fact("doorStatusValue", {"closed"});
  fact("hand", {"left_hand"});
  fact("hand", {"right_hand"});
  fact("handStatusValue", {"empty"});
  fact("handStatusValue", {"full"});

  // Doors: a random spanning tree plus at most one chord.
  struct Door {
    std::string name;
    int a;
    int b;
    bool open;
  };
  std::vector<Door> doors;
  auto add_door = [&](int a, int b) {
    std::string name =
        "door" + std::to_string(std::min(a, b)) + std::to_string(std::max(a, b));
    for (const Door &existing : doors) {
      if (existing.name == name) {
        return;
      }
    }
    bool open = chance(opt.door_open_bias);
    doors.push_back({name, a, b, open});
    fact("door", {name});
    fact("connected", {name, room_names[a], room_names[b]});
    fact("connected", {name, room_names[b], room_names[a]});
  };
  for (int i = 1; i < rooms; ++i) {
    add_door(pick(0, i - 1), i);
  }
  if (rooms > 2 && chance(0.4)) {
    int a = pick(0, rooms - 1);
    int b = pick(0, rooms - 1);
    if (a != b) {
      add_door(a, b);
    }
  }

  int keys = pick(0, opt.max_keys);
  std::vector<std::string> key_names;
  for (int i = 0; i < keys && i < static_cast<int>(doors.size()); ++i) {
    std::string key = "key" + std::to_string(i);
    key_names.push_back(key);
    fact("key", {key});
    fact("keyDoor", {key, doors[static_cast<std::size_t>(i)].name});
    if (chance(0.5)) {
      fact("isCard", {key});
    }
  }

  p.init.literals.insert(lit("robAt", {room_names[0]}));
  p.init.literals.insert(lit("handStatus", {"left_hand", "empty"}));
  p.init.literals.insert(lit("handStatus", {"right_hand", "empty"}));
  for (const Door &door : doors) {
    p.init.literals.insert(
        lit("doorStatus", {door.name, door.open ? "opened" : "closed"}));
  }
  for (const std::string &key : key_names) {
    p.init.literals.insert(
        lit("isPlaced", {key, table_names[static_cast<std::size_t>(
                                  pick(0, rooms - 1))]}));
  }

  if (!key_names.empty() && opt.placed_goals && chance(0.3)) {
    p.goal.push_back(lit("isPlaced",
                         {key_names[static_cast<std::size_t>(
                              pick(0, static_cast<int>(key_names.size()) - 1))],
                          table_names[static_cast<std::size_t>(
                              pick(0, rooms - 1))]}));
  } else {
    p.goal.push_back(lit("robAt", {room_names[static_cast<std::size_t>(
                                       pick(1, rooms - 1))]}));
  }
  return p;
}

/// Random well-formed domain for print/parse round-trips.
inline Domain gen_domain(std::mt19937 &rng) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  };
  Domain d;

  int statics = pick(2, 5);
  for (int i = 0; i < statics; ++i) {
    Atom a;
    a.pred = "s" + std::to_string(i);
    int arity = pick(1, 2);
    for (int j = 0; j < arity; ++j) {
      a.args.push_back(Term::variable("A" + std::to_string(j)));
    }
    d.static_decls.push_back(a);
  }
  auto unary_statics = [&] {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.static_decls.size(); ++i) {
      if (d.static_decls[i].args.size() == 1) {
        out.push_back(i);
      }
    }
    return out;
  }();
  if (unary_statics.empty()) {
    Atom a;
    a.pred = "s" + std::to_string(statics);
    a.args.push_back(Term::variable("A0"));
    d.static_decls.push_back(a);
    unary_statics.push_back(d.static_decls.size() - 1);
  }
  auto random_unary = [&] {
    return d.static_decls[unary_statics[static_cast<std::size_t>(pick(
                              0, static_cast<int>(unary_statics.size()) - 1))]]
        .pred;
  };

  int dynamics = pick(1, 3);
  for (int i = 0; i < dynamics; ++i) {
    DynamicPredicate dp;
    dp.head.pred = "d" + std::to_string(i);
    int arity = i == 0 ? 1 : pick(1, 2); // keep a unary effect available
    std::vector<std::string> vars;
    for (int j = 0; j < arity; ++j) {
      vars.push_back("V" + std::to_string(j));
      dp.head.args.push_back(Term::variable(vars.back()));
    }
    int cases = pick(1, 2);
    for (int c = 0; c < cases; ++c) {
      std::vector<Atom> case_atoms;
      for (const std::string &v : vars) {
        Atom a;
        a.pred = random_unary();
        a.args.push_back(Term::variable(v));
        case_atoms.push_back(a);
      }
      dp.requirements.cases.push_back(case_atoms);
    }
    d.dynamic_decls.push_back(dp);
  }

  int actions = pick(1, 3);
  for (int i = 0; i < actions; ++i) {
    ActionSchema schema;
    schema.head.pred = "act" + std::to_string(i);
    int params = pick(1, 3);
    std::vector<std::string> vars;
    for (int j = 0; j < params; ++j) {
      vars.push_back("P" + std::to_string(j));
      schema.head.args.push_back(Term::variable(vars.back()));
    }
    for (const std::string &v : vars) {
      Atom a;
      a.pred = random_unary();
      a.args.push_back(Term::variable(v));
      schema.preconditions.push_back(Condition{{a, false}, false});
    }
    const DynamicPredicate &dp = d.dynamic_decls[static_cast<std::size_t>(
        pick(0, static_cast<int>(d.dynamic_decls.size()) - 1))];
    if (dp.head.args.size() <= vars.size()) {
      Atom a;
      a.pred = dp.head.pred;
      for (std::size_t j = 0; j < dp.head.args.size(); ++j) {
        a.args.push_back(Term::variable(vars[j]));
      }
      schema.preconditions.push_back(
          Condition{{a, false}, chance(0.3)});
    }
    const DynamicPredicate &ep = d.dynamic_decls[static_cast<std::size_t>(
        pick(0, static_cast<int>(d.dynamic_decls.size()) - 1))];
    const DynamicPredicate &chosen =
        ep.head.args.size() <= vars.size() ? ep : d.dynamic_decls.front();
    Atom eff;
    eff.pred = chosen.head.pred;
    for (std::size_t j = 0; j < chosen.head.args.size(); ++j) {
      eff.args.push_back(Term::variable(vars[j]));
    }
    schema.effects.push_back(Effect{{eff, chance(0.4)}, {}});
    if (chance(0.3)) {
      // Conditional self-clearing effect over a fresh local variable.
      const DynamicPredicate &cp = d.dynamic_decls.front();
      if (cp.head.args.size() == 1) {
        Atom local{cp.head.pred, {Term::variable("L9")}};
        Effect cond_effect{{local, true}, {Condition{{local, false}, false}}};
        schema.effects.push_back(cond_effect);
      }
    }
    if (chance(0.3)) {
      schema.cost = pick(2, 9);
    }
    d.actions.push_back(schema);
  }
  return d;
}

} // namespace vaplan::test
