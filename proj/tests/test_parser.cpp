#include "vaplan/parser.hpp"

#include "doctest.h"
#include "util.hpp"
#include "world_gen.hpp"

#include <random>

using namespace vaplan;
using namespace vaplan::test;

namespace {

const char *nearby_domain = R"(
static {
  door(A).
  human(B).
  location(B).
  object(A).
  inRoom(R).
  isLocated(A,B).
  locInRoom(A,B).
}
dynamic {
  opened(A) : door(A).
  isNear(B) : human(B) | location(B).
  isPlaced(A,B) : object(A) & location(B).
}
action {
  name: moveTo(L,R).
  precondition: inRoom(R) & (isLocated(L,R) | locInRoom(L,R)) & not isNear(L).
  effect: isNear(L) & (-isNear(L1) <- isNear(L1)).
}
)";

} // namespace

TEST_CASE("dynamic block parses heads and DNF requirements") {
  auto r = parse_domain(nearby_domain);
  REQUIRE(ok(r));
  const Domain &d = value(r);
  REQUIRE(d.dynamic_decls.size() == 3);
  CHECK(d.dynamic_decls[0].head == atom("opened", {"A"}));
  const DynamicPredicate &is_near = d.dynamic_decls[1];
  CHECK(is_near.head == atom("isNear", {"B"}));
  REQUIRE(is_near.requirements.cases.size() == 2);
  CHECK(is_near.requirements.cases[0] ==
        std::vector<Atom>{atom("human", {"B"})});
  CHECK(is_near.requirements.cases[1] ==
        std::vector<Atom>{atom("location", {"B"})});
  CHECK(d.dynamic_decls[2].requirements.cases ==
        std::vector<std::vector<Atom>>{
            {atom("object", {"A"}), atom("location", {"B"})}});
}

TEST_CASE("action block parses grouped statics and conditional effects") {
  auto r = parse_domain(nearby_domain);
  REQUIRE(ok(r));
  const ActionSchema &move = value(r).actions.at(0);
  CHECK(move.head == atom("moveTo", {"L", "R"}));
  REQUIRE(move.preconditions.size() == 3);
  CHECK(std::get<Condition>(move.preconditions[0]) ==
        cond(lit("inRoom", {"R"})));
  const auto &group = std::get<RequirementFormula>(move.preconditions[1]);
  REQUIRE(group.cases.size() == 2);
  CHECK(group.cases[0] == std::vector<Atom>{atom("isLocated", {"L", "R"})});
  CHECK(group.cases[1] == std::vector<Atom>{atom("locInRoom", {"L", "R"})});
  CHECK(std::get<Condition>(move.preconditions[2]) ==
        cond(lit("isNear", {"L"}), true));
  REQUIRE(move.effects.size() == 2);
  CHECK(move.effects[0] == Effect{lit("isNear", {"L"}), {}});
  CHECK(move.effects[1] ==
        Effect{neg("isNear", {"L1"}), {cond(lit("isNear", {"L1"}))}});
  CHECK(move.cost == 1);
}

TEST_CASE("empty blocks give an empty domain") {
  auto r = parse_domain("static { } dynamic { }");
  REQUIRE(ok(r));
  CHECK(value(r).static_decls.empty());
  CHECK(value(r).dynamic_decls.empty());
  CHECK(value(r).actions.empty());
}

TEST_CASE("parse errors carry spans inside the input") {
  SUBCASE("lexical") {
    auto r = parse_domain("static { room(A)? }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).span.line == 1);
    CHECK(error(r).span.column == 17);
  }
  SUBCASE("syntax with expected tokens") {
    auto r = parse_domain("static { room(A) }");
    REQUIRE_FALSE(ok(r));
    CHECK_FALSE(error(r).expected.empty());
    CHECK(error(r).span.line == 1);
  }
  SUBCASE("semantic: undeclared predicate in requirements") {
    auto r = parse_domain("static { } dynamic { p(A) : q(A). }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("undeclared") != std::string::npos);
  }
  SUBCASE("semantic: arity") {
    auto r = parse_domain(
        "static { t(A). } dynamic { p(A) : t(A). } action { name: a(X). "
        "precondition: t(X,X). effect: p(X). }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("arity") != std::string::npos);
  }
  SUBCASE("duplicate declaration") {
    auto r = parse_domain("static { t(A). t(A,B). }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("duplicate") != std::string::npos);
  }
  SUBCASE("not combined with classical negation") {
    auto r = parse_domain(
        "static { t(A). } dynamic { p(A) : t(A). } action { name: a(X). "
        "precondition: t(X) & not -p(X). effect: p(X). }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("not") != std::string::npos);
  }
  SUBCASE("requirement variable outside the head") {
    auto r = parse_domain("static { t(A,B). } dynamic { p(A) : t(A,B). }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("head") != std::string::npos);
  }
  SUBCASE("parameter not limited by any precondition") {
    auto r = parse_domain(
        "static { t(A). } dynamic { p(A) : t(A). } action { name: a(X,Y). "
        "precondition: t(X). effect: p(X). }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("parameter") != std::string::npos);
  }
}

TEST_CASE("action cost line parses and validates") {
  std::string text =
      "static { t(A). } dynamic { p(A) : t(A). } action { name: a(X). "
      "precondition: t(X). effect: p(X). cost: 7. }";
  auto r = parse_domain(text);
  REQUIRE(ok(r));
  CHECK(value(r).actions[0].cost == 7);

  auto zero = parse_domain(
      "static { t(A). } dynamic { p(A) : t(A). } action { name: a(X). "
      "precondition: t(X). effect: p(X). cost: 0. }");
  CHECK_FALSE(ok(zero));
}

TEST_CASE("print_domain emits the canonical empty form") {
  CHECK(print_domain(Domain{}) == "static {\n}\ndynamic {\n}\n");
}

TEST_CASE("print/parse round-trips the paper domains") {
  for (const char *rel : {"case1/domain.vad", "case2/domain.vad",
                          "case3/domain.vad"}) {
    Domain d = load_domain(rel);
    auto r = parse_domain(print_domain(d));
    REQUIRE(ok(r));
    CHECK(value(r) == d);
  }
  auto nearby = parse_domain(nearby_domain);
  REQUIRE(ok(nearby));
  auto again = parse_domain(print_domain(value(nearby)));
  REQUIRE(ok(again));
  CHECK(value(again) == value(nearby));
}

TEST_CASE("print/parse round-trips generated domains") {
  std::mt19937 rng(42);
  for (int i = 0; i < 100; ++i) {
    Domain d = gen_domain(rng);
    std::string text = print_domain(d);
    auto r = parse_domain(text);
    REQUIRE_MESSAGE(ok(r), "iteration " << i << ": "
                                        << error(r).message << "\n"
                                        << text);
    CHECK(value(r) == d);
  }
}

TEST_CASE("problem files parse and validate against the domain") {
  Domain d = load_domain("case1/domain.vad");
  ProblemFile pf = load_problem("case1/world.vap", d);
  CHECK(pf.problem.goal == std::vector<Literal>{lit("robAt", {"room5"})});
  CHECK(pf.problem.init.contains(lit("robAt", {"room0"})));
  CHECK(pf.exclusions.empty());
  CHECK(pf.problem.has_fact(atom("connected", {"door01", "room0", "room1"})));

  ProblemFile excl = load_problem("case2/world_exclude.vap",
                                  load_domain("case2/domain.vad"));
  CHECK(excl.exclusions == std::vector<std::string>{"robAt"});
}

TEST_CASE("problem validation errors") {
  Domain d = load_domain("case1/domain.vad");
  SUBCASE("empty goal") {
    auto r = parse_problem("facts { room(room0). } init { } goal { }", d);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message == "goal must be nonempty");
  }
  SUBCASE("missing goal block") {
    auto r = parse_problem("facts { room(room0). }", d);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message == "goal must be nonempty");
  }
  SUBCASE("inconsistent init") {
    auto r = parse_problem(
        "facts { door(d). doorStatusValue(opened). } "
        "init { doorStatus(d,opened). -doorStatus(d,opened). } "
        "goal { doorStatus(d,opened). }",
        d);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("inconsistent") != std::string::npos);
  }
  SUBCASE("undeclared predicate") {
    auto r = parse_problem("facts { blargh(x). } goal { robAt(x). }", d);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("undeclared") != std::string::npos);
  }
  SUBCASE("goal literal must be dynamic") {
    auto r = parse_problem("facts { room(room0). } goal { room(room0). }", d);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("static") != std::string::npos);
  }
  SUBCASE("unknown constants in init") {
    auto r = parse_problem(
        "facts { room(room0). } init { robAt(room9). } goal { robAt(room0). }",
        d);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("room9") != std::string::npos);
  }
  SUBCASE("default negation rejected in goals") {
    auto r = parse_problem(
        "facts { room(room0). } goal { not robAt(room0). }", d);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).message.find("default negation") != std::string::npos);
  }
}

TEST_CASE("comments and whitespace are insignificant") {
  auto r = parse_domain(
      "% header comment\nstatic { t(A). % trailing\n } dynamic { }");
  REQUIRE(ok(r));
  CHECK(value(r).static_decls.size() == 1);
}

TEST_CASE("literal and goal text helpers") {
  auto l = parse_literal_text("-doorStatus(door01,opened)");
  REQUIRE(ok(l));
  CHECK(value(l) == neg("doorStatus", {"door01", "opened"}));
  auto c = parse_condition_text("not isNear(L)");
  REQUIRE(ok(c));
  CHECK(value(c) == cond(lit("isNear", {"L"}), true));
  auto g = parse_goal_text("robAt(room5) & isHeld(key34,left_hand)");
  REQUIRE(ok(g));
  CHECK(value(g).size() == 2);
  CHECK_FALSE(ok(parse_literal_text("robAt(room5) extra")));
}
