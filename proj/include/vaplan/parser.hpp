#pragma once

#include "vaplan/model.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vaplan {

struct SourceSpan {
  int line = 1;   // 1-based
  int column = 1; // 1-based
  int length = 0;

  auto operator<=>(const SourceSpan &) const = default;
};

struct ParseError {
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;
};

template <typename T> using ParseResult = std::variant<T, ParseError>;

template <typename T> bool ok(const ParseResult<T> &r) {
  return std::holds_alternative<T>(r);
}

template <typename T> const T &value(const ParseResult<T> &r) {
  return std::get<T>(r);
}

template <typename T> const ParseError &error(const ParseResult<T> &r) {
  return std::get<ParseError>(r);
}

/// Problem file contents: the problem itself plus any `exclude { ... }`
/// directives naming dynamic predicates to skip during virtual-action
/// generation.
struct ProblemFile {
  Problem problem;
  std::vector<std::string> exclusions;
};

/// Parses an action-domain file: `static { ... }`, `dynamic { ... }` and
/// `action { ... }` blocks. See docs/language.md for the grammar.
ParseResult<Domain> parse_domain(std::string_view text);

/// Parses a problem file (`facts`, `init`, `goal`, optional `exclude`
/// blocks) and validates it against the domain.
ParseResult<ProblemFile> parse_problem(std::string_view text,
                                       const Domain &domain);

/// Parses one literal, e.g. `-doorStatus(door01,opened)` or `robAt(R1)`.
ParseResult<Literal> parse_literal_text(std::string_view text);

/// Parses one condition, e.g. `not isNear(L)`.
ParseResult<Condition> parse_condition_text(std::string_view text);

/// Parses a conjunction of literals joined by `&`.
ParseResult<std::vector<Literal>> parse_goal_text(std::string_view text);

/// Canonical text form; parse_domain(print_domain(d)) is structurally
/// equal to d.
std::string print_domain(const Domain &d);

std::string format_error(const ParseError &e, std::string_view filename);

} // namespace vaplan
