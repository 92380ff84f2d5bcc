#pragma once

#include "vaplan/model.hpp"
#include "vaplan/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vaplan::test {

// Leading uppercase means variable, mirroring the surface syntax.
inline Term term(const std::string &text) {
  return std::isupper(static_cast<unsigned char>(text[0]))
             ? Term::variable(text)
             : Term::constant(text);
}

inline Atom atom(const std::string &pred,
                 const std::vector<std::string> &args = {}) {
  Atom a;
  a.pred = pred;
  for (const std::string &arg : args) {
    a.args.push_back(term(arg));
  }
  return a;
}

inline Literal lit(const std::string &pred,
                   const std::vector<std::string> &args = {}) {
  return {atom(pred, args), false};
}

inline Literal neg(const std::string &pred,
                   const std::vector<std::string> &args = {}) {
  return {atom(pred, args), true};
}

inline Condition cond(Literal l, bool default_negated = false) {
  return {std::move(l), default_negated};
}

inline State state(std::vector<Literal> literals) {
  State s;
  for (Literal &l : literals) {
    s.literals.insert(std::move(l));
  }
  return s;
}

inline std::string read_file_or_throw(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string fixture_path(const std::string &rel) {
  return std::string(VAPLAN_FIXTURES_DIR) + "/" + rel;
}

inline Domain load_domain(const std::string &rel) {
  auto r = parse_domain(read_file_or_throw(fixture_path(rel)));
  if (!ok(r)) {
    throw std::runtime_error(rel + ": " + error(r).message);
  }
  return value(r);
}

inline ProblemFile load_problem(const std::string &rel, const Domain &d) {
  auto r = parse_problem(read_file_or_throw(fixture_path(rel)), d);
  if (!ok(r)) {
    throw std::runtime_error(rel + ": " + error(r).message);
  }
  return value(r);
}

} // namespace vaplan::test
