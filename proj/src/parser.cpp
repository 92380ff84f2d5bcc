#include "vaplan/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace vaplan {

namespace {

enum class TokKind {
  ident,     // leading lowercase: constant / predicate name
  variable,  // leading uppercase
  integer,
  lbrace,
  rbrace,
  lparen,
  rparen,
  comma,
  dot,
  colon,
  amp,
  pipe,
  minus,
  arrow, // <-
  end
};

const char *describe(TokKind k) {
  switch (k) {
  case TokKind::ident:
    return "identifier";
  case TokKind::variable:
    return "variable";
  case TokKind::integer:
    return "integer";
  case TokKind::lbrace:
    return "'{'";
  case TokKind::rbrace:
    return "'}'";
  case TokKind::lparen:
    return "'('";
  case TokKind::rparen:
    return "')'";
  case TokKind::comma:
    return "','";
  case TokKind::dot:
    return "'.'";
  case TokKind::colon:
    return "':'";
  case TokKind::amp:
    return "'&'";
  case TokKind::pipe:
    return "'|'";
  case TokKind::minus:
    return "'-'";
  case TokKind::arrow:
    return "'<-'";
  case TokKind::end:
    return "end of input";
  }
  return "?";
}

struct Token {
  TokKind kind = TokKind::end;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      Token t = next();
      out.push_back(t);
      if (t.kind == TokKind::end) {
        break;
      }
    }
    return out;
  }

private:
  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    if (pos_ >= src_.size()) {
      return {TokKind::end, "", {line_, col_, 0}};
    }
    SourceSpan span{line_, col_, 1};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        word += src_[pos_];
        advance();
      }
      span.length = static_cast<int>(word.size());
      TokKind kind = std::isupper(static_cast<unsigned char>(word[0]))
                         ? TokKind::variable
                         : TokKind::ident;
      return {kind, word, span};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        num += src_[pos_];
        advance();
      }
      span.length = static_cast<int>(num.size());
      return {TokKind::integer, num, span};
    }
    advance();
    switch (c) {
    case '{':
      return {TokKind::lbrace, "{", span};
    case '}':
      return {TokKind::rbrace, "}", span};
    case '(':
      return {TokKind::lparen, "(", span};
    case ')':
      return {TokKind::rparen, ")", span};
    case ',':
      return {TokKind::comma, ",", span};
    case '.':
      return {TokKind::dot, ".", span};
    case ':':
      return {TokKind::colon, ":", span};
    case '&':
      return {TokKind::amp, "&", span};
    case '|':
      return {TokKind::pipe, "|", span};
    case '-':
      return {TokKind::minus, "-", span};
    case '<':
      if (pos_ < src_.size() && src_[pos_] == '-') {
        advance();
        span.length = 2;
        return {TokKind::arrow, "<-", span};
      }
      break;
    default:
      break;
    }
    throw ParseError{span, std::string("unexpected character '") + c + "'",
                     {}};
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Predicate signature table built while parsing declarations.
struct Signatures {
  std::map<std::string, std::size_t> static_arity;
  std::map<std::string, std::size_t> dynamic_arity;

  bool declared(const std::string &name) const {
    return static_arity.count(name) != 0 || dynamic_arity.count(name) != 0;
  }
};

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  Domain domain() {
    Domain d;
    while (!at(TokKind::end)) {
      const Token &t = expect(TokKind::ident, "block keyword");
      if (t.text == "static") {
        parse_static_block(d);
      } else if (t.text == "dynamic") {
        parse_dynamic_block(d);
      } else if (t.text == "action") {
        parse_action_block(d);
      } else {
        fail(t.span, "unknown block '" + t.text + "'",
             {"'static'", "'dynamic'", "'action'"});
      }
    }
    validate_requirements(d);
    validate_actions(d);
    return d;
  }

  ProblemFile problem(const Domain &d) {
    ProblemFile pf;
    bool saw_goal = false;
    SourceSpan goal_span{1, 1, 0};
    while (!at(TokKind::end)) {
      const Token &t = expect(TokKind::ident, "block keyword");
      if (t.text == "facts") {
        parse_facts_block(d, pf.problem);
      } else if (t.text == "init") {
        parse_init_block(d, pf.problem);
      } else if (t.text == "goal") {
        saw_goal = true;
        goal_span = t.span;
        parse_goal_block(d, pf.problem);
      } else if (t.text == "exclude") {
        parse_exclude_block(d, pf.exclusions);
      } else {
        fail(t.span, "unknown block '" + t.text + "'",
             {"'facts'", "'init'", "'goal'", "'exclude'"});
      }
    }
    if (!saw_goal || pf.problem.goal.empty()) {
      fail(goal_span, "goal must be nonempty", {});
    }
    validate_problem(d, pf.problem);
    return pf;
  }

  Literal literal_only() {
    Literal l = parse_literal();
    expect(TokKind::end, "end of input");
    return l;
  }

  Condition condition_only() {
    Condition c = condition();
    expect(TokKind::end, "end of input");
    return c;
  }

  std::vector<Literal> goal_only() {
    std::vector<Literal> out;
    out.push_back(parse_literal());
    while (accept(TokKind::amp)) {
      out.push_back(parse_literal());
    }
    expect(TokKind::end, "end of input");
    return out;
  }

private:
  // --- token plumbing -----------------------------------------------------

  const Token &peek() const { return tokens_[index_]; }

  bool at(TokKind k) const { return peek().kind == k; }

  const Token &take() { return tokens_[index_++]; }

  const Token &expect(TokKind k, const std::string &what) {
    if (!at(k)) {
      fail(peek().span,
           "expected " + what + " but found " +
               (peek().kind == TokKind::end ? "end of input"
                                            : "'" + peek().text + "'"),
           {describe(k)});
    }
    return take();
  }

  bool accept(TokKind k) {
    if (at(k)) {
      ++index_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(SourceSpan span, std::string message,
                         std::vector<std::string> expected) {
    throw ParseError{span, std::move(message), std::move(expected)};
  }

  // --- shared grammar pieces ----------------------------------------------

  std::string identifier(const char *what) {
    const Token &t = expect(TokKind::ident, what);
    if (t.text == "not") {
      fail(t.span, "'not' is reserved", {});
    }
    return t.text;
  }

  Term term() {
    if (at(TokKind::variable)) {
      return Term::variable(take().text);
    }
    const Token &t = expect(TokKind::ident, "term");
    if (t.text == "not") {
      fail(t.span, "'not' is reserved", {});
    }
    return Term::constant(t.text);
  }

  Atom atom() {
    SourceSpan span = peek().span;
    Atom a;
    a.pred = identifier("predicate name");
    if (accept(TokKind::lparen)) {
      a.args.push_back(term());
      while (accept(TokKind::comma)) {
        a.args.push_back(term());
      }
      expect(TokKind::rparen, "')'");
    }
    spans_[key(a)] = span;
    return a;
  }

  Literal parse_literal() {
    Literal l;
    if (accept(TokKind::minus)) {
      l.negated = true;
    }
    l.atom = atom();
    return l;
  }

  Condition condition() {
    Condition c;
    if (at(TokKind::ident) && peek().text == "not") {
      SourceSpan not_span = take().span;
      c.default_negated = true;
      if (at(TokKind::minus)) {
        fail(not_span, "'not' and '-' may not combine on one condition", {});
      }
    }
    c.literal = parse_literal();
    return c;
  }

  // Formulas over static atoms (`&`, `|`, parentheses) are normalized to
  // DNF while parsing: `|` unions case lists, `&` takes their product.
  RequirementFormula requirement_formula() {
    RequirementFormula f = requirement_conjunction();
    while (accept(TokKind::pipe)) {
      RequirementFormula g = requirement_conjunction();
      f.cases.insert(f.cases.end(), g.cases.begin(), g.cases.end());
    }
    return f;
  }

  RequirementFormula requirement_conjunction() {
    RequirementFormula f = requirement_primary();
    while (accept(TokKind::amp)) {
      RequirementFormula g = requirement_primary();
      RequirementFormula product;
      for (const std::vector<Atom> &a : f.cases) {
        for (const std::vector<Atom> &b : g.cases) {
          std::vector<Atom> merged = a;
          merged.insert(merged.end(), b.begin(), b.end());
          product.cases.push_back(std::move(merged));
        }
      }
      f = std::move(product);
    }
    return f;
  }

  RequirementFormula requirement_primary() {
    if (accept(TokKind::lparen)) {
      RequirementFormula inner = requirement_formula();
      expect(TokKind::rparen, "')'");
      return inner;
    }
    return RequirementFormula{{{atom()}}};
  }

  // --- domain blocks --------------------------------------------------------

  void declare(Signatures &sig, const std::string &name, std::size_t arity,
               bool dynamic, SourceSpan span) {
    if (sig.declared(name)) {
      fail(span, "duplicate declaration of predicate '" + name + "'", {});
    }
    (dynamic ? sig.dynamic_arity : sig.static_arity)[name] = arity;
  }

  void parse_static_block(Domain &d) {
    expect(TokKind::lbrace, "'{'");
    while (!accept(TokKind::rbrace)) {
      SourceSpan span = peek().span;
      Atom a = atom();
      for (const Term &t : a.args) {
        if (!t.is_variable) {
          fail(span, "static declaration arguments must be variables", {});
        }
      }
      declare(sig_, a.pred, a.args.size(), false, span);
      d.static_decls.push_back(a);
      expect(TokKind::dot, "'.'");
    }
  }

  void parse_dynamic_block(Domain &d) {
    expect(TokKind::lbrace, "'{'");
    while (!accept(TokKind::rbrace)) {
      SourceSpan span = peek().span;
      DynamicPredicate dp;
      dp.head = atom();
      std::set<std::string> seen;
      for (const Term &t : dp.head.args) {
        if (!t.is_variable) {
          fail(span, "dynamic predicate parameters must be variables", {});
        }
        if (!seen.insert(t.text).second) {
          fail(span, "duplicate parameter '" + t.text + "' in dynamic head",
               {});
        }
      }
      declare(sig_, dp.head.pred, dp.head.args.size(), true, span);
      expect(TokKind::colon, "':'");
      dp.requirements = requirement_formula();
      expect(TokKind::dot, "'.'");
      requirement_spans_.emplace_back(d.dynamic_decls.size(), span);
      d.dynamic_decls.push_back(dp);
    }
  }

  void parse_action_block(Domain &d) {
    expect(TokKind::lbrace, "'{'");
    ActionSchema schema;
    SourceSpan head_span = peek().span;

    field("name");
    head_span = peek().span;
    schema.head = atom();
    std::set<std::string> params;
    for (const Term &t : schema.head.args) {
      if (!t.is_variable) {
        fail(head_span, "action parameters must be variables", {});
      }
      if (!params.insert(t.text).second) {
        fail(head_span, "duplicate action parameter '" + t.text + "'", {});
      }
    }
    for (const ActionSchema &existing : d.actions) {
      if (existing.name() == schema.head.pred) {
        fail(head_span, "duplicate action '" + schema.head.pred + "'", {});
      }
    }
    expect(TokKind::dot, "'.'");

    field("precondition");
    schema.preconditions.push_back(precondition_item());
    while (accept(TokKind::amp)) {
      schema.preconditions.push_back(precondition_item());
    }
    expect(TokKind::dot, "'.'");

    field("effect");
    schema.effects.push_back(effect_term());
    while (accept(TokKind::amp)) {
      schema.effects.push_back(effect_term());
    }
    expect(TokKind::dot, "'.'");

    if (at(TokKind::ident) && peek().text == "cost") {
      take();
      expect(TokKind::colon, "':'");
      const Token &n = expect(TokKind::integer, "cost value");
      schema.cost = std::stoll(n.text);
      if (schema.cost < 1) {
        fail(n.span, "action cost must be positive", {});
      }
      expect(TokKind::dot, "'.'");
    }

    expect(TokKind::rbrace, "'}'");
    action_spans_.emplace_back(d.actions.size(), head_span);
    d.actions.push_back(std::move(schema));
  }

  void field(const std::string &name) {
    const Token &t = expect(TokKind::ident, "'" + name + "'");
    if (t.text != name) {
      fail(t.span, "expected '" + name + ":' but found '" + t.text + "'",
           {"'" + name + "'"});
    }
    expect(TokKind::colon, "':'");
  }

  PrecondItem precondition_item() {
    if (at(TokKind::lparen)) {
      SourceSpan span = peek().span;
      take();
      RequirementFormula group = requirement_formula();
      expect(TokKind::rparen, "')'");
      spans_[group_key(group)] = span;
      return group;
    }
    return condition();
  }

  Effect effect_term() {
    Effect e;
    if (accept(TokKind::lparen)) {
      e.literal = parse_literal();
      expect(TokKind::arrow, "'<-'");
      e.conditions.push_back(condition());
      while (accept(TokKind::amp)) {
        e.conditions.push_back(condition());
      }
      expect(TokKind::rparen, "')'");
      return e;
    }
    e.literal = parse_literal();
    return e;
  }

  // --- domain validation ----------------------------------------------------

  SourceSpan span_of(const Atom &a) const {
    auto it = spans_.find(key(a));
    return it == spans_.end() ? SourceSpan{1, 1, 0} : it->second;
  }

  void check_arity(const Atom &a, bool want_dynamic_ok, bool want_static_ok) {
    auto dyn = sig_.dynamic_arity.find(a.pred);
    auto sta = sig_.static_arity.find(a.pred);
    if (dyn != sig_.dynamic_arity.end()) {
      if (!want_dynamic_ok) {
        fail(span_of(a), "dynamic predicate '" + a.pred + "' not allowed here",
             {});
      }
      if (dyn->second != a.args.size()) {
        fail(span_of(a), "arity mismatch for '" + a.pred + "': declared " +
                             std::to_string(dyn->second) + ", used with " +
                             std::to_string(a.args.size()),
             {});
      }
      return;
    }
    if (sta != sig_.static_arity.end()) {
      if (!want_static_ok) {
        fail(span_of(a), "static predicate '" + a.pred + "' not allowed here",
             {});
      }
      if (sta->second != a.args.size()) {
        fail(span_of(a), "arity mismatch for '" + a.pred + "': declared " +
                             std::to_string(sta->second) + ", used with " +
                             std::to_string(a.args.size()),
             {});
      }
      return;
    }
    fail(span_of(a), "undeclared predicate '" + a.pred + "'", {});
  }

  void validate_requirements(const Domain &d) {
    for (const auto &[idx, span] : requirement_spans_) {
      const DynamicPredicate &dp = d.dynamic_decls[idx];
      std::set<std::string> head_vars;
      for (const Term &t : dp.head.args) {
        head_vars.insert(t.text);
      }
      for (const std::vector<Atom> &c : dp.requirements.cases) {
        if (c.empty()) {
          fail(span, "empty requirement case for '" + dp.head.pred + "'", {});
        }
        std::set<std::string> covered;
        for (const Atom &a : c) {
          check_arity(a, false, true);
          for (const Term &t : a.args) {
            if (t.is_variable) {
              if (head_vars.count(t.text) == 0) {
                fail(span_of(a),
                     "requirement variable '" + t.text +
                         "' does not appear in the head of '" + dp.head.pred +
                         "'",
                     {});
              }
              covered.insert(t.text);
            }
          }
        }
        for (const std::string &v : head_vars) {
          if (covered.count(v) == 0) {
            fail(span, "parameter '" + v + "' of '" + dp.head.pred +
                           "' is not limited by a static predicate in every "
                           "case",
                 {});
          }
        }
      }
    }
  }

  void validate_actions(const Domain &d) {
    for (const auto &[idx, span] : action_spans_) {
      const ActionSchema &schema = d.actions[idx];
      std::set<std::string> params;
      for (const Term &t : schema.head.args) {
        params.insert(t.text);
      }
      std::set<std::string> bound;
      auto note_var = [&](const Atom &a, const Term &t) {
        if (!t.is_variable) {
          return;
        }
        if (params.count(t.text) == 0) {
          fail(span_of(a), "precondition variable '" + t.text +
                               "' is not a parameter of action '" +
                               schema.name() + "'",
               {});
        }
        bound.insert(t.text);
      };
      for (const PrecondItem &item : schema.preconditions) {
        if (const Condition *c = std::get_if<Condition>(&item)) {
          const Atom &a = c->literal.atom;
          check_arity(a, true, true);
          if (sig_.static_arity.count(a.pred) != 0 && c->literal.negated) {
            fail(span_of(a),
                 "classical negation on static predicate '" + a.pred + "'",
                 {});
          }
          for (const Term &t : a.args) {
            note_var(a, t);
          }
        } else {
          const RequirementFormula &g = std::get<RequirementFormula>(item);
          std::set<std::string> branch_vars;
          for (std::size_t ci = 0; ci < g.cases.size(); ++ci) {
            std::set<std::string> vars;
            for (const Atom &a : g.cases[ci]) {
              check_arity(a, false, true);
              for (const Term &t : a.args) {
                note_var(a, t);
                if (t.is_variable) {
                  vars.insert(t.text);
                }
              }
            }
            if (ci == 0) {
              branch_vars = vars;
            } else if (vars != branch_vars) {
              fail(span, "branches of a disjunctive precondition in action '" +
                             schema.name() + "' must use the same variables",
                   {});
            }
          }
        }
      }
      for (const std::string &p : params) {
        if (bound.count(p) == 0) {
          fail(span, "parameter '" + p + "' of action '" + schema.name() +
                         "' does not appear in any precondition atom",
               {});
        }
      }
      for (const Effect &e : schema.effects) {
        const Atom &a = e.literal.atom;
        check_arity(a, true, false);
        std::set<std::string> locals;
        for (const Term &t : a.args) {
          if (t.is_variable && params.count(t.text) == 0) {
            locals.insert(t.text);
          }
        }
        std::set<std::string> cond_bound;
        for (const Condition &c : e.conditions) {
          check_arity(c.literal.atom, true, true);
          if (!c.default_negated && !c.literal.negated) {
            for (const Term &t : c.literal.atom.args) {
              if (t.is_variable) {
                cond_bound.insert(t.text);
              }
            }
          }
        }
        for (const std::string &v : locals) {
          if (e.conditions.empty() || cond_bound.count(v) == 0) {
            fail(span_of(a),
                 "effect variable '" + v +
                     "' is not a parameter and is not bound by the effect's "
                     "conditions",
                 {});
          }
        }
      }
    }
  }

  // --- problem blocks -------------------------------------------------------

  void parse_facts_block(const Domain &d, Problem &p) {
    expect(TokKind::lbrace, "'{'");
    while (!accept(TokKind::rbrace)) {
      SourceSpan span = peek().span;
      Atom a = atom();
      if (!d.is_static(a.pred)) {
        fail(span, d.is_dynamic(a.pred)
                       ? "'" + a.pred + "' is dynamic; facts must be static"
                       : "undeclared predicate '" + a.pred + "'",
             {});
      }
      if (*d.arity_of(a.pred) != a.args.size()) {
        fail(span, "arity mismatch for '" + a.pred + "'", {});
      }
      if (!a.is_ground()) {
        fail(span, "facts must be ground", {});
      }
      if (!p.has_fact(a)) {
        p.static_facts.push_back(a);
      }
      expect(TokKind::dot, "'.'");
    }
  }

  Literal ground_dynamic_literal(const Domain &d, const char *where) {
    SourceSpan span = peek().span;
    Literal l = parse_literal();
    if (!d.is_dynamic(l.atom.pred)) {
      fail(span, d.is_static(l.atom.pred)
                     ? "'" + l.atom.pred + "' is static; " + where +
                           " literals must be dynamic"
                     : "undeclared predicate '" + l.atom.pred + "'",
           {});
    }
    if (*d.arity_of(l.atom.pred) != l.atom.args.size()) {
      fail(span, "arity mismatch for '" + l.atom.pred + "'", {});
    }
    if (!l.atom.is_ground()) {
      fail(span, std::string(where) + " literals must be ground", {});
    }
    return l;
  }

  void parse_init_block(const Domain &d, Problem &p) {
    expect(TokKind::lbrace, "'{'");
    while (!accept(TokKind::rbrace)) {
      SourceSpan span = peek().span;
      Literal l = ground_dynamic_literal(d, "init");
      if (p.init.contains(complement(l))) {
        fail(span, "inconsistent init: both " + to_string(l) + " and " +
                       to_string(complement(l)),
             {});
      }
      p.init.literals.insert(l);
      expect(TokKind::dot, "'.'");
    }
  }

  void parse_goal_block(const Domain &d, Problem &p) {
    expect(TokKind::lbrace, "'{'");
    while (!accept(TokKind::rbrace)) {
      SourceSpan span = peek().span;
      if (at(TokKind::ident) && peek().text == "not") {
        fail(span, "default negation is not allowed in goals", {});
      }
      p.goal.push_back(ground_dynamic_literal(d, "goal"));
      expect(TokKind::dot, "'.'");
    }
  }

  void parse_exclude_block(const Domain &d, std::vector<std::string> &out) {
    expect(TokKind::lbrace, "'{'");
    while (!accept(TokKind::rbrace)) {
      const Token &t = expect(TokKind::ident, "dynamic predicate name");
      if (!d.is_dynamic(t.text)) {
        fail(t.span, "'" + t.text + "' is not a declared dynamic predicate",
             {});
      }
      if (std::find(out.begin(), out.end(), t.text) == out.end()) {
        out.push_back(t.text);
      }
      expect(TokKind::dot, "'.'");
    }
  }

  void validate_problem(const Domain &d, const Problem &p) {
    std::set<std::string> known;
    for (const Atom &f : p.static_facts) {
      for (const Term &t : f.args) {
        known.insert(t.text);
      }
    }
    auto check_constants = [&](const Atom &a, const char *where) {
      for (const Term &t : a.args) {
        if (known.count(t.text) == 0) {
          fail(span_of(a), "constant '" + t.text + "' in " + where +
                               " does not appear in any static fact",
               {});
        }
      }
    };
    for (const Literal &l : p.init.literals) {
      check_constants(l.atom, "init");
    }
    for (const Literal &l : p.goal) {
      check_constants(l.atom, "goal");
    }
    (void)d;
  }

  static std::string key(const Atom &a) { return to_string(a); }

  static std::string group_key(const RequirementFormula &g) {
    return "(" + to_string(g) + ")";
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  Signatures sig_;
  std::map<std::string, SourceSpan> spans_;
  std::vector<std::pair<std::size_t, SourceSpan>> requirement_spans_;
  std::vector<std::pair<std::size_t, SourceSpan>> action_spans_;
};

} // namespace

ParseResult<Domain> parse_domain(std::string_view text) {
  try {
    Parser p(text);
    return p.domain();
  } catch (ParseError &e) {
    return e;
  }
}

ParseResult<ProblemFile> parse_problem(std::string_view text,
                                       const Domain &domain) {
  try {
    Parser p(text);
    return p.problem(domain);
  } catch (ParseError &e) {
    return e;
  }
}

ParseResult<Literal> parse_literal_text(std::string_view text) {
  try {
    Parser p(text);
    return p.literal_only();
  } catch (ParseError &e) {
    return e;
  }
}

ParseResult<Condition> parse_condition_text(std::string_view text) {
  try {
    Parser p(text);
    return p.condition_only();
  } catch (ParseError &e) {
    return e;
  }
}

ParseResult<std::vector<Literal>> parse_goal_text(std::string_view text) {
  try {
    Parser p(text);
    return p.goal_only();
  } catch (ParseError &e) {
    return e;
  }
}

namespace {

void print_precondition(std::ostream &out, const PrecondItem &item) {
  if (const Condition *c = std::get_if<Condition>(&item)) {
    out << to_string(*c);
  } else {
    out << "(" << to_string(std::get<RequirementFormula>(item)) << ")";
  }
}

} // namespace

std::string print_domain(const Domain &d) {
  std::ostringstream out;
  out << "static {\n";
  for (const Atom &a : d.static_decls) {
    out << "  " << to_string(a) << ".\n";
  }
  out << "}\n";
  out << "dynamic {\n";
  for (const DynamicPredicate &dp : d.dynamic_decls) {
    out << "  " << to_string(dp.head) << " : " << to_string(dp.requirements)
        << ".\n";
  }
  out << "}\n";
  for (const ActionSchema &schema : d.actions) {
    out << "action {\n";
    out << "  name: " << to_string(schema.head) << ".\n";
    out << "  precondition: ";
    for (std::size_t i = 0; i < schema.preconditions.size(); ++i) {
      if (i > 0) {
        out << " & ";
      }
      print_precondition(out, schema.preconditions[i]);
    }
    out << ".\n";
    out << "  effect: ";
    for (std::size_t i = 0; i < schema.effects.size(); ++i) {
      if (i > 0) {
        out << " & ";
      }
      out << to_string(schema.effects[i]);
    }
    out << ".\n";
    if (schema.cost != 1) {
      out << "  cost: " << schema.cost << ".\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string format_error(const ParseError &e, std::string_view filename) {
  std::ostringstream out;
  out << filename << ":" << e.span.line << ":" << e.span.column
      << ": error: " << e.message;
  if (!e.expected.empty()) {
    out << " (expected: ";
    for (std::size_t i = 0; i < e.expected.size(); ++i) {
      if (i > 0) {
        out << ", ";
      }
      out << e.expected[i];
    }
    out << ")";
  }
  return out.str();
}

} // namespace vaplan
