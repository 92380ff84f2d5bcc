#include "vaplan/cli.hpp"

#include "vaplan/diagnosis.hpp"
#include "vaplan/grounder.hpp"
#include "vaplan/model.hpp"
#include "vaplan/parser.hpp"
#include "vaplan/planner.hpp"
#include "vaplan/render.hpp"
#include "vaplan/virtual_actions.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

namespace vaplan::cli {

namespace {

struct Options {
  std::string command;
  std::string domain_path;
  std::string problem_path;
  std::string plan_path;
  std::string format;
  std::int64_t max_normal_cost = 10;
  int max_steps = 20;
  int static_depth = 1;
  std::vector<std::string> exclusions;
};

std::optional<std::string> read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

OutputFormat resolve_format(const Options &opt) {
  std::string f = opt.format;
  if (f.empty()) {
    const char *env = std::getenv("VAPLAN_FORMAT");
    f = env == nullptr ? "text" : env;
  }
  return f == "json" ? OutputFormat::json : OutputFormat::text;
}

struct LoadedInputs {
  Domain domain;
  Problem problem;
  DiagnosisConfig cfg;
};

// Returns nonzero exit code on failure, after printing to err.
int load(const Options &opt, bool need_problem, std::ostream &err,
         LoadedInputs &out) {
  auto domain_text = read_file(opt.domain_path);
  if (!domain_text) {
    err << "error: cannot open domain file '" << opt.domain_path << "'\n";
    return 1;
  }
  ParseResult<Domain> d = parse_domain(*domain_text);
  if (!ok(d)) {
    err << format_error(error(d), opt.domain_path) << "\n";
    return 1;
  }
  out.domain = value(d);

  out.cfg.max_normal_cost = opt.max_normal_cost;
  out.cfg.max_steps = opt.max_steps;
  out.cfg.static_check_depth = opt.static_depth;
  for (const std::string &name : opt.exclusions) {
    if (!out.domain.is_dynamic(name)) {
      err << "error: --exclude-virtual '" << name
          << "' is not a declared dynamic predicate\n";
      return 1;
    }
    out.cfg.exclusions.insert(name);
  }

  if (opt.problem_path.empty()) {
    if (need_problem) {
      err << "error: --problem is required\n";
      return 1;
    }
    return 0;
  }
  auto problem_text = read_file(opt.problem_path);
  if (!problem_text) {
    err << "error: cannot open problem file '" << opt.problem_path << "'\n";
    return 1;
  }
  ParseResult<ProblemFile> p = parse_problem(*problem_text, out.domain);
  if (!ok(p)) {
    err << format_error(error(p), opt.problem_path) << "\n";
    return 1;
  }
  out.problem = value(p).problem;
  for (const std::string &name : value(p).exclusions) {
    out.cfg.exclusions.insert(name);
  }

  for (const Diagnostic &diag :
       check_init_consistency(out.domain, out.problem)) {
    err << "warning: " << diag.message << "\n";
  }
  return 0;
}

int cmd_plan(const Options &opt, std::ostream &out, std::ostream &err) {
  LoadedInputs in;
  if (int rc = load(opt, true, err, in); rc != 0) {
    return rc;
  }
  std::vector<GroundAction> actions =
      ground_actions(in.domain, in.problem, in.domain.actions);
  SearchResult res = plan(in.problem.init, in.problem.static_facts,
                          in.problem.goal, actions, in.cfg.max_steps);
  OutputFormat format = resolve_format(opt);
  if (res.plan) {
    if (format == OutputFormat::json) {
      nlohmann::json j;
      j["result"] = "plan";
      j["plan"] = plan_to_json(*res.plan);
      out << j.dump(2) << "\n";
    } else {
      out << render_plan_text(*res.plan);
    }
    return 0;
  }
  if (format == OutputFormat::json) {
    nlohmann::json j;
    j["result"] = "unsolvable";
    j["explored"] = res.explored;
    out << j.dump(2) << "\n";
  } else {
    out << "unsolvable (explored " << res.explored << " states)\n";
  }
  return 2;
}

int cmd_diagnose(const Options &opt, std::ostream &out, std::ostream &err) {
  LoadedInputs in;
  if (int rc = load(opt, true, err, in); rc != 0) {
    return rc;
  }
  Outcome outcome = progressive_diagnose(in.domain, in.problem, in.cfg);
  out << render_outcome(outcome, resolve_format(opt));
  if (std::holds_alternative<Plan>(outcome)) {
    return 0;
  }
  if (std::holds_alternative<Explanation>(outcome)) {
    return 3;
  }
  return 4;
}

int cmd_validate(const Options &opt, std::ostream &out, std::ostream &err) {
  LoadedInputs in;
  if (int rc = load(opt, true, err, in); rc != 0) {
    return rc;
  }
  auto plan_text = read_file(opt.plan_path);
  if (!plan_text) {
    err << "error: cannot open plan file '" << opt.plan_path << "'\n";
    return 1;
  }

  VirtualActionSet virtuals = generate_virtual_actions(
      in.domain, in.domain.actions, in.cfg.exclusions);
  try {
    assign_costs(virtuals, in.domain.actions, in.cfg.max_normal_cost,
                 in.cfg.max_steps);
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  std::map<std::string, GroundAction> by_name;
  auto index = [&](const std::vector<GroundAction> &actions) {
    for (const GroundAction &ga : actions) {
      by_name.emplace(to_string(ga.head), ga);
    }
  };
  index(ground_actions(in.domain, in.problem, in.domain.actions));
  index(ground_actions(in.domain, in.problem, virtuals.full));
  index(ground_actions(in.domain, in.problem, virtuals.semi));

  Plan candidate;
  std::istringstream lines(*plan_text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) {
      continue;
    }
    line = line.substr(start);
    if (line.rfind("total cost:", 0) == 0 || line[0] == '%') {
      continue;
    }
    // Strip a leading "k." step number.
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > 0 && i < line.size() && line[i] == '.') {
      line = line.substr(i + 1);
      std::size_t s2 = line.find_first_not_of(" \t");
      line = s2 == std::string::npos ? "" : line.substr(s2);
    }
    while (!line.empty() &&
           (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    auto it = by_name.find(line);
    if (it == by_name.end()) {
      err << "error: line " << lineno << ": unknown action '" << line
          << "'\n";
      return 1;
    }
    candidate.steps.push_back(it->second);
    candidate.total_cost += it->second.cost;
  }

  ValidationReport report = validate_plan(in.problem.init,
                                          in.problem.static_facts, candidate,
                                          in.problem.goal);
  OutputFormat format = resolve_format(opt);
  if (format == OutputFormat::json) {
    nlohmann::json j;
    j["valid"] = report.valid;
    if (!report.valid) {
      if (report.failed_step) {
        j["failed_step"] = *report.failed_step;
      }
      j["reason"] = report.reason;
    }
    out << j.dump(2) << "\n";
  } else if (report.valid) {
    out << "valid\n";
  } else {
    out << "invalid: " << report.reason << "\n";
  }
  return report.valid ? 0 : 2;
}

int cmd_gen_virtual(const Options &opt, std::ostream &out, std::ostream &err) {
  LoadedInputs in;
  if (int rc = load(opt, false, err, in); rc != 0) {
    return rc;
  }
  VirtualActionSet virtuals = generate_virtual_actions(
      in.domain, in.domain.actions, in.cfg.exclusions);
  try {
    assign_costs(virtuals, in.domain.actions, in.cfg.max_normal_cost,
                 in.cfg.max_steps);
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  OutputFormat format = resolve_format(opt);
  auto schema_json = [](const ActionSchema &schema) {
    nlohmann::json j;
    j["name"] = to_string(schema.head);
    nlohmann::json pre = nlohmann::json::array();
    for (const PrecondItem &item : schema.preconditions) {
      pre.push_back(to_string(std::get<Condition>(item)));
    }
    j["preconditions"] = pre;
    j["effect"] = to_string(schema.effects.front());
    j["cost"] = schema.cost;
    return j;
  };
  if (format == OutputFormat::json) {
    nlohmann::json j;
    j["full"] = nlohmann::json::array();
    j["semi"] = nlohmann::json::array();
    for (const ActionSchema &schema : virtuals.full) {
      j["full"].push_back(schema_json(schema));
    }
    for (const ActionSchema &schema : virtuals.semi) {
      j["semi"].push_back(schema_json(schema));
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  auto print = [&](const char *label, const std::vector<ActionSchema> &set) {
    out << label << " (" << set.size() << "):\n";
    for (const ActionSchema &schema : set) {
      out << "  " << to_string(schema.head) << " | preconditions: ";
      for (std::size_t i = 0; i < schema.preconditions.size(); ++i) {
        if (i > 0) {
          out << " & ";
        }
        out << to_string(std::get<Condition>(schema.preconditions[i]));
      }
      out << " | effect: " << to_string(schema.effects.front())
          << " | cost: " << schema.cost << "\n";
    }
  };
  print("full virtual actions", virtuals.full);
  print("semi-virtual actions", virtuals.semi);
  return 0;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  Options opt;
  CLI::App app{"task planning with virtual-action failure explanation",
               "vaplan"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App *cmd, bool with_problem, bool with_plan) {
    cmd->add_option("--domain", opt.domain_path, "domain file (.vad)")
        ->required();
    if (with_problem) {
      cmd->add_option("--problem", opt.problem_path, "problem file (.vap)");
    }
    if (with_plan) {
      cmd->add_option("--plan", opt.plan_path, "plan file to validate")
          ->required();
    }
    cmd->add_option("--format", opt.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--max-steps", opt.max_steps, "plan length bound N")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-normal-cost", opt.max_normal_cost,
                    "max normal action cost C")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--exclude-virtual", opt.exclusions,
                    "dynamic predicate to skip during virtual-action "
                    "generation (repeatable)");
    cmd->add_option("--static-depth", opt.static_depth,
                    "stage-3 chain depth")
        ->check(CLI::PositiveNumber);
  };

  CLI::App *plan_cmd =
      app.add_subcommand("plan", "plan with normal actions only");
  add_common(plan_cmd, true, false);
  CLI::App *diagnose_cmd = app.add_subcommand(
      "diagnose", "plan, and explain the failure when planning fails");
  add_common(diagnose_cmd, true, false);
  CLI::App *validate_cmd =
      app.add_subcommand("validate", "simulate a plan file");
  add_common(validate_cmd, true, true);
  CLI::App *gen_cmd = app.add_subcommand(
      "gen-virtual", "print the generated virtual actions");
  add_common(gen_cmd, true, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    std::ostringstream buffer;
    int code = app.exit(e, out, buffer);
    err << buffer.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(plan_cmd)) {
      return cmd_plan(opt, out, err);
    }
    if (app.got_subcommand(diagnose_cmd)) {
      return cmd_diagnose(opt, out, err);
    }
    if (app.got_subcommand(validate_cmd)) {
      return cmd_validate(opt, out, err);
    }
    return cmd_gen_virtual(opt, out, err);
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace vaplan::cli
