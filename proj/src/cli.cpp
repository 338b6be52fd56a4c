#include "fdplan/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fdplan/catalog.hpp"
#include "fdplan/error.hpp"
#include "fdplan/pddl.hpp"
#include "fdplan/plan_io.hpp"
#include "fdplan/pop.hpp"
#include "fdplan/validate.hpp"
#include "json.hpp"

namespace fdplan::cli {
namespace {

constexpr const char* kBuiltinDomain = "builtin:roth";

// Reported failure; the message has already been written to stderr.
struct Failure {
  int code;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path);
  buffer << file.rdbuf();
  return buffer.str();
}

std::string display_name(const std::string& path) { return path == "-" ? "<stdin>" : path; }

FunctionCatalog load_domain(const std::string& source, std::istream& in, std::ostream& err) {
  if (source == kBuiltinDomain) return built_in_catalog();
  const std::string name = display_name(source);
  try {
    return parse_catalog_text(read_input(source, in), name);
  } catch (const ParseError& e) {
    err << name << ":" << e.what() << "\n";
    throw Failure{kExitInputError};
  } catch (const Error& e) {
    err << name << ": error: " << e.what() << "\n";
    throw Failure{kExitInputError};
  }
}

Problem load_problem(const std::string& path, const FunctionCatalog& catalog, std::istream& in,
                     std::ostream& err) {
  const std::string name = display_name(path);
  std::string text;
  try {
    text = read_input(path, in);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    throw Failure{kExitInputError};
  }
  auto parsed = pddl::parse_problem(text);
  for (const pddl::Diagnostic& d : parsed.diagnostics) err << name << ":" << d.str() << "\n";
  if (!parsed.ok()) throw Failure{kExitInputError};
  try {
    Problem problem = pddl::to_problem(parsed.ast);
    auto known = [&](const Atom& a) {
      if (std::find(catalog.predicates.begin(), catalog.predicates.end(), a.predicate) ==
          catalog.predicates.end()) {
        throw ValidationError(a.str(), "predicate '" + a.predicate + "' is not in the domain");
      }
    };
    for (const Atom& a : problem.init) known(a);
    for (const Literal& l : problem.goal) known(l.atom);
    return problem;
  } catch (const Error& e) {
    err << name << ": error: " << e.what() << "\n";
    throw Failure{kExitInputError};
  }
}

void write_output(const std::string& path, const std::string& text, std::ostream& out,
                  std::ostream& err) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    err << "error: cannot write " << path << "\n";
    throw Failure{kExitInputError};
  }
}

std::size_t default_max_iterations(std::ostream& err) {
  SolverConfig defaults;
  const char* env = std::getenv("FDPLAN_MAX_ITERATIONS");
  if (env == nullptr || *env == '\0') return defaults.max_iterations;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (*end != '\0' || value == 0) {
    err << "warning: ignoring FDPLAN_MAX_ITERATIONS=" << env << "\n";
    return defaults.max_iterations;
  }
  return static_cast<std::size_t>(value);
}

const std::map<std::string, Semantics> kSemantics{{"monotone", Semantics::monotone},
                                                  {"consume", Semantics::consume}};

struct DecomposeOptions {
  std::string problem;
  std::string domain = kBuiltinDomain;
  Semantics semantics = Semantics::monotone;
  std::size_t max_iterations = 0;
  std::string format = "text";
  std::string out = "-";
  bool show_dummies = false;
  bool no_reuse = false;
};

int decompose(const DecomposeOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  if (o.problem == "-" && o.domain == "-") {
    err << "error: --problem and --domain cannot both read stdin\n";
    return kExitInputError;
  }
  const FunctionCatalog catalog = load_domain(o.domain, in, err);
  const Problem problem = load_problem(o.problem, catalog, in, err);
  SolverConfig config;
  config.semantics = o.semantics;
  config.max_iterations = o.max_iterations;
  config.reuse_existing_steps = !o.no_reuse;
  const SolveResult result = solve(problem, catalog, config);
  switch (result.status) {
    case SolveStatus::unsolvable:
      err << "unsolvable: no decomposition reaches the goal (" << result.iterations
          << " iterations)\n";
      return kExitUnsolvable;
    case SolveStatus::resource_exhausted:
      err << "resource exhausted: no decomposition within " << config.max_iterations
          << " iterations\n";
      return kExitResourceExhausted;
    case SolveStatus::solved:
      break;
  }
  std::string text;
  if (o.format == "json") {
    text = plan_to_json(*result.plan);
  } else if (o.format == "dot") {
    text = plan_to_dot(*result.plan, o.show_dummies);
  } else {
    text = plan_to_text(*result.plan);
  }
  write_output(o.out, text, out, err);
  return kExitOk;
}

struct ValidateOptions {
  std::string plan;
  std::string problem;
  std::string domain = kBuiltinDomain;
  Semantics semantics = Semantics::monotone;
  bool exhaustive = false;
  std::string format = "text";
};

int validate(const ValidateOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const FunctionCatalog catalog = load_domain(o.domain, in, err);
  const Problem problem = load_problem(o.problem, catalog, in, err);
  PlanDocument doc;
  try {
    doc = plan_from_json(read_input(o.plan, in), problem, catalog, o.semantics);
  } catch (const ParseError& e) {
    err << display_name(o.plan) << ":" << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << display_name(o.plan) << ": error: " << e.what() << "\n";
    return kExitInputError;
  }
  const PartialPlan& plan = doc.plan;

  nlohmann::json report;
  std::ostringstream text;
  bool ok = false;
  if (o.exhaustive) {
    const PlanVerdict v = validate_partial(plan, problem, o.semantics);
    ok = v.ok;
    report["mode"] = v.mode == ValidationMode::exhaustive ? "exhaustive" : "structural";
    report["problems"] = v.problems;
    if (v.mode == ValidationMode::exhaustive) {
      report["extensions"] = {{"checked", v.extensions_checked}, {"passed", v.extensions_passed}};
      text << v.extensions_passed << "/" << v.extensions_checked << " extensions pass\n";
      if (v.failure) {
        std::vector<std::string> labels;
        for (StepId id : v.counterexample) labels.push_back(plan.step(id).label());
        report["counterexample"] = v.counterexample;
        report["failure"] = v.failure->describe();
        text << "counterexample:";
        for (const std::string& l : labels) text << " " << l;
        text << "\n  " << v.failure->describe() << "\n";
      }
    } else {
      text << "plan has more than " << kExhaustiveLimit
           << " steps; checked causal-link structure only\n";
      for (const std::string& p : v.problems) text << "  " << p << "\n";
    }
  } else {
    std::vector<StepId> order = doc.linear.empty() ? linearize(plan) : doc.linear;
    std::vector<std::string> problems = check_structure(plan, problem);
    std::vector<bool> seen(plan.steps.size(), false);
    std::vector<GroundAction> sequence;
    bool order_ok = order.size() == plan.steps.size();
    for (std::size_t i = 0; i < order.size() && order_ok; ++i) {
      if (order[i] >= plan.steps.size() || seen[order[i]]) {
        order_ok = false;
        break;
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (plan.ordering.precedes(order[i], order[j])) order_ok = false;
      }
      seen[order[i]] = true;
      if (!plan.step(order[i]).is_dummy()) sequence.push_back(*plan.step(order[i]).action);
    }
    if (!order_ok) problems.push_back("linear order is not a linear extension of the ordering");
    const ExecutionTrace trace = execute(problem, sequence, o.semantics);
    ok = trace.ok() && problems.empty();
    report["mode"] = "sequential";
    report["problems"] = problems;
    report["execution"] = trace.describe();
    if (!trace.ok() && trace.verdict == Verdict::precondition_failed) {
      report["failedAt"] = {{"step", trace.failed_step},
                            {"action", sequence[trace.failed_step - 1].label()},
                            {"missing", trace.missing->str()}};
      text << "failed at step " << trace.failed_step << " "
           << sequence[trace.failed_step - 1].label() << ": missing precondition "
           << trace.missing->str() << "\n";
    } else {
      text << trace.describe() << "\n";
    }
    for (const std::string& p : problems) text << "  " << p << "\n";
  }
  report["verdict"] = ok ? "goal-satisfied" : "failed";
  text << (ok ? "verdict: goal-satisfied\n" : "verdict: failed\n");
  out << (o.format == "json" ? report.dump(2) + "\n" : text.str());
  return ok ? kExitOk : kExitInputError;
}

std::string join_literals(const std::vector<Literal>& literals) {
  std::string out;
  for (const Literal& l : literals) out += (out.empty() ? "" : " ") + l.str();
  return out.empty() ? "-" : out;
}

std::string join_atoms(const std::vector<Atom>& atoms) {
  std::string out;
  for (const Atom& a : atoms) out += (out.empty() ? "" : " ") + a.str();
  return out.empty() ? "-" : out;
}

int catalog_list(const std::string& domain, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  const FunctionCatalog catalog = load_domain(domain, in, err);
  for (const ActionSchema& s : catalog.schemas) {
    out << s.name << "(";
    for (std::size_t i = 0; i < s.parameters.size(); ++i) {
      out << (i ? ", " : "") << s.parameters[i].variable << " - "
          << to_string(s.parameters[i].entity_class);
    }
    out << ")\tpre: " << join_literals(s.precondition) << "\tadd: " << join_atoms(s.add);
    if (!s.del.empty()) out << "\tdel: " << join_atoms(s.del);
    out << "\n";
  }
  return kExitOk;
}

int catalog_check(const std::string& path, std::istream& in, std::ostream& out,
                  std::ostream& err) {
  const FunctionCatalog catalog = load_domain(path, in, err);
  out << display_name(path) << ": ok, " << catalog.size() << " schemas\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Functional decomposition by partial-order planning over Roth functions",
               "fdplan"};
  app.require_subcommand(1);

  DecomposeOptions dec;
  dec.max_iterations = default_max_iterations(err);
  auto* decompose_cmd = app.add_subcommand("decompose", "Solve a decomposition problem");
  decompose_cmd->add_option("--problem", dec.problem, "Problem file (PDDL) or - for stdin")
      ->required();
  decompose_cmd->add_option("--domain", dec.domain,
                            "builtin:roth, a PDDL domain, a JSON catalog, or - for stdin")
      ->capture_default_str();
  decompose_cmd
      ->add_option_function<std::string>(
          "--semantics", [&dec](const std::string& v) { dec.semantics = kSemantics.at(v); },
          "monotone (default) or consume")
      ->check(CLI::IsMember({"monotone", "consume"}));
  decompose_cmd->add_option("--max-iterations", dec.max_iterations, "Search iteration cap")
      ->check(CLI::PositiveNumber);
  decompose_cmd->add_option("--format", dec.format, "text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  decompose_cmd->add_option("--out", dec.out, "Output file or - for stdout")->capture_default_str();
  decompose_cmd->add_flag("--show-dummies", dec.show_dummies, "Include start/finish in DOT output");
  decompose_cmd->add_flag("--no-reuse", dec.no_reuse, "Always add fresh steps for open goals");

  ValidateOptions val;
  auto* validate_cmd = app.add_subcommand("validate", "Check a plan document against a problem");
  validate_cmd->add_option("--plan", val.plan, "Plan JSON file")->required();
  validate_cmd->add_option("--problem", val.problem, "Problem file (PDDL)")->required();
  validate_cmd->add_option("--domain", val.domain, "Domain used to resolve step names")
      ->capture_default_str();
  validate_cmd
      ->add_option_function<std::string>(
          "--semantics", [&val](const std::string& v) { val.semantics = kSemantics.at(v); },
          "monotone (default) or consume")
      ->check(CLI::IsMember({"monotone", "consume"}));
  validate_cmd->add_flag("--exhaustive", val.exhaustive,
                         "Execute every linear extension of the ordering");
  validate_cmd->add_option("--format", val.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string catalog_domain = kBuiltinDomain;
  std::string catalog_out = "-";
  std::string check_path;
  auto* catalog_cmd = app.add_subcommand("catalog", "Inspect or export the function catalog");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "One row per function");
  auto* emit_cmd = catalog_cmd->add_subcommand("emit-pddl", "Write the catalog as a PDDL domain");
  auto* json_cmd = catalog_cmd->add_subcommand("emit-json", "Write the catalog as a JSON file");
  auto* check_cmd = catalog_cmd->add_subcommand("check", "Validate a catalog file");
  for (auto* cmd : {list_cmd, emit_cmd, json_cmd}) {
    cmd->add_option("--domain", catalog_domain, "Catalog source")->capture_default_str();
  }
  for (auto* cmd : {emit_cmd, json_cmd}) {
    cmd->add_option("--out", catalog_out, "Output file or - for stdout")->capture_default_str();
  }
  check_cmd->add_option("file", check_path, "Catalog (JSON or PDDL domain)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*decompose_cmd) return decompose(dec, in, out, err);
    if (*validate_cmd) return validate(val, in, out, err);
    if (*list_cmd) return catalog_list(catalog_domain, in, out, err);
    if (*emit_cmd) {
      write_output(catalog_out, emit_domain(load_domain(catalog_domain, in, err)), out, err);
      return kExitOk;
    }
    if (*json_cmd) {
      write_output(catalog_out, save_catalog(load_domain(catalog_domain, in, err)), out, err);
      return kExitOk;
    }
    if (*check_cmd) return catalog_check(check_path, in, out, err);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace fdplan::cli
