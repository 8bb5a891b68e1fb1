#include "abc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "abc/checker.hpp"
#include "abc/explorer.hpp"
#include "abc/hash.hpp"
#include "abc/parser.hpp"
#include "abc/printer.hpp"
#include "abc/simulator.hpp"

namespace abc {

namespace {

struct Loaded {
  std::string source;
  SystemSpec spec;
};

// Reads and validates a spec file, reporting diagnostics on `err`.
std::optional<Loaded> load(const std::string& path, std::ostream& err, bool color) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": error: cannot open file\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  Loaded l{buf.str(), {}};
  ParseResult r = parseSpec(l.source);
  for (const auto& d : r.diagnostics) err << renderDiagnostic(d, path, color) << '\n';
  if (!r.ok()) return std::nullopt;
  l.spec = std::move(r.spec);
  return l;
}

std::string describe(const BroadcastEvent& ev, const std::vector<std::string>& names) {
  std::string s = names[ev.sender] + " sends (";
  for (std::size_t i = 0; i < ev.message.size(); ++i) s += (i ? ", " : "") + ev.message[i].toString();
  s += ")@(" + toText(ev.predicate) + "), received by";
  if (ev.receivers.empty()) s += " nobody";
  for (const auto& r : ev.receivers) s += " " + names[r.component];
  return s;
}

void printPath(const Model& model, const Exploration& ex, const Verdict& v, std::ostream& out) {
  for (std::size_t i = 0; i < v.path.size(); ++i) {
    if (v.loopStart && *v.loopStart == i) out << "    -- cycle --\n";
    const Edge& e = ex.lts.edges[v.path[i]];
    out << "    " << (i + 1) << ". " << describe(eventOf(model, ex, e), model.componentNames()) << '\n';
  }
  if (v.loopStart) out << "    -- back to step " << (*v.loopStart + 1) << " --\n";
}

int cmdParse(const std::string& file, bool print, std::ostream& out, std::ostream& err, bool color) {
  auto loaded = load(file, err, color);
  if (!loaded) return kExitInvalid;
  if (print) {
    out << prettyPrint(loaded->spec);
  } else {
    const SystemSpec& s = loaded->spec;
    out << file << ": ok (" << s.components.size() << " components, " << s.procs.size() << " processes, "
        << s.properties.size() << " properties)\n";
  }
  return kExitOk;
}

int cmdRun(const std::string& file, std::uint64_t seed, std::size_t maxSteps, const std::string& format,
           std::ostream& out, std::ostream& err, bool color) {
  auto loaded = load(file, err, color);
  if (!loaded) return kExitInvalid;
  Model model(std::move(loaded->spec));
  Trace trace = simulate(model, hashString(loaded->source), seed, maxSteps);
  out << (format == "text" ? traceToText(trace) : traceToJson(trace));
  if (trace.termination == Termination::Error) {
    err << file << ":" << trace.errorSpan.line << ":" << trace.errorSpan.column << ": error: " << trace.error
        << '\n';
    return kExitEvalError;
  }
  return kExitOk;
}

int cmdExplore(const std::string& file, const ExploreLimits& limits, const std::string& exportPath,
               std::ostream& out, std::ostream& err, bool color) {
  auto loaded = load(file, err, color);
  if (!loaded) return kExitInvalid;
  Model model(std::move(loaded->spec));
  Exploration ex;
  try {
    ex = explore(model, limits);
  } catch (const EvalError& e) {
    err << file << ":" << e.span().line << ":" << e.span().column << ": error: " << e.what() << '\n';
    return kExitEvalError;
  }
  out << "states: " << ex.lts.stateCount() << '\n' << "transitions: " << ex.lts.edges.size() << '\n';
  if (!exportPath.empty()) {
    std::ofstream f(exportPath, std::ios::binary);
    if (!f) {
      err << exportPath << ": error: cannot write file\n";
      return kExitInvalid;
    }
    exportLts(ex.lts, f);
  }
  if (ex.lts.truncated) {
    out << "truncated: resource limit reached\n";
    return kExitUnknown;
  }
  return kExitOk;
}

int cmdCheck(const std::string& file, const std::string& property, bool all, const ExploreLimits& limits,
             std::ostream& out, std::ostream& err, bool color) {
  auto loaded = load(file, err, color);
  if (!loaded) return kExitInvalid;
  std::vector<const PropertyDecl*> selected;
  if (all) {
    for (const auto& p : loaded->spec.properties) selected.push_back(&p);
  } else if (const PropertyDecl* p = loaded->spec.findProperty(property)) {
    selected.push_back(p);
  } else {
    err << file << ": error: no property named '" << property << "'\n";
    return kExitInvalid;
  }
  Model model(loaded->spec);
  Exploration ex;
  try {
    ex = explore(model, limits);
  } catch (const EvalError& e) {
    err << file << ":" << e.span().line << ":" << e.span().column << ": error: " << e.what() << '\n';
    return kExitEvalError;
  }
  out << "explored " << ex.lts.stateCount() << " states, " << ex.lts.edges.size() << " transitions"
      << (ex.lts.truncated ? " (truncated)" : "") << '\n';
  bool failed = false, unknown = false;
  for (const PropertyDecl* p : selected) {
    Verdict v = checkProperty(ex, *p);
    out << p->name << ": " << verdictText(v.result);
    if (!v.note.empty()) out << " (" << v.note << ")";
    out << '\n';
    if (v.result == VerdictResult::Fails) {
      failed = true;
      if (!v.path.empty()) {
        out << "  counterexample:\n";
        printPath(model, ex, v, out);
      }
    } else if (v.result == VerdictResult::Holds && !v.path.empty()) {
      out << "  witness:\n";
      printPath(model, ex, v, out);
    } else if (v.result == VerdictResult::Unknown) {
      unknown = true;
    }
  }
  if (failed) return kExitFails;
  return unknown ? kExitUnknown : kExitOk;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  CLI::App app{"AbC specification tool: parse, simulate, explore and check"};
  app.name(args.empty() ? "abc" : args.front());
  app.require_subcommand(1);

  std::string file;
  bool print = false;
  auto* parse = app.add_subcommand("parse", "Parse and validate a specification");
  parse->add_option("file", file, "Specification file")->required();
  parse->add_flag("--print", print, "Print the specification in canonical layout");

  std::uint64_t seed = 0;
  std::size_t maxSteps = 1000;
  std::string format = "json";
  auto* run = app.add_subcommand("run", "Simulate one random execution");
  run->add_option("file", file, "Specification file")->required();
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--max-steps", maxSteps, "Step limit");
  run->add_option("--format", format, "Trace format")->check(CLI::IsMember({"json", "text"}));

  ExploreLimits limits;
  std::string exportPath;
  auto addLimits = [&](CLI::App* cmd) {
    cmd->add_option("--max-states", limits.maxStates, "Maximum number of stored states");
    cmd->add_option("--max-depth", limits.maxDepth, "Maximum BFS depth");
    cmd->add_option("--workers", limits.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  };
  auto* exploreCmd = app.add_subcommand("explore", "Build the state space");
  exploreCmd->add_option("file", file, "Specification file")->required();
  addLimits(exploreCmd);
  exploreCmd->add_option("--export-lts", exportPath, "Write the LTS to this file");

  std::string property;
  bool all = false;
  auto* check = app.add_subcommand("check", "Verify properties");
  check->add_option("file", file, "Specification file")->required();
  auto* propOpt = check->add_option("--property", property, "Property name");
  auto* allOpt = check->add_flag("--all", all, "Check every property");
  propOpt->excludes(allOpt);
  addLimits(check);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
    if (*check && property.empty() && !all) throw CLI::RequiredError("--property or --all");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitInvalid;
  }

  if (*parse) return cmdParse(file, print, out, err, color);
  if (*run) return cmdRun(file, seed, maxSteps, format, out, err, color);
  if (*exploreCmd) return cmdExplore(file, limits, exportPath, out, err, color);
  return cmdCheck(file, property, all, limits, out, err, color);
}

}  // namespace abc
