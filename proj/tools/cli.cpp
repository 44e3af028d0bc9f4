/*
 * Copyright 2026 The negsolve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "negsolve/negsolve.hpp"

namespace negsolve::cli {

namespace {

using nlohmann::json;

/// Thrown for bad flag combinations detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the fast solver is asked to run outside its preconditions.
struct RefusedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json };

struct Common {
  std::string format = "text";
  std::string output;
  std::optional<std::size_t> budget;

  Format fmt() const { return format == "json" ? Format::Json : Format::Text; }
};

std::size_t state_budget(const Common& common) {
  if (common.budget) return *common.budget;
  if (const char* env = std::getenv("NEGSOLVE_STATE_BUDGET"); env && *env) {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(env, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != std::string_view(env).size() || value == 0) {
      throw UsageError("NEGSOLVE_STATE_BUDGET must be a positive integer");
    }
    return static_cast<std::size_t>(value);
  }
  return kDefaultStateBudget;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> atom_names(const Negotiation& neg, const std::vector<AtomIdx>& atoms) {
  std::vector<std::string> out;
  for (AtomIdx n : atoms) out.push_back(neg.atom_name(n));
  return out;
}

std::set<std::string> split_list(const std::string& text) {
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.insert(item);
  }
  return out;
}

void emit(const Common& common, const std::string& text, std::ostream& out) {
  if (common.output.empty()) {
    out << text;
  } else {
    write_file(common.output, text);
  }
}

json classification_json(const Negotiation& neg, const Classification& c) {
  std::vector<std::string> det;
  for (AgentIdx a = 0; a < neg.agent_count(); ++a) {
    if (c.deterministic_agents[a]) det.push_back(neg.agent_name(a));
  }
  return {{"deterministic", c.deterministic},
          {"weakly_deterministic", c.weakly_deterministic},
          {"wd2", c.wd2},
          {"deterministic_agents", det}};
}

json soundness_json(const Negotiation& neg, const SoundnessVerdict& v) {
  return {{"sound", v.sound},
          {"dead_atoms", atom_names(neg, v.dead_atoms)},
          {"markings", v.markings}};
}

json witness_json(const Negotiation& neg, const SoundnessVerdict& v) {
  if (!v.witness) return nullptr;
  return witness_string(neg, *v.witness);
}

void write_classification(std::ostream& os, const Negotiation& neg, const Classification& c) {
  std::vector<std::string> det;
  for (AgentIdx a = 0; a < neg.agent_count(); ++a) {
    if (c.deterministic_agents[a]) det.push_back(neg.agent_name(a));
  }
  os << "deterministic: " << yes_no(c.deterministic) << '\n'
     << "weakly deterministic: " << yes_no(c.weakly_deterministic) << '\n'
     << "wd2: " << yes_no(c.wd2) << '\n'
     << "deterministic agents: " << (det.empty() ? "-" : join(det, " ")) << '\n';
}

void write_soundness(std::ostream& os, const Negotiation& neg, const SoundnessVerdict& v) {
  os << "sound: " << yes_no(v.sound) << '\n'
     << "reachable markings: " << v.markings << '\n'
     << "dead atoms: "
     << (v.dead_atoms.empty() ? "-" : join(atom_names(neg, v.dead_atoms), " ")) << '\n';
  if (v.witness) os << "witness: " << witness_string(neg, *v.witness) << '\n';
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  Common common;
  std::string input;
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
  const Negotiation neg = load_negotiation(read_file(args.input));
  const Classification c = classify(neg);
  const SoundnessVerdict v = check_soundness(neg, state_budget(args.common));
  std::ostringstream os;
  if (args.common.fmt() == Format::Json) {
    json j{{"negotiation", neg.name()},
           {"classification", classification_json(neg, c)},
           {"soundness", soundness_json(neg, v)},
           {"witness", witness_json(neg, v)}};
    os << j.dump(2) << '\n';
  } else {
    os << "negotiation: " << neg.name() << '\n'
       << "agents: " << neg.agent_count() << ", atoms: " << neg.atom_count() << '\n';
    write_classification(os, neg, c);
    write_soundness(os, neg, v);
  }
  emit(args.common, os.str(), out);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  Common common;
  std::string input;
  std::string game = "termination";
  std::string coalition;
  bool use_owners = false;
  std::string goals;
  std::string solver = "auto";
  std::size_t move_budget = kDefaultMoveBudget;
};

json strategy_table_json(const Negotiation& neg, const std::vector<std::optional<OutcomeIdx>>& t) {
  json j = json::object();
  for (AtomIdx n = 0; n < t.size(); ++n) {
    if (t[n]) j[neg.atom_name(n)] = neg.atom(n).outcomes[*t[n]];
  }
  return j;
}

void write_strategy_table(std::ostream& os, const std::string& title, const Negotiation& neg,
                          const std::vector<std::optional<OutcomeIdx>>& t) {
  os << title << ':';
  bool any = false;
  for (AtomIdx n = 0; n < t.size(); ++n) {
    if (!t[n]) continue;
    os << "\n  " << neg.atom_name(n) << " -> " << neg.atom(n).outcomes[*t[n]];
    any = true;
  }
  os << (any ? "\n" : " -\n");
}

[[noreturn]] void refuse(const std::string& why) {
  throw RefusedError("fast solver refused: " + why +
                     "; the attractor answer is only meaningful on sound arenas where every "
                     "atom has a deterministic party (use --solver general or auto)");
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  if (args.game != "termination" && args.game != "outcome") {
    throw UsageError("--game must be termination or outcome");
  }
  if (!args.coalition.empty() && args.use_owners) {
    throw UsageError("--coalition and --use-owners are mutually exclusive");
  }
  const bool outcome = args.game == "outcome";
  if (outcome && args.goals.empty()) throw UsageError("--game outcome requires --goals");
  if (!outcome && !args.goals.empty()) throw UsageError("--goals only applies to --game outcome");

  const std::size_t budget = state_budget(args.common);
  const NegotiationSpec spec = parse_negotiation(read_file(args.input));
  std::optional<std::set<std::string>> coalition;
  Arena arena = make_arena(spec);
  if (!args.coalition.empty()) {
    coalition = split_list(args.coalition);
    arena = coalition_arena(arena.negotiation, *coalition);
  }
  const Negotiation& neg = arena.negotiation;
  std::optional<OutcomeGoal> goals;
  if (outcome) goals = parse_goals(args.goals);

  const Classification c = classify(neg);
  const SoundnessVerdict v = check_soundness(neg, budget);

  std::string solver = args.solver;
  std::string reason;
  if (solver == "auto") {
    solver = c.wd2 && v.sound ? "fast" : "general";
    reason = c.wd2 ? (v.sound ? "wd2 and sound" : "unsound") : "not wd2";
  } else if (solver == "fast") {
    if (!c.wd2) refuse("the arena is not wd2");
    if (!v.sound) refuse("the arena is not sound");
  } else if (solver != "general") {
    throw UsageError("--solver must be fast, general or auto");
  }

  GameBuildOptions options;
  options.state_budget = budget;
  options.move_budget = args.move_budget;

  json j{{"game", args.game},
         {"solver", solver},
         {"classification", classification_json(neg, c)},
         {"soundness", soundness_json(neg, v)},
         {"witness", witness_json(neg, v)}};
  if (!reason.empty()) j["solver_reason"] = reason;
  std::ostringstream os;
  os << "game: " << args.game << '\n'
     << "solver: " << solver << (reason.empty() ? "" : " (auto: " + reason + ")") << '\n';

  if (solver == "fast") {
    std::optional<ConcludingFastResult> concluding;
    AttractorResult result;
    if (outcome) {
      concluding = solve_concluding_outcome_fast(arena, *goals, false, coalition, budget);
      result = concluding->attractor;
    } else {
      result = solve_termination_fast(arena, false, budget);
    }
    const Negotiation& played = outcome ? concluding->transformed.arena.negotiation : neg;
    json attractor = json::object();
    for (AtomIdx n : result.members()) attractor[played.atom_name(n)] = result.index[n];
    j["winner"] = to_int(result.winner);
    j["attractor"] = attractor;
    j["strategy1"] = strategy_table_json(played, result.strategy1);
    j["strategy2"] = strategy_table_json(played, result.strategy2);
    j["decrements"] = result.decrements;
    j["decrement_bound"] = result.decrement_bound;

    os << "winner: " << to_int(result.winner) << '\n';
    if (outcome) {
      std::vector<std::string> added;
      for (const auto& [agent, atom] : concluding->transformed.good) added.push_back(atom);
      for (const auto& [agent, atom] : concluding->transformed.bad) added.push_back(atom);
      os << "goal atoms: " << join(added, " ") << '\n';
    }
    os << "attractor:";
    for (AtomIdx n : result.members()) os << ' ' << played.atom_name(n) << '=' << result.index[n];
    os << '\n';
    write_strategy_table(os, "strategy1", played, result.strategy1);
    write_strategy_table(os, "strategy2", played, result.strategy2);
    os << "decrements: " << result.decrements << " (bound " << result.decrement_bound << ")\n";
  } else {
    const GeneralSolve gs = outcome ? solve_concluding_outcome_general(arena, *goals, options)
                                    : solve_termination_general(arena, options);
    const Negotiation& played = gs.game.arena.negotiation;
    json table = json::array();
    std::size_t choices = 0;
    for (std::size_t id = 0; id < gs.game.nodes.size(); ++id) {
      const GameNode& node = gs.game.nodes[id];
      if (node.kind != NodeKind::Pair || !gs.result.winning[id] || node.atoms1.empty()) continue;
      const auto code = gs.result.witness_f1[id];
      if (!code) continue;
      const auto picks = decode_assignment(played, node.atoms1, *code);
      json choice = json::object();
      for (std::size_t i = 0; i < picks.size(); ++i) {
        choice[played.atom_name(node.atoms1[i])] = played.atom(node.atoms1[i]).outcomes[picks[i]];
      }
      table.push_back({{"marking", gs.game.markings[node.marking].to_string(played)},
                       {"scheduled", atom_names(played, node.scheduled)},
                       {"choice", choice}});
      ++choices;
    }
    j["winner"] = to_int(gs.result.winner);
    j["attractor"] = nullptr;
    j["strategy1"] = table;
    j["strategy2"] = nullptr;
    j["winning_markings"] = gs.result.winning_markings;
    j["markings"] = gs.game.marking_count();
    j["pair_nodes"] = gs.game.pair_count();

    os << "winner: " << to_int(gs.result.winner) << '\n'
       << "winning markings: " << gs.result.winning_markings << " of "
       << gs.game.marking_count() << '\n'
       << "game nodes: " << gs.game.marking_count() << " markings, " << gs.game.pair_count()
       << " pairs, " << gs.game.transition_count() << " transitions\n"
       << "strategy1 choices: " << choices << '\n';
  }

  if (args.common.fmt() == Format::Json) {
    emit(args.common, j.dump(2) + "\n", out);
  } else {
    emit(args.common, os.str(), out);
  }
  (void)err;
  return kSuccess;
}

// ---------------------------------------------------------------------------
// reduce

struct ReduceArgs {
  Common common;
  std::string input;
  std::string variant;
};

int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& err) {
  const AlternatingTM tm = parse_atm(read_file(args.input));
  ReductionOutput red;
  if (args.variant == "basic") {
    red = reduce_atm_basic(tm);
  } else if (args.variant == "det") {
    red = reduce_atm_deterministic(tm);
  } else if (args.variant == "sound") {
    red = reduce_atm_sound(tm);
  } else {
    throw UsageError("--variant must be basic, det or sound");
  }
  const bool accepts = atm_accepts(tm);
  const std::string text = serialize_arena(red.arena);
  std::ostringstream summary;
  if (args.common.fmt() == Format::Json) {
    json j{{"variant", args.variant},
           {"atm_accepts", accepts},
           {"expected_winner", accepts ? 1 : 2},
           {"agents", red.arena.negotiation.agent_count()},
           {"atoms", red.arena.negotiation.atom_count()}};
    summary << j.dump(2) << '\n';
  } else {
    summary << "variant: " << args.variant << '\n'
            << "atm accepts: " << yes_no(accepts) << '\n'
            << "expected winner: " << (accepts ? 1 : 2) << '\n'
            << "agents: " << red.arena.negotiation.agent_count()
            << ", atoms: " << red.arena.negotiation.atom_count() << '\n';
  }
  if (args.common.output.empty()) {
    out << text;
    err << summary.str();
  } else {
    write_file(args.common.output, text);
    out << summary.str();
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  Common common;
  std::uint64_t seed = 0;
  GeneratorParams params;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  const GeneratedArena g = generate_random_arena(args.seed, args.params);
  const std::string text = serialize_arena(g.arena);
  std::ostringstream summary;
  const std::vector<std::string> coalition(g.coalition.begin(), g.coalition.end());
  if (args.common.fmt() == Format::Json) {
    json j{{"seed", args.seed},
           {"coalition", coalition},
           {"attempts", g.attempts},
           {"agents", g.arena.negotiation.agent_count()},
           {"atoms", g.arena.negotiation.atom_count()}};
    summary << j.dump(2) << '\n';
  } else {
    summary << "seed: " << args.seed << '\n'
            << "coalition: " << (coalition.empty() ? "-" : join(coalition, ",")) << '\n'
            << "attempts: " << g.attempts << '\n';
  }
  if (args.common.output.empty()) {
    out << text;
    err << summary.str();
  } else {
    write_file(args.common.output, text);
    out << summary.str();
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// dot

struct DotArgs {
  Common common;
  std::string input;
  bool reachability = false;
};

int cmd_dot(const DotArgs& args, std::ostream& out) {
  const Negotiation neg = load_negotiation(read_file(args.input));
  if (args.reachability) {
    emit(args.common, export_dot(neg, reachability_graph(neg, state_budget(args.common))), out);
  } else {
    emit(args.common, export_dot(neg), out);
  }
  return kSuccess;
}

void add_common(CLI::App* sub, Common& common, bool output = true) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  if (output) sub->add_option("-o,--output", common.output, "Output file");
  sub->add_option("--budget", common.budget, "Marking budget (overrides NEGSOLVE_STATE_BUDGET)")
      ->check(CLI::PositiveNumber);
}

std::string location(const std::string& file, const SourceSpan& span) {
  return file + ":" + to_string(span);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax:
    case ErrorCode::DuplicateTransition:
    case ErrorCode::UndeclaredIdentifier:
    case ErrorCode::TransitionFromHaltingState:
      return kParseError;
    case ErrorCode::StateBudgetExceeded:
    case ErrorCode::ConfigBudgetExceeded:
    case ErrorCode::GenerationBudgetExceeded:
    case ErrorCode::MoveBudgetExceeded:
      return kBudgetExceeded;
    case ErrorCode::InvalidArgument:
      return kUsage;
    default:
      return kValidationError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solve games on negotiations", "negsolve"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Classify a negotiation and decide soundness");
  c->add_option("file", check.input, "Negotiation (.ng)")->required();
  add_common(c, check.common);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Decide the winner of a game on an arena");
  s->add_option("file", solve.input, "Negotiation (.ng)")->required();
  s->add_option("--game", solve.game, "termination or outcome")
      ->check(CLI::IsMember({"termination", "outcome"}));
  s->add_option("--coalition", solve.coalition, "Comma-separated Player 1 agents");
  s->add_flag("--use-owners", solve.use_owners, "Use the owner lines of the file");
  s->add_option("--goals", solve.goals, "Goal sets, e.g. \"D1: n2.yes; D2: n2.no\"");
  s->add_option("--solver", solve.solver, "fast, general or auto")
      ->check(CLI::IsMember({"fast", "general", "auto"}));
  s->add_option("--move-budget", solve.move_budget, "Joint moves per game node")
      ->check(CLI::PositiveNumber);
  add_common(s, solve.common);

  ReduceArgs reduce;
  auto* r = app.add_subcommand("reduce", "Reduce an alternating Turing machine to an arena");
  r->add_option("file", reduce.input, "Machine (.atm)")->required();
  r->add_option("--variant", reduce.variant, "basic, det or sound")
      ->required()
      ->check(CLI::IsMember({"basic", "det", "sound"}));
  add_common(r, reduce.common);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random sound arena");
  g->add_option("--seed", gen.seed, "Random seed")->required();
  g->add_option("--agents", gen.params.agents, "Deterministic agents")->check(CLI::Range(1, 64));
  g->add_option("--atoms", gen.params.max_atoms, "Maximum atoms, including n0 and nf")
      ->check(CLI::Range(2, 4096));
  g->add_option("--outcomes", gen.params.max_outcomes, "Maximum outcomes per atom")
      ->check(CLI::Range(1, 16));
  g->add_option("--nondet-agents", gen.params.nondet_agents, "Always-ready extra agents")
      ->check(CLI::Range(0, 16));
  add_common(g, gen.common);

  DotArgs dot;
  auto* d = app.add_subcommand("dot", "Export Graphviz text");
  d->add_option("file", dot.input, "Negotiation (.ng)")->required();
  d->add_flag("--reachability", dot.reachability, "Export the reachability graph instead");
  add_common(d, dot.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::string input;
  for (const auto* sub : app.get_subcommands()) {
    if (sub->get_name() == "check") input = check.input;
    if (sub->get_name() == "solve") input = solve.input;
    if (sub->get_name() == "reduce") input = reduce.input;
    if (sub->get_name() == "dot") input = dot.input;
  }

  try {
    if (*c) return cmd_check(check, out);
    if (*s) return cmd_solve(solve, out, err);
    if (*r) return cmd_reduce(reduce, out, err);
    if (*g) return cmd_gen(gen, out, err);
    if (*d) return cmd_dot(dot, out);
  } catch (const UsageError& e) {
    err << "negsolve: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const RefusedError& e) {
    err << "negsolve: " << e.what() << '\n';
    return kValidationError;
  } catch (const ParseError& e) {
    err << "negsolve: " << input << ':' << e.what() << " [" << to_string(e.code()) << "]\n";
    return exit_code_for(e.code());
  } catch (const ValidationError& e) {
    err << "negsolve: " << input << ": invalid negotiation\n";
    for (const auto& issue : e.issues()) {
      err << "  ";
      if (issue.span.line > 0) err << location(input, issue.span) << ": ";
      err << to_string(issue.kind) << ": " << issue.message << '\n';
    }
    return kValidationError;
  } catch (const Error& e) {
    err << "negsolve: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace negsolve::cli
