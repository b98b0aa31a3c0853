/*
 * Copyright (c) 2026, The paxos-hist Authors
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

// paxos-hist: exhaustive checking, inductiveness checking, random simulation
// and scripted scenarios for history-variable Paxos specifications.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "paxos_hist/explorer.hpp"
#include "paxos_hist/io.hpp"
#include "paxos_hist/simulator.hpp"

namespace {

using namespace paxos_hist;

constexpr int kExitClean = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string variant;
  std::optional<int> acceptors, proposers, ballots, values, slots, max_new;
  std::string depth;
  std::string quorums;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps;
  std::string format;
  std::string out;
  std::string scope_file;
  std::optional<std::size_t> state_cap;
  std::optional<int> workers;
  std::string scenario;
};

void add_scope_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--variant", f.variant, "basic | basic-unsafe-2a | multi | multi-preempt");
  cmd->add_option("--acceptors", f.acceptors, "number of acceptors");
  cmd->add_option("--proposers", f.proposers, "number of proposers (multi)");
  cmd->add_option("--ballots", f.ballots, "ballots 0..N-1");
  cmd->add_option("--values", f.values, "values v1..vN");
  cmd->add_option("--slots", f.slots, "slots 0..N-1 (multi)");
  cmd->add_option("--max-new", f.max_new, "new decrees per 2a (multi)");
  cmd->add_option("--depth", f.depth, "N | unlimited");
  cmd->add_option("--quorums", f.quorums, "majority | FILE with a JSON list of acceptor lists");
  cmd->add_option("--scope", f.scope_file, "JSON scope file; flags override its fields");
  cmd->add_option("--state-cap", f.state_cap, "stop after this many distinct states");
}

void add_output_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "human | json-lines")
      ->check(CLI::IsMember({"human", "json-lines"}));
  cmd->add_option("--out", f.out, "output file (default: standard output)");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Run settings a scope file may also carry.
const std::vector<std::string> kRunKeys{"seed", "steps", "format", "out", "workers"};

void apply_file_run_settings(const Json& j, Flags& f) {
  try {
    if (j.contains("seed") && !f.seed) f.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("steps") && !f.steps) f.steps = j["steps"].get<std::size_t>();
    if (j.contains("format") && f.format.empty()) f.format = j["format"].get<std::string>();
    if (j.contains("out") && f.out.empty()) f.out = j["out"].get<std::string>();
    if (j.contains("workers") && !f.workers) f.workers = j["workers"].get<int>();
  } catch (const Json::exception& e) {
    throw UsageError(std::string("scope file: ") + e.what());
  }
  if (!f.format.empty() && f.format != "human" && f.format != "json-lines") {
    throw UsageError("format must be human or json-lines");
  }
}

std::optional<std::size_t> env_state_cap() {
  const char* env = std::getenv("PAXOS_HIST_STATE_CAP");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(env, &end, 10);
  if (*end != '\0' || n == 0) throw UsageError("PAXOS_HIST_STATE_CAP must be a positive integer");
  return static_cast<std::size_t>(n);
}

Scope resolve_scope(Flags& f) {
  ScopeSpec spec;
  if (!f.scope_file.empty()) {
    const Json j = read_json_file(f.scope_file);
    spec = scope_spec_from_json(j, kRunKeys);
    apply_file_run_settings(j, f);
  }
  if (!spec.state_cap) spec.state_cap = env_state_cap();
  ScopeSpec over;
  if (!f.variant.empty()) {
    over.variant = parse_variant(f.variant);
    if (!over.variant) throw UsageError("unknown variant: " + f.variant);
  }
  over.acceptors = f.acceptors;
  over.proposers = f.proposers;
  over.ballots = f.ballots;
  if (f.values) {
    if (*f.values < 0) throw UsageError("values must be >= 1");
    over.values = default_value_domain(*f.values);
  }
  over.slots = f.slots;
  over.max_new = f.max_new;
  if (!f.depth.empty()) {
    if (f.depth == "unlimited") {
      over.depth = std::optional<int>{};
    } else {
      try {
        std::size_t used = 0;
        const int d = std::stoi(f.depth, &used);
        if (used != f.depth.size()) throw std::invalid_argument("depth");
        over.depth = std::optional<int>{d};
      } catch (const std::logic_error&) {
        throw UsageError("depth must be a number or unlimited");
      }
    }
  }
  if (!f.quorums.empty()) {
    over.quorums = f.quorums == "majority" ? std::vector<Quorum>{}
                                           : parse_quorums(read_json_file(f.quorums));
  }
  over.state_cap = f.state_cap;
  spec.merge(over);
  return build_scope(spec);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int report_exit(const ExplorationReport& r) {
  if (!r.clean()) return kExitViolation;
  if (!r.complete) return kExitCap;
  return kExitClean;
}

int run_check(Flags& f, bool inductive) {
  const Scope scope = resolve_scope(f);
  ExploreOptions opts;
  opts.inductive = inductive;
  if (f.workers) opts.workers = *f.workers;
  const ExplorationReport r = explore(scope, opts);
  Output out(f.out);
  if (f.format == "json-lines") {
    write_json_lines(out.stream(), r);
  } else {
    write_human(out.stream(), r);
  }
  return report_exit(r);
}

int emit_run(Flags& f, const RunRecord& run) {
  Output out(f.out);
  if (f.format == "json-lines") {
    write_json_lines(out.stream(), run);
  } else {
    write_human(out.stream(), run);
  }
  if (run.disabled) {
    std::cerr << "step " << run.disabled->step + 1 << " (" << to_string(run.disabled->kind)
              << ") not enabled: guard " << run.disabled->failure.guard << " fails\n";
  }
  return run.clean() ? kExitClean : kExitViolation;
}

int run_simulate(Flags& f) {
  const Scope scope = resolve_scope(f);
  return emit_run(f, simulate(scope, f.seed.value_or(0), f.steps.value_or(100)));
}

int run_scenario_cmd(Flags& f) {
  if (!f.variant.empty() || f.slots || f.proposers || f.max_new || !f.quorums.empty() ||
      !f.scope_file.empty()) {
    throw UsageError("scenario accepts only --acceptors, --ballots and --values as scope overrides");
  }
  ScenarioOverrides o;
  o.acceptors = f.acceptors;
  o.ballots = f.ballots;
  o.values = f.values;
  return emit_run(f, run_scenario(f.scenario, o));
}

int run_validate(Flags& f) {
  const Scope scope = resolve_scope(f);
  Output out(f.out);
  if (f.format == "json-lines") {
    out.stream() << Json{{"status", "valid"}, {"scope", scope_to_json(scope)}}.dump() << '\n';
  } else {
    out.stream() << "scope is valid: " << scope_to_json(scope).dump() << '\n';
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit-state checker and simulator for history-variable Paxos"};
  app.require_subcommand(1);
  Flags f;

  auto* check = app.add_subcommand("check", "explore every reachable state and check invariants");
  auto* induct = app.add_subcommand("induct", "check Init => Inv and Inv preservation per transition");
  auto* sim = app.add_subcommand("simulate", "seeded random run");
  auto* scen = app.add_subcommand("scenario", "run a scripted scenario");
  auto* validate = app.add_subcommand("validate-scope", "check a scope and print it");
  for (auto* cmd : {check, induct, sim, validate}) add_scope_flags(cmd, f);
  for (auto* cmd : {check, induct, sim, scen, validate}) add_output_flags(cmd, f);
  for (auto* cmd : {check, induct}) cmd->add_option("--workers", f.workers, "worker threads");
  sim->add_option("--seed", f.seed, "PRNG seed");
  sim->add_option("--steps", f.steps, "maximum number of steps");
  std::string names;
  for (const auto& n : scenario_names()) names += (names.empty() ? "" : " | ") + n;
  scen->add_option("name", f.scenario, names)->required();
  scen->add_option("--acceptors", f.acceptors, "number of acceptors (at least 3)");
  scen->add_option("--ballots", f.ballots, "ballots 0..N-1");
  scen->add_option("--values", f.values, "values v1..vN");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "paxos-hist: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*check) return run_check(f, false);
    if (*induct) return run_check(f, true);
    if (*sim) return run_simulate(f);
    if (*scen) return run_scenario_cmd(f);
    if (*validate) return run_validate(f);
  } catch (const UsageError& e) {
    std::cerr << "paxos-hist: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ScopeError& e) {
    std::cerr << "paxos-hist: invalid scope: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "paxos-hist: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnknownScenario& e) {
    std::cerr << "paxos-hist: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
