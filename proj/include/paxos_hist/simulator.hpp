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

#ifndef PAXOS_HIST_SIMULATOR_HPP_
#define PAXOS_HIST_SIMULATOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paxos_hist/action.hpp"
#include "paxos_hist/invariants.hpp"
#include "paxos_hist/protocol.hpp"
#include "paxos_hist/scope.hpp"

namespace paxos_hist {

/// A scripted step that was not enabled.
struct DisabledStep {
  std::size_t step = 0;  // zero-based
  ActionKind kind = ActionKind::Phase1a;
  GuardFailure failure;
};

struct RunRecord {
  Scope scope;
  std::uint64_t seed = 0;
  std::string scenario;  // empty for random runs
  std::vector<ActionInstance> trace;
  SentState final_state;
  /// Chosen (slot, value) pairs in the final state. Basic runs use slot -1.
  std::vector<Decree> chosen;
  /// TypeOK and Agree on the final state.
  std::vector<CheckResult> checks;
  bool halted_on_failure = false;  // an online check failed
  bool deadlocked = false;         // stopped because nothing was enabled
  std::optional<DisabledStep> disabled;

  std::size_t steps() const { return trace.size(); }
  bool clean() const { return !halted_on_failure && !disabled; }
};

struct SimulateOptions {
  /// Per-kind sampling weights; unlisted kinds weigh 1. Empty means uniform
  /// over enabled instances, as does a step where every enabled weight is 0.
  std::map<ActionKind, double> kind_weights;
};

/// Random run from the empty state. Each step picks one of successors(s)
/// using a std::mt19937_64 seeded with `seed`; indices are drawn by
/// rejection sampling so the sequence does not depend on the standard
/// library's distributions. TypeOK and Agree are checked after every step
/// and the run halts on the first failure.
RunRecord simulate(const Scope& scope, std::uint64_t seed, std::size_t max_steps,
                   const SimulateOptions& options = {});

struct ScenarioOverrides {
  std::optional<int> acceptors;
  std::optional<int> ballots;
  std::optional<int> values;
};

class UnknownScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> scenario_names();

/// The scope a scenario runs in after overrides.
Scope scenario_scope(const std::string& name, const ScenarioOverrides& overrides = {});

/// The scenario's scripted actions, parameters only (deltas empty).
std::vector<ActionInstance> scenario_script(const std::string& name,
                                            const ScenarioOverrides& overrides = {});

/// Replays the script step by step. A disabled step stops the run and is
/// recorded in RunRecord::disabled. Steps adding nothing are kept.
RunRecord run_scenario(const std::string& name, const ScenarioOverrides& overrides = {});

/// Chosen (slot, value) pairs of a state.
std::vector<Decree> chosen_values(const SentState& s, const Scope& scope);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_SIMULATOR_HPP_
