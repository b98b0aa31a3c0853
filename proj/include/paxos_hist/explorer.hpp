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

#ifndef PAXOS_HIST_EXPLORER_HPP_
#define PAXOS_HIST_EXPLORER_HPP_

#include <chrono>
#include <cstddef>
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

/// A failed check together with the shortest known path to it.
struct Violation {
  CheckResult check;
  SentState state;
  std::vector<ActionInstance> trace;  // from the empty state; replays to `state`
};

/// First transition whose source satisfies Inv and whose target does not.
struct InductiveBreak {
  std::vector<std::string> broken;  // Inv conjuncts false in the target
  SentState source;
  SentState target;
  std::vector<ActionInstance> trace;  // ends with the breaking action
};

struct ExplorationReport {
  Scope scope;
  std::size_t states_visited = 0;
  std::size_t transitions = 0;
  std::size_t max_depth_reached = 0;
  std::size_t terminal_states = 0;  // states with no successors
  /// Canonical encodings of those states, in discovery order; filled only
  /// when ExploreOptions::collect_terminal is set.
  std::vector<std::string> terminal_encodings;
  bool complete = true;             // false when the state cap stopped exploration
  bool depth_bounded = false;       // true when depth_limit cut off enabled actions
  /// First violation of each check, ordered by trace length then check.
  std::vector<Violation> violations;
  /// Number of failing states (transitions, for SafeAtStable) per check.
  std::map<std::string, std::size_t> failure_counts;

  bool inductive_mode = false;
  bool init_satisfies_inv = true;
  std::optional<InductiveBreak> inductive_break;
  /// A reachable state satisfying Inv where Agree fails, if any.
  std::optional<Violation> inv_without_agree;

  std::chrono::duration<double> duration{0};

  bool clean() const {
    return violations.empty() && !inductive_break && init_satisfies_inv && !inv_without_agree;
  }
};

struct ExploreOptions {
  bool inductive = false;
  int workers = 0;  // 0 = OpenMP default
  /// States expanded per parallel batch; bounds peak memory per level.
  std::size_t batch = 1 << 15;
  /// Collect the canonical encodings of states with no successors.
  bool collect_terminal = false;
};

/// Breadth-first exploration from the empty state, deduplicated by
/// canonical encoding. Every visited state runs check_state and every
/// transition runs SafeAtStable. Expansion and checking run in parallel;
/// new states are numbered by a serial merge in (parent, successor) order, so
/// the report is identical for any worker count.
ExplorationReport explore(const Scope& scope, const ExploreOptions& options = {});

/// explore with the inductive-step checks enabled.
ExplorationReport inductive_check(const Scope& scope, const ExploreOptions& options = {});

/// Single-threaded queue-based reference implementation of explore, kept for
/// testing the parallel one. Same report, same numbering.
ExplorationReport explore_serial(const Scope& scope, const ExploreOptions& options = {});

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t step, ActionKind kind, GuardFailure failure);

  std::size_t step() const { return step_; }  // zero-based
  ActionKind kind() const { return kind_; }
  const GuardFailure& failure() const { return failure_; }

 private:
  std::size_t step_;
  ActionKind kind_;
  GuardFailure failure_;
};

/// Applies each action from the empty state after checking its guard.
/// A step whose Send adds nothing is allowed (stuttering). Throws
/// ReplayError at the first disabled step, or when a recorded delta
/// disagrees with the one the parameters produce.
SentState replay(const std::vector<ActionInstance>& trace, const Scope& scope);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_EXPLORER_HPP_
