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

#ifndef PAXOS_HIST_PROTOCOL_HPP_
#define PAXOS_HIST_PROTOCOL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "paxos_hist/action.hpp"
#include "paxos_hist/scope.hpp"
#include "paxos_hist/sent_state.hpp"

namespace paxos_hist {

/// All non-stuttering steps from `s`, for whichever family scope.variant
/// selects. Instances with the same delta are merged (the first one
/// generated is kept) and the result is sorted by delta.
std::vector<Successor> successors(const SentState& s, const Scope& scope);

/// Pairs each action with its target state, drops empty deltas, merges
/// equal deltas and sorts by delta.
std::vector<Successor> to_successors(const SentState& s, std::vector<ActionInstance> acts);

/// A conjunct of an action's definition that is false for the given
/// parameters. `guard` is the conjunct as written in the protocol
/// definition; `detail` says what was found instead.
struct GuardFailure {
  std::string guard;
  std::string detail;
};

/// Evaluates the action's definition directly from its parameters. This is
/// independent of the enabled_* enumerators and is what replay uses.
std::optional<GuardFailure> check_guard(const SentState& s, const ActionInstance& act,
                                        const Scope& scope);

/// The message set the action's Send adds, computed from its parameters.
/// Requires the parameters the action kind uses (see ActionInstance).
std::vector<Message> send_set(const SentState& s, const ActionInstance& act,
                              const Scope& scope);

/// Fills act.delta with send_set(s, act) minus the messages already in s.
void recompute_delta(const SentState& s, ActionInstance& act, const Scope& scope);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_PROTOCOL_HPP_
