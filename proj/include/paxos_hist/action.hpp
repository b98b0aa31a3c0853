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

#ifndef PAXOS_HIST_ACTION_HPP_
#define PAXOS_HIST_ACTION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "paxos_hist/quorum.hpp"
#include "paxos_hist/sent_state.hpp"
#include "paxos_hist/types.hpp"

namespace paxos_hist {

enum class ActionKind { Phase1a, Phase1b, Phase2a, Phase2b, Preempt };

const char* to_string(ActionKind k);
std::optional<ActionKind> parse_action_kind(const std::string& name);

/// A (bal, val) pair reported by an acceptor in a Basic 1b message.
struct Proposal {
  Ballot bal;
  Value val;
  auto operator<=>(const Proposal&) const = default;
};

/// One step of the protocol: the phase, the values bound to its quantified
/// variables, and the messages the step adds to `sent`.
///
/// Only the parameters the phase quantifies over are set:
///   Phase1a  Basic: ballot              Multi: proposer, ballot
///   Phase1b  acceptor, msg (the 1a), proposal r (Basic only)
///   Phase2a  ballot, quorum, support S; Basic adds value,
///            Multi adds proposer and new_decrees D
///   Phase2b  acceptor, msg (the 2a)
///   Preempt  acceptor, msg (the 1a/2a), msg2 (a's highest 1b/2b)
///
/// `delta` holds only messages not already in the source state, so applying
/// it grows the state by exactly |delta|.
struct ActionInstance {
  ActionKind kind = ActionKind::Phase1a;
  std::optional<Ballot> ballot;
  std::optional<AcceptorId> acceptor;
  std::optional<ProposerId> proposer;
  std::optional<Value> value;
  std::optional<Proposal> proposal;
  std::optional<Message> msg;
  std::optional<Message> msg2;
  Quorum quorum;
  std::vector<Message> support;
  std::vector<Decree> new_decrees;
  std::vector<Message> delta;

  bool operator==(const ActionInstance&) const = default;
};

struct Successor {
  ActionInstance action;
  SentState next;

  bool operator==(const Successor&) const = default;
};

}  // namespace paxos_hist

#endif  // PAXOS_HIST_ACTION_HPP_
