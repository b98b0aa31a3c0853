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

#ifndef PAXOS_HIST_PROTOCOL_BASIC_HPP_
#define PAXOS_HIST_PROTOCOL_BASIC_HPP_

#include <vector>

#include "paxos_hist/action.hpp"
#include "paxos_hist/scope.hpp"
#include "paxos_hist/sent_state.hpp"

/// Basic Paxos over the sent set. Every phase reads `sent` and adds one
/// message; actions that would add nothing are not reported.
namespace paxos_hist::basic {

std::vector<ActionInstance> enabled_phase1a(const SentState& s, const Scope& scope);

/// The 2b messages sent by acceptor a.
std::vector<Message> two_bs(const SentState& s, AcceptorId a);

/// The highest-ballot proposals a has voted for, or {(-1, None)} if a has
/// not voted. Never empty.
std::vector<Proposal> max_prop(const SentState& s, AcceptorId a);

std::vector<ActionInstance> enabled_phase1b(const SentState& s, AcceptorId a);

/// One instance per distinct 2a message. The (Q, S) witness recorded is the
/// smallest support set S, ties broken by S then Q in canonical order.
/// basic-unsafe-2a drops the "no 2a at b yet" conjunct.
std::vector<ActionInstance> enabled_phase2a(const SentState& s, const Scope& scope);

std::vector<ActionInstance> enabled_phase2b(const SentState& s, AcceptorId a);

std::vector<Successor> successors(const SentState& s, const Scope& scope);

}  // namespace paxos_hist::basic

#endif  // PAXOS_HIST_PROTOCOL_BASIC_HPP_
