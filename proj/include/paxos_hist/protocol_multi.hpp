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

#ifndef PAXOS_HIST_PROTOCOL_MULTI_HPP_
#define PAXOS_HIST_PROTOCOL_MULTI_HPP_

#include <vector>

#include "paxos_hist/action.hpp"
#include "paxos_hist/scope.hpp"
#include "paxos_hist/sent_state.hpp"

/// Multi-Paxos and Multi-Paxos with Preemption over the sent set.
namespace paxos_hist::multi {

/// a's 1b and 2b messages.
std::vector<Message> sent1b2b(const SentState& s, AcceptorId a);

/// a's 2b messages projected to (bal, slot, val).
std::vector<Vote> voteds(const SentState& s, AcceptorId a);

/// Per slot, the votes at that slot's highest ballot. Ties on the top
/// ballot are all kept.
std::vector<Vote> partial_bmax(const std::vector<Vote>& votes);

/// (slot, val) projection of partial_bmax.
std::vector<Decree> bmax(const std::vector<Vote>& votes);

std::vector<Slot> free_slots(const std::vector<Vote>& votes, const Scope& scope);

/// Every decree set over the free slots with at most one decree per slot
/// and at most scope.max_new_proposals decrees, including the empty set.
/// Ordered by size, then lexicographically.
std::vector<std::vector<Decree>> new_proposal_choices(const std::vector<Vote>& votes,
                                                      const Scope& scope);

/// Union of the voted sets of the 1b messages in `support` sent by members
/// of `quorum`.
std::vector<Vote> vs(const std::vector<Message>& support, const Quorum& quorum);

std::vector<ActionInstance> enabled_phase1a(const SentState& s, ProposerId p,
                                            const Scope& scope);
std::vector<ActionInstance> enabled_phase1b(const SentState& s, AcceptorId a);
std::vector<ActionInstance> enabled_phase2a(const SentState& s, ProposerId p,
                                            const Scope& scope);
std::vector<ActionInstance> enabled_phase2b(const SentState& s, AcceptorId a);
std::vector<ActionInstance> enabled_preempt(const SentState& s, AcceptorId a);

std::vector<Successor> successors(const SentState& s, const Scope& scope);

}  // namespace paxos_hist::multi

#endif  // PAXOS_HIST_PROTOCOL_MULTI_HPP_
