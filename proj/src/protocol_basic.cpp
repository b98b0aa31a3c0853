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

#include "paxos_hist/protocol_basic.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "paxos_hist/protocol.hpp"

namespace paxos_hist::basic {

namespace {

// Highest ballot among a's 1b and 2b messages; -1 when a has sent neither.
Ballot max_response_ballot(const SentState& s, AcceptorId a) {
  Ballot best = Ballot::none();
  for (const auto& m : s) {
    if ((m.type == MsgType::OneB || m.type == MsgType::TwoB) && m.sender == a) {
      best = std::max(best, m.bal);
    }
  }
  return best;
}

bool has_2a_at(const SentState& s, Ballot b) {
  return std::any_of(s.begin(), s.end(), [&](const Message& m) {
    return m.type == MsgType::TwoA && m.bal == b;
  });
}

// Orders 2a witnesses: fewer supporting 1b messages first, then S, then Q.
bool witness_less(const std::vector<Message>& s1, const Quorum& q1,
                  const std::vector<Message>& s2, const Quorum& q2) {
  if (s1.size() != s2.size()) return s1.size() < s2.size();
  if (s1 != s2) return s1 < s2;
  return q1 < q2;
}

}  // namespace

std::vector<ActionInstance> enabled_phase1a(const SentState& s, const Scope& scope) {
  std::vector<ActionInstance> out;
  for (int b = 0; b < scope.ballot_bound; ++b) {
    Message m = one_a(Ballot{b});
    if (s.contains(m)) continue;
    ActionInstance act;
    act.kind = ActionKind::Phase1a;
    act.ballot = Ballot{b};
    act.delta.push_back(std::move(m));
    out.push_back(std::move(act));
  }
  return out;
}

std::vector<Message> two_bs(const SentState& s, AcceptorId a) {
  std::vector<Message> out;
  for (const auto& m : s) {
    if (m.type == MsgType::TwoB && m.sender == a) out.push_back(m);
  }
  return out;
}

std::vector<Proposal> max_prop(const SentState& s, AcceptorId a) {
  auto votes = two_bs(s, a);
  if (votes.empty()) return {Proposal{Ballot::none(), Value::none()}};
  Ballot top = Ballot::none();
  for (const auto& m : votes) top = std::max(top, m.bal);
  std::vector<Proposal> out;
  for (const auto& m : votes) {
    if (m.bal == top) out.push_back(Proposal{m.bal, m.val});
  }
  normalize_set(out);
  return out;
}

std::vector<ActionInstance> enabled_phase1b(const SentState& s, AcceptorId a) {
  std::vector<ActionInstance> out;
  const Ballot floor = max_response_ballot(s, a);
  const auto props = max_prop(s, a);
  for (const auto& m : s) {
    if (m.type != MsgType::OneA || !(m.bal > floor)) continue;
    for (const auto& r : props) {
      Message reply = one_b(a, m.bal, r.bal, r.val);
      if (s.contains(reply)) continue;
      ActionInstance act;
      act.kind = ActionKind::Phase1b;
      act.acceptor = a;
      act.msg = m;
      act.proposal = r;
      act.delta.push_back(std::move(reply));
      out.push_back(std::move(act));
    }
  }
  return out;
}

std::vector<ActionInstance> enabled_phase2a(const SentState& s, const Scope& scope) {
  std::vector<ActionInstance> out;
  const bool unique_ballots = scope.variant != Variant::BasicUnsafe2a;
  for (int bi = 0; bi < scope.ballot_bound; ++bi) {
    const Ballot b{bi};
    if (unique_ballots && has_2a_at(s, b)) continue;

    std::vector<const Message*> replies;
    for (const auto& m : s) {
      if (m.type == MsgType::OneB && m.bal == b) replies.push_back(&m);
    }
    if (replies.empty()) continue;
    if (replies.size() > 24) throw std::length_error("too many 1b messages at one ballot");

    struct Witness {
      std::vector<Message> support;
      Quorum quorum;
    };
    std::map<Value, Witness> best;

    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << replies.size()); ++mask) {
      std::vector<Message> support;
      std::vector<AcceptorId> covered;
      Ballot c = Ballot::none();
      for (std::size_t i = 0; i < replies.size(); ++i) {
        if (!(mask & (std::uint32_t{1} << i))) continue;
        support.push_back(*replies[i]);
        covered.push_back(replies[i]->sender);
        c = std::max(c, replies[i]->max_vbal);
      }
      normalize_set(covered);
      const Quorum* quorum = nullptr;
      for (const auto& q : scope.quorums) {
        if (std::includes(covered.begin(), covered.end(), q.begin(), q.end())) {
          quorum = &q;
          break;
        }
      }
      if (quorum == nullptr) continue;

      // With every maxVBal = -1 any value may be proposed; otherwise the
      // value must come from a reply at the highest maxVBal c, and c < b.
      std::vector<Value> admissible;
      if (c.is_none()) {
        for (int v = 0; v < scope.n_values(); ++v) admissible.push_back(Value{v});
      } else if (c < b) {
        for (const auto& m : support) {
          if (m.max_vbal == c && m.max_val.id >= 0 && m.max_val.id < scope.n_values()) {
            admissible.push_back(m.max_val);
          }
        }
      }
      for (Value v : admissible) {
        auto it = best.find(v);
        if (it == best.end() ||
            witness_less(support, *quorum, it->second.support, it->second.quorum)) {
          best[v] = Witness{support, *quorum};
        }
      }
    }

    for (auto& [v, w] : best) {
      Message proposal = two_a(b, v);
      if (s.contains(proposal)) continue;
      ActionInstance act;
      act.kind = ActionKind::Phase2a;
      act.ballot = b;
      act.value = v;
      act.quorum = std::move(w.quorum);
      act.support = std::move(w.support);
      act.delta.push_back(std::move(proposal));
      out.push_back(std::move(act));
    }
  }
  return out;
}

std::vector<ActionInstance> enabled_phase2b(const SentState& s, AcceptorId a) {
  std::vector<ActionInstance> out;
  const Ballot floor = max_response_ballot(s, a);
  for (const auto& m : s) {
    if (m.type != MsgType::TwoA || m.bal < floor) continue;
    Message vote = two_b(a, m.bal, m.val);
    if (s.contains(vote)) continue;
    ActionInstance act;
    act.kind = ActionKind::Phase2b;
    act.acceptor = a;
    act.msg = m;
    act.delta.push_back(std::move(vote));
    out.push_back(std::move(act));
  }
  return out;
}

std::vector<Successor> successors(const SentState& s, const Scope& scope) {
  std::vector<ActionInstance> acts = enabled_phase1a(s, scope);
  for (AcceptorId a = 0; a < scope.n_acceptors; ++a) {
    auto more = enabled_phase1b(s, a);
    std::move(more.begin(), more.end(), std::back_inserter(acts));
  }
  {
    auto more = enabled_phase2a(s, scope);
    std::move(more.begin(), more.end(), std::back_inserter(acts));
  }
  for (AcceptorId a = 0; a < scope.n_acceptors; ++a) {
    auto more = enabled_phase2b(s, a);
    std::move(more.begin(), more.end(), std::back_inserter(acts));
  }
  return to_successors(s, std::move(acts));
}

}  // namespace paxos_hist::basic
