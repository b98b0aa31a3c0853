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

#include "paxos_hist/protocol_multi.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>

#include "paxos_hist/protocol.hpp"

namespace paxos_hist::multi {

namespace {

Ballot max_response_ballot(const SentState& s, AcceptorId a) {
  Ballot best = Ballot::none();
  for (const auto& m : s) {
    if ((m.type == MsgType::OneB || m.type == MsgType::TwoB) && m.sender == a) {
      best = std::max(best, m.bal);
    }
  }
  return best;
}

bool witness_less(const ActionInstance& x, const ActionInstance& y) {
  if (x.support.size() != y.support.size()) return x.support.size() < y.support.size();
  if (x.support != y.support) return x.support < y.support;
  if (x.quorum != y.quorum) return x.quorum < y.quorum;
  return x.new_decrees < y.new_decrees;
}

}  // namespace

std::vector<Message> sent1b2b(const SentState& s, AcceptorId a) {
  std::vector<Message> out;
  for (const auto& m : s) {
    if ((m.type == MsgType::OneB || m.type == MsgType::TwoB) && m.sender == a) {
      out.push_back(m);
    }
  }
  return out;
}

std::vector<Vote> voteds(const SentState& s, AcceptorId a) {
  std::vector<Vote> out;
  for (const auto& m : s) {
    if (m.type == MsgType::TwoB && m.sender == a) out.push_back(Vote{m.bal, m.slot, m.val});
  }
  normalize_set(out);
  return out;
}

std::vector<Vote> partial_bmax(const std::vector<Vote>& votes) {
  std::map<Slot, Ballot> top;
  for (const auto& t : votes) {
    auto [it, fresh] = top.emplace(t.slot, t.bal);
    if (!fresh) it->second = std::max(it->second, t.bal);
  }
  std::vector<Vote> out;
  for (const auto& t : votes) {
    if (t.bal == top.at(t.slot)) out.push_back(t);
  }
  normalize_set(out);
  return out;
}

std::vector<Decree> bmax(const std::vector<Vote>& votes) {
  std::vector<Decree> out;
  for (const auto& t : partial_bmax(votes)) out.push_back(Decree{t.slot, t.val});
  normalize_set(out);
  return out;
}

std::vector<Slot> free_slots(const std::vector<Vote>& votes, const Scope& scope) {
  std::vector<Slot> out;
  for (int i = 0; i < scope.slot_bound; ++i) {
    const Slot slot{i};
    bool used = std::any_of(votes.begin(), votes.end(),
                            [&](const Vote& t) { return t.slot == slot; });
    if (!used) out.push_back(slot);
  }
  return out;
}

std::vector<std::vector<Decree>> new_proposal_choices(const std::vector<Vote>& votes,
                                                      const Scope& scope) {
  const auto slots = free_slots(votes, scope);
  std::vector<std::vector<Decree>> out;
  std::vector<Decree> current;
  // Each free slot is either skipped or given one value.
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == slots.size()) {
      out.push_back(current);
      return;
    }
    walk(i + 1);
    if (static_cast<int>(current.size()) >= scope.max_new_proposals) return;
    for (int v = 0; v < scope.n_values(); ++v) {
      current.push_back(Decree{slots[i], Value{v}});
      walk(i + 1);
      current.pop_back();
    }
  };
  walk(0);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

std::vector<Vote> vs(const std::vector<Message>& support, const Quorum& quorum) {
  std::vector<Vote> out;
  for (const auto& m : support) {
    if (!std::binary_search(quorum.begin(), quorum.end(), m.sender)) continue;
    out.insert(out.end(), m.voted.begin(), m.voted.end());
  }
  normalize_set(out);
  return out;
}

std::vector<ActionInstance> enabled_phase1a(const SentState& s, ProposerId p,
                                            const Scope& scope) {
  // With preemption, a proposer that has been preempted may only start a
  // ballot above a preempt ballot that exceeds all of its earlier 1a's.
  const bool preemption = scope.variant == Variant::MultiPreempt;
  std::vector<const Message*> preempts;
  Ballot own_top = Ballot::none();
  for (const auto& m : s) {
    if (m.type == MsgType::Preempt && m.receiver == p) preempts.push_back(&m);
    if (m.type == MsgType::OneA && m.sender == p) own_top = std::max(own_top, m.bal);
  }

  std::vector<ActionInstance> out;
  for (int bi = 0; bi < scope.ballot_bound; ++bi) {
    const Ballot b{bi};
    std::optional<Message> trigger;
    if (preemption && !preempts.empty()) {
      for (const Message* m : preempts) {
        if (b > m->bal && m->bal > own_top) {
          trigger = *m;
          break;
        }
      }
      if (!trigger) continue;
    }
    Message req = one_a(p, b);
    if (s.contains(req)) continue;
    ActionInstance act;
    act.kind = ActionKind::Phase1a;
    act.proposer = p;
    act.ballot = b;
    act.msg = trigger;
    act.delta.push_back(std::move(req));
    out.push_back(std::move(act));
  }
  return out;
}

std::vector<ActionInstance> enabled_phase1b(const SentState& s, AcceptorId a) {
  std::vector<ActionInstance> out;
  const Ballot floor = max_response_ballot(s, a);
  const auto reported = partial_bmax(voteds(s, a));
  for (const auto& m : s) {
    if (m.type != MsgType::OneA || !(m.bal > floor)) continue;
    Message reply = one_b(a, m.bal, reported);
    if (s.contains(reply)) continue;
    ActionInstance act;
    act.kind = ActionKind::Phase1b;
    act.acceptor = a;
    act.msg = m;
    act.delta.push_back(std::move(reply));
    // Several 1a's at one ballot (different proposers) answer identically.
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const ActionInstance& x) { return x.delta == act.delta; });
    if (!dup) out.push_back(std::move(act));
  }
  return out;
}

std::vector<ActionInstance> enabled_phase2a(const SentState& s, ProposerId p,
                                            const Scope& scope) {
  std::map<Message, ActionInstance> best;
  for (int bi = 0; bi < scope.ballot_bound; ++bi) {
    const Ballot b{bi};
    bool taken = std::any_of(s.begin(), s.end(), [&](const Message& m) {
      return m.type == MsgType::TwoA && m.bal == b;
    });
    if (taken) continue;

    for (const auto& q : scope.quorums) {
      // Per quorum member, its 1b replies at b.
      std::vector<std::vector<Message>> per_member;
      bool covered = true;
      for (AcceptorId a : q) {
        std::vector<Message> mine;
        for (const auto& m : s) {
          if (m.type == MsgType::OneB && m.bal == b && m.sender == a) mine.push_back(m);
        }
        if (mine.empty()) {
          covered = false;
          break;
        }
        if (mine.size() > 16) throw std::length_error("too many 1b messages from one acceptor");
        per_member.push_back(std::move(mine));
      }
      if (!covered) continue;

      // S ranges over unions of one nonempty reply subset per member.
      // Replies from outside Q do not affect VS(S, Q), so they are left out.
      std::vector<Message> support;
      std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (i == per_member.size()) {
          std::vector<Message> sorted = support;
          normalize_set(sorted);
          const auto votes = vs(sorted, q);
          const auto carried = bmax(votes);
          for (auto& extra : new_proposal_choices(votes, scope)) {
            std::vector<Decree> decrees = carried;
            decrees.insert(decrees.end(), extra.begin(), extra.end());
            Message proposal = two_a(p, b, decrees);
            if (s.contains(proposal)) continue;
            ActionInstance act;
            act.kind = ActionKind::Phase2a;
            act.proposer = p;
            act.ballot = b;
            act.quorum = q;
            act.support = sorted;
            act.new_decrees = std::move(extra);
            act.delta.push_back(proposal);
            auto it = best.find(proposal);
            if (it == best.end()) {
              best.emplace(std::move(proposal), std::move(act));
            } else if (witness_less(act, it->second)) {
              it->second = std::move(act);
            }
          }
          return;
        }
        const auto& mine = per_member[i];
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << mine.size()); ++mask) {
          const std::size_t mark = support.size();
          for (std::size_t j = 0; j < mine.size(); ++j) {
            if (mask & (std::uint32_t{1} << j)) support.push_back(mine[j]);
          }
          pick(i + 1);
          support.resize(mark);
        }
      };
      pick(0);
    }
  }
  std::vector<ActionInstance> out;
  for (auto& [m, act] : best) out.push_back(std::move(act));
  return out;
}

std::vector<ActionInstance> enabled_phase2b(const SentState& s, AcceptorId a) {
  std::vector<ActionInstance> out;
  const Ballot floor = max_response_ballot(s, a);
  for (const auto& m : s) {
    if (m.type != MsgType::TwoA || m.bal < floor) continue;
    ActionInstance act;
    act.kind = ActionKind::Phase2b;
    act.acceptor = a;
    act.msg = m;
    for (const auto& d : m.decrees) {
      Message vote = two_b(a, m.bal, d.slot, d.val);
      if (!s.contains(vote)) act.delta.push_back(std::move(vote));
    }
    if (!act.delta.empty()) out.push_back(std::move(act));
  }
  return out;
}

std::vector<ActionInstance> enabled_preempt(const SentState& s, AcceptorId a) {
  std::vector<ActionInstance> out;
  const auto responses = sent1b2b(s, a);
  if (responses.empty()) return out;
  const Ballot top = max_response_ballot(s, a);
  // The first 1b/2b at the top ballot serves as the m2 witness.
  const Message* highest = nullptr;
  for (const auto& m2 : responses) {
    if (m2.bal == top) {
      highest = &m2;
      break;
    }
  }
  for (const auto& m : s) {
    if (m.type != MsgType::OneA && m.type != MsgType::TwoA) continue;
    if (!(top > m.bal)) continue;
    Message notice = preempt(m.sender, top);
    if (s.contains(notice)) continue;
    bool dup = std::any_of(out.begin(), out.end(), [&](const ActionInstance& x) {
      return x.delta.front() == notice;
    });
    if (dup) continue;
    ActionInstance act;
    act.kind = ActionKind::Preempt;
    act.acceptor = a;
    act.msg = m;
    act.msg2 = *highest;
    act.delta.push_back(std::move(notice));
    out.push_back(std::move(act));
  }
  return out;
}

std::vector<Successor> successors(const SentState& s, const Scope& scope) {
  std::vector<ActionInstance> acts;
  auto take = [&](std::vector<ActionInstance> more) {
    std::move(more.begin(), more.end(), std::back_inserter(acts));
  };
  for (ProposerId p = 0; p < scope.n_proposers; ++p) take(enabled_phase1a(s, p, scope));
  for (AcceptorId a = 0; a < scope.n_acceptors; ++a) take(enabled_phase1b(s, a));
  for (ProposerId p = 0; p < scope.n_proposers; ++p) take(enabled_phase2a(s, p, scope));
  for (AcceptorId a = 0; a < scope.n_acceptors; ++a) take(enabled_phase2b(s, a));
  if (scope.variant == Variant::MultiPreempt) {
    for (AcceptorId a = 0; a < scope.n_acceptors; ++a) take(enabled_preempt(s, a));
  }
  return to_successors(s, std::move(acts));
}

}  // namespace paxos_hist::multi
