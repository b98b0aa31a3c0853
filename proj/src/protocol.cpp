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

#include "paxos_hist/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include "paxos_hist/protocol_basic.hpp"
#include "paxos_hist/protocol_multi.hpp"

namespace paxos_hist {

const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Phase1a: return "Phase1a";
    case ActionKind::Phase1b: return "Phase1b";
    case ActionKind::Phase2a: return "Phase2a";
    case ActionKind::Phase2b: return "Phase2b";
    case ActionKind::Preempt: return "Preempt";
  }
  return "?";
}

std::optional<ActionKind> parse_action_kind(const std::string& name) {
  for (auto k : {ActionKind::Phase1a, ActionKind::Phase1b, ActionKind::Phase2a,
                 ActionKind::Phase2b, ActionKind::Preempt}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<Successor> successors(const SentState& s, const Scope& scope) {
  return scope.multi() ? multi::successors(s, scope) : basic::successors(s, scope);
}

std::vector<Successor> to_successors(const SentState& s, std::vector<ActionInstance> acts) {
  for (auto& a : acts) normalize_set(a.delta);
  std::erase_if(acts, [](const ActionInstance& a) { return a.delta.empty(); });
  std::stable_sort(acts.begin(), acts.end(), [](const auto& x, const auto& y) {
    return x.delta < y.delta;
  });
  acts.erase(std::unique(acts.begin(), acts.end(),
                         [](const auto& x, const auto& y) { return x.delta == y.delta; }),
             acts.end());
  std::vector<Successor> out;
  out.reserve(acts.size());
  for (auto& a : acts) {
    SentState next = s.with(a.delta);
    out.push_back(Successor{std::move(a), std::move(next)});
  }
  return out;
}

namespace {

constexpr const char* kGuard1bBasic =
    "∀ m2 ∈ sent : m2.type ∈ {\"1b\", \"2b\"} ∧ m2.acc = a ⇒ m.bal > m2.bal";
constexpr const char* kGuard2bBasic =
    "∀ m2 ∈ sent : m2.type ∈ {\"1b\", \"2b\"} ∧ m2.acc = a ⇒ m.bal ≥ m2.bal";
constexpr const char* kGuard1bMulti = "∀ m2 ∈ sent1b2b(a) : m.bal > m2.bal";
constexpr const char* kGuard2bMulti = "∀ m2 ∈ sent1b2b(a) : m.bal ≥ m2.bal";
constexpr const char* kGuardUnique2a = "∄ m ∈ sent : m.type = \"2a\" ∧ m.bal = b";
constexpr const char* kGuardSupport = "S ⊆ {m ∈ sent : m.type = \"1b\" ∧ m.bal = b}";
constexpr const char* kGuardCoverBasic = "∀ a ∈ Q : ∃ m ∈ S : m.acc = a";
constexpr const char* kGuardCoverMulti = "∀ a ∈ Q : ∃ m ∈ S : m.from = a";
constexpr const char* kGuardValueRule =
    "∀ m ∈ S : m.maxVBal = -1 ∨ ∃ c ∈ 0..(b-1) : "
    "(∀ m ∈ S : m.maxVBal ≤ c) ∧ (∃ m ∈ S : m.maxVBal = c ∧ m.maxVal = v)";
constexpr const char* kGuardPreempt1a =
    "∄ m ∈ sent : m.type = \"preempt\" ∧ m.to = p ∨ ∃ m ∈ sent : "
    "m.type = \"preempt\" ∧ m.to = p ∧ b > m.bal ∧ "
    "∀ m2 ∈ sent : m2.type = \"1a\" ∧ m2.from = p ⇒ m.bal > m2.bal";

GuardFailure fail(std::string guard, std::string detail) {
  return GuardFailure{std::move(guard), std::move(detail)};
}

Ballot max_response_ballot(const SentState& s, AcceptorId a) {
  Ballot best = Ballot::none();
  for (const auto& m : s) {
    if ((m.type == MsgType::OneB || m.type == MsgType::TwoB) && m.sender == a) {
      best = std::max(best, m.bal);
    }
  }
  return best;
}

std::optional<GuardFailure> require_params(const ActionInstance& act, bool multi) {
  auto missing = [](const char* what) {
    return fail("parameters", std::string("missing parameter ") + what);
  };
  switch (act.kind) {
    case ActionKind::Phase1a:
      if (!act.ballot) return missing("b");
      if (multi && !act.proposer) return missing("p");
      break;
    case ActionKind::Phase1b:
      if (!act.acceptor) return missing("a");
      if (!act.msg) return missing("m");
      if (!multi && !act.proposal) return missing("r");
      break;
    case ActionKind::Phase2a:
      if (!act.ballot) return missing("b");
      if (!multi && !act.value) return missing("v");
      if (multi && !act.proposer) return missing("p");
      break;
    case ActionKind::Phase2b:
      if (!act.acceptor) return missing("a");
      if (!act.msg) return missing("m");
      break;
    case ActionKind::Preempt:
      if (!act.acceptor) return missing("a");
      if (!act.msg) return missing("m");
      if (!act.msg2) return missing("m2");
      break;
  }
  return std::nullopt;
}

std::optional<GuardFailure> check_domains(const ActionInstance& act, const Scope& scope) {
  if (act.ballot && (act.ballot->value < 0 || act.ballot->value >= scope.ballot_bound)) {
    return fail("b ∈ B", "ballot " + std::to_string(act.ballot->value) + " out of scope");
  }
  if (act.acceptor && (*act.acceptor < 0 || *act.acceptor >= scope.n_acceptors)) {
    return fail("a ∈ A", "acceptor " + std::to_string(*act.acceptor) + " out of scope");
  }
  if (act.proposer && (*act.proposer < 0 || *act.proposer >= scope.n_proposers)) {
    return fail("p ∈ P", "proposer " + std::to_string(*act.proposer) + " out of scope");
  }
  if (act.value && (act.value->id < 0 || act.value->id >= scope.n_values())) {
    return fail("v ∈ V", "value outside the value domain");
  }
  return std::nullopt;
}

std::optional<GuardFailure> check_support(const SentState& s, const ActionInstance& act,
                                          const Scope& scope, bool multi) {
  const Ballot b = *act.ballot;
  if (std::find(scope.quorums.begin(), scope.quorums.end(), act.quorum) ==
      scope.quorums.end()) {
    return fail("Q ∈ Q", "quorum is not in the quorum system");
  }
  for (const auto& m : act.support) {
    if (!(m.type == MsgType::OneB && m.bal == b && s.contains(m))) {
      return fail(kGuardSupport, "S holds a message that is not a sent 1b at ballot b");
    }
  }
  for (AcceptorId a : act.quorum) {
    bool found = std::any_of(act.support.begin(), act.support.end(),
                             [&](const Message& m) { return m.sender == a; });
    if (!found) {
      return fail(multi ? kGuardCoverMulti : kGuardCoverBasic,
                  "no reply in S from acceptor " + std::to_string(a));
    }
  }
  return std::nullopt;
}

std::optional<GuardFailure> check_basic(const SentState& s, const ActionInstance& act,
                                        const Scope& scope) {
  switch (act.kind) {
    case ActionKind::Phase1a:
      return std::nullopt;
    case ActionKind::Phase1b: {
      const Message& m = *act.msg;
      if (!s.contains(m)) return fail("m ∈ sent", "message m was never sent");
      if (m.type != MsgType::OneA) return fail("m.type = \"1a\"", "m is not a 1a message");
      const auto props = basic::max_prop(s, *act.acceptor);
      if (std::find(props.begin(), props.end(), *act.proposal) == props.end()) {
        return fail("r ∈ max_prop(a)", "r is not among a's highest votes");
      }
      Ballot floor = max_response_ballot(s, *act.acceptor);
      if (!(m.bal > floor)) {
        return fail(kGuard1bBasic, "a already replied at ballot " + std::to_string(floor.value));
      }
      return std::nullopt;
    }
    case ActionKind::Phase2a: {
      const Ballot b = *act.ballot;
      if (scope.variant != Variant::BasicUnsafe2a) {
        for (const auto& m : s) {
          if (m.type == MsgType::TwoA && m.bal == b) {
            return fail(kGuardUnique2a,
                        "a 2a message with ballot " + std::to_string(b.value) + " was already sent");
          }
        }
      }
      if (auto f = check_support(s, act, scope, false)) return f;
      // The value rule, with c enumerated over 0..b-1 exactly as stated.
      const Value v = *act.value;
      bool all_unvoted = std::all_of(act.support.begin(), act.support.end(),
                                     [](const Message& m) { return m.max_vbal.is_none(); });
      bool from_highest = false;
      for (int c = 0; c < b.value && !from_highest; ++c) {
        bool bounded = std::all_of(act.support.begin(), act.support.end(),
                                   [&](const Message& m) { return m.max_vbal.value <= c; });
        bool carries = std::any_of(act.support.begin(), act.support.end(), [&](const Message& m) {
          return m.max_vbal.value == c && m.max_val == v;
        });
        from_highest = bounded && carries;
      }
      if (!all_unvoted && !from_highest) {
        return fail(kGuardValueRule, "v is not the value of the highest-numbered reply in S");
      }
      return std::nullopt;
    }
    case ActionKind::Phase2b: {
      const Message& m = *act.msg;
      if (!s.contains(m)) return fail("m ∈ sent", "message m was never sent");
      if (m.type != MsgType::TwoA) return fail("m.type = \"2a\"", "m is not a 2a message");
      Ballot floor = max_response_ballot(s, *act.acceptor);
      if (m.bal < floor) {
        return fail(kGuard2bBasic, "a already replied at ballot " + std::to_string(floor.value));
      }
      return std::nullopt;
    }
    case ActionKind::Preempt:
      return fail("action", "Preempt is not an action of Basic Paxos");
  }
  return std::nullopt;
}

std::optional<GuardFailure> check_multi(const SentState& s, const ActionInstance& act,
                                        const Scope& scope) {
  switch (act.kind) {
    case ActionKind::Phase1a: {
      if (scope.variant != Variant::MultiPreempt) return std::nullopt;
      const ProposerId p = *act.proposer;
      const Ballot b = *act.ballot;
      bool preempted = false;
      bool admitted = false;
      for (const auto& m : s) {
        if (m.type != MsgType::Preempt || m.receiver != p) continue;
        preempted = true;
        if (!(b > m.bal)) continue;
        bool above_own = std::all_of(s.begin(), s.end(), [&](const Message& m2) {
          return !(m2.type == MsgType::OneA && m2.sender == p) || m.bal > m2.bal;
        });
        if (above_own) admitted = true;
      }
      if (preempted && !admitted) {
        return fail(kGuardPreempt1a, "p was preempted and b does not exceed a fresh preempt ballot");
      }
      return std::nullopt;
    }
    case ActionKind::Phase1b: {
      const Message& m = *act.msg;
      if (!s.contains(m)) return fail("m ∈ sent", "message m was never sent");
      if (m.type != MsgType::OneA) return fail("m.type = \"1a\"", "m is not a 1a message");
      Ballot floor = max_response_ballot(s, *act.acceptor);
      if (!(m.bal > floor)) {
        return fail(kGuard1bMulti, "a already replied at ballot " + std::to_string(floor.value));
      }
      return std::nullopt;
    }
    case ActionKind::Phase2a: {
      const Ballot b = *act.ballot;
      for (const auto& m : s) {
        if (m.type == MsgType::TwoA && m.bal == b) {
          return fail(kGuardUnique2a,
                      "a 2a message with ballot " + std::to_string(b.value) + " was already sent");
        }
      }
      if (auto f = check_support(s, act, scope, true)) return f;
      const auto choices = multi::new_proposal_choices(multi::vs(act.support, act.quorum), scope);
      std::vector<Decree> d = act.new_decrees;
      normalize_set(d);
      if (std::find(choices.begin(), choices.end(), d) == choices.end()) {
        return fail("D ∈ NewProposals(VS(S, Q))",
                    "D is not a decree set over free slots within the size bound");
      }
      return std::nullopt;
    }
    case ActionKind::Phase2b: {
      const Message& m = *act.msg;
      if (!s.contains(m)) return fail("m ∈ sent", "message m was never sent");
      if (m.type != MsgType::TwoA) return fail("m.type = \"2a\"", "m is not a 2a message");
      Ballot floor = max_response_ballot(s, *act.acceptor);
      if (m.bal < floor) {
        return fail(kGuard2bMulti, "a already replied at ballot " + std::to_string(floor.value));
      }
      return std::nullopt;
    }
    case ActionKind::Preempt: {
      if (scope.variant != Variant::MultiPreempt) {
        return fail("action", "Preempt requires the multi-preempt variant");
      }
      const Message& m = *act.msg;
      const Message& m2 = *act.msg2;
      const AcceptorId a = *act.acceptor;
      if (!s.contains(m)) return fail("m ∈ sent", "message m was never sent");
      if (m.type != MsgType::OneA && m.type != MsgType::TwoA) {
        return fail("m.type ∈ {\"1a\", \"2a\"}", "m is neither a 1a nor a 2a message");
      }
      if (!(s.contains(m2) && (m2.type == MsgType::OneB || m2.type == MsgType::TwoB) &&
            m2.sender == a)) {
        return fail("m2 ∈ sent1b2b(a)", "m2 is not a 1b/2b sent by a");
      }
      if (!(m2.bal > m.bal)) return fail("m2.bal > m.bal", "m2 is not above m");
      if (m2.bal < max_response_ballot(s, a)) {
        return fail("∀ m3 ∈ sent1b2b(a) : m2.bal ≥ m3.bal", "m2 is not a's highest reply");
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<GuardFailure> check_guard(const SentState& s, const ActionInstance& act,
                                        const Scope& scope) {
  const bool multi = scope.multi();
  if (auto f = require_params(act, multi)) return f;
  if (auto f = check_domains(act, scope)) return f;
  return multi ? check_multi(s, act, scope) : check_basic(s, act, scope);
}

std::vector<Message> send_set(const SentState& s, const ActionInstance& act,
                              const Scope& scope) {
  const bool family_multi = scope.multi();
  switch (act.kind) {
    case ActionKind::Phase1a:
      if (family_multi) return {multi::one_a(*act.proposer, *act.ballot)};
      return {basic::one_a(*act.ballot)};
    case ActionKind::Phase1b:
      if (family_multi) {
        return {multi::one_b(*act.acceptor, act.msg->bal,
                             multi::partial_bmax(multi::voteds(s, *act.acceptor)))};
      }
      return {basic::one_b(*act.acceptor, act.msg->bal, act.proposal->bal, act.proposal->val)};
    case ActionKind::Phase2a: {
      if (!family_multi) return {basic::two_a(*act.ballot, *act.value)};
      std::vector<Decree> decrees = multi::bmax(multi::vs(act.support, act.quorum));
      decrees.insert(decrees.end(), act.new_decrees.begin(), act.new_decrees.end());
      return {multi::two_a(*act.proposer, *act.ballot, std::move(decrees))};
    }
    case ActionKind::Phase2b: {
      const Message& m = *act.msg;
      if (!family_multi) return {basic::two_b(*act.acceptor, m.bal, m.val)};
      std::vector<Message> out;
      for (const auto& d : m.decrees) out.push_back(multi::two_b(*act.acceptor, m.bal, d.slot, d.val));
      return out;
    }
    case ActionKind::Preempt:
      return {multi::preempt(act.msg->sender, act.msg2->bal)};
  }
  throw std::logic_error("unknown action kind");
}

void recompute_delta(const SentState& s, ActionInstance& act, const Scope& scope) {
  act.delta.clear();
  for (auto& m : send_set(s, act, scope)) {
    if (!s.contains(m)) act.delta.push_back(std::move(m));
  }
  normalize_set(act.delta);
}

}  // namespace paxos_hist
