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

#include "paxos_hist/invariants.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

namespace paxos_hist {

const Binding* Witness::find(const std::string& name) const {
  for (const auto& b : bindings) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

namespace {

constexpr Slot kNoSlot{};

// Read-only index over one state: the vote relation and each acceptor's
// highest 1b/2b ballot. Basic votes use kNoSlot.
class StateView {
 public:
  StateView(const SentState& s, const Scope& scope) : sent_(s), scope_(scope) {
    max_resp_.assign(static_cast<std::size_t>(scope.n_acceptors), Ballot::none());
    for (const auto& m : s) {
      if (m.type != MsgType::OneB && m.type != MsgType::TwoB) continue;
      if (m.type == MsgType::TwoB) votes_.emplace_back(m.sender, m.bal.value, m.slot.index, m.val.id);
      if (m.sender >= 0 && m.sender < scope.n_acceptors) {
        auto& top = max_resp_[static_cast<std::size_t>(m.sender)];
        top = std::max(top, m.bal);
      }
    }
    std::sort(votes_.begin(), votes_.end());
  }

  const SentState& sent() const { return sent_; }
  const Scope& scope() const { return scope_; }

  bool voted(AcceptorId a, Ballot b, Slot slot, Value v) const {
    return std::binary_search(votes_.begin(), votes_.end(),
                              std::make_tuple(a, b.value, slot.index, v.id));
  }

  bool voted_in_domain(AcceptorId a, Ballot b, Slot slot) const {
    for (int v = 0; v < scope_.n_values(); ++v) {
      if (voted(a, b, slot, Value{v})) return true;
    }
    return false;
  }

  Ballot max_response(AcceptorId a) const {
    if (a < 0 || a >= scope_.n_acceptors) return Ballot::none();
    return max_resp_[static_cast<std::size_t>(a)];
  }

  bool wont_vote_in(AcceptorId a, Ballot b, Slot slot) const {
    return !voted_in_domain(a, b, slot) && max_response(a) > b;
  }

  // Returns the first ballot below b with no quorum backing v, if any.
  std::optional<Ballot> unsafe_below(Ballot b, Slot slot, Value v) const {
    for (int b2 = 0; b2 < b.value; ++b2) {
      bool some_quorum = false;
      for (const auto& q : scope_.quorums) {
        bool all = std::all_of(q.begin(), q.end(), [&](AcceptorId a) {
          return voted(a, Ballot{b2}, slot, v) || wont_vote_in(a, Ballot{b2}, slot);
        });
        if (all) {
          some_quorum = true;
          break;
        }
      }
      if (!some_quorum) return Ballot{b2};
    }
    return std::nullopt;
  }

  bool safe_at(Ballot b, Slot slot, Value v) const { return !unsafe_below(b, slot, v); }

  // Some quorum whose members all voted (slot, v) at some ballot.
  const Quorum* chosen_by(Slot slot, Value v) const {
    for (const auto& q : scope_.quorums) {
      bool all = std::all_of(q.begin(), q.end(), [&](AcceptorId a) {
        return std::any_of(votes_.begin(), votes_.end(), [&](const auto& t) {
          return std::get<0>(t) == a && std::get<2>(t) == slot.index && std::get<3>(t) == v.id;
        });
      });
      if (all) return &q;
    }
    return nullptr;
  }

  // The 2b messages from q that vote (slot, v); the chosen-quorum witness.
  std::vector<Message> votes_of(const Quorum& q, Slot slot, Value v) const {
    std::vector<Message> out;
    for (const auto& m : sent_) {
      if (m.type == MsgType::TwoB && m.slot == slot && m.val == v &&
          std::binary_search(q.begin(), q.end(), m.sender)) {
        out.push_back(m);
      }
    }
    return out;
  }

 private:
  const SentState& sent_;
  const Scope& scope_;
  std::vector<std::tuple<int, int, int, int>> votes_;
  std::vector<Ballot> max_resp_;
};

CheckResult ok(std::string name) { return CheckResult{std::move(name), true, {}}; }

CheckResult failed(std::string name, Witness w) {
  return CheckResult{std::move(name), false, std::move(w)};
}

Binding ballot_binding(std::string name, Ballot b) {
  return Binding{std::move(name), BindingKind::Ballot, b.value};
}
Binding value_binding(std::string name, Value v) {
  return Binding{std::move(name), BindingKind::Value, v.id};
}
Binding slot_binding(std::string name, Slot s) {
  return Binding{std::move(name), BindingKind::Slot, s.index};
}

// Evaluates checks against one StateView, sharing a lazily built SafeAt
// table between I13/I29, VotedInv and the explorer.
class Evaluator {
 public:
  Evaluator(const SentState& s, const Scope& scope) : view_(s, scope), scope_(scope) {}

  const StateView& view() const { return view_; }

  const SafeAtTable& table() {
    if (!table_) table_.emplace(view_.sent(), scope_);
    return *table_;
  }

  bool safe(Ballot b, Slot slot, Value v) {
    const bool in_table = b.value >= 0 && b.value < scope_.ballot_bound && v.id >= 0 &&
                          v.id < scope_.n_values() &&
                          (scope_.multi() ? slot.index >= 0 && slot.index < scope_.slot_bound
                                          : slot == kNoSlot);
    if (in_table) return table().get(SafeAtTable::index(scope_, b, slot, v));
    return view_.safe_at(b, slot, v);
  }

  CheckResult type_ok() const;
  std::vector<CheckResult> msg_inv_basic();
  std::vector<CheckResult> msg_inv_multi();
  CheckResult agree() const;
  CheckResult voted_once() const;
  CheckResult voted_inv();

 private:
  StateView view_;
  const Scope& scope_;
  std::optional<SafeAtTable> table_;
};

CheckResult Evaluator::type_ok() const {
  const Scope& sc = scope_;
  auto ballot_ok = [&](Ballot b) { return b.value >= 0 && b.value < sc.ballot_bound; };
  auto value_ok = [&](Value v) { return v.id >= 0 && v.id < sc.n_values(); };
  auto slot_ok = [&](Slot s) { return s.index >= 0 && s.index < sc.slot_bound; };
  auto acc_ok = [&](int a) { return a >= 0 && a < sc.n_acceptors; };
  auto prop_ok = [&](int p) { return p >= 0 && p < sc.n_proposers; };
  const Message d;

  for (const auto& m : view_.sent()) {
    std::string why;
    const bool no_basic_1b = m.max_vbal == d.max_vbal && m.max_val == d.max_val;
    const bool no_sets = m.voted.empty() && m.decrees.empty();
    if (!ballot_ok(m.bal)) why = "bal outside B";
    if (why.empty() && !sc.multi()) {
      switch (m.type) {
        case MsgType::OneA:
          if (m.sender != -1 || m.receiver != -1 || !no_basic_1b || m.slot != kNoSlot ||
              !m.val.is_none() || !no_sets) {
            why = "1a carries fields other than bal";
          }
          break;
        case MsgType::OneB:
          if (!acc_ok(m.sender)) why = "acc outside A";
          else if (!(m.max_vbal.is_none() || ballot_ok(m.max_vbal)) || m.max_vbal.value < -1)
            why = "maxVBal outside B ∪ {-1}";
          else if (!(m.max_val.is_none() || value_ok(m.max_val)) || m.max_val.id < -1)
            why = "maxVal outside V ∪ {None}";
          else if (m.max_vbal.is_none() != m.max_val.is_none())
            why = "maxVBal = -1 and maxVal = None must occur together";
          else if (m.receiver != -1 || m.slot != kNoSlot || !m.val.is_none() || !no_sets)
            why = "1b carries fields outside {acc, bal, maxVBal, maxVal}";
          break;
        case MsgType::TwoA:
          if (!value_ok(m.val)) why = "val outside V";
          else if (m.sender != -1 || m.receiver != -1 || !no_basic_1b || m.slot != kNoSlot ||
                   !no_sets)
            why = "2a carries fields outside {bal, val}";
          break;
        case MsgType::TwoB:
          if (!acc_ok(m.sender)) why = "acc outside A";
          else if (!value_ok(m.val)) why = "val outside V";
          else if (m.receiver != -1 || !no_basic_1b || m.slot != kNoSlot || !no_sets)
            why = "2b carries fields outside {acc, bal, val}";
          break;
        case MsgType::Preempt:
          why = "preempt is not a Basic Paxos message";
          break;
      }
    } else if (why.empty()) {
      switch (m.type) {
        case MsgType::OneA:
          if (!prop_ok(m.sender)) why = "from outside P";
          else if (m.receiver != -1 || !no_basic_1b || m.slot != kNoSlot || !m.val.is_none() ||
                   !no_sets)
            why = "1a carries fields outside {from, bal}";
          break;
        case MsgType::OneB:
          if (!acc_ok(m.sender)) why = "from outside A";
          else if (m.receiver != -1 || !no_basic_1b || m.slot != kNoSlot || !m.val.is_none() ||
                   !m.decrees.empty())
            why = "1b carries fields outside {from, bal, voted}";
          for (const auto& r : m.voted) {
            if (why.empty() && !(ballot_ok(r.bal) && slot_ok(r.slot) && value_ok(r.val))) {
              why = "voted holds a triple outside B × S × V";
            }
          }
          break;
        case MsgType::TwoA:
          if (!prop_ok(m.sender)) why = "from outside P";
          else if (m.receiver != -1 || !no_basic_1b || m.slot != kNoSlot || !m.val.is_none() ||
                   !m.voted.empty())
            why = "2a carries fields outside {from, bal, decrees}";
          for (const auto& dc : m.decrees) {
            if (why.empty() && !(slot_ok(dc.slot) && value_ok(dc.val))) {
              why = "decrees holds a pair outside S × V";
            }
          }
          break;
        case MsgType::TwoB:
          if (!acc_ok(m.sender)) why = "from outside A";
          else if (!slot_ok(m.slot)) why = "slot outside S";
          else if (!value_ok(m.val)) why = "val outside V";
          else if (m.receiver != -1 || !no_basic_1b || !no_sets)
            why = "2b carries fields outside {from, bal, slot, val}";
          break;
        case MsgType::Preempt:
          if (!prop_ok(m.receiver)) why = "to outside P";
          else if (m.sender != -1 || !no_basic_1b || m.slot != kNoSlot || !m.val.is_none() ||
                   !no_sets)
            why = "preempt carries fields outside {to, bal}";
          break;
      }
    }
    if (!why.empty()) {
      Witness w;
      w.messages.push_back(m);
      w.note = why;
      return failed("TypeOK", std::move(w));
    }
  }
  return ok("TypeOK");
}

std::vector<CheckResult> Evaluator::msg_inv_basic() {
  const auto& sent = view_.sent();
  std::vector<CheckResult> out;

  // I11: a 1b reports a vote its sender really cast, or no vote.
  {
    CheckResult r = ok("I11");
    for (const auto& m : sent) {
      if (m.type != MsgType::OneB) continue;
      if (view_.voted(m.sender, m.max_vbal, kNoSlot, m.max_val) || m.max_vbal.value == -1) continue;
      Witness w;
      w.messages.push_back(m);
      r = failed("I11", std::move(w));
      break;
    }
    out.push_back(std::move(r));
  }
  // I12: no votes strictly between a 1b's maxVBal and its bal.
  {
    CheckResult r = ok("I12");
    for (const auto& m : sent) {
      if (m.type != MsgType::OneB || !r.holds) continue;
      for (int b = m.max_vbal.value + 1; b < m.bal.value && r.holds; ++b) {
        for (int v = 0; v < scope_.n_values(); ++v) {
          if (!view_.voted(m.sender, Ballot{b}, kNoSlot, Value{v})) continue;
          Witness w;
          w.messages.push_back(m);
          w.bindings.push_back(ballot_binding("b", Ballot{b}));
          w.bindings.push_back(value_binding("v", Value{v}));
          r = failed("I12", std::move(w));
          break;
        }
      }
    }
    out.push_back(std::move(r));
  }
  // I13: every 2a proposes a value safe at its ballot.
  {
    CheckResult r = ok("I13");
    for (const auto& m : sent) {
      if (m.type != MsgType::TwoA || safe(m.bal, kNoSlot, m.val)) continue;
      Witness w;
      w.messages.push_back(m);
      if (auto b2 = view_.unsafe_below(m.bal, kNoSlot, m.val)) {
        w.bindings.push_back(ballot_binding("b2", *b2));
      }
      r = failed("I13", std::move(w));
      break;
    }
    out.push_back(std::move(r));
  }
  // I14: at most one 2a per ballot.
  {
    CheckResult r = ok("I14");
    const Message* prev = nullptr;
    for (const auto& m : sent) {
      if (m.type != MsgType::TwoA) continue;
      if (prev != nullptr && prev->bal == m.bal) {
        Witness w;
        w.messages = {*prev, m};
        r = failed("I14", std::move(w));
        break;
      }
      prev = &m;
    }
    out.push_back(std::move(r));
  }
  // I15: every 2b echoes a 2a.
  {
    CheckResult r = ok("I15");
    for (const auto& m : sent) {
      if (m.type != MsgType::TwoB) continue;
      if (sent.contains(basic::two_a(m.bal, m.val))) continue;
      Witness w;
      w.messages.push_back(m);
      r = failed("I15", std::move(w));
      break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> Evaluator::msg_inv_multi() {
  const auto& sent = view_.sent();
  std::vector<CheckResult> out;

  // I26: every vote of m.from below m.bal is covered by some r in m.voted
  // at the same slot with r.bal >= b.
  {
    CheckResult r = ok("I26");
    for (const auto& m : sent) {
      if (m.type != MsgType::OneB || !r.holds) continue;
      for (const auto& vote : sent) {
        if (vote.type != MsgType::TwoB || vote.sender != m.sender || !(vote.bal < m.bal)) continue;
        bool covered = std::any_of(m.voted.begin(), m.voted.end(), [&](const Vote& t) {
          return t.slot == vote.slot && t.bal >= vote.bal;
        });
        if (covered) continue;
        Witness w;
        w.messages = {m, vote};
        w.bindings.push_back(ballot_binding("b", vote.bal));
        w.bindings.push_back(slot_binding("s", vote.slot));
        w.bindings.push_back(value_binding("v", vote.val));
        r = failed("I26", std::move(w));
        break;
      }
    }
    out.push_back(std::move(r));
  }
  // I27: nothing voted in a slot strictly between r.bal and m.bal.
  {
    CheckResult r = ok("I27");
    for (const auto& m : sent) {
      if (m.type != MsgType::OneB || !r.holds) continue;
      for (const auto& t : m.voted) {
        for (int b = t.bal.value + 1; b < m.bal.value && r.holds; ++b) {
          for (int v = 0; v < scope_.n_values(); ++v) {
            if (!view_.voted(m.sender, Ballot{b}, t.slot, Value{v})) continue;
            Witness w;
            w.messages.push_back(m);
            w.bindings.push_back(ballot_binding("r.bal", t.bal));
            w.bindings.push_back(slot_binding("r.slot", t.slot));
            w.bindings.push_back(value_binding("r.val", t.val));
            w.bindings.push_back(ballot_binding("b", Ballot{b}));
            w.bindings.push_back(value_binding("v", Value{v}));
            r = failed("I27", std::move(w));
            break;
          }
        }
        if (!r.holds) break;
      }
    }
    out.push_back(std::move(r));
  }
  // I28: every reported vote was cast.
  {
    CheckResult r = ok("I28");
    for (const auto& m : sent) {
      if (m.type != MsgType::OneB || !r.holds) continue;
      for (const auto& t : m.voted) {
        if (view_.voted(m.sender, t.bal, t.slot, t.val)) continue;
        Witness w;
        w.messages.push_back(m);
        w.bindings.push_back(ballot_binding("r.bal", t.bal));
        w.bindings.push_back(slot_binding("r.slot", t.slot));
        w.bindings.push_back(value_binding("r.val", t.val));
        r = failed("I28", std::move(w));
        break;
      }
    }
    out.push_back(std::move(r));
  }
  // I29: every decree is safe at its message's ballot.
  {
    CheckResult r = ok("I29");
    for (const auto& m : sent) {
      if (m.type != MsgType::TwoA || !r.holds) continue;
      for (const auto& d : m.decrees) {
        if (safe(m.bal, d.slot, d.val)) continue;
        Witness w;
        w.messages.push_back(m);
        w.bindings.push_back(slot_binding("d.slot", d.slot));
        w.bindings.push_back(value_binding("d.val", d.val));
        if (auto b2 = view_.unsafe_below(m.bal, d.slot, d.val)) {
          w.bindings.push_back(ballot_binding("b2", *b2));
        }
        r = failed("I29", std::move(w));
        break;
      }
    }
    out.push_back(std::move(r));
  }
  // I30: one decree per slot within a 2a.
  {
    CheckResult r = ok("I30");
    for (const auto& m : sent) {
      if (m.type != MsgType::TwoA || !r.holds) continue;
      for (std::size_t i = 1; i < m.decrees.size(); ++i) {
        if (m.decrees[i - 1].slot != m.decrees[i].slot) continue;
        Witness w;
        w.messages.push_back(m);
        w.bindings.push_back(slot_binding("d1.slot", m.decrees[i - 1].slot));
        w.bindings.push_back(value_binding("d1.val", m.decrees[i - 1].val));
        w.bindings.push_back(value_binding("d2.val", m.decrees[i].val));
        r = failed("I30", std::move(w));
        break;
      }
    }
    out.push_back(std::move(r));
  }
  // I31: at most one 2a per ballot.
  {
    CheckResult r = ok("I31");
    const Message* prev = nullptr;
    for (const auto& m : sent) {
      if (m.type != MsgType::TwoA) continue;
      if (prev != nullptr && prev->bal == m.bal) {
        Witness w;
        w.messages = {*prev, m};
        r = failed("I31", std::move(w));
        break;
      }
      prev = &m;
    }
    out.push_back(std::move(r));
  }
  // I32: every 2b echoes a decree of a 2a at its ballot.
  {
    CheckResult r = ok("I32");
    for (const auto& m : sent) {
      if (m.type != MsgType::TwoB) continue;
      bool echoed = std::any_of(sent.begin(), sent.end(), [&](const Message& m2) {
        return m2.type == MsgType::TwoA && m2.bal == m.bal &&
               std::any_of(m2.decrees.begin(), m2.decrees.end(), [&](const Decree& d) {
                 return d.slot == m.slot && d.val == m.val;
               });
      });
      if (echoed) continue;
      Witness w;
      w.messages.push_back(m);
      r = failed("I32", std::move(w));
      break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult Evaluator::agree() const {
  std::vector<Slot> slots;
  if (scope_.multi()) {
    for (int i = 0; i < scope_.slot_bound; ++i) slots.push_back(Slot{i});
  } else {
    slots.push_back(kNoSlot);
  }
  for (Slot slot : slots) {
    const Quorum* first_q = nullptr;
    Value first_v;
    for (int v = 0; v < scope_.n_values(); ++v) {
      const Quorum* q = view_.chosen_by(slot, Value{v});
      if (q == nullptr) continue;
      if (first_q == nullptr) {
        first_q = q;
        first_v = Value{v};
        continue;
      }
      Witness w;
      w.bindings.push_back(value_binding("v1", first_v));
      w.bindings.push_back(value_binding("v2", Value{v}));
      if (scope_.multi()) w.bindings.push_back(slot_binding("s", slot));
      w.quorums.emplace_back("Q1", *first_q);
      w.quorums.emplace_back("Q2", *q);
      w.messages = view_.votes_of(*first_q, slot, first_v);
      auto more = view_.votes_of(*q, slot, Value{v});
      w.messages.insert(w.messages.end(), more.begin(), more.end());
      return failed("Agree", std::move(w));
    }
  }
  return ok("Agree");
}

CheckResult Evaluator::voted_once() const {
  // 2b messages sort by (bal, sender, ...), so group by (bal, slot) instead.
  std::map<std::pair<int, int>, const Message*> seen;
  for (const auto& m : view_.sent()) {
    if (m.type != MsgType::TwoB) continue;
    auto [it, fresh] = seen.emplace(std::make_pair(m.bal.value, m.slot.index), &m);
    if (fresh || it->second->val == m.val) continue;
    Witness w;
    w.messages = {*it->second, m};
    return failed("VotedOnce", std::move(w));
  }
  return ok("VotedOnce");
}

CheckResult Evaluator::voted_inv() {
  for (const auto& m : view_.sent()) {
    if (m.type != MsgType::TwoB || safe(m.bal, m.slot, m.val)) continue;
    Witness w;
    w.messages.push_back(m);
    if (auto b2 = view_.unsafe_below(m.bal, m.slot, m.val)) {
      w.bindings.push_back(ballot_binding("b2", *b2));
    }
    return failed("VotedInv", std::move(w));
  }
  return ok("VotedInv");
}

}  // namespace

bool voted_for_in(const SentState& s, AcceptorId a, Value v, Ballot b) {
  return s.contains(basic::two_b(a, b, v));
}

bool voted_for_in_multi(const SentState& s, AcceptorId a, Ballot b, Slot slot, Value v) {
  return s.contains(multi::two_b(a, b, slot, v));
}

bool chosen(const SentState& s, Value v, const QuorumSystem& quorums) {
  return std::any_of(quorums.begin(), quorums.end(), [&](const Quorum& q) {
    return std::all_of(q.begin(), q.end(), [&](AcceptorId a) {
      return std::any_of(s.begin(), s.end(), [&](const Message& m) {
        return m.type == MsgType::TwoB && m.sender == a && m.val == v;
      });
    });
  });
}

bool chosen_in(const SentState& s, Value v, Ballot b, const QuorumSystem& quorums) {
  return std::any_of(quorums.begin(), quorums.end(), [&](const Quorum& q) {
    return std::all_of(q.begin(), q.end(), [&](AcceptorId a) { return voted_for_in(s, a, v, b); });
  });
}

bool chosen_multi(const SentState& s, Slot slot, Value v, const QuorumSystem& quorums) {
  return std::any_of(quorums.begin(), quorums.end(), [&](const Quorum& q) {
    return std::all_of(q.begin(), q.end(), [&](AcceptorId a) {
      return std::any_of(s.begin(), s.end(), [&](const Message& m) {
        return m.type == MsgType::TwoB && m.sender == a && m.slot == slot && m.val == v;
      });
    });
  });
}

bool wont_vote_in(const SentState& s, AcceptorId a, Ballot b, const Scope& scope) {
  return StateView(s, scope).wont_vote_in(a, b, kNoSlot);
}

bool wont_vote_in_multi(const SentState& s, AcceptorId a, Ballot b, Slot slot,
                        const Scope& scope) {
  return StateView(s, scope).wont_vote_in(a, b, slot);
}

bool safe_at(const SentState& s, Value v, Ballot b, const Scope& scope) {
  return StateView(s, scope).safe_at(b, kNoSlot, v);
}

bool safe_at_multi(const SentState& s, Ballot b, Slot slot, Value v, const Scope& scope) {
  return StateView(s, scope).safe_at(b, slot, v);
}

CheckResult check_type_ok(const SentState& s, const Scope& scope) {
  return Evaluator(s, scope).type_ok();
}

std::vector<CheckResult> check_msg_inv_basic(const SentState& s, const Scope& scope) {
  return Evaluator(s, scope).msg_inv_basic();
}

std::vector<CheckResult> check_msg_inv_multi(const SentState& s, const Scope& scope) {
  return Evaluator(s, scope).msg_inv_multi();
}

CheckResult check_agree(const SentState& s, const Scope& scope) {
  return Evaluator(s, scope).agree();
}

CheckResult check_voted_once(const SentState& s, const Scope& scope) {
  return Evaluator(s, scope).voted_once();
}

CheckResult check_voted_inv(const SentState& s, const Scope& scope) {
  return Evaluator(s, scope).voted_inv();
}

std::size_t SafeAtTable::words_for(const Scope& scope) {
  const std::size_t slots = scope.multi() ? static_cast<std::size_t>(scope.slot_bound) : 1;
  const std::size_t bits = static_cast<std::size_t>(scope.ballot_bound) * slots *
                           static_cast<std::size_t>(scope.n_values());
  return (bits + 63) / 64;
}

std::size_t SafeAtTable::index(const Scope& scope, Ballot b, Slot slot, Value v) {
  const std::size_t slots = scope.multi() ? static_cast<std::size_t>(scope.slot_bound) : 1;
  const std::size_t slot_pos = scope.multi() ? static_cast<std::size_t>(slot.index) : 0;
  return (static_cast<std::size_t>(b.value) * slots + slot_pos) *
             static_cast<std::size_t>(scope.n_values()) +
         static_cast<std::size_t>(v.id);
}

SafeAtTable::SafeAtTable(const SentState& s, const Scope& scope)
    : words_(words_for(scope), 0) {
  StateView view(s, scope);
  const int slots = scope.multi() ? scope.slot_bound : 1;
  for (int b = 0; b < scope.ballot_bound; ++b) {
    for (int si = 0; si < slots; ++si) {
      const Slot slot = scope.multi() ? Slot{si} : kNoSlot;
      for (int v = 0; v < scope.n_values(); ++v) {
        if (!view.safe_at(Ballot{b}, slot, Value{v})) continue;
        const std::size_t i = index(scope, Ballot{b}, slot, Value{v});
        words_[i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }
}

CheckResult safe_at_stable_from_tables(std::span<const std::uint64_t> before,
                                       std::span<const std::uint64_t> after,
                                       const Scope& scope) {
  bool stable = true;
  for (std::size_t w = 0; w < before.size(); ++w) {
    if (before[w] & ~after[w]) stable = false;
  }
  if (stable) return ok(kSafeAtStable);
  const int slots = scope.multi() ? scope.slot_bound : 1;
  for (int b = 0; b < scope.ballot_bound; ++b) {
    for (int si = 0; si < slots; ++si) {
      const Slot slot = scope.multi() ? Slot{si} : kNoSlot;
      for (int v = 0; v < scope.n_values(); ++v) {
        const std::size_t i = SafeAtTable::index(scope, Ballot{b}, slot, Value{v});
        const bool was = (before[i / 64] >> (i % 64)) & 1U;
        const bool is = (after[i / 64] >> (i % 64)) & 1U;
        if (!was || is) continue;
        Witness w;
        w.bindings.push_back(value_binding("v", Value{v}));
        w.bindings.push_back(ballot_binding("b", Ballot{b}));
        if (scope.multi()) w.bindings.push_back(slot_binding("s", slot));
        return failed(kSafeAtStable, std::move(w));
      }
    }
  }
  return ok(kSafeAtStable);
}

CheckResult check_safe_at_stable(const SentState& s, const SentState& s_next,
                                 const Scope& scope) {
  SafeAtTable before(s, scope);
  SafeAtTable after(s_next, scope);
  return safe_at_stable_from_tables(before.words(), after.words(), scope);
}

std::vector<std::string> inductive_check_names(const Scope& scope) {
  if (scope.multi()) return {"TypeOK", "I26", "I27", "I28", "I29", "I30", "I31", "I32"};
  return {"TypeOK", "I11", "I12", "I13", "I14", "I15"};
}

std::vector<std::string> state_check_names(const Scope& scope) {
  auto names = inductive_check_names(scope);
  names.insert(names.end(), {"VotedOnce", "VotedInv", "Agree"});
  return names;
}

std::vector<CheckResult> check_state(const SentState& s, const Scope& scope, SafeAtTable* table) {
  Evaluator ev(s, scope);
  std::vector<CheckResult> out;
  out.push_back(ev.type_ok());
  auto inv = scope.multi() ? ev.msg_inv_multi() : ev.msg_inv_basic();
  std::move(inv.begin(), inv.end(), std::back_inserter(out));
  out.push_back(ev.voted_once());
  out.push_back(ev.voted_inv());
  out.push_back(ev.agree());
  if (table != nullptr) *table = ev.table();
  return out;
}

}  // namespace paxos_hist
