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

#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "paxos_hist/explorer.hpp"
#include "paxos_hist/invariants.hpp"
#include "paxos_hist/simulator.hpp"

using namespace paxos_hist;

namespace {

const Ballot b0{0}, b1{1}, b2{2};
const Value v1{0}, v2{1};

SentState appendix_f_prefix(std::size_t n) {
  auto script = scenario_script("appendix-f");
  script.resize(n);
  return replay(script, scenario_scope("appendix-f"));
}

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& name) {
  for (const auto& r : rs) {
    if (r.name == name) return r;
  }
  throw std::logic_error("no check named " + name);
}

int bound(const Witness& w, const std::string& name) {
  const Binding* b = w.find(name);
  REQUIRE(b != nullptr);
  return b->value;
}

bool in_sent(const SentState& s, const Witness& w) {
  for (const auto& m : w.messages) {
    if (!s.contains(m)) return false;
  }
  return true;
}

// Substitutes the witness back into the named predicate and reports whether
// the predicate is indeed false there.
bool witness_refutes(const CheckResult& r, const SentState& s, const Scope& scope) {
  const Witness& w = r.witness;
  if (!in_sent(s, w)) return false;
  const int no_slot = -1;
  const std::string& n = r.name;
  if (n == "TypeOK") {
    return w.messages.size() == 1 &&
           !check_type_ok(SentState(std::vector<Message>{w.messages[0]}), scope).holds;
  }
  if (n == "Agree") {
    const int x = bound(w, "v1"), y = bound(w, "v2");
    const int slot = scope.multi() ? bound(w, "s") : no_slot;
    if (x == y || w.quorums.size() != 2) return false;
    for (int i = 0; i < 2; ++i) {
      for (int a : w.quorums[i].second) {
        bool ok = false;
        for (const auto& m : s) {
          ok = ok || (m.type == MsgType::TwoB && m.sender == a && m.slot.index == slot && m.val.id == (i ? y : x));
        }
        if (!ok) return false;
      }
    }
    return true;
  }
  if (n == "VotedOnce") {
    const auto& m = w.messages.at(0);
    const auto& m2 = w.messages.at(1);
    return m.type == MsgType::TwoB && m2.type == MsgType::TwoB && m.bal == m2.bal && m.slot == m2.slot &&
           m.val != m2.val;
  }
  if (n == "I14" || n == "I31") {
    const auto& m = w.messages.at(0);
    const auto& m2 = w.messages.at(1);
    return m.type == MsgType::TwoA && m2.type == MsgType::TwoA && m.bal == m2.bal && !(m == m2);
  }
  const Message& m = w.messages.at(0);
  if (n == "VotedInv" || n == "I13") {
    const int b = m.bal.value;
    const int slot = m.slot.index;
    const int b2v = bound(w, "b2");
    return (n == "I13" ? m.type == MsgType::TwoA : m.type == MsgType::TwoB) && b2v < b &&
           !oracle::quorum_ok_at(s, m.val.id, b2v, slot, scope) && !oracle::safe_at(s, m.val.id, b, slot, scope);
  }
  if (n == "I11") {
    return m.type == MsgType::OneB && m.max_vbal.value != -1 &&
           !oracle::voted(s, m.sender, m.max_vbal.value, no_slot, m.max_val.id);
  }
  if (n == "I12") {
    const int b = bound(w, "b"), v = bound(w, "v");
    return m.type == MsgType::OneB && m.max_vbal.value < b && b < m.bal.value && oracle::voted(s, m.sender, b, no_slot, v);
  }
  if (n == "I15") {
    return m.type == MsgType::TwoB && !s.contains(basic::two_a(m.bal, m.val));
  }
  if (n == "I26") {
    const int b = bound(w, "b"), slot = bound(w, "s"), v = bound(w, "v");
    if (m.type != MsgType::OneB || !(b < m.bal.value) || !oracle::voted(s, m.sender, b, slot, v)) return false;
    for (const auto& r2 : m.voted) {
      if (r2.slot.index == slot && r2.bal.value >= b) return false;
    }
    return true;
  }
  if (n == "I27" || n == "I28") {
    const Vote r2{Ballot{bound(w, "r.bal")}, Slot{bound(w, "r.slot")}, Value{bound(w, "r.val")}};
    if (m.type != MsgType::OneB || std::find(m.voted.begin(), m.voted.end(), r2) == m.voted.end()) return false;
    if (n == "I28") return !oracle::voted(s, m.sender, r2.bal.value, r2.slot.index, r2.val.id);
    const int b = bound(w, "b"), v = bound(w, "v");
    return r2.bal.value < b && b < m.bal.value && oracle::voted(s, m.sender, b, r2.slot.index, v);
  }
  if (n == "I29") {
    const Decree d{Slot{bound(w, "d.slot")}, Value{bound(w, "d.val")}};
    const int b2v = bound(w, "b2");
    return m.type == MsgType::TwoA && std::find(m.decrees.begin(), m.decrees.end(), d) != m.decrees.end() &&
           b2v < m.bal.value && !oracle::quorum_ok_at(s, d.val.id, b2v, d.slot.index, scope);
  }
  if (n == "I30") {
    const int slot = bound(w, "d1.slot");
    int count = 0;
    for (const auto& d : m.decrees) count += d.slot.index == slot ? 1 : 0;
    return m.type == MsgType::TwoA && count >= 2;
  }
  if (n == "I32") {
    if (m.type != MsgType::TwoB) return false;
    for (const auto& m2 : s) {
      if (m2.type != MsgType::TwoA || m2.bal != m.bal) continue;
      for (const auto& d : m2.decrees) {
        if (d.slot == m.slot && d.val == m.val) return false;
      }
    }
    return true;
  }
  return false;
}

Message random_basic_message(std::mt19937_64& rng, const Scope& scope) {
  const int a = static_cast<int>(rng() % scope.n_acceptors);
  const int b = static_cast<int>(rng() % scope.ballot_bound);
  const int v = static_cast<int>(rng() % scope.n_values());
  switch (rng() % 4) {
    case 0: return basic::one_a(Ballot{b});
    case 1: {
      const int c = static_cast<int>(rng() % (scope.ballot_bound + 1)) - 1;
      return basic::one_b(a, Ballot{b}, Ballot{c}, c < 0 ? Value::none() : Value{v});
    }
    case 2: return basic::two_a(Ballot{b}, Value{v});
    default: return basic::two_b(a, Ballot{b}, Value{v});
  }
}

Message random_multi_message(std::mt19937_64& rng, const Scope& scope) {
  const int a = static_cast<int>(rng() % scope.n_acceptors);
  const int p = static_cast<int>(rng() % scope.n_proposers);
  const int b = static_cast<int>(rng() % scope.ballot_bound);
  auto slot = [&] { return Slot{static_cast<int>(rng() % scope.slot_bound)}; };
  auto val = [&] { return Value{static_cast<int>(rng() % scope.n_values())}; };
  switch (rng() % 5) {
    case 0: return multi::one_a(p, Ballot{b});
    case 1: {
      std::vector<Vote> voted;
      for (int i = static_cast<int>(rng() % 3); i > 0; --i) {
        voted.push_back(Vote{Ballot{static_cast<int>(rng() % scope.ballot_bound)}, slot(), val()});
      }
      normalize_set(voted);
      return multi::one_b(a, Ballot{b}, voted);
    }
    case 2: {
      std::vector<Decree> ds;
      for (int i = static_cast<int>(rng() % 3); i > 0; --i) ds.push_back(Decree{slot(), val()});
      normalize_set(ds);
      return multi::two_a(p, Ballot{b}, ds);
    }
    case 3: return multi::two_b(a, Ballot{b}, slot(), val());
    default: return multi::preempt(p, Ballot{b});
  }
}

}  // namespace

TEST_CASE("voted_for_in") {
  CHECK_FALSE(voted_for_in(SentState{}, 0, v1, b0));
  const SentState s(std::vector<Message>{basic::two_b(0, b0, v1)});
  CHECK(voted_for_in(s, 0, v1, b0));
  CHECK_FALSE(voted_for_in(s, 0, v2, b0));
  CHECK(voted_for_in(appendix_f_prefix(5), 0, v1, b0));

  CHECK_FALSE(voted_for_in_multi(SentState{}, 0, b0, Slot{0}, v1));
  const SentState m(std::vector<Message>{multi::two_b(0, b0, Slot{0}, v1)});
  CHECK(voted_for_in_multi(m, 0, b0, Slot{0}, v1));
  CHECK_FALSE(voted_for_in_multi(m, 0, b0, Slot{1}, v1));
}

TEST_CASE("chosen") {
  const auto q = majority_quorums(3);
  CHECK_FALSE(chosen(SentState{}, v1, q));
  CHECK(chosen(appendix_f_prefix(6), v1, q));
  CHECK_FALSE(chosen(appendix_f_prefix(6), v2, q));
  const SentState end = appendix_f_prefix(10);
  CHECK(chosen(end, v1, q));
  CHECK(chosen(end, v2, q));

  // Quorum members may vote at different ballots; ChosenIn needs one ballot.
  const SentState split(std::vector<Message>{basic::two_b(0, b0, v1), basic::two_b(1, b1, v1)});
  CHECK(chosen(split, v1, q));
  CHECK_FALSE(chosen_in(split, v1, b0, q));
  CHECK_FALSE(chosen_in(split, v1, b1, q));
  CHECK(chosen_in(appendix_f_prefix(6), v1, b0, q));

  const SentState m(std::vector<Message>{multi::two_b(0, b0, Slot{1}, v2), multi::two_b(2, b0, Slot{1}, v2)});
  CHECK(chosen_multi(m, Slot{1}, v2, q));
  CHECK_FALSE(chosen_multi(m, Slot{0}, v2, q));
}

TEST_CASE("wont_vote_in") {
  const Scope scope = make_basic_scope(Variant::Basic, 3, 3, 2);
  CHECK_FALSE(wont_vote_in(SentState{}, 0, b1, scope));
  const SentState above(std::vector<Message>{basic::one_b(0, b2, Ballot::none(), Value::none())});
  CHECK(wont_vote_in(above, 0, b1, scope));
  const SentState voted(std::vector<Message>{basic::one_b(0, b2, Ballot::none(), Value::none()), basic::two_b(0, b1, v1)});
  CHECK_FALSE(wont_vote_in(voted, 0, b1, scope));
}

TEST_CASE("safe_at") {
  const Scope scope = make_basic_scope(Variant::Basic, 3, 2, 2);
  for (int v = 0; v < 2; ++v) CHECK(safe_at(SentState{}, Value{v}, b0, scope));
  CHECK(safe_at(appendix_f_prefix(3), v1, b0, scope));
  const SentState q(std::vector<Message>{basic::two_b(0, b0, v1), basic::two_b(1, b0, v1)});
  CHECK(safe_at(q, v1, b1, scope));
  CHECK_FALSE(safe_at(q, v2, b1, scope));
}

TEST_CASE("operators agree with the naive definitions") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    const bool multi = round % 2;
    const Scope scope = multi ? make_multi_scope(Variant::MultiPreempt, 3, 2, 3, 2, 2)
                              : make_basic_scope(Variant::Basic, 3, 3, 2);
    SentState s;
    for (int i = static_cast<int>(rng() % 12); i > 0; --i) {
      s.insert(multi ? random_multi_message(rng, scope) : random_basic_message(rng, scope));
    }
    const int slots = multi ? scope.slot_bound : 1;
    for (int b = 0; b < scope.ballot_bound; ++b) {
      for (int si = 0; si < slots; ++si) {
        const int slot = multi ? si : -1;
        for (int v = 0; v < scope.n_values(); ++v) {
          const bool want = oracle::safe_at(s, v, b, slot, scope);
          const bool got = multi ? safe_at_multi(s, Ballot{b}, Slot{slot}, Value{v}, scope)
                                 : safe_at(s, Value{v}, Ballot{b}, scope);
          REQUIRE(want == got);
        }
        for (int a = 0; a < scope.n_acceptors; ++a) {
          const bool want = oracle::wont_vote(s, a, b, slot, scope);
          const bool got = multi ? wont_vote_in_multi(s, a, Ballot{b}, Slot{slot}, scope)
                                 : wont_vote_in(s, a, Ballot{b}, scope);
          REQUIRE(want == got);
        }
      }
    }
    const bool agree = check_agree(s, scope).holds;
    if (!multi) CHECK(agree == oracle::basic_agree(s, scope));
  }
}

TEST_CASE("type checking") {
  const Scope scope = make_basic_scope(Variant::Basic, 3, 2, 2);
  CHECK(check_type_ok(SentState{}, scope).holds);
  CHECK(check_type_ok(appendix_f_prefix(10), scenario_scope("appendix-f")).holds);
  const SentState out_of_scope(std::vector<Message>{basic::one_a(Ballot{5})});
  CHECK_FALSE(check_type_ok(out_of_scope, scope).holds);
  const SentState bad_acc(std::vector<Message>{basic::two_b(3, b0, v1)});
  CHECK_FALSE(check_type_ok(bad_acc, scope).holds);
  const SentState bad_val(std::vector<Message>{basic::two_a(b0, Value{2})});
  CHECK_FALSE(check_type_ok(bad_val, scope).holds);
  const SentState multi_in_basic(std::vector<Message>{multi::preempt(0, b0)});
  CHECK_FALSE(check_type_ok(multi_in_basic, scope).holds);
  const SentState half_sentinel(std::vector<Message>{basic::one_b(0, b1, Ballot::none(), v1)});
  CHECK_FALSE(check_type_ok(half_sentinel, scope).holds);
}

TEST_CASE("basic message invariants") {
  const Scope unsafe = scenario_scope("appendix-f");
  for (const auto& r : check_msg_inv_basic(SentState{}, unsafe)) CHECK(r.holds);
  const auto rs = check_msg_inv_basic(appendix_f_prefix(8), unsafe);
  const auto& i14 = find(rs, "I14");
  REQUIRE_FALSE(i14.holds);
  CHECK(i14.witness.messages == std::vector<Message>{basic::two_a(b0, v1), basic::two_a(b0, v2)});
  CHECK(find(rs, "I11").holds);
  CHECK(find(rs, "I15").holds);

  const Scope scope = make_basic_scope(Variant::Basic, 3, 3, 2);
  const SentState lie(std::vector<Message>{basic::one_b(0, b2, b1, v1)});
  CHECK_FALSE(find(check_msg_inv_basic(lie, scope), "I11").holds);
  const SentState skipped(std::vector<Message>{basic::one_b(0, b2, Ballot::none(), Value::none()), basic::two_b(0, b1, v1)});
  CHECK_FALSE(find(check_msg_inv_basic(skipped, scope), "I12").holds);
  const SentState orphan(std::vector<Message>{basic::two_b(0, b1, v1)});
  CHECK_FALSE(find(check_msg_inv_basic(orphan, scope), "I15").holds);
}

TEST_CASE("multi message invariants") {
  const Scope scope = make_multi_scope(Variant::MultiPreempt, 3, 1, 3, 2, 2);
  for (const auto& r : check_msg_inv_multi(SentState{}, scope)) CHECK(r.holds);
  const SentState twice(std::vector<Message>{multi::two_a(0, b0, {Decree{Slot{0}, v1}, Decree{Slot{0}, v2}})});
  CHECK_FALSE(find(check_msg_inv_multi(twice, scope), "I30").holds);
  const SentState unreported(std::vector<Message>{multi::two_b(0, b0, Slot{0}, v1), multi::one_b(0, b1, {})});
  CHECK_FALSE(find(check_msg_inv_multi(unreported, scope), "I26").holds);
  const SentState invented(std::vector<Message>{multi::one_b(0, b1, {Vote{b0, Slot{0}, v1}})});
  CHECK_FALSE(find(check_msg_inv_multi(invented, scope), "I28").holds);
  const SentState two_2a(std::vector<Message>{multi::two_a(0, b0, {}), multi::two_a(1, b0, {})});
  CHECK_FALSE(find(check_msg_inv_multi(two_2a, scope), "I31").holds);
  const SentState orphan(std::vector<Message>{multi::two_b(0, b0, Slot{1}, v1)});
  CHECK_FALSE(find(check_msg_inv_multi(orphan, scope), "I32").holds);
}

TEST_CASE("agreement and the lemmas on the two-quorum run") {
  const Scope unsafe = scenario_scope("appendix-f");
  CHECK(check_agree(SentState{}, unsafe).holds);
  const SentState end = appendix_f_prefix(10);
  const auto agree = check_agree(end, unsafe);
  REQUIRE_FALSE(agree.holds);
  CHECK(bound(agree.witness, "v1") == 0);
  CHECK(bound(agree.witness, "v2") == 1);
  CHECK(witness_refutes(agree, end, unsafe));

  CHECK_FALSE(check_voted_once(end, unsafe).holds);
  // Both conflicting votes sit at ballot 0, where SafeAt is vacuous.
  CHECK(check_voted_inv(end, unsafe).holds);
  const SentState late(std::vector<Message>{basic::two_b(0, b0, v1), basic::two_b(1, b0, v1), basic::two_b(2, b1, v2)});
  const auto inv = check_voted_inv(late, unsafe);
  REQUIRE_FALSE(inv.holds);
  CHECK(witness_refutes(inv, late, unsafe));

  CHECK(check_voted_once(SentState{}, unsafe).holds);
  CHECK(check_voted_once(SentState(std::vector<Message>{basic::two_b(0, b0, v1), basic::two_b(1, b0, v2)}), unsafe).holds == false);
  CHECK(check_voted_inv(SentState{}, unsafe).holds);
}

TEST_CASE("SafeAtStable") {
  const Scope scope = make_basic_scope(Variant::Basic, 3, 2, 2);
  const SentState s = appendix_f_prefix(3);
  CHECK(check_safe_at_stable(s, s, scope).holds);
  SentState with_1a = s;
  with_1a.insert(basic::one_a(b1));
  CHECK(check_safe_at_stable(s, with_1a, scope).holds);

  // Not a protocol step, but shows the witness: a 1b above 0 from a
  // non-voter makes v2 unsafe at 1 once two others voted v1.
  const SentState before(std::vector<Message>{basic::two_b(0, b0, v2)});
  SentState after = before;
  after.insert(basic::one_b(1, b1, Ballot::none(), Value::none()));
  after.insert(basic::one_b(2, b1, Ballot::none(), Value::none()));
  const auto r = check_safe_at_stable(before, after, scope);
  if (!r.holds) {
    const int v = bound(r.witness, "v"), b = bound(r.witness, "b");
    CHECK(oracle::safe_at(before, v, b, -1, scope));
    CHECK_FALSE(oracle::safe_at(after, v, b, -1, scope));
  }
}

TEST_CASE("every failing check carries a witness that refutes it") {
  std::mt19937_64 rng(5);
  std::size_t failures_seen = 0;
  for (int round = 0; round < 600; ++round) {
    const int kind = round % 3;
    Scope scope = kind == 0   ? make_basic_scope(Variant::BasicUnsafe2a, 3, 3, 2)
                  : kind == 1 ? make_multi_scope(Variant::MultiPreempt, 3, 2, 3, 2, 2, 2)
                              : make_basic_scope(Variant::Basic, 3, 3, 3);
    SentState s;
    if (round % 2 == 0) {
      s = simulate(scope, rng(), 25).final_state;
    } else {
      for (int i = static_cast<int>(rng() % 10); i > 0; --i) {
        s.insert(scope.multi() ? random_multi_message(rng, scope) : random_basic_message(rng, scope));
      }
    }
    for (const auto& r : check_state(s, scope)) {
      CHECK(r.holds == r.witness.empty());
      if (r.holds || r.name == "TypeOK") continue;
      ++failures_seen;
      CHECK_MESSAGE(witness_refutes(r, s, scope), r.name);
    }
  }
  CHECK(failures_seen > 100);
}

TEST_CASE("check names") {
  const Scope basic = make_basic_scope(Variant::Basic, 3, 1, 1);
  CHECK(state_check_names(basic) ==
        std::vector<std::string>{"TypeOK", "I11", "I12", "I13", "I14", "I15", "VotedOnce", "VotedInv", "Agree"});
  const Scope multi = make_multi_scope(Variant::Multi, 3, 1, 1, 1, 1);
  CHECK(inductive_check_names(multi).size() == 8);
  const auto rs = check_state(SentState{}, multi);
  CHECK(rs.size() == state_check_names(multi).size());
}
