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

// Randomized property checks shared by the unit tests and the acceptance
// runner. Each returns how many cases ran and the first counterexample.

#ifndef PAXOS_HIST_TESTS_PROPERTIES_HPP_
#define PAXOS_HIST_TESTS_PROPERTIES_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "paxos_hist/invariants.hpp"
#include "paxos_hist/protocol.hpp"
#include "paxos_hist/protocol_basic.hpp"
#include "paxos_hist/protocol_multi.hpp"
#include "paxos_hist/simulator.hpp"

namespace paxos_hist::props {

struct Outcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Scope random_basic_scope(std::mt19937_64& rng) {
  const Variant v = rng() % 2 ? Variant::Basic : Variant::BasicUnsafe2a;
  return make_basic_scope(v, pick(rng, 1, 4), pick(rng, 1, 3), pick(rng, 1, 3));
}

inline Scope random_multi_scope(std::mt19937_64& rng) {
  const Variant v = rng() % 2 ? Variant::Multi : Variant::MultiPreempt;
  return make_multi_scope(v, pick(rng, 1, 3), pick(rng, 1, 2), pick(rng, 1, 3), pick(rng, 1, 2),
                          pick(rng, 1, 2), pick(rng, 0, 2));
}

inline Scope random_scope(std::mt19937_64& rng) {
  return rng() % 2 ? random_basic_scope(rng) : random_multi_scope(rng);
}

inline SentState random_reachable(const Scope& scope, std::mt19937_64& rng, int max_steps = 30) {
  return simulate(scope, rng(), static_cast<std::size_t>(pick(rng, 0, max_steps))).final_state;
}

inline std::vector<Vote> random_votes(std::mt19937_64& rng) {
  std::vector<Vote> out;
  const int n = pick(rng, 0, 8);
  for (int i = 0; i < n; ++i) {
    out.push_back(Vote{Ballot{pick(rng, 0, 3)}, Slot{pick(rng, 0, 2)}, Value{pick(rng, 0, 2)}});
  }
  normalize_set(out);
  return out;
}

inline Outcome partial_bmax_idempotent(std::size_t cases, std::uint64_t seed) {
  Outcome o{"partial_bmax idempotence"};
  std::mt19937_64 rng(seed);
  for (; o.cases < cases; ++o.cases) {
    const auto votes = random_votes(rng);
    const auto once = multi::partial_bmax(votes);
    const auto twice = multi::partial_bmax(once);
    if (once != twice) o.fail("case " + std::to_string(o.cases));
    // A subset whose members each top their own slot.
    for (const auto& t : once) {
      if (!std::binary_search(votes.begin(), votes.end(), t)) o.fail("not a subset");
      for (const auto& u : votes) {
        if (u.slot == t.slot && u.bal > t.bal) o.fail("not maximal");
      }
    }
  }
  return o;
}

inline bool all_hold(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.holds; });
}

inline bool unique_slots(const std::vector<Decree>& ds) {
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    if (ds[i].slot == ds[i + 1].slot) return false;  // sorted by slot first
  }
  return true;
}

/// Only states where TypeOK and every MsgInv conjunct hold count as cases.
inline Outcome bmax_unique_slots(std::size_t cases, std::uint64_t seed) {
  Outcome o{"bmax slot uniqueness on MsgInv states"};
  std::mt19937_64 rng(seed);
  std::size_t attempts = 0;
  while (o.cases < cases && attempts++ < cases * 50) {
    const Scope scope = random_multi_scope(rng);
    const SentState s = random_reachable(scope, rng, 40);
    if (!check_type_ok(s, scope).holds || !all_hold(check_msg_inv_multi(s, scope))) continue;
    ++o.cases;
    for (int b = 0; b < scope.ballot_bound; ++b) {
      std::vector<Message> ones;
      for (const auto& m : s) {
        if (m.type == MsgType::OneB && m.bal.value == b) ones.push_back(m);
      }
      for (const auto& q : scope.quorums) {
        if (!unique_slots(multi::bmax(multi::vs(ones, q)))) {
          o.fail("ballot " + std::to_string(b) + " state size " + std::to_string(s.size()));
        }
      }
    }
    for (int a = 0; a < scope.n_acceptors; ++a) {
      if (!unique_slots(multi::bmax(multi::voteds(s, a)))) o.fail("voteds of an acceptor");
    }
  }
  if (o.cases < cases) o.fail("could not generate enough MsgInv states");
  return o;
}

inline Outcome max_prop_single_ballot(std::size_t cases, std::uint64_t seed) {
  Outcome o{"max_prop single ballot"};
  std::mt19937_64 rng(seed);
  for (; o.cases < cases; ++o.cases) {
    const Scope scope = random_basic_scope(rng);
    const SentState s = random_reachable(scope, rng);
    for (int a = 0; a < scope.n_acceptors; ++a) {
      const auto props = basic::max_prop(s, a);
      if (props.empty()) {
        o.fail("empty max_prop");
        continue;
      }
      for (const auto& r : props) {
        if (r.bal != props.front().bal) o.fail("two ballots in max_prop");
      }
    }
  }
  return o;
}

/// Every successor of every sampled state contains it, and grows it by
/// exactly the action's delta.
inline Outcome actions_monotone(std::size_t cases, std::uint64_t seed) {
  Outcome o{"monotonicity of every action"};
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> per_kind(5, 0);
  for (; o.cases < cases; ++o.cases) {
    const Scope scope = random_scope(rng);
    const SentState s = random_reachable(scope, rng);
    for (const auto& succ : successors(s, scope)) {
      ++per_kind[static_cast<std::size_t>(succ.action.kind)];
      if (!s.is_subset_of(succ.next)) o.fail(std::string("shrank: ") + to_string(succ.action.kind));
      if (succ.next.size() != s.size() + succ.action.delta.size() || succ.action.delta.empty()) {
        o.fail(std::string("delta size: ") + to_string(succ.action.kind));
      }
      for (const auto& m : succ.action.delta) {
        if (s.contains(m) || !succ.next.contains(m)) o.fail("delta not new");
      }
    }
  }
  for (std::size_t k = 0; k < per_kind.size(); ++k) {
    if (per_kind[k] == 0) o.fail(std::string("never exercised: ") + to_string(static_cast<ActionKind>(k)));
  }
  return o;
}

inline Outcome encoding_order_independent(std::size_t cases, std::uint64_t seed) {
  Outcome o{"canonical encoding set-order independence"};
  std::mt19937_64 rng(seed);
  for (; o.cases < cases; ++o.cases) {
    const Scope scope = random_scope(rng);
    const SentState s = random_reachable(scope, rng);
    std::vector<Message> msgs = s.messages();
    const std::string enc = canonical_encoding(s);
    for (int round = 0; round < 3; ++round) {
      std::shuffle(msgs.begin(), msgs.end(), rng);
      SentState built;
      for (const auto& m : msgs) built.insert(m);
      std::vector<Message> doubled = msgs;
      doubled.insert(doubled.end(), msgs.begin(), msgs.end());
      std::shuffle(doubled.begin(), doubled.end(), rng);
      if (canonical_encoding(built) != enc || canonical_encoding(SentState(doubled)) != enc) {
        o.fail("order changed the encoding");
      }
    }
    if (decode_state(enc) != s) o.fail("decode(encode(s)) != s");
    if (!msgs.empty()) {
      SentState smaller(std::vector<Message>(msgs.begin() + 1, msgs.end()));
      if (canonical_encoding(smaller) == enc) o.fail("distinct states share an encoding");
    }
  }
  return o;
}

inline bool same_record(const RunRecord& x, const RunRecord& y) {
  if (x.trace != y.trace || x.final_state != y.final_state || x.chosen != y.chosen) return false;
  if (x.halted_on_failure != y.halted_on_failure || x.deadlocked != y.deadlocked) return false;
  if (x.checks.size() != y.checks.size()) return false;
  for (std::size_t i = 0; i < x.checks.size(); ++i) {
    if (x.checks[i].name != y.checks[i].name || x.checks[i].holds != y.checks[i].holds) return false;
  }
  return true;
}

inline Outcome simulate_seed_deterministic(std::size_t cases, std::uint64_t seed) {
  Outcome o{"seed determinism of simulate"};
  std::mt19937_64 rng(seed);
  for (; o.cases < cases; ++o.cases) {
    const Scope scope = random_scope(rng);
    const std::uint64_t s = rng();
    const auto n = static_cast<std::size_t>(pick(rng, 0, 40));
    if (!same_record(simulate(scope, s, n), simulate(scope, s, n))) {
      o.fail("seed " + std::to_string(s));
    }
  }
  return o;
}

inline std::vector<Outcome> all(std::size_t cases, std::uint64_t seed) {
  return {partial_bmax_idempotent(cases, seed),       bmax_unique_slots(cases, seed + 1),
          max_prop_single_ballot(cases, seed + 2),    actions_monotone(cases, seed + 3),
          encoding_order_independent(cases, seed + 4), simulate_seed_deterministic(cases, seed + 5)};
}

}  // namespace paxos_hist::props

#endif  // PAXOS_HIST_TESTS_PROPERTIES_HPP_
