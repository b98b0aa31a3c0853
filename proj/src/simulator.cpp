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

#include "paxos_hist/simulator.hpp"

#include <limits>
#include <random>

#include "paxos_hist/explorer.hpp"

namespace paxos_hist {

namespace {

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t excess = (max % n + 1) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t x = rng();
    if (x <= max - excess) return x % n;
  }
}

double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(std::mt19937_64& rng, const std::vector<Successor>& succ,
                 const SimulateOptions& options) {
  if (options.kind_weights.empty()) return uniform_index(rng, succ.size());
  std::vector<double> w(succ.size());
  double total = 0;
  for (std::size_t i = 0; i < succ.size(); ++i) {
    auto it = options.kind_weights.find(succ[i].action.kind);
    w[i] = it == options.kind_weights.end() ? 1.0 : std::max(0.0, it->second);
    total += w[i];
  }
  if (total <= 0) return uniform_index(rng, succ.size());
  double u = unit_real(rng) * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < succ.size(); ++i) {
    if (w[i] <= 0) continue;
    if (u < w[i]) return i;
    u -= w[i];
    last = i;
  }
  return last;
}

std::vector<CheckResult> online_checks(const SentState& s, const Scope& scope) {
  return {check_type_ok(s, scope), check_agree(s, scope)};
}

bool all_hold(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.holds) return false;
  }
  return true;
}

Scope appendix_f_scope(Variant variant, const ScenarioOverrides& o) {
  const int acceptors = o.acceptors.value_or(3);
  if (acceptors < 3) throw ScopeError("scenario needs at least 3 acceptors");
  Scope scope = make_basic_scope(variant, acceptors, o.ballots.value_or(1), o.values.value_or(2));
  validate_scope(scope);
  return scope;
}

// Ten single-process steps: one proposer at ballot 0 gets a quorum {P1, P2}
// to accept v1, then a second 2a at the same ballot gets {P1, P3} to
// accept v2.
std::vector<ActionInstance> appendix_f_script(const Scope& scope) {
  const Ballot b{0};
  const Value v1{0};
  const Value v2{scope.n_values() > 1 ? 1 : 0};
  const AcceptorId p1 = 0, p2 = 1, p3 = 2;
  const Proposal none{Ballot::none(), Value::none()};
  const Message m1a = basic::one_a(b);
  const Message b1 = basic::one_b(p1, b, none.bal, none.val);
  const Message b2 = basic::one_b(p2, b, none.bal, none.val);
  const Message b3 = basic::one_b(p3, b, none.bal, none.val);

  auto phase1a = [&] {
    ActionInstance a;
    a.kind = ActionKind::Phase1a;
    a.ballot = b;
    return a;
  };
  auto phase1b = [&](AcceptorId acc) {
    ActionInstance a;
    a.kind = ActionKind::Phase1b;
    a.acceptor = acc;
    a.msg = m1a;
    a.proposal = none;
    return a;
  };
  auto phase2a = [&](Value v, Quorum q, std::vector<Message> support) {
    ActionInstance a;
    a.kind = ActionKind::Phase2a;
    a.ballot = b;
    a.value = v;
    a.quorum = std::move(q);
    a.support = std::move(support);
    return a;
  };
  auto phase2b = [&](AcceptorId acc, Value v) {
    ActionInstance a;
    a.kind = ActionKind::Phase2b;
    a.acceptor = acc;
    a.msg = basic::two_a(b, v);
    return a;
  };
  return {phase1a(),
          phase1b(p1),
          phase1b(p2),
          phase2a(v1, {p1, p2}, {b1, b2}),
          phase2b(p1, v1),
          phase2b(p2, v1),
          phase1b(p3),
          phase2a(v2, {p1, p3}, {b1, b3}),
          phase2b(p1, v2),
          phase2b(p3, v2)};
}

}  // namespace

std::vector<Decree> chosen_values(const SentState& s, const Scope& scope) {
  std::vector<Decree> out;
  if (!scope.multi()) {
    for (int v = 0; v < scope.n_values(); ++v) {
      if (chosen(s, Value{v}, scope.quorums)) out.push_back(Decree{Slot{}, Value{v}});
    }
  } else {
    for (int slot = 0; slot < scope.slot_bound; ++slot) {
      for (int v = 0; v < scope.n_values(); ++v) {
        if (chosen_multi(s, Slot{slot}, Value{v}, scope.quorums)) {
          out.push_back(Decree{Slot{slot}, Value{v}});
        }
      }
    }
  }
  return out;
}

RunRecord simulate(const Scope& scope, std::uint64_t seed, std::size_t max_steps,
                   const SimulateOptions& options) {
  validate_scope(scope);
  RunRecord rec;
  rec.scope = scope;
  rec.seed = seed;
  std::mt19937_64 rng(seed);
  SentState s;
  rec.checks = online_checks(s, scope);
  while (rec.trace.size() < max_steps) {
    auto succ = successors(s, scope);
    if (succ.empty()) {
      rec.deadlocked = true;
      break;
    }
    Successor& next = succ[pick(rng, succ, options)];
    rec.trace.push_back(std::move(next.action));
    s = std::move(next.next);
    rec.checks = online_checks(s, scope);
    if (!all_hold(rec.checks)) {
      rec.halted_on_failure = true;
      break;
    }
  }
  rec.final_state = s;
  rec.chosen = chosen_values(s, scope);
  return rec;
}

std::vector<std::string> scenario_names() { return {"appendix-f", "appendix-f-safe"}; }

Scope scenario_scope(const std::string& name, const ScenarioOverrides& overrides) {
  if (name == "appendix-f") return appendix_f_scope(Variant::BasicUnsafe2a, overrides);
  if (name == "appendix-f-safe") return appendix_f_scope(Variant::Basic, overrides);
  throw UnknownScenario("unknown scenario: " + name);
}

std::vector<ActionInstance> scenario_script(const std::string& name,
                                            const ScenarioOverrides& overrides) {
  return appendix_f_script(scenario_scope(name, overrides));
}

RunRecord run_scenario(const std::string& name, const ScenarioOverrides& overrides) {
  const Scope scope = scenario_scope(name, overrides);
  RunRecord rec;
  rec.scope = scope;
  rec.scenario = name;
  SentState s;
  const auto script = appendix_f_script(scope);
  for (std::size_t i = 0; i < script.size(); ++i) {
    ActionInstance act = script[i];
    if (auto f = check_guard(s, act, scope)) {
      rec.disabled = DisabledStep{i, act.kind, *f};
      break;
    }
    recompute_delta(s, act, scope);
    s = s.with(act.delta);
    rec.trace.push_back(std::move(act));
  }
  rec.final_state = s;
  rec.checks = online_checks(s, scope);
  rec.halted_on_failure = !all_hold(rec.checks);
  rec.chosen = chosen_values(s, scope);
  return rec;
}

}  // namespace paxos_hist
