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

#include <set>

#include "oracle.hpp"
#include "paxos_hist/explorer.hpp"
#include "paxos_hist/simulator.hpp"

using namespace paxos_hist;

namespace {

bool same_report(const ExplorationReport& x, const ExplorationReport& y) {
  if (x.states_visited != y.states_visited || x.transitions != y.transitions ||
      x.max_depth_reached != y.max_depth_reached || x.terminal_states != y.terminal_states ||
      x.terminal_encodings != y.terminal_encodings || x.complete != y.complete ||
      x.depth_bounded != y.depth_bounded || x.failure_counts != y.failure_counts ||
      x.violations.size() != y.violations.size() || x.init_satisfies_inv != y.init_satisfies_inv ||
      x.inductive_break.has_value() != y.inductive_break.has_value() ||
      x.inv_without_agree.has_value() != y.inv_without_agree.has_value()) {
    return false;
  }
  for (std::size_t i = 0; i < x.violations.size(); ++i) {
    if (x.violations[i].check.name != y.violations[i].check.name ||
        x.violations[i].trace != y.violations[i].trace || !(x.violations[i].state == y.violations[i].state)) {
      return false;
    }
  }
  if (x.inductive_break && x.inductive_break->trace != y.inductive_break->trace) return false;
  return true;
}

const Violation* violation(const ExplorationReport& r, const std::string& name) {
  for (const auto& v : r.violations) {
    if (v.check.name == name) return &v;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("depth 0 visits only the empty state") {
  Scope scope = make_basic_scope(Variant::Basic, 3, 2, 2);
  scope.depth_limit = 0;
  const auto r = explore(scope);
  CHECK(r.states_visited == 1);
  CHECK(r.transitions == 0);
  CHECK(r.depth_bounded);
  CHECK(r.complete);
  CHECK(r.clean());
}

TEST_CASE("single ballot single value") {
  const auto r = explore(make_basic_scope(Variant::Basic, 3, 1, 1));
  CHECK(r.states_visited == 41);
  CHECK(r.clean());
  CHECK(r.complete);
  CHECK_FALSE(r.depth_bounded);
}

TEST_CASE("exploration matches naive path enumeration") {
  for (const Scope& scope : {make_basic_scope(Variant::Basic, 3, 1, 2), make_basic_scope(Variant::Basic, 3, 1, 1),
                             make_basic_scope(Variant::BasicUnsafe2a, 3, 1, 2)}) {
    ExploreOptions o;
    o.collect_terminal = true;
    const auto r = explore(scope, o);
    const auto naive = oracle::naive_enumerate_basic(scope);
    CHECK(r.states_visited == naive.visited.size());
    CHECK(naive.nodes >= naive.visited.size());
    const std::set<std::string> frontier(r.terminal_encodings.begin(), r.terminal_encodings.end());
    CHECK(frontier.size() == r.terminal_encodings.size());
    CHECK(frontier == naive.final_frontier);
    CHECK(r.terminal_states == naive.final_frontier.size());
    CHECK(r.clean() == !naive.violation);
  }
}

TEST_CASE("parallel and serial reports are identical") {
  const std::vector<Scope> scopes = {make_basic_scope(Variant::Basic, 3, 2, 2),
                                     make_basic_scope(Variant::BasicUnsafe2a, 3, 1, 2),
                                     make_multi_scope(Variant::MultiPreempt, 3, 1, 2, 2, 1, 1)};
  for (const auto& scope : scopes) {
    for (bool inductive : {false, true}) {
      ExploreOptions serial_opts;
      serial_opts.inductive = inductive;
      serial_opts.collect_terminal = true;
      const auto serial = explore_serial(scope, serial_opts);
      for (int workers : {1, 2, 4}) {
        ExploreOptions o = serial_opts;
        o.workers = workers;
        o.batch = workers == 2 ? 7 : o.batch;
        CHECK(same_report(serial, explore(scope, o)));
      }
    }
  }
}

TEST_CASE("state cap stops exploration") {
  Scope scope = make_basic_scope(Variant::Basic, 3, 2, 2);
  scope.state_cap = 100;
  const auto r = explore(scope);
  CHECK_FALSE(r.complete);
  CHECK(r.states_visited <= 100);
  CHECK(same_report(r, explore_serial(scope)));
}

TEST_CASE("unsafe variant violations") {
  const Scope scope = make_basic_scope(Variant::BasicUnsafe2a, 3, 1, 2);
  const auto r = explore(scope);
  REQUIRE_FALSE(r.clean());
  const Violation* agree = violation(r, "Agree");
  REQUIRE(agree != nullptr);
  CHECK(agree->trace.size() <= 10);
  CHECK(violation(r, "I14") != nullptr);
  CHECK(violation(r, "VotedOnce") != nullptr);
  for (std::size_t i = 1; i < r.violations.size(); ++i) {
    CHECK(r.violations[i - 1].trace.size() <= r.violations[i].trace.size());
  }
  for (const auto& v : r.violations) {
    CHECK(replay(v.trace, scope) == v.state);
    SentState prev;
    for (const auto& act : v.trace) {
      CHECK_FALSE(act.delta.empty());
      for (const auto& m : act.delta) CHECK_FALSE(prev.contains(m));
      for (const auto& m : act.delta) prev.insert(m);
    }
  }
  // Shortest paths: every prefix state is reachable no sooner.
  CHECK(agree->trace.size() == 9);
}

TEST_CASE("inductive checking") {
  const auto safe = inductive_check(make_multi_scope(Variant::MultiPreempt, 3, 1, 2, 2, 1, 1));
  CHECK(safe.inductive_mode);
  CHECK(safe.init_satisfies_inv);
  CHECK_FALSE(safe.inductive_break);
  CHECK(safe.clean());

  const Scope unsafe = make_basic_scope(Variant::BasicUnsafe2a, 3, 1, 2);
  const auto r = inductive_check(unsafe);
  REQUIRE(r.inductive_break);
  const auto& br = *r.inductive_break;
  CHECK(br.trace.back().kind == ActionKind::Phase2a);
  CHECK(std::find(br.broken.begin(), br.broken.end(), "I14") != br.broken.end());
  CHECK(replay(br.trace, unsafe) == br.target);
  auto prefix = br.trace;
  prefix.pop_back();
  CHECK(replay(prefix, unsafe) == br.source);
}

TEST_CASE("replay") {
  const Scope scope = make_basic_scope(Variant::Basic, 3, 1, 1);
  CHECK(replay({}, scope).empty());

  const auto unsafe = scenario_scope("appendix-f");
  const SentState end = replay(scenario_script("appendix-f"), unsafe);
  CHECK(end.size() == 10);

  const auto safe_scope = scenario_scope("appendix-f-safe");
  try {
    replay(scenario_script("appendix-f-safe"), safe_scope);
    FAIL("expected a disabled step");
  } catch (const ReplayError& e) {
    CHECK(e.step() == 7);
    CHECK(e.kind() == ActionKind::Phase2a);
    CHECK(e.failure().guard.find("∄ m ∈ sent") != std::string::npos);
  }

  // A recorded delta that the parameters do not produce.
  auto script = scenario_script("appendix-f");
  script.resize(1);
  script[0].delta = {basic::one_a(Ballot{1})};
  CHECK_THROWS_AS(replay(script, unsafe), ReplayError);
}
