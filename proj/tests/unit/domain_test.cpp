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

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "paxos_hist/quorum.hpp"
#include "paxos_hist/scope.hpp"
#include "paxos_hist/sent_state.hpp"

using namespace paxos_hist;

TEST_CASE("ballot and value sentinels order below real ones") {
  CHECK(Ballot::none() < Ballot{0});
  CHECK(Ballot::none().is_none());
  CHECK_FALSE(Ballot{0}.is_none());
  CHECK(Value::none().is_none());
  CHECK(Value::none() < Value{0});
}

TEST_CASE("sent state behaves as a set") {
  const Message a = basic::one_a(Ballot{0});
  const Message b = basic::two_a(Ballot{0}, Value{1});
  SentState s;
  CHECK(s.empty());
  CHECK(s.insert(b));
  CHECK(s.insert(a));
  CHECK_FALSE(s.insert(a));
  CHECK(s.size() == 2);
  CHECK(s.contains(a));
  CHECK_FALSE(s.contains(basic::one_a(Ballot{1})));
  CHECK(std::is_sorted(s.begin(), s.end()));

  SentState t(std::vector<Message>{b, a, a});
  CHECK(t == s);
  CHECK(SentState{}.is_subset_of(s));
  CHECK(s.is_subset_of(s));
  const std::vector<Message> extra{basic::one_a(Ballot{1})};
  const SentState u = s.with(extra);
  CHECK(s.is_subset_of(u));
  CHECK_FALSE(u.is_subset_of(s));
  CHECK(u.size() == 3);
}

TEST_CASE("canonical encoding of the empty state is fixed") {
  CHECK(canonical_encoding(SentState{}) == canonical_encoding(SentState{}));
  CHECK(decode_state(canonical_encoding(SentState{})).empty());
}

TEST_CASE("canonical encoding ignores insertion order") {
  const Message m1 = basic::one_b(0, Ballot{1}, Ballot{0}, Value{0});
  const Message m2 = basic::two_b(2, Ballot{0}, Value{1});
  SentState x, y;
  x.insert(m1);
  x.insert(m2);
  y.insert(m2);
  y.insert(m1);
  CHECK(canonical_encoding(x) == canonical_encoding(y));
  SentState single_a, single_b;
  single_a.insert(m1);
  single_b.insert(m1);
  single_b.insert(m1);
  CHECK(canonical_encoding(single_a) == canonical_encoding(single_b));
}

TEST_CASE("canonical encoding is injective over a message universe") {
  const Scope scope = make_basic_scope(Variant::Basic, 2, 2, 2);
  auto universe = oracle::basic_universe(scope);
  universe.resize(12);
  std::set<std::string> seen;
  for (unsigned mask = 0; mask < (1U << universe.size()); ++mask) {
    SentState s;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (mask & (1U << i)) s.insert(universe[i]);
    }
    const std::string enc = canonical_encoding(s);
    CHECK(seen.insert(enc).second);
    CHECK(decode_state(enc) == s);
  }
}

TEST_CASE("multi messages round-trip through the encoding") {
  SentState s;
  s.insert(multi::one_a(1, Ballot{3}));
  s.insert(multi::one_b(2, Ballot{3}, {Vote{Ballot{1}, Slot{0}, Value{1}}, Vote{Ballot{2}, Slot{1}, Value{0}}}));
  s.insert(multi::two_a(0, Ballot{2}, {Decree{Slot{0}, Value{0}}, Decree{Slot{1}, Value{1}}}));
  s.insert(multi::two_b(1, Ballot{2}, Slot{1}, Value{1}));
  s.insert(multi::preempt(0, Ballot{4}));
  CHECK(decode_state(canonical_encoding(s)) == s);
}

TEST_CASE("decoding rejects malformed bytes") {
  CHECK_THROWS_AS(decode_state(""), std::invalid_argument);
  CHECK_THROWS_AS(decode_state("XX"), std::invalid_argument);
  std::string enc = canonical_encoding(SentState(std::vector<Message>{basic::one_a(Ballot{0})}));
  CHECK_THROWS_AS(decode_state(enc.substr(0, enc.size() - 1)), std::invalid_argument);
  CHECK_THROWS_AS(decode_state(enc + "z"), std::invalid_argument);
}

TEST_CASE("majority quorums") {
  SUBCASE("three acceptors") {
    const QuorumSystem q = majority_quorums(3);
    std::set<Quorum> got(q.begin(), q.end());
    CHECK(got == std::set<Quorum>{{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}});
  }
  SUBCASE("singleton") {
    const std::vector<AcceptorId> one{7};
    const QuorumSystem q = majority_quorums(one);
    CHECK(q.size() == 1);
    CHECK(*q.begin() == Quorum{7});
  }
  SUBCASE("four acceptors") {
    const QuorumSystem q = majority_quorums(4);
    CHECK(q.size() == 5);
    for (const auto& x : q) CHECK(x.size() >= 3);
  }
}

TEST_CASE("quorum intersection validation") {
  CHECK_FALSE(validate_quorum_system(majority_quorums(3)).has_value());
  const auto bad = validate_quorum_system(QuorumSystem({{1}, {2}}));
  REQUIRE(bad.has_value());
  CHECK(bad->first == Quorum{1});
  CHECK(bad->second == Quorum{2});
  CHECK_FALSE(validate_quorum_system(QuorumSystem({{1, 2}, {2, 3}, {1, 3}})).has_value());
  CHECK(validate_quorum_system(QuorumSystem({Quorum{}})).has_value());
}

TEST_CASE("scope validation") {
  Scope s = make_basic_scope(Variant::Basic, 3, 2, 2);
  CHECK_NOTHROW(validate_scope(s));
  CHECK(s.value_domain == std::vector<std::string>{"v1", "v2"});

  Scope zero = s;
  zero.ballot_bound = 0;
  CHECK_THROWS_AS(validate_scope(zero), ScopeError);

  Scope dup = s;
  dup.value_domain = {"x", "x"};
  CHECK_THROWS_AS(validate_scope(dup), ScopeError);

  Scope outside = s;
  outside.quorums = QuorumSystem({{0, 5}});
  CHECK_THROWS_AS(validate_scope(outside), ScopeError);

  Scope disjoint = s;
  disjoint.quorums = QuorumSystem({{0}, {1}});
  CHECK_THROWS_AS(validate_scope(disjoint), ScopeError);

  Scope depth = s;
  depth.depth_limit = -1;
  CHECK_THROWS_AS(validate_scope(depth), ScopeError);

  Scope m = make_multi_scope(Variant::MultiPreempt, 3, 2, 2, 2, 2, 1);
  CHECK_NOTHROW(validate_scope(m));
  m.slot_bound = 0;
  CHECK_THROWS_AS(validate_scope(m), ScopeError);
}

TEST_CASE("variant names") {
  for (auto v : {Variant::Basic, Variant::BasicUnsafe2a, Variant::Multi, Variant::MultiPreempt}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  CHECK_FALSE(parse_variant("paxos").has_value());
  CHECK(is_multi(Variant::MultiPreempt));
  CHECK_FALSE(is_multi(Variant::BasicUnsafe2a));
}
