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

#include "paxos_hist/scope.hpp"

#include <set>

namespace paxos_hist {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Basic: return "basic";
    case Variant::BasicUnsafe2a: return "basic-unsafe-2a";
    case Variant::Multi: return "multi";
    case Variant::MultiPreempt: return "multi-preempt";
  }
  return "?";
}

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "basic") return Variant::Basic;
  if (name == "basic-unsafe-2a") return Variant::BasicUnsafe2a;
  if (name == "multi") return Variant::Multi;
  if (name == "multi-preempt") return Variant::MultiPreempt;
  return std::nullopt;
}

std::vector<std::string> default_value_domain(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

Scope make_basic_scope(Variant variant, int acceptors, int ballots, int values) {
  Scope s;
  s.variant = variant;
  s.n_acceptors = acceptors;
  s.ballot_bound = ballots;
  s.value_domain = default_value_domain(values);
  s.quorums = majority_quorums(acceptors);
  return s;
}

Scope make_multi_scope(Variant variant, int acceptors, int proposers, int ballots,
                       int values, int slots, int max_new) {
  Scope s = make_basic_scope(variant, acceptors, ballots, values);
  s.n_proposers = proposers;
  s.slot_bound = slots;
  s.max_new_proposals = max_new;
  return s;
}

namespace {
// Keeps subset enumeration and bitmask-indexed loops within sane bounds.
constexpr int kMaxAcceptors = 16;
constexpr int kMaxBound = 64;
}  // namespace

void validate_scope(const Scope& scope) {
  if (scope.n_acceptors < 1 || scope.n_acceptors > kMaxAcceptors) {
    throw ScopeError("acceptors must be in 1.." + std::to_string(kMaxAcceptors));
  }
  if (scope.ballot_bound < 1 || scope.ballot_bound > kMaxBound) {
    throw ScopeError("ballots must be in 1.." + std::to_string(kMaxBound));
  }
  if (scope.value_domain.empty() || scope.n_values() > kMaxBound) {
    throw ScopeError("values must be in 1.." + std::to_string(kMaxBound));
  }
  std::set<std::string> names(scope.value_domain.begin(), scope.value_domain.end());
  if (names.size() != scope.value_domain.size()) throw ScopeError("duplicate value names");
  if (scope.multi()) {
    if (scope.n_proposers < 1 || scope.n_proposers > kMaxBound) {
      throw ScopeError("proposers must be in 1.." + std::to_string(kMaxBound));
    }
    if (scope.slot_bound < 1 || scope.slot_bound > kMaxBound) {
      throw ScopeError("slots must be in 1.." + std::to_string(kMaxBound));
    }
    if (scope.max_new_proposals < 0) throw ScopeError("max-new must be >= 0");
  }
  if (scope.depth_limit && *scope.depth_limit < 0) throw ScopeError("depth must be >= 0");
  if (scope.state_cap < 1) throw ScopeError("state cap must be >= 1");
  if (scope.quorums.size() == 0) throw ScopeError("quorum system is empty");
  for (const auto& q : scope.quorums) {
    for (AcceptorId a : q) {
      if (a < 0 || a >= scope.n_acceptors) {
        throw ScopeError("quorum member " + std::to_string(a) + " is not an acceptor");
      }
    }
  }
  if (auto bad = validate_quorum_system(scope.quorums)) {
    std::string msg = "quorums do not intersect: {";
    for (std::size_t i = 0; i < bad->first.size(); ++i) {
      msg += (i ? "," : "") + std::to_string(bad->first[i]);
    }
    msg += "} and {";
    for (std::size_t i = 0; i < bad->second.size(); ++i) {
      msg += (i ? "," : "") + std::to_string(bad->second[i]);
    }
    throw ScopeError(msg + "}");
  }
}

}  // namespace paxos_hist
