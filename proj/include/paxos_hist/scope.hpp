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

#ifndef PAXOS_HIST_SCOPE_HPP_
#define PAXOS_HIST_SCOPE_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paxos_hist/quorum.hpp"

namespace paxos_hist {

enum class Variant { Basic, BasicUnsafe2a, Multi, MultiPreempt };

const char* to_string(Variant v);
std::optional<Variant> parse_variant(const std::string& name);

inline bool is_multi(Variant v) { return v == Variant::Multi || v == Variant::MultiPreempt; }

inline constexpr std::size_t kDefaultStateCap = 5'000'000;

/// Finite bounds for exploration. Ballots are 0..ballot_bound-1, slots
/// 0..slot_bound-1, values index into value_domain.
struct Scope {
  Variant variant = Variant::Basic;
  int n_acceptors = 3;
  int n_proposers = 1;  // Multi only
  int ballot_bound = 1;
  std::vector<std::string> value_domain{"v1"};
  int slot_bound = 1;              // Multi only
  int max_new_proposals = 1;       // Multi only
  bool majority = true;            // false when `quorums` came from an explicit list
  QuorumSystem quorums = majority_quorums(3);
  std::optional<int> depth_limit;  // nullopt = unlimited
  std::size_t state_cap = kDefaultStateCap;

  int n_values() const { return static_cast<int>(value_domain.size()); }
  bool multi() const { return is_multi(variant); }
};

class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ScopeError describing the first problem found.
void validate_scope(const Scope& scope);

/// Value domain {v1, ..., vn}.
std::vector<std::string> default_value_domain(int n);

/// Scope with majority quorums over `acceptors` and values v1..vn.
Scope make_basic_scope(Variant variant, int acceptors, int ballots, int values);
Scope make_multi_scope(Variant variant, int acceptors, int proposers, int ballots,
                       int values, int slots, int max_new = 1);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_SCOPE_HPP_
