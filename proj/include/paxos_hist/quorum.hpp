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

#ifndef PAXOS_HIST_QUORUM_HPP_
#define PAXOS_HIST_QUORUM_HPP_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "paxos_hist/types.hpp"

namespace paxos_hist {

using Quorum = std::vector<AcceptorId>;  // sorted, duplicate-free

class QuorumSystem {
 public:
  QuorumSystem() = default;
  explicit QuorumSystem(std::vector<Quorum> quorums);

  const std::vector<Quorum>& quorums() const { return quorums_; }
  std::size_t size() const { return quorums_.size(); }
  auto begin() const { return quorums_.begin(); }
  auto end() const { return quorums_.end(); }

  bool operator==(const QuorumSystem&) const = default;

 private:
  std::vector<Quorum> quorums_;
};

/// All subsets of `acceptors` with more than half of its members.
QuorumSystem majority_quorums(std::span<const AcceptorId> acceptors);
QuorumSystem majority_quorums(int n_acceptors);

/// Returns the first pair of disjoint quorums, or nullopt when every pair
/// intersects.
std::optional<std::pair<Quorum, Quorum>> validate_quorum_system(const QuorumSystem& q);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_QUORUM_HPP_
