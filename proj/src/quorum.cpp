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

#include "paxos_hist/quorum.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iterator>
#include <numeric>

namespace paxos_hist {

QuorumSystem::QuorumSystem(std::vector<Quorum> quorums) : quorums_(std::move(quorums)) {
  for (auto& q : quorums_) normalize_set(q);
  normalize_set(quorums_);
}

QuorumSystem majority_quorums(std::span<const AcceptorId> acceptors) {
  std::vector<AcceptorId> acc(acceptors.begin(), acceptors.end());
  normalize_set(acc);
  const std::size_t n = acc.size();
  std::vector<Quorum> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (2 * static_cast<std::size_t>(std::popcount(mask)) <= n) continue;
    Quorum q;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) q.push_back(acc[i]);
    }
    out.push_back(std::move(q));
  }
  return QuorumSystem(std::move(out));
}

QuorumSystem majority_quorums(int n_acceptors) {
  std::vector<AcceptorId> acc(static_cast<std::size_t>(std::max(n_acceptors, 0)));
  std::iota(acc.begin(), acc.end(), 0);
  return majority_quorums(acc);
}

std::optional<std::pair<Quorum, Quorum>> validate_quorum_system(const QuorumSystem& q) {
  const auto& qs = q.quorums();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t j = i; j < qs.size(); ++j) {
      std::vector<AcceptorId> common;
      std::set_intersection(qs[i].begin(), qs[i].end(), qs[j].begin(), qs[j].end(),
                            std::back_inserter(common));
      if (common.empty()) return std::make_pair(qs[i], qs[j]);
    }
  }
  return std::nullopt;
}

}  // namespace paxos_hist
