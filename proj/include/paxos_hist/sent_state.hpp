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

#ifndef PAXOS_HIST_SENT_STATE_HPP_
#define PAXOS_HIST_SENT_STATE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paxos_hist/types.hpp"

namespace paxos_hist {

/// The whole protocol state: the set of messages ever sent. Stored sorted
/// in canonical message order, so equal sets have equal representations.
class SentState {
 public:
  SentState() = default;
  explicit SentState(std::vector<Message> msgs);

  bool contains(const Message& m) const;
  // Returns false if m was already present.
  bool insert(Message m);
  SentState with(std::span<const Message> delta) const;
  bool is_subset_of(const SentState& other) const;

  std::size_t size() const { return msgs_.size(); }
  bool empty() const { return msgs_.empty(); }
  auto begin() const { return msgs_.begin(); }
  auto end() const { return msgs_.end(); }
  const std::vector<Message>& messages() const { return msgs_; }

  bool operator==(const SentState&) const = default;

 private:
  std::vector<Message> msgs_;
};

/// Byte string that identifies a state. Injective, and independent of the
/// order messages were inserted in.
std::string canonical_encoding(const SentState& s);

/// Inverse of canonical_encoding. Throws std::invalid_argument on bytes that
/// no state encodes to.
SentState decode_state(std::string_view bytes);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_SENT_STATE_HPP_
