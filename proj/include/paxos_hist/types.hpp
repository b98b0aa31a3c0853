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

#ifndef PAXOS_HIST_TYPES_HPP_
#define PAXOS_HIST_TYPES_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace paxos_hist {

/// Proposal number. -1 is the "never voted" sentinel and orders below every
/// real ballot.
struct Ballot {
  int value = -1;

  static constexpr Ballot none() { return Ballot{-1}; }
  constexpr bool is_none() const { return value < 0; }
  auto operator<=>(const Ballot&) const = default;
};

/// Index into the scope's value domain. id = -1 is None, which lies outside
/// every domain.
struct Value {
  int id = -1;

  static constexpr Value none() { return Value{-1}; }
  constexpr bool is_none() const { return id < 0; }
  auto operator<=>(const Value&) const = default;
};

/// Log position for the Multi variants. index = -1 means "no slot" (Basic).
struct Slot {
  int index = -1;
  auto operator<=>(const Slot&) const = default;
};

using AcceptorId = int;
using ProposerId = int;

struct Vote {
  Ballot bal;
  Slot slot;
  Value val;
  auto operator<=>(const Vote&) const = default;
};

struct Decree {
  Slot slot;
  Value val;
  auto operator<=>(const Decree&) const = default;
};

enum class MsgType : std::uint8_t { OneA = 0, OneB = 1, TwoA = 2, TwoB = 3, Preempt = 4 };

const char* to_string(MsgType t);

/// One protocol message. A single record covers both families:
///
///   Basic:  1a{bal}  1b{acc,bal,maxVBal,maxVal}  2a{bal,val}  2b{acc,bal,val}
///   Multi:  1a{from,bal}  1b{from,bal,voted}  2a{from,bal,decrees}
///           2b{from,bal,slot,val}  preempt{to,bal}
///
/// `sender` holds acc (Basic) or from (Multi); `receiver` holds to. Fields a
/// message kind does not carry stay at their defaults, and TypeOK rejects a
/// message that sets one. Comparison is tag first, then fields in
/// declaration order, which is the canonical message order.
struct Message {
  MsgType type = MsgType::OneA;
  Ballot bal{0};
  int sender = -1;
  int receiver = -1;
  Ballot max_vbal = Ballot::none();
  Value max_val = Value::none();
  Slot slot;
  Value val = Value::none();
  std::vector<Vote> voted;      // sorted, duplicate-free
  std::vector<Decree> decrees;  // sorted, duplicate-free

  auto operator<=>(const Message&) const = default;
  bool operator==(const Message&) const = default;
};

namespace basic {
Message one_a(Ballot b);
Message one_b(AcceptorId a, Ballot b, Ballot max_vbal, Value max_val);
Message two_a(Ballot b, Value v);
Message two_b(AcceptorId a, Ballot b, Value v);
}  // namespace basic

namespace multi {
Message one_a(ProposerId p, Ballot b);
Message one_b(AcceptorId a, Ballot b, std::vector<Vote> voted);
Message two_a(ProposerId p, Ballot b, std::vector<Decree> decrees);
Message two_b(AcceptorId a, Ballot b, Slot s, Value v);
Message preempt(ProposerId to, Ballot b);
}  // namespace multi

/// Sorts and dedups in place; used to keep vote/decree sets canonical.
template <class T>
void normalize_set(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace paxos_hist

#endif  // PAXOS_HIST_TYPES_HPP_
