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

#ifndef PAXOS_HIST_INVARIANTS_HPP_
#define PAXOS_HIST_INVARIANTS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paxos_hist/quorum.hpp"
#include "paxos_hist/scope.hpp"
#include "paxos_hist/sent_state.hpp"

namespace paxos_hist {

// Operators. Basic forms take no slot; Multi forms take one. All of them
// treat `sent` as the only state.

bool voted_for_in(const SentState& s, AcceptorId a, Value v, Ballot b);
bool voted_for_in_multi(const SentState& s, AcceptorId a, Ballot b, Slot slot, Value v);

/// Some quorum voted v, each member at a ballot of its own choosing.
bool chosen(const SentState& s, Value v, const QuorumSystem& quorums);
/// Some quorum voted v, all at ballot b.
bool chosen_in(const SentState& s, Value v, Ballot b, const QuorumSystem& quorums);
bool chosen_multi(const SentState& s, Slot slot, Value v, const QuorumSystem& quorums);

/// a has not voted at b for any value in the scope's domain, and has sent a
/// 1b or 2b above b.
bool wont_vote_in(const SentState& s, AcceptorId a, Ballot b, const Scope& scope);
bool wont_vote_in_multi(const SentState& s, AcceptorId a, Ballot b, Slot slot,
                        const Scope& scope);

/// For every ballot below b some quorum has each member either voting v
/// there or unable to vote there.
bool safe_at(const SentState& s, Value v, Ballot b, const Scope& scope);
bool safe_at_multi(const SentState& s, Ballot b, Slot slot, Value v, const Scope& scope);

enum class BindingKind { Ballot, Value, Slot, Acceptor };

struct Binding {
  std::string name;
  BindingKind kind;
  int value;
  bool operator==(const Binding&) const = default;
};

/// Concrete values that falsify a check.
struct Witness {
  std::vector<Message> messages;
  std::vector<Binding> bindings;
  std::vector<std::pair<std::string, Quorum>> quorums;
  std::string note;

  const Binding* find(const std::string& name) const;
  bool empty() const { return messages.empty() && bindings.empty() && quorums.empty(); }
};

struct CheckResult {
  std::string name;
  bool holds = true;
  Witness witness;  // empty when holds
};

CheckResult check_type_ok(const SentState& s, const Scope& scope);
/// I11..I15, in that order.
std::vector<CheckResult> check_msg_inv_basic(const SentState& s, const Scope& scope);
/// I26..I32, in that order.
std::vector<CheckResult> check_msg_inv_multi(const SentState& s, const Scope& scope);
CheckResult check_agree(const SentState& s, const Scope& scope);
CheckResult check_voted_once(const SentState& s, const Scope& scope);
CheckResult check_voted_inv(const SentState& s, const Scope& scope);
CheckResult check_safe_at_stable(const SentState& s, const SentState& s_next,
                                 const Scope& scope);

/// SafeAt evaluated for every (ballot, slot, value) of the scope, packed as
/// bits. Basic scopes use a single slot position.
class SafeAtTable {
 public:
  SafeAtTable() = default;
  SafeAtTable(const SentState& s, const Scope& scope);

  static std::size_t words_for(const Scope& scope);
  static std::size_t index(const Scope& scope, Ballot b, Slot slot, Value v);

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::vector<std::uint64_t> words_;
};

/// SafeAtStable from precomputed tables; the witness names the first
/// (b, slot, v) that was safe before and is not after.
CheckResult safe_at_stable_from_tables(std::span<const std::uint64_t> before,
                                       std::span<const std::uint64_t> after,
                                       const Scope& scope);

/// Names of the per-state checks for the scope's variant, in the order
/// check_state reports them: TypeOK, the MsgInv conjuncts, VotedOnce,
/// VotedInv, Agree.
std::vector<std::string> state_check_names(const Scope& scope);

/// Names that make up Inv = TypeOK ∧ MsgInv.
std::vector<std::string> inductive_check_names(const Scope& scope);

inline constexpr const char* kSafeAtStable = "SafeAtStable";

/// Every per-state check, in state_check_names order. When `table` is
/// non-null it receives the state's SafeAt table.
std::vector<CheckResult> check_state(const SentState& s, const Scope& scope,
                                     SafeAtTable* table = nullptr);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_INVARIANTS_HPP_
