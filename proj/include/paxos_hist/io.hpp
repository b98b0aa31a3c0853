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

#ifndef PAXOS_HIST_IO_HPP_
#define PAXOS_HIST_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "paxos_hist/explorer.hpp"
#include "paxos_hist/scope.hpp"
#include "paxos_hist/simulator.hpp"

namespace paxos_hist {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "paxos-hist/1";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scope fields as given in a scope file or on the command line. Unset
/// fields take the defaults of build_scope.
struct ScopeSpec {
  std::optional<Variant> variant;
  std::optional<int> acceptors;
  std::optional<int> proposers;
  std::optional<int> ballots;
  std::optional<std::vector<std::string>> values;
  std::optional<int> slots;
  std::optional<int> max_new;
  std::optional<std::optional<int>> depth;  // inner nullopt = unlimited
  std::optional<std::vector<Quorum>> quorums;  // nullopt or empty = majority
  std::optional<std::size_t> state_cap;

  /// Fields set in `over` replace those here.
  void merge(const ScopeSpec& over);
};

/// Reads the keys variant, acceptors, proposers, ballots, values (count or
/// list of names), slots, max-new, depth (count or "unlimited"), quorums
/// ("majority" or a list of acceptor lists) and state-cap. Keys listed in
/// `ignored` are skipped; any other key is an error.
ScopeSpec scope_spec_from_json(const Json& j, const std::vector<std::string>& ignored = {});

/// Parses a quorums argument: "majority" or a JSON list of acceptor lists.
std::vector<Quorum> parse_quorums(const Json& j);

/// Builds and validates a scope. Throws ScopeError for slots, proposers or
/// max-new given with a Basic variant, and for anything validate_scope
/// rejects.
Scope build_scope(const ScopeSpec& spec);

Json scope_to_json(const Scope& scope);
Scope scope_from_json(const Json& j);

Json value_to_json(Value v, const Scope& scope);
Value value_from_json(const Json& j, const Scope& scope);

/// Message record with the protocol's field labels: type, bal, acc or from,
/// to, maxVBal, maxVal, slot, val, voted, decrees. bal -1 and val null are
/// the sentinels.
Json message_to_json(const Message& m, const Scope& scope);
Message message_from_json(const Json& j, const Scope& scope);

Json state_to_json(const SentState& s, const Scope& scope);
SentState state_from_json(const Json& j, const Scope& scope);

/// Action parameters under the names the protocol quantifies over: b, a,
/// p, v, r, m, m2, Q, S, D.
Json params_to_json(const ActionInstance& act, const Scope& scope);

/// {step, action, params, delta}; step counts from 1.
Json action_to_json(std::size_t step, const ActionInstance& act, const Scope& scope);
ActionInstance action_from_json(const Json& j, const Scope& scope);

Json check_to_json(const CheckResult& r, const Scope& scope);
Json violation_to_json(const Violation& v, const Scope& scope);

Json header_to_json(const Scope& scope);

/// Result object of an exploration. The duration field comes last so it is
/// easy to drop when comparing runs.
Json report_result_to_json(const ExplorationReport& report);
Json run_result_to_json(const RunRecord& run);

/// Status word of a report: "violation", "incomplete" or "clean".
std::string report_status(const ExplorationReport& report);
std::string run_status(const RunRecord& run);

/// Header, the actions of the first violation's trace (none when clean),
/// then the result object.
void write_json_lines(std::ostream& out, const ExplorationReport& report);
/// Header, every action of the run, then the result object.
void write_json_lines(std::ostream& out, const RunRecord& run);

void write_human(std::ostream& out, const ExplorationReport& report);
void write_human(std::ostream& out, const RunRecord& run);

struct ParsedTrace {
  Scope scope;
  std::vector<ActionInstance> trace;
  std::optional<Json> result;
  std::optional<SentState> final_state;  // from result.final_state, if present
};

/// Reads a json-lines stream written by write_json_lines.
ParsedTrace parse_json_lines(std::istream& in);

}  // namespace paxos_hist

#endif  // PAXOS_HIST_IO_HPP_
