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

#include "paxos_hist/io.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace paxos_hist {

namespace {

int as_int(const Json& j, const char* key) {
  if (!j.is_number_integer()) throw FormatError(std::string(key) + " must be an integer");
  return j.get<int>();
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field ") + key);
  return *it;
}

Json quorum_to_json(const Quorum& q) {
  Json j = Json::array();
  for (AcceptorId a : q) j.push_back(a);
  return j;
}

Quorum quorum_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("a quorum must be a list of acceptor indices");
  Quorum q;
  for (const auto& a : j) q.push_back(as_int(a, "quorum member"));
  normalize_set(q);
  return q;
}

Json decree_to_json(const Decree& d, const Scope& scope) {
  return Json{{"slot", d.slot.index}, {"val", value_to_json(d.val, scope)}};
}

Decree decree_from_json(const Json& j, const Scope& scope) {
  return Decree{Slot{as_int(field(j, "slot"), "slot")}, value_from_json(field(j, "val"), scope)};
}

std::optional<MsgType> parse_msg_type(const std::string& s) {
  for (auto t : {MsgType::OneA, MsgType::OneB, MsgType::TwoA, MsgType::TwoB, MsgType::Preempt}) {
    if (s == to_string(t)) return t;
  }
  return std::nullopt;
}

Json messages_to_json(const std::vector<Message>& ms, const Scope& scope) {
  Json j = Json::array();
  for (const auto& m : ms) j.push_back(message_to_json(m, scope));
  return j;
}

std::vector<Message> messages_from_json(const Json& j, const Scope& scope) {
  if (!j.is_array()) throw FormatError("expected a list of messages");
  std::vector<Message> out;
  for (const auto& m : j) out.push_back(message_from_json(m, scope));
  return out;
}

Json binding_value(const Binding& b, const Scope& scope) {
  if (b.kind == BindingKind::Value) return value_to_json(Value{b.value}, scope);
  return b.value;
}

Json witness_to_json(const Witness& w, const Scope& scope) {
  Json j;
  Json bindings = Json::object();
  for (const auto& b : w.bindings) bindings[b.name] = binding_value(b, scope);
  j["bindings"] = bindings;
  Json quorums = Json::object();
  for (const auto& [name, q] : w.quorums) quorums[name] = quorum_to_json(q);
  j["quorums"] = quorums;
  j["messages"] = messages_to_json(w.messages, scope);
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json("unlimited"); }

// The trace printed before a report's result and the state it ends in.
std::pair<const std::vector<ActionInstance>*, SentState> primary_trace(
    const ExplorationReport& r) {
  if (!r.violations.empty()) return {&r.violations.front().trace, r.violations.front().state};
  if (r.inductive_break) return {&r.inductive_break->trace, r.inductive_break->target};
  if (r.inv_without_agree) return {&r.inv_without_agree->trace, r.inv_without_agree->state};
  return {nullptr, SentState{}};
}

}  // namespace

void ScopeSpec::merge(const ScopeSpec& over) {
  if (over.variant) variant = over.variant;
  if (over.acceptors) acceptors = over.acceptors;
  if (over.proposers) proposers = over.proposers;
  if (over.ballots) ballots = over.ballots;
  if (over.values) values = over.values;
  if (over.slots) slots = over.slots;
  if (over.max_new) max_new = over.max_new;
  if (over.depth) depth = over.depth;
  if (over.quorums) quorums = over.quorums;
  if (over.state_cap) state_cap = over.state_cap;
}

std::vector<Quorum> parse_quorums(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "majority") return {};
    throw FormatError("quorums must be \"majority\" or a list of acceptor lists");
  }
  if (!j.is_array() || j.empty()) {
    throw FormatError("quorums must be \"majority\" or a nonempty list of acceptor lists");
  }
  std::vector<Quorum> out;
  for (const auto& q : j) out.push_back(quorum_from_json(q));
  return out;
}

ScopeSpec scope_spec_from_json(const Json& j, const std::vector<std::string>& ignored) {
  if (!j.is_object()) throw FormatError("scope must be a JSON object");
  ScopeSpec spec;
  auto count = [](const Json& v, const std::string& key) {
    if (!v.is_number_integer()) throw FormatError(key + " must be an integer");
    return v.get<long long>();
  };
  for (const auto& [key, v] : j.items()) {
    if (std::find(ignored.begin(), ignored.end(), key) != ignored.end()) continue;
    if (key == "variant") {
      if (!v.is_string()) throw FormatError("variant must be a string");
      spec.variant = parse_variant(v.get<std::string>());
      if (!spec.variant) throw FormatError("unknown variant: " + v.get<std::string>());
    } else if (key == "acceptors") {
      spec.acceptors = static_cast<int>(count(v, key));
    } else if (key == "proposers") {
      spec.proposers = static_cast<int>(count(v, key));
    } else if (key == "ballots") {
      spec.ballots = static_cast<int>(count(v, key));
    } else if (key == "values") {
      if (v.is_array()) {
        std::vector<std::string> names;
        for (const auto& n : v) {
          if (!n.is_string()) throw FormatError("value names must be strings");
          names.push_back(n.get<std::string>());
        }
        spec.values = names;
      } else {
        const long long n = count(v, key);
        if (n < 0 || n > 1000) throw FormatError("values out of range");
        spec.values = default_value_domain(static_cast<int>(n));
      }
    } else if (key == "slots") {
      spec.slots = static_cast<int>(count(v, key));
    } else if (key == "max-new") {
      spec.max_new = static_cast<int>(count(v, key));
    } else if (key == "depth") {
      if (v.is_string() && v.get<std::string>() == "unlimited") {
        spec.depth = std::optional<int>{};
      } else {
        spec.depth = std::optional<int>{static_cast<int>(count(v, key))};
      }
    } else if (key == "quorums") {
      spec.quorums = parse_quorums(v);
    } else if (key == "state-cap") {
      const long long n = count(v, key);
      if (n < 1) throw FormatError("state-cap must be >= 1");
      spec.state_cap = static_cast<std::size_t>(n);
    } else {
      throw FormatError("unknown scope key: " + key);
    }
  }
  return spec;
}

Scope build_scope(const ScopeSpec& spec) {
  Scope s;
  s.variant = spec.variant.value_or(Variant::Basic);
  if (!s.multi()) {
    const char* bad = spec.slots ? "slots" : spec.proposers ? "proposers" : spec.max_new ? "max-new" : nullptr;
    if (bad) {
      throw ScopeError(std::string(bad) + " is only valid for multi variants, not " +
                       to_string(s.variant));
    }
  }
  s.n_acceptors = spec.acceptors.value_or(3);
  s.n_proposers = spec.proposers.value_or(1);
  s.ballot_bound = spec.ballots.value_or(1);
  s.value_domain = spec.values.value_or(default_value_domain(1));
  s.slot_bound = spec.slots.value_or(1);
  s.max_new_proposals = spec.max_new.value_or(1);
  if (spec.depth) s.depth_limit = *spec.depth;
  if (spec.state_cap) s.state_cap = *spec.state_cap;
  if (spec.quorums && !spec.quorums->empty()) {
    s.majority = false;
    s.quorums = QuorumSystem(*spec.quorums);
  } else {
    if (s.n_acceptors < 1 || s.n_acceptors > 16) throw ScopeError("acceptors must be in 1..16");
    s.quorums = majority_quorums(s.n_acceptors);
  }
  validate_scope(s);
  return s;
}

Json scope_to_json(const Scope& scope) {
  Json j;
  j["variant"] = to_string(scope.variant);
  j["acceptors"] = scope.n_acceptors;
  if (scope.multi()) j["proposers"] = scope.n_proposers;
  j["ballots"] = scope.ballot_bound;
  j["values"] = scope.value_domain;
  if (scope.multi()) {
    j["slots"] = scope.slot_bound;
    j["max-new"] = scope.max_new_proposals;
  }
  j["depth"] = optional_int(scope.depth_limit);
  if (scope.majority) {
    j["quorums"] = "majority";
  } else {
    Json qs = Json::array();
    for (const auto& q : scope.quorums) qs.push_back(quorum_to_json(q));
    j["quorums"] = qs;
  }
  j["state-cap"] = scope.state_cap;
  return j;
}

Scope scope_from_json(const Json& j) { return build_scope(scope_spec_from_json(j)); }

Json value_to_json(Value v, const Scope& scope) {
  if (v.is_none()) return nullptr;
  if (v.id < scope.n_values()) return scope.value_domain[static_cast<std::size_t>(v.id)];
  return v.id;
}

Value value_from_json(const Json& j, const Scope& scope) {
  if (j.is_null()) return Value::none();
  if (j.is_number_integer()) return Value{j.get<int>()};
  if (j.is_string()) {
    const auto& d = scope.value_domain;
    auto it = std::find(d.begin(), d.end(), j.get<std::string>());
    if (it == d.end()) throw FormatError("value not in domain: " + j.get<std::string>());
    return Value{static_cast<int>(it - d.begin())};
  }
  throw FormatError("a value must be a name, an index or null");
}

Json message_to_json(const Message& m, const Scope& scope) {
  const bool multi = scope.multi();
  Json j;
  j["type"] = to_string(m.type);
  if (m.sender != -1) j[multi ? "from" : "acc"] = m.sender;
  if (m.receiver != -1) j["to"] = m.receiver;
  j["bal"] = m.bal.value;
  if (m.slot.index != -1 || (multi && m.type == MsgType::TwoB)) j["slot"] = m.slot.index;
  const bool carries_val = m.type == MsgType::TwoB || (!multi && m.type == MsgType::TwoA);
  if (carries_val || !m.val.is_none()) j["val"] = value_to_json(m.val, scope);
  const bool basic_1b = !multi && m.type == MsgType::OneB;
  if (basic_1b || !m.max_vbal.is_none()) j["maxVBal"] = m.max_vbal.value;
  if (basic_1b || !m.max_val.is_none()) j["maxVal"] = value_to_json(m.max_val, scope);
  if ((multi && m.type == MsgType::OneB) || !m.voted.empty()) {
    Json voted = Json::array();
    for (const auto& r : m.voted) {
      voted.push_back(Json{{"bal", r.bal.value}, {"slot", r.slot.index}, {"val", value_to_json(r.val, scope)}});
    }
    j["voted"] = voted;
  }
  if ((multi && m.type == MsgType::TwoA) || !m.decrees.empty()) {
    Json decrees = Json::array();
    for (const auto& d : m.decrees) decrees.push_back(decree_to_json(d, scope));
    j["decrees"] = decrees;
  }
  return j;
}

Message message_from_json(const Json& j, const Scope& scope) {
  if (!j.is_object()) throw FormatError("a message must be an object");
  const Json& type = field(j, "type");
  if (!type.is_string()) throw FormatError("message type must be a string");
  auto t = parse_msg_type(type.get<std::string>());
  if (!t) throw FormatError("unknown message type: " + type.get<std::string>());
  Message m;
  m.type = *t;
  m.bal = Ballot{as_int(field(j, "bal"), "bal")};
  if (j.contains("acc")) m.sender = as_int(j["acc"], "acc");
  if (j.contains("from")) m.sender = as_int(j["from"], "from");
  if (j.contains("to")) m.receiver = as_int(j["to"], "to");
  if (j.contains("slot")) m.slot = Slot{as_int(j["slot"], "slot")};
  if (j.contains("val")) m.val = value_from_json(j["val"], scope);
  if (j.contains("maxVBal")) m.max_vbal = Ballot{as_int(j["maxVBal"], "maxVBal")};
  if (j.contains("maxVal")) m.max_val = value_from_json(j["maxVal"], scope);
  if (j.contains("voted")) {
    for (const auto& r : j["voted"]) {
      m.voted.push_back(Vote{Ballot{as_int(field(r, "bal"), "bal")}, Slot{as_int(field(r, "slot"), "slot")},
                             value_from_json(field(r, "val"), scope)});
    }
    normalize_set(m.voted);
  }
  if (j.contains("decrees")) {
    for (const auto& d : j["decrees"]) m.decrees.push_back(decree_from_json(d, scope));
    normalize_set(m.decrees);
  }
  return m;
}

Json state_to_json(const SentState& s, const Scope& scope) {
  return messages_to_json(s.messages(), scope);
}

SentState state_from_json(const Json& j, const Scope& scope) {
  return SentState{}.with(messages_from_json(j, scope));
}

Json params_to_json(const ActionInstance& act, const Scope& scope) {
  Json j = Json::object();
  if (act.proposer) j["p"] = *act.proposer;
  if (act.acceptor) j["a"] = *act.acceptor;
  if (act.ballot) j["b"] = act.ballot->value;
  if (act.value) j["v"] = value_to_json(*act.value, scope);
  if (act.proposal) {
    j["r"] = Json{{"bal", act.proposal->bal.value}, {"val", value_to_json(act.proposal->val, scope)}};
  }
  if (act.msg) j["m"] = message_to_json(*act.msg, scope);
  if (act.msg2) j["m2"] = message_to_json(*act.msg2, scope);
  if (act.kind == ActionKind::Phase2a || !act.quorum.empty()) j["Q"] = quorum_to_json(act.quorum);
  if (act.kind == ActionKind::Phase2a || !act.support.empty()) {
    j["S"] = messages_to_json(act.support, scope);
  }
  if ((act.kind == ActionKind::Phase2a && scope.multi()) || !act.new_decrees.empty()) {
    Json d = Json::array();
    for (const auto& x : act.new_decrees) d.push_back(decree_to_json(x, scope));
    j["D"] = d;
  }
  return j;
}

Json action_to_json(std::size_t step, const ActionInstance& act, const Scope& scope) {
  Json j;
  j["step"] = step;
  j["action"] = to_string(act.kind);
  j["params"] = params_to_json(act, scope);
  j["delta"] = messages_to_json(act.delta, scope);
  return j;
}

ActionInstance action_from_json(const Json& j, const Scope& scope) {
  if (!j.is_object()) throw FormatError("an action must be an object");
  const Json& name = field(j, "action");
  if (!name.is_string()) throw FormatError("action must be a string");
  auto kind = parse_action_kind(name.get<std::string>());
  if (!kind) throw FormatError("unknown action: " + name.get<std::string>());
  ActionInstance act;
  act.kind = *kind;
  const Json params = j.value("params", Json::object());
  if (params.contains("p")) act.proposer = as_int(params["p"], "p");
  if (params.contains("a")) act.acceptor = as_int(params["a"], "a");
  if (params.contains("b")) act.ballot = Ballot{as_int(params["b"], "b")};
  if (params.contains("v")) act.value = value_from_json(params["v"], scope);
  if (params.contains("r")) {
    const Json& r = params["r"];
    act.proposal = Proposal{Ballot{as_int(field(r, "bal"), "bal")}, value_from_json(field(r, "val"), scope)};
  }
  if (params.contains("m")) act.msg = message_from_json(params["m"], scope);
  if (params.contains("m2")) act.msg2 = message_from_json(params["m2"], scope);
  if (params.contains("Q")) act.quorum = quorum_from_json(params["Q"]);
  if (params.contains("S")) {
    act.support = messages_from_json(params["S"], scope);
    normalize_set(act.support);
  }
  if (params.contains("D")) {
    for (const auto& d : params["D"]) act.new_decrees.push_back(decree_from_json(d, scope));
    normalize_set(act.new_decrees);
  }
  if (j.contains("delta")) {
    act.delta = messages_from_json(j["delta"], scope);
    normalize_set(act.delta);
  }
  return act;
}

Json check_to_json(const CheckResult& r, const Scope& scope) {
  Json j;
  j["name"] = r.name;
  j["status"] = r.holds ? "holds" : "fails";
  if (!r.holds) j["witness"] = witness_to_json(r.witness, scope);
  return j;
}

Json violation_to_json(const Violation& v, const Scope& scope) {
  Json j;
  j["check"] = v.check.name;
  j["witness"] = witness_to_json(v.check.witness, scope);
  j["trace_length"] = v.trace.size();
  Json trace = Json::array();
  for (std::size_t i = 0; i < v.trace.size(); ++i) trace.push_back(action_to_json(i + 1, v.trace[i], scope));
  j["trace"] = trace;
  j["state"] = state_to_json(v.state, scope);
  return j;
}

Json header_to_json(const Scope& scope) {
  Json j;
  j["scope"] = scope_to_json(scope);
  j["variant"] = to_string(scope.variant);
  j["version"] = kFormatVersion;
  return j;
}

std::string report_status(const ExplorationReport& r) {
  if (!r.clean()) return "violation";
  if (!r.complete) return "incomplete";
  return "clean";
}

std::string run_status(const RunRecord& run) {
  if (run.disabled) return "disabled";
  if (run.halted_on_failure) return "violation";
  return "clean";
}

Json report_result_to_json(const ExplorationReport& r) {
  const Scope& scope = r.scope;
  Json j;
  j["status"] = report_status(r);
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back(violation_to_json(v, scope));
  j["violations"] = vs;
  Json stats;
  stats["states"] = r.states_visited;
  stats["transitions"] = r.transitions;
  stats["max_depth"] = r.max_depth_reached;
  stats["terminal_states"] = r.terminal_states;
  stats["complete"] = r.complete;
  stats["depth_bounded"] = r.depth_bounded;
  Json counts = Json::object();
  for (const auto& [name, n] : r.failure_counts) counts[name] = n;
  stats["failures"] = counts;
  Json checked = Json::array();
  for (const auto& name : state_check_names(scope)) checked.push_back(name);
  checked.push_back(kSafeAtStable);
  stats["checks"] = checked;
  j["stats"] = stats;
  if (r.inductive_mode) {
    Json ind;
    ind["init_satisfies_inv"] = r.init_satisfies_inv;
    Json inv = Json::array();
    for (const auto& name : inductive_check_names(scope)) inv.push_back(name);
    ind["inv"] = inv;
    if (r.inductive_break) {
      const auto& b = *r.inductive_break;
      Json bj;
      bj["broken"] = b.broken;
      bj["action"] = action_to_json(b.trace.size(), b.trace.back(), scope);
      bj["trace_length"] = b.trace.size();
      bj["source"] = state_to_json(b.source, scope);
      bj["target"] = state_to_json(b.target, scope);
      ind["break"] = bj;
    } else {
      ind["break"] = nullptr;
    }
    ind["inv_without_agree"] =
        r.inv_without_agree ? violation_to_json(*r.inv_without_agree, scope) : Json(nullptr);
    ind["inductive"] = r.init_satisfies_inv && !r.inductive_break;
    j["inductive"] = ind;
  }
  j["final_state"] = state_to_json(primary_trace(r).second, scope);
  j["duration_s"] = r.duration.count();
  return j;
}

Json run_result_to_json(const RunRecord& run) {
  const Scope& scope = run.scope;
  Json j;
  j["status"] = run_status(run);
  Json vs = Json::array();
  for (const auto& c : run.checks) {
    if (!c.holds) vs.push_back(check_to_json(c, scope));
  }
  j["violations"] = vs;
  if (!run.scenario.empty()) {
    j["scenario"] = run.scenario;
  } else {
    j["seed"] = run.seed;
  }
  j["steps"] = run.steps();
  j["deadlocked"] = run.deadlocked;
  if (run.disabled) {
    Json d;
    d["step"] = run.disabled->step + 1;
    d["action"] = to_string(run.disabled->kind);
    d["guard"] = run.disabled->failure.guard;
    d["detail"] = run.disabled->failure.detail;
    j["disabled"] = d;
  } else {
    j["disabled"] = nullptr;
  }
  Json chosen = Json::array();
  for (const auto& d : run.chosen) {
    chosen.push_back(scope.multi() ? decree_to_json(d, scope) : value_to_json(d.val, scope));
  }
  j["chosen"] = chosen;
  Json checks = Json::array();
  for (const auto& c : run.checks) checks.push_back(check_to_json(c, scope));
  j["checks"] = checks;
  j["final_state"] = state_to_json(run.final_state, scope);
  return j;
}

void write_json_lines(std::ostream& out, const ExplorationReport& report) {
  out << header_to_json(report.scope).dump() << '\n';
  if (const auto* trace = primary_trace(report).first) {
    for (std::size_t i = 0; i < trace->size(); ++i) {
      out << action_to_json(i + 1, (*trace)[i], report.scope).dump() << '\n';
    }
  }
  out << report_result_to_json(report).dump() << '\n';
}

void write_json_lines(std::ostream& out, const RunRecord& run) {
  out << header_to_json(run.scope).dump() << '\n';
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    out << action_to_json(i + 1, run.trace[i], run.scope).dump() << '\n';
  }
  out << run_result_to_json(run).dump() << '\n';
}

// Human-readable output.

namespace {

std::string value_text(Value v, const Scope& scope) {
  if (v.is_none()) return "None";
  if (v.id < scope.n_values()) return scope.value_domain[static_cast<std::size_t>(v.id)];
  return "#" + std::to_string(v.id);
}

std::string message_text(const Message& m, const Scope& scope) {
  const bool multi = scope.multi();
  std::ostringstream o;
  o << to_string(m.type) << '(';
  bool first = true;
  auto put = [&](const std::string& k, const std::string& v) {
    o << (first ? "" : " ") << k << '=' << v;
    first = false;
  };
  if (m.sender != -1) put(multi ? "from" : "acc", std::to_string(m.sender));
  if (m.receiver != -1) put("to", std::to_string(m.receiver));
  put("bal", std::to_string(m.bal.value));
  if (m.slot.index != -1) put("slot", std::to_string(m.slot.index));
  if (!m.val.is_none() || m.type == MsgType::TwoB || (!multi && m.type == MsgType::TwoA)) {
    put("val", value_text(m.val, scope));
  }
  if (!multi && m.type == MsgType::OneB) {
    put("maxVBal", std::to_string(m.max_vbal.value));
    put("maxVal", value_text(m.max_val, scope));
  }
  if (multi && m.type == MsgType::OneB) {
    std::string v = "{";
    for (std::size_t i = 0; i < m.voted.size(); ++i) {
      const auto& r = m.voted[i];
      v += (i ? " " : "") + std::string("<") + std::to_string(r.bal.value) + "," +
           std::to_string(r.slot.index) + "," + value_text(r.val, scope) + ">";
    }
    put("voted", v + "}");
  }
  if (multi && m.type == MsgType::TwoA) {
    std::string v = "{";
    for (std::size_t i = 0; i < m.decrees.size(); ++i) {
      v += (i ? " " : "") + std::string("<") + std::to_string(m.decrees[i].slot.index) + "," +
           value_text(m.decrees[i].val, scope) + ">";
    }
    put("decrees", v + "}");
  }
  o << ')';
  return o.str();
}

std::string list_text(const std::vector<Message>& ms, const Scope& scope) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? ", " : "") + message_text(ms[i], scope);
  return out;
}

std::string quorum_text(const Quorum& q) {
  std::string out = "{";
  for (std::size_t i = 0; i < q.size(); ++i) out += (i ? "," : "") + std::to_string(q[i]);
  return out + "}";
}

std::string params_text(const ActionInstance& act, const Scope& scope) {
  std::vector<std::string> parts;
  if (act.proposer) parts.push_back("p=" + std::to_string(*act.proposer));
  if (act.acceptor) parts.push_back("a=" + std::to_string(*act.acceptor));
  if (act.ballot) parts.push_back("b=" + std::to_string(act.ballot->value));
  if (act.value) parts.push_back("v=" + value_text(*act.value, scope));
  if (act.kind == ActionKind::Phase2a) parts.push_back("Q=" + quorum_text(act.quorum));
  if (!act.new_decrees.empty()) {
    std::string d = "D={";
    for (std::size_t i = 0; i < act.new_decrees.size(); ++i) {
      d += (i ? " " : "") + std::string("<") + std::to_string(act.new_decrees[i].slot.index) + "," +
           value_text(act.new_decrees[i].val, scope) + ">";
    }
    parts.push_back(d + "}");
  }
  if (act.kind == ActionKind::Preempt && act.msg) parts.push_back("on " + message_text(*act.msg, scope));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
  return out;
}

void write_trace_table(std::ostream& out, const std::vector<ActionInstance>& trace,
                       const Scope& scope) {
  std::vector<std::string> params;
  std::size_t width = 6;
  for (const auto& a : trace) {
    params.push_back(params_text(a, scope));
    width = std::max(width, params.back().size());
  }
  out << "  step  action   " << std::left << std::setw(static_cast<int>(width)) << "params"
      << "  sends\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << "  " << std::right << std::setw(4) << i + 1 << "  " << std::left << std::setw(8)
        << to_string(trace[i].kind) << " " << std::setw(static_cast<int>(width)) << params[i]
        << "  " << (trace[i].delta.empty() ? "(nothing new)" : list_text(trace[i].delta, scope))
        << '\n';
  }
  out << std::right;
}

void write_scope_line(std::ostream& out, const Scope& scope) {
  out << "variant " << to_string(scope.variant) << ", acceptors " << scope.n_acceptors;
  if (scope.multi()) out << ", proposers " << scope.n_proposers;
  out << ", ballots " << scope.ballot_bound << ", values {";
  for (std::size_t i = 0; i < scope.value_domain.size(); ++i) {
    out << (i ? "," : "") << scope.value_domain[i];
  }
  out << "}";
  if (scope.multi()) out << ", slots " << scope.slot_bound << ", max-new " << scope.max_new_proposals;
  out << ", quorums ";
  if (scope.majority) {
    out << "majority";
  } else {
    for (const auto& q : scope.quorums) out << quorum_text(q);
  }
  out << ", depth " << (scope.depth_limit ? std::to_string(*scope.depth_limit) : "unlimited") << '\n';
}

std::string witness_text(const Witness& w, const Scope& scope) {
  std::vector<std::string> parts;
  for (const auto& b : w.bindings) {
    parts.push_back(b.name + "=" +
                    (b.kind == BindingKind::Value ? value_text(Value{b.value}, scope) : std::to_string(b.value)));
  }
  for (const auto& [name, q] : w.quorums) parts.push_back(name + "=" + quorum_text(q));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
  if (!w.messages.empty()) out += (out.empty() ? "" : " ") + std::string("on ") + list_text(w.messages, scope);
  if (!w.note.empty()) out += (out.empty() ? "" : "; ") + w.note;
  return out;
}

}  // namespace

void write_human(std::ostream& out, const ExplorationReport& r) {
  write_scope_line(out, r.scope);
  out << "states " << r.states_visited << ", transitions " << r.transitions << ", max depth "
      << r.max_depth_reached << ", terminal states " << r.terminal_states << '\n';
  if (!r.complete) out << "state cap " << r.scope.state_cap << " reached; exploration incomplete\n";
  if (r.scope.depth_limit) {
    out << (r.depth_bounded ? "depth limit cut off enabled actions; results hold within depth "
                            : "no enabled action was cut off by the depth limit ")
        << *r.scope.depth_limit << '\n';
  }
  if (r.violations.empty()) {
    out << "all checks held:";
    for (const auto& name : state_check_names(r.scope)) out << ' ' << name;
    out << ' ' << kSafeAtStable << '\n';
  }
  for (const auto& v : r.violations) {
    const std::size_t n = r.failure_counts.count(v.check.name) ? r.failure_counts.at(v.check.name) : 0;
    out << '\n' << v.check.name << " fails (" << n << (v.check.name == kSafeAtStable ? " transitions" : " states")
        << "); shortest trace " << v.trace.size() << " actions\n";
    out << "  witness: " << witness_text(v.check.witness, r.scope) << '\n';
    write_trace_table(out, v.trace, r.scope);
  }
  if (r.inductive_mode) {
    out << "\nInit satisfies Inv: " << (r.init_satisfies_inv ? "yes" : "no") << '\n';
    if (r.inductive_break) {
      const auto& b = *r.inductive_break;
      out << "Inv not preserved: ";
      for (std::size_t i = 0; i < b.broken.size(); ++i) out << (i ? ", " : "") << b.broken[i];
      out << " broken by " << to_string(b.trace.back().kind) << " at step " << b.trace.size() << '\n';
      write_trace_table(out, b.trace, r.scope);
    } else {
      out << "Inv preserved by every explored transition\n";
    }
    if (r.inv_without_agree) out << "a state satisfies Inv but not Agree\n";
  }
  out << "status " << report_status(r) << ", " << std::fixed << std::setprecision(3)
      << r.duration.count() << " s\n";
  out.unsetf(std::ios::floatfield);
}

void write_human(std::ostream& out, const RunRecord& run) {
  write_scope_line(out, run.scope);
  if (!run.scenario.empty()) {
    out << "scenario " << run.scenario << '\n';
  } else {
    out << "seed " << run.seed << '\n';
  }
  write_trace_table(out, run.trace, run.scope);
  if (run.disabled) {
    out << "step " << run.disabled->step + 1 << " (" << to_string(run.disabled->kind)
        << ") is not enabled: " << run.disabled->failure.guard << " is false ("
        << run.disabled->failure.detail << ")\n";
  }
  if (run.deadlocked) out << "no action enabled after " << run.steps() << " steps\n";
  out << "chosen:";
  if (run.chosen.empty()) out << " none";
  for (const auto& d : run.chosen) {
    out << ' ';
    if (run.scope.multi()) out << "slot " << d.slot.index << "=";
    out << value_text(d.val, run.scope);
  }
  out << '\n';
  for (const auto& c : run.checks) {
    out << c.name << ' ' << (c.holds ? "holds" : "fails");
    if (!c.holds) out << ": " << witness_text(c.witness, run.scope);
    out << '\n';
  }
  out << "status " << run_status(run) << '\n';
}

ParsedTrace parse_json_lines(std::istream& in) {
  ParsedTrace out;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.contains("version")) {
      out.scope = scope_from_json(field(j, "scope"));
      have_header = true;
    } else if (!have_header) {
      throw FormatError("line " + std::to_string(lineno) + ": expected the header object first");
    } else if (j.contains("action")) {
      out.trace.push_back(action_from_json(j, out.scope));
    } else if (j.contains("status")) {
      if (j.contains("final_state")) out.final_state = state_from_json(j["final_state"], out.scope);
      out.result = std::move(j);
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unrecognized object");
    }
  }
  if (!have_header) throw FormatError("no header object");
  return out;
}

}  // namespace paxos_hist
