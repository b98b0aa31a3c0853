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

#include "paxos_hist/explorer.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paxos_hist {

ReplayError::ReplayError(std::size_t step, ActionKind kind, GuardFailure failure)
    : std::runtime_error("step " + std::to_string(step + 1) + " (" + to_string(kind) +
                         ") is not enabled: " + failure.guard + " fails: " + failure.detail),
      step_(step),
      kind_(kind),
      failure_(std::move(failure)) {}

SentState replay(const std::vector<ActionInstance>& trace, const Scope& scope) {
  SentState s;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const ActionInstance& act = trace[i];
    if (auto f = check_guard(s, act, scope)) throw ReplayError(i, act.kind, *f);
    ActionInstance expected = act;
    recompute_delta(s, expected, scope);
    if (!act.delta.empty()) {
      std::vector<Message> recorded = act.delta;
      normalize_set(recorded);
      if (recorded != expected.delta) {
        throw ReplayError(i, act.kind,
                          GuardFailure{"delta", "recorded delta differs from the action's Send"});
      }
    }
    s = s.with(expected.delta);
  }
  return s;
}

namespace {

constexpr std::uint32_t kNoParent = UINT32_MAX;

int check_index(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? static_cast<int>(names.size()) : static_cast<int>(it - names.begin());
}

std::uint32_t inv_mask(const Scope& scope) {
  const auto all = state_check_names(scope);
  std::uint32_t mask = 0;
  for (const auto& name : inductive_check_names(scope)) {
    mask |= std::uint32_t{1} << check_index(all, name);
  }
  return mask;
}

std::uint32_t failure_bits(const std::vector<CheckResult>& results) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].holds) bits |= std::uint32_t{1} << i;
  }
  return bits;
}

// Violations found so far, keyed by check; ordered for the report at the end.
struct Pending {
  CheckResult check;
  std::uint32_t state = 0;  // state whose trace leads to the violation
  std::optional<std::uint32_t> via_source;  // transition checks: source state
  std::size_t via_index = 0;                // ... and successor index
};

// Numbered state table shared by both explorers.
struct StateTable {
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<const std::string*> encodings;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via;  // successor index within the parent's expansion
  std::vector<std::uint32_t> depth;
  std::vector<std::uint32_t> failed;
  std::vector<std::uint64_t> safe;
  std::size_t words = 0;

  // Returns (id, inserted).
  std::pair<std::uint32_t, bool> add(std::string enc, std::uint32_t from, std::uint32_t k,
                                     std::uint32_t d) {
    auto id = static_cast<std::uint32_t>(encodings.size());
    auto [it, fresh] = index.emplace(std::move(enc), id);
    if (!fresh) return {it->second, false};
    encodings.push_back(&it->first);
    parent.push_back(from);
    via.push_back(k);
    depth.push_back(d);
    failed.push_back(0);
    safe.resize(safe.size() + words, 0);
    return {id, true};
  }

  std::span<const std::uint64_t> safe_of(std::uint32_t id) const {
    return {safe.data() + static_cast<std::size_t>(id) * words, words};
  }

  std::size_t size() const { return encodings.size(); }
};

std::vector<ActionInstance> trace_to(const StateTable& t, std::uint32_t id, const Scope& scope) {
  std::vector<std::uint32_t> path;
  for (std::uint32_t cur = id; t.parent[cur] != kNoParent; cur = t.parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  std::vector<ActionInstance> out;
  for (std::uint32_t child : path) {
    SentState from = decode_state(*t.encodings[t.parent[child]]);
    auto succ = successors(from, scope);
    out.push_back(std::move(succ.at(t.via[child]).action));
  }
  return out;
}

// Bookkeeping shared by both explorers: violation and inductiveness
// accounting on top of a StateTable.
class Recorder {
 public:
  Recorder(const Scope& scope, bool inductive)
      : scope_(scope),
        names_(state_check_names(scope)),
        inv_mask_(inv_mask(scope)),
        agree_bit_(std::uint32_t{1} << check_index(names_, "Agree")),
        inductive_(inductive) {}

  // Called once per new state, in numbering order.
  void on_state(const StateTable& t, std::uint32_t id, const std::vector<CheckResult>& results) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].holds) continue;
      ++counts_[results[i].name];
      if (!first_.count(results[i].name)) first_.emplace(results[i].name, Pending{results[i], id, std::nullopt, 0});
    }
    if (inductive_) {
      const std::uint32_t bits = t.failed[id];
      if (id == 0 && (bits & inv_mask_)) init_ok_ = false;
      if (!(bits & inv_mask_) && (bits & agree_bit_) && !inv_without_agree_) {
        inv_without_agree_ = id;
      }
    }
  }

  // Called once per transition, in (source order, successor index) order,
  // after both endpoints have been checked.
  void on_transition(const StateTable& t, std::uint32_t src, std::uint32_t k, std::uint32_t dst) {
    CheckResult r = safe_at_stable_from_tables(t.safe_of(src), t.safe_of(dst), scope_);
    if (!r.holds) {
      ++counts_[r.name];
      if (!first_.count(r.name)) {
        Pending p{std::move(r), dst, src, k};
        first_.emplace(kSafeAtStable, std::move(p));
      }
    }
    if (inductive_ && !break_ && !(t.failed[src] & inv_mask_) && (t.failed[dst] & inv_mask_)) {
      break_ = std::make_tuple(src, k, dst);
    }
  }

  void finish(const StateTable& t, ExplorationReport& report) const {
    report.failure_counts = counts_;
    std::vector<Violation> out;
    std::vector<std::pair<std::size_t, int>> keys;
    for (const auto& [name, p] : first_) {
      Violation v;
      v.check = p.check;
      if (p.via_source) {
        v.trace = trace_to(t, *p.via_source, scope_);
        SentState from = decode_state(*t.encodings[*p.via_source]);
        auto succ = successors(from, scope_);
        v.trace.push_back(succ.at(p.via_index).action);
        v.state = replay(v.trace, scope_);
      } else {
        v.trace = trace_to(t, p.state, scope_);
        v.state = decode_state(*t.encodings[p.state]);
      }
      keys.emplace_back(v.trace.size(), check_index(names_, name));
      out.push_back(std::move(v));
    }
    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
    for (std::size_t i : order) report.violations.push_back(std::move(out[i]));

    report.inductive_mode = inductive_;
    report.init_satisfies_inv = init_ok_;
    if (break_) {
      auto [src, k, dst] = *break_;
      InductiveBreak b;
      b.source = decode_state(*t.encodings[src]);
      b.target = decode_state(*t.encodings[dst]);
      const auto all = state_check_names(scope_);
      for (std::size_t i = 0; i < all.size(); ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        if ((inv_mask_ & bit) && (t.failed[dst] & bit)) b.broken.push_back(all[i]);
      }
      b.trace = trace_to(t, src, scope_);
      b.trace.push_back(successors(b.source, scope_).at(k).action);
      report.inductive_break = std::move(b);
    }
    if (inv_without_agree_) {
      Violation v;
      v.state = decode_state(*t.encodings[*inv_without_agree_]);
      v.check = check_agree(v.state, scope_);
      v.trace = trace_to(t, *inv_without_agree_, scope_);
      report.inv_without_agree = std::move(v);
    }
  }

 private:
  const Scope& scope_;
  std::vector<std::string> names_;
  std::uint32_t inv_mask_;
  std::uint32_t agree_bit_;
  bool inductive_;
  std::map<std::string, std::size_t> counts_;
  std::map<std::string, Pending> first_;
  bool init_ok_ = true;
  std::optional<std::uint32_t> inv_without_agree_;
  std::optional<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> break_;
};

void evaluate(StateTable& t, std::uint32_t id, const Scope& scope,
              std::vector<CheckResult>& results) {
  SentState s = decode_state(*t.encodings[id]);
  SafeAtTable table;
  results = check_state(s, scope, &table);
  t.failed[id] = failure_bits(results);
  std::copy(table.words().begin(), table.words().end(),
            t.safe.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(id) * t.words));
}

struct Expansion {
  std::vector<std::string> encodings;  // successor states, in successor order
};

}  // namespace

ExplorationReport explore(const Scope& scope, const ExploreOptions& options) {
  validate_scope(scope);
  const auto start = std::chrono::steady_clock::now();
  ExplorationReport report;
  report.scope = scope;
#ifdef _OPENMP
  const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();
#else
  const int workers = 1;
#endif

  StateTable t;
  t.words = SafeAtTable::words_for(scope);
  Recorder rec(scope, options.inductive);
  const std::size_t ncheck = state_check_names(scope).size();

  t.add(canonical_encoding(SentState{}), kNoParent, 0, 0);
  {
    std::vector<CheckResult> results;
    evaluate(t, 0, scope, results);
    rec.on_state(t, 0, results);
  }

  std::vector<std::uint32_t> frontier{0};
  std::size_t level = 0;
  std::exception_ptr error;

  while (!frontier.empty() && report.complete) {
    if (scope.depth_limit && level >= static_cast<std::size_t>(*scope.depth_limit)) {
      bool any = false;
#pragma omp parallel for num_threads(workers) schedule(dynamic, 64) reduction(|| : any)
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        if (!successors(decode_state(*t.encodings[frontier[i]]), scope).empty()) any = true;
      }
      report.depth_bounded = any;
      break;
    }

    std::vector<std::uint32_t> next;
    for (std::size_t lo = 0; lo < frontier.size() && report.complete; lo += options.batch) {
      const std::size_t hi = std::min(frontier.size(), lo + options.batch);
      std::vector<Expansion> exp(hi - lo);

      // Expand the batch.
#pragma omp parallel for num_threads(workers) schedule(dynamic, 16)
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          SentState s = decode_state(*t.encodings[frontier[i]]);
          auto succ = successors(s, scope);
          auto& e = exp[i - lo].encodings;
          e.reserve(succ.size());
          for (const auto& x : succ) e.push_back(canonical_encoding(x.next));
        } catch (...) {
#pragma omp critical
          if (!error) error = std::current_exception();
        }
      }
      if (error) std::rethrow_exception(error);

      // Number new states in (parent, successor) order.
      std::vector<std::uint32_t> fresh;
      std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
      for (std::size_t i = lo; i < hi && report.complete; ++i) {
        const std::uint32_t src = frontier[i];
        auto& e = exp[i - lo].encodings;
        if (e.empty()) {
          ++report.terminal_states;
          if (options.collect_terminal) report.terminal_encodings.push_back(*t.encodings[src]);
        }
        for (std::size_t k = 0; k < e.size(); ++k) {
          if (t.size() >= scope.state_cap && !t.index.count(e[k])) {
            report.complete = false;
            break;
          }
          auto [dst, inserted] = t.add(std::move(e[k]), src, static_cast<std::uint32_t>(k),
                                       static_cast<std::uint32_t>(level + 1));
          if (inserted) {
            fresh.push_back(dst);
            next.push_back(dst);
          }
          edges.emplace_back(src, static_cast<std::uint32_t>(k), dst);
          ++report.transitions;
        }
      }

      // Check the new states.
      std::vector<std::vector<CheckResult>> results(fresh.size());
#pragma omp parallel for num_threads(workers) schedule(dynamic, 16)
      for (std::size_t j = 0; j < fresh.size(); ++j) {
        try {
          evaluate(t, fresh[j], scope, results[j]);
        } catch (...) {
#pragma omp critical
          if (!error) error = std::current_exception();
        }
      }
      if (error) std::rethrow_exception(error);
      for (std::size_t j = 0; j < fresh.size(); ++j) rec.on_state(t, fresh[j], results[j]);
      for (auto [src, k, dst] : edges) rec.on_transition(t, src, k, dst);
      (void)ncheck;
    }
    if (!next.empty()) report.max_depth_reached = level + 1;
    frontier = std::move(next);
    ++level;
  }

  report.states_visited = t.size();
  rec.finish(t, report);
  report.duration = std::chrono::steady_clock::now() - start;
  return report;
}

ExplorationReport inductive_check(const Scope& scope, const ExploreOptions& options) {
  ExploreOptions o = options;
  o.inductive = true;
  return explore(scope, o);
}

ExplorationReport explore_serial(const Scope& scope, const ExploreOptions& options) {
  validate_scope(scope);
  const auto start = std::chrono::steady_clock::now();
  ExplorationReport report;
  report.scope = scope;

  StateTable t;
  t.words = SafeAtTable::words_for(scope);
  Recorder rec(scope, options.inductive);
  std::vector<CheckResult> results;

  t.add(canonical_encoding(SentState{}), kNoParent, 0, 0);
  evaluate(t, 0, scope, results);
  rec.on_state(t, 0, results);

  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const std::uint32_t src = queue.front();
    queue.pop_front();
    const SentState s = decode_state(*t.encodings[src]);
    const auto succ = successors(s, scope);
    if (scope.depth_limit && t.depth[src] >= static_cast<std::uint32_t>(*scope.depth_limit)) {
      if (!succ.empty()) report.depth_bounded = true;
      continue;
    }
    if (succ.empty()) {
      ++report.terminal_states;
      if (options.collect_terminal) report.terminal_encodings.push_back(*t.encodings[src]);
    }
    for (std::size_t k = 0; k < succ.size(); ++k) {
      std::string enc = canonical_encoding(succ[k].next);
      if (t.size() >= scope.state_cap && !t.index.count(enc)) {
        report.complete = false;
        break;
      }
      auto [dst, inserted] =
          t.add(std::move(enc), src, static_cast<std::uint32_t>(k), t.depth[src] + 1);
      if (inserted) {
        evaluate(t, dst, scope, results);
        rec.on_state(t, dst, results);
        queue.push_back(dst);
        report.max_depth_reached = std::max<std::size_t>(report.max_depth_reached, t.depth[dst]);
      }
      rec.on_transition(t, src, static_cast<std::uint32_t>(k), dst);
      ++report.transitions;
    }
    if (!report.complete) break;
  }

  report.states_visited = t.size();
  rec.finish(t, report);
  report.duration = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace paxos_hist
