/*
 * Copyright 2026 The negsolve Authors
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

#include "negsolve/atm.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace negsolve {

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Existential: return "E";
    case StateKind::Universal: return "A";
    case StateKind::Accept: return "acc";
    case StateKind::Reject: return "rej";
  }
  return "?";
}

std::size_t AlternatingTM::state_index(std::string_view q) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].name == q) return i;
  }
  throw Error(ErrorCode::Validation, "unknown state '" + std::string(q) + "'");
}

const AtmState& AlternatingTM::state(std::string_view q) const { return states[state_index(q)]; }

std::size_t AlternatingTM::symbol_index(std::string_view a) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (alphabet[i] == a) return i;
  }
  throw Error(ErrorCode::Validation, "unknown symbol '" + std::string(a) + "'");
}

const std::vector<AtmTransition>& AlternatingTM::transitions(const std::string& q,
                                                             const std::string& a) const {
  static const std::vector<AtmTransition> none;
  auto it = delta.find({q, a});
  return it == delta.end() ? none : it->second;
}

namespace {

bool halting(StateKind k) { return k == StateKind::Accept || k == StateKind::Reject; }

void check_names(const AlternatingTM& tm) {
  if (tm.states.empty()) throw Error(ErrorCode::Validation, "machine has no states");
  if (tm.alphabet.empty()) throw Error(ErrorCode::Validation, "machine has an empty alphabet");
  if (tm.input.empty()) throw Error(ErrorCode::Validation, "input word must be nonempty");
  if (tm.alphabet.size() > 255) throw Error(ErrorCode::Validation, "alphabet too large");
  std::set<std::string> seen;
  for (const auto& s : tm.states) {
    if (!seen.insert(s.name).second) {
      throw Error(ErrorCode::Validation, "duplicate state '" + s.name + "'");
    }
  }
  seen.clear();
  for (const auto& a : tm.alphabet) {
    if (!seen.insert(a).second) throw Error(ErrorCode::Validation, "duplicate symbol '" + a + "'");
  }
  if (!tm.blank.empty()) tm.symbol_index(tm.blank);
  for (const auto& a : tm.input) tm.symbol_index(a);
  for (const auto& [key, ts] : tm.delta) {
    const auto& q = tm.state(key.first);
    tm.symbol_index(key.second);
    if (halting(q.kind) && !ts.empty()) {
      throw Error(ErrorCode::TransitionFromHaltingState,
                  "transition listed from halting state '" + q.name + "'");
    }
    for (const auto& t : ts) {
      tm.state_index(t.state);
      tm.symbol_index(t.symbol);
    }
  }
}

}  // namespace

AtmGraph atm_configuration_graph(const AlternatingTM& tm, std::size_t budget) {
  check_names(tm);
  const std::size_t n = tm.cells();
  // delta by indices
  std::vector<std::vector<std::vector<std::tuple<std::uint32_t, std::uint8_t, Move>>>> d(
      tm.states.size(), std::vector<std::vector<std::tuple<std::uint32_t, std::uint8_t, Move>>>(
                            tm.alphabet.size()));
  for (const auto& [key, ts] : tm.delta) {
    auto& slot = d[tm.state_index(key.first)][tm.symbol_index(key.second)];
    for (const auto& t : ts) {
      slot.emplace_back(static_cast<std::uint32_t>(tm.state_index(t.state)),
                        static_cast<std::uint8_t>(tm.symbol_index(t.symbol)), t.move);
    }
  }

  AtmGraph g;
  std::map<AtmConfig, std::size_t> index;
  auto intern = [&](AtmConfig c) {
    auto [it, inserted] = index.try_emplace(c, g.configs.size());
    if (inserted) {
      if (g.configs.size() >= budget) {
        throw Error(ErrorCode::ConfigBudgetExceeded,
                    "configuration graph exceeds " + std::to_string(budget));
      }
      g.configs.push_back(std::move(c));
      g.successors.emplace_back();
    }
    return it->second;
  };
  AtmConfig init;
  for (const auto& a : tm.input) init.tape.push_back(static_cast<std::uint8_t>(tm.symbol_index(a)));
  intern(std::move(init));
  for (std::size_t i = 0; i < g.configs.size(); ++i) {
    const AtmConfig c = g.configs[i];
    for (const auto& [q, sym, mv] : d[c.state][c.tape[c.head]]) {
      if ((mv == Move::L && c.head == 0) || (mv == Move::R && c.head + 1 >= n)) {
        throw Error(ErrorCode::HeadOutOfBounds,
                    "state '" + tm.states[c.state].name + "' moves the head off the tape at cell " +
                        std::to_string(c.head));
      }
      AtmConfig next = c;
      next.tape[c.head] = sym;
      next.state = q;
      next.head = mv == Move::L ? c.head - 1 : c.head + 1;
      const std::size_t t = intern(std::move(next));
      g.successors[i].push_back(t);
    }
  }
  return g;
}

void validate_atm(const AlternatingTM& tm, std::size_t budget) {
  atm_configuration_graph(tm, budget);
}

bool atm_accepts(const AlternatingTM& tm, std::size_t budget) {
  const AtmGraph g = atm_configuration_graph(tm, budget);
  const std::size_t size = g.configs.size();
  std::vector<std::vector<std::size_t>> preds(size);
  std::vector<std::size_t> pending(size, 0);
  std::vector<bool> accepts(size, false);
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t t : g.successors[i]) preds[t].push_back(i);
    const StateKind k = tm.states[g.configs[i].state].kind;
    pending[i] = k == StateKind::Universal ? g.successors[i].size() : 1;
    if (k == StateKind::Accept) {
      accepts[i] = true;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    const std::size_t w = work.front();
    work.pop_front();
    for (std::size_t p : preds[w]) {
      if (accepts[p]) continue;
      if (--pending[p] == 0) {
        accepts[p] = true;
        work.push_back(p);
      }
    }
  }
  return accepts[0];
}

bool atm_always_can_halt(const AlternatingTM& tm, std::size_t budget) {
  const AtmGraph g = atm_configuration_graph(tm, budget);
  const std::size_t size = g.configs.size();
  std::vector<std::vector<std::size_t>> preds(size);
  std::vector<bool> halts(size, false);
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t t : g.successors[i]) preds[t].push_back(i);
    if (halting(tm.states[g.configs[i].state].kind)) {
      halts[i] = true;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    const std::size_t w = work.front();
    work.pop_front();
    for (std::size_t p : preds[w]) {
      if (!halts[p]) {
        halts[p] = true;
        work.push_back(p);
      }
    }
  }
  return std::all_of(halts.begin(), halts.end(), [](bool b) { return b; });
}

}  // namespace negsolve
