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

#pragma once

// Linearly bounded alternating Turing machines.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "negsolve/error.hpp"

namespace negsolve {

enum class StateKind { Existential, Universal, Accept, Reject };
enum class Move { L, R };

std::string_view to_string(StateKind kind);

struct AtmState {
  std::string name;
  StateKind kind = StateKind::Existential;
};

struct AtmTransition {
  std::string state;
  std::string symbol;
  Move move = Move::R;

  friend bool operator==(const AtmTransition&, const AtmTransition&) = default;
};

/// The first listed state is the initial state. The tape is exactly the
/// input word; the head starts on cell 0.
struct AlternatingTM {
  std::string name = "atm";
  std::vector<AtmState> states;
  std::vector<std::string> alphabet;
  std::string blank;
  std::vector<std::string> input;
  std::map<std::pair<std::string, std::string>, std::vector<AtmTransition>> delta;

  std::size_t cells() const { return input.size(); }
  const AtmState& state(std::string_view name) const;
  std::size_t state_index(std::string_view name) const;
  std::size_t symbol_index(std::string_view symbol) const;
  /// delta(q, a), empty when undefined.
  const std::vector<AtmTransition>& transitions(const std::string& q, const std::string& a) const;
};

inline constexpr std::size_t kDefaultConfigBudget = 1'000'000;

/// Checks names, halting states without transitions, and that no reachable
/// configuration moves the head off the tape. Throws Error(Validation /
/// TransitionFromHaltingState / HeadOutOfBounds / ConfigBudgetExceeded).
void validate_atm(const AlternatingTM& tm, std::size_t budget = kDefaultConfigBudget);

struct AtmConfig {
  std::uint32_t state = 0;
  std::uint32_t head = 0;
  std::vector<std::uint8_t> tape;

  friend bool operator==(const AtmConfig&, const AtmConfig&) = default;
  friend auto operator<=>(const AtmConfig&, const AtmConfig&) = default;
};

/// Reachable configuration graph; configuration 0 is the initial one.
struct AtmGraph {
  std::vector<AtmConfig> configs;
  std::vector<std::vector<std::size_t>> successors;
};

/// Throws ConfigBudgetExceeded and HeadOutOfBounds.
AtmGraph atm_configuration_graph(const AlternatingTM& tm,
                                 std::size_t budget = kDefaultConfigBudget);

/// Least fixpoint of the AND-OR evaluation. Stuck and rejecting
/// configurations do not accept.
bool atm_accepts(const AlternatingTM& tm, std::size_t budget = kDefaultConfigBudget);

/// True iff every reachable configuration can reach a halting one.
bool atm_always_can_halt(const AlternatingTM& tm, std::size_t budget = kDefaultConfigBudget);

}  // namespace negsolve
