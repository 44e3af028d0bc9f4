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

#include <optional>
#include <string_view>
#include <vector>

#include "negsolve/model.hpp"
#include "negsolve/semantics.hpp"

namespace negsolve {

/// Throws Error(UnknownAgent).
bool agent_is_deterministic(const Negotiation& neg, std::string_view agent);

struct Classification {
  bool deterministic = false;
  bool weakly_deterministic = false;
  /// Every atom has at least one deterministic party.
  bool wd2 = false;
  std::vector<bool> deterministic_agents;  // indexed by AgentIdx
};

Classification classify(const Negotiation& neg);

struct SoundnessVerdict {
  bool sound = false;
  std::vector<AtomIdx> dead_atoms;
  /// Shortest occurrence sequence from x0 to a marking that cannot reach x_f.
  /// Among shortest candidates the lexicographically greatest label sequence
  /// is reported.
  std::optional<std::vector<Occurrence>> witness;
  std::size_t markings = 0;
};

SoundnessVerdict check_soundness(const Negotiation& neg,
                                 std::size_t budget = kDefaultStateBudget);
SoundnessVerdict check_soundness(const Negotiation& neg, const ReachabilityGraph& graph);

/// "(n0,st)(n1,yes)"
std::string witness_string(const Negotiation& neg, const std::vector<Occurrence>& witness);

}  // namespace negsolve
