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

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "negsolve/model.hpp"
#include "negsolve/semantics.hpp"

namespace negsolve {

inline constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

struct AttractorResult {
  std::vector<bool> member;                         // n in A
  std::vector<std::uint32_t> index;                 // smallest k with n in A_k, or kInfinity
  std::vector<std::optional<OutcomeIdx>> strategy1; // N1 ∩ A, non-seed
  std::vector<std::optional<OutcomeIdx>> strategy2; // N2 ∩ B
  std::vector<AtomIdx> seeds;
  Player winner = Player::Two;

  std::vector<Player> owner;
  std::vector<AgentIdx> deterministic_agents;
  AtomIdx initial = 0;

  /// Number of count decrements performed, and the bound sum_n |R_n|·|P_n,det|.
  std::size_t decrements = 0;
  std::size_t decrement_bound = 0;

  std::vector<AtomIdx> members() const;
};

/// Attractor of `seeds` (sorted, deduplicated). Throws NotWd2, UnknownSeed,
/// InvalidArgument on an empty seed set.
AttractorResult compute_attractor(const Arena& arena, std::vector<AtomIdx> seeds);
/// Seeds {n_f}.
AttractorResult compute_attractor(const Arena& arena);

/// Throws NotWd2, and NotSound when `verify_soundness` is set and the
/// arena is unsound.
AttractorResult solve_termination_fast(const Arena& arena, bool verify_soundness = true,
                                       std::size_t budget = kDefaultStateBudget);

/// Player 1 strategy; throws Error(WrongWinner) unless Player 1 wins.
Strategy attractor_strategy(const AttractorResult& result);
/// Player 2 strategy; throws Error(WrongWinner) unless Player 2 wins.
Strategy escape_strategy(const AttractorResult& result);

struct PositionVector {
  std::vector<std::uint32_t> positions;

  /// Componentwise <= with at least one strict <.
  bool precedes(const PositionVector& other) const;
  friend bool operator==(const PositionVector&, const PositionVector&) = default;
};

PositionVector position_vector(const AttractorResult& result, const Marking& m);

struct TransformedArena {
  Arena arena;
  std::map<std::string, std::string> good;  // agent -> good atom name
  std::map<std::string, std::string> bad;   // agent -> bad atom name
};

/// Adds good/bad atoms per goal agent and redirects its final-bound
/// outcomes. New atoms go to Player 1 iff their agent is in `coalition`
/// (Player 2 without a coalition). Throws EmptyGoals,
/// GoalAgentNondeterministic and the validate_goals errors.
TransformedArena outcome_transform(const Arena& arena, const OutcomeGoal& goals,
                                   const std::optional<std::set<std::string>>& coalition =
                                       std::nullopt);

/// Adds every deterministic agent missing from `goals` with all of its
/// final-bound outcomes as goal set.
OutcomeGoal complete_goals(const Negotiation& neg, const OutcomeGoal& goals);

struct ConcludingFastResult {
  TransformedArena transformed;
  AttractorResult attractor;
};

/// Attractor of all good atoms on the transformed arena. Soundness and wd2
/// are required of the input arena.
ConcludingFastResult solve_concluding_outcome_fast(
    const Arena& arena, const OutcomeGoal& goals, bool verify_soundness = true,
    const std::optional<std::set<std::string>>& coalition = std::nullopt,
    std::size_t budget = kDefaultStateBudget);

}  // namespace negsolve
