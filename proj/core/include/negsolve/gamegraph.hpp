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
#include <unordered_map>
#include <vector>

#include "negsolve/attractor.hpp"
#include "negsolve/model.hpp"
#include "negsolve/semantics.hpp"

namespace negsolve {

enum class NodeKind { Marking, Pair, Sink };

/// Marking nodes belong to the Scheduler: their successors are the pair
/// nodes (x, S) for every nonempty independent set S of enabled atoms.
/// Pair nodes belong to Players 1 and 2: successor f1 * moves2 + f2 is the
/// node reached when Player 1 picks assignment f1 over atoms1 and Player 2
/// picks f2 over atoms2. Assignments are mixed-radix numbers with the first
/// atom least significant.
struct GameNode {
  NodeKind kind = NodeKind::Marking;
  std::size_t marking = 0;  // index into GameStructure::markings
  std::vector<AtomIdx> scheduled;
  std::vector<AtomIdx> atoms1;
  std::vector<AtomIdx> atoms2;
  std::size_t moves1 = 1;
  std::size_t moves2 = 1;
  std::vector<std::size_t> successors;
};

struct GameStructure {
  Arena arena;
  std::vector<GameNode> nodes;
  std::vector<Marking> markings;
  std::unordered_map<Marking, std::size_t, MarkingHash> marking_node;
  std::size_t initial = 0;
  std::optional<std::size_t> final_node;
  std::optional<std::size_t> sink;

  std::size_t marking_count() const { return markings.size(); }
  std::size_t pair_count() const;
  std::size_t transition_count() const;
};

inline constexpr std::size_t kDefaultMoveBudget = 1u << 16;

struct GameBuildOptions {
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t move_budget = kDefaultMoveBudget;
  /// Scheduling any of these atoms leads to the losing sink.
  std::vector<AtomIdx> losing_atoms;
};

/// Throws StateBudgetExceeded / MoveBudgetExceeded.
GameStructure build_game_structure(const Arena& arena, const GameBuildOptions& options = {});

/// Decodes a mixed-radix assignment over `atoms`.
std::vector<OutcomeIdx> decode_assignment(const Negotiation& neg,
                                          const std::vector<AtomIdx>& atoms, std::size_t code);

enum class WorklistOrder { Fifo, Lifo };

struct GeneralSolveResult {
  std::vector<bool> winning;                      // per node
  std::vector<std::optional<std::size_t>> witness_f1;  // per winning pair node
  std::size_t winning_markings = 0;
  std::size_t winning_pairs = 0;
  Player winner = Player::Two;
};

/// Least set W containing `target` such that a marking node with at least
/// one move joins when all of its moves lead into W, and a pair node joins
/// when some f1 makes every f2 lead into W.
GeneralSolveResult solve_sure_reachability(const GameStructure& gs,
                                           const std::vector<std::size_t>& target,
                                           WorklistOrder order = WorklistOrder::Fifo);

/// Player 1 strategy replaying the recorded witness choices; outside the
/// winning region it picks first outcomes.
Strategy general_strategy(const GameStructure& gs, const GeneralSolveResult& result);

struct GeneralSolve {
  GameStructure game;
  GeneralSolveResult result;
};

GeneralSolve solve_termination_general(const Arena& arena,
                                       const GameBuildOptions& options = {});

/// Runs on the outcome-transformed arena with every bad atom leading to the
/// losing sink.
GeneralSolve solve_concluding_outcome_general(const Arena& arena, const OutcomeGoal& goals,
                                              const GameBuildOptions& options = {});

}  // namespace negsolve
