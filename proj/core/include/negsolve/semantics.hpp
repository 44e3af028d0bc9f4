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
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "negsolve/model.hpp"

namespace negsolve {

/// x : A -> 2^N stored as one bit row per agent. Equality and hashing are
/// exact because the layout is canonical.
class Marking {
 public:
  Marking() = default;
  Marking(std::size_t agents, std::size_t atoms);

  static Marking initial(const Negotiation& neg);
  static Marking final_marking(const Negotiation& neg);

  std::size_t agent_count() const { return agents_; }
  std::size_t atom_count() const { return atoms_; }

  bool ready(AgentIdx a, AtomIdx n) const {
    return (bits_[a * words_ + n / 64] >> (n % 64)) & 1u;
  }
  bool empty(AgentIdx a) const;
  bool all_empty() const;
  std::vector<AtomIdx> ready_set(AgentIdx a) const;
  void assign(AgentIdx a, std::span<const AtomIdx> atoms);

  std::size_t hash() const;
  friend bool operator==(const Marking&, const Marking&) = default;

  /// "F:{n1} D:{n1} M:{n2,nf}"
  std::string to_string(const Negotiation& neg) const;

 private:
  std::size_t agents_ = 0;
  std::size_t atoms_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const { return m.hash(); }
};

std::vector<AtomIdx> enabled_atoms(const Negotiation& neg, const Marking& m);
bool is_enabled(const Negotiation& neg, const Marking& m, AtomIdx n);

/// True iff no two distinct atoms share a party. Throws Error(UnknownAtom).
bool is_independent(const Negotiation& neg, std::span<const AtomIdx> atoms);

/// Occurrence of (atom, outcome) at m. Throws NotEnabled / UnknownOutcome.
Marking step(const Negotiation& neg, const Marking& m, AtomIdx atom, OutcomeIdx outcome);

/// Simultaneous occurrence of an independent set of enabled atoms.
/// Throws NotIndependent / NotEnabled / UnknownOutcome.
Marking multi_step(const Negotiation& neg, const Marking& m, std::span<const Occurrence> chosen);

// ---------------------------------------------------------------------------

enum class VertexKind { Live, Final, Deadlock };

struct GraphEdge {
  Occurrence label;
  std::size_t target;
};

/// Markings reachable from x0 by single occurrences. Vertex 0 is x0; vertices
/// are numbered in breadth-first discovery order.
struct ReachabilityGraph {
  std::vector<Marking> markings;
  std::vector<std::vector<GraphEdge>> edges;
  std::vector<VertexKind> kind;
  std::optional<std::size_t> final_vertex;
  std::unordered_map<Marking, std::size_t, MarkingHash> index;

  std::size_t size() const { return markings.size(); }
  std::size_t edge_count() const;
};

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

/// Throws Error(StateBudgetExceeded) once more than `budget` markings exist.
ReachabilityGraph reachability_graph(const Negotiation& neg,
                                     std::size_t budget = kDefaultStateBudget);

// ---------------------------------------------------------------------------
// Plays

struct PlayStep {
  std::vector<AtomIdx> scheduled;     // S_i, sorted
  std::vector<Occurrence> choice1;    // F_{i,1}
  std::vector<Occurrence> choice2;    // F_{i,2}
  Marking source;
  Marking target;
};

enum class PlayStatus { ReachedFinal, Deadlocked, BudgetExhausted };

std::string_view to_string(PlayStatus status);

struct Play {
  Marking initial;
  std::vector<PlayStep> steps;
  PlayStatus status = PlayStatus::BudgetExhausted;

  const Marking& current() const { return steps.empty() ? initial : steps.back().target; }
};

/// Given the partial play so far, the whole scheduled set and the scheduled
/// atoms owned by the player (both sorted), returns one outcome per owned atom.
using Strategy = std::function<std::vector<OutcomeIdx>(
    const Play&, std::span<const AtomIdx> scheduled, std::span<const AtomIdx> owned)>;

/// Given the partial play, the current marking and the enabled atoms, returns
/// a nonempty independent subset of the enabled atoms.
using Scheduler =
    std::function<std::vector<AtomIdx>(const Play&, const Marking&, std::span<const AtomIdx>)>;

/// 2 * |N| * |A|
std::size_t default_play_budget(const Negotiation& neg);

/// Runs the game loop until x_f, a marking enabling nothing, or `budget`
/// steps (0 selects default_play_budget). Throws
/// StrategyReturnedInvalidOutcome / SchedulerReturnedInvalidSet.
Play simulate_play(const Arena& arena, const Strategy& player1, const Strategy& player2,
                   const Scheduler& scheduler, std::size_t budget = 0);

/// Memoryless strategy from a per-atom outcome table; atoms without an entry
/// get their first outcome.
Strategy table_strategy(std::vector<std::optional<OutcomeIdx>> table);
Strategy first_outcome_strategy();
/// Uniformly random outcomes from a private mt19937_64 seeded with `seed`.
Strategy random_strategy(const Negotiation& neg, std::uint64_t seed);

/// Schedules the first enabled atom only.
Scheduler first_atom_scheduler();
/// Greedy maximal independent set in canonical order.
Scheduler maximal_scheduler(const Negotiation& neg);
/// Random nonempty independent subset (not necessarily maximal).
Scheduler random_scheduler(const Negotiation& neg, std::uint64_t seed);

}  // namespace negsolve
