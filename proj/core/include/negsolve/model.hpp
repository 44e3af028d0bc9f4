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

// Negotiations (atoms, parties, outcomes, transition function) and arenas.
//
// Identifiers are case-sensitive strings. After validation every agent, atom
// and per-atom outcome is addressed by its position in lexicographic order,
// which fixes iteration order for all algorithms and for serialization.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "negsolve/error.hpp"

namespace negsolve {

using AgentIdx = std::uint32_t;
using AtomIdx = std::uint32_t;
using OutcomeIdx = std::uint32_t;

enum class Player : std::uint8_t { One = 1, Two = 2 };

inline int to_int(Player p) { return static_cast<int>(p); }

/// An occurrence (n, r): atom plus one of its outcomes.
struct Occurrence {
  AtomIdx atom;
  OutcomeIdx outcome;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

// ---------------------------------------------------------------------------
// Raw (unvalidated) description, produced by the parser or by transformations.

struct AtomSpec {
  std::string name;
  std::vector<std::string> parties;
  SourceSpan span{0, 0, 0};
};

struct TransitionSpec {
  std::string atom;
  std::string outcome;
  std::string agent;
  std::vector<std::string> successors;
  SourceSpan span{0, 0, 0};
};

struct NegotiationSpec {
  std::string name = "negotiation";
  std::vector<std::string> agents;
  std::vector<AtomSpec> atoms;
  std::string initial;
  std::string final_atom;
  std::vector<TransitionSpec> transitions;
  // Optional ownership (only meaningful for arenas). Atoms missing here are
  // owned by Player 2 when the map is nonempty.
  std::map<std::string, Player> owners;
};

// ---------------------------------------------------------------------------

struct Atom {
  std::string name;
  std::vector<AgentIdx> parties;       // sorted
  std::vector<std::string> outcomes;   // sorted
  // next[party position][outcome] = X(n, a, r), sorted and duplicate-free.
  std::vector<std::vector<std::vector<AtomIdx>>> next;

  std::optional<OutcomeIdx> find_outcome(std::string_view outcome) const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A validated negotiation (N, n0, nf, X). Immutable.
class Negotiation {
 public:
  const std::string& name() const { return name_; }

  std::size_t agent_count() const { return agents_.size(); }
  std::size_t atom_count() const { return atoms_.size(); }

  const std::vector<std::string>& agents() const { return agents_; }
  const std::string& agent_name(AgentIdx a) const { return agents_.at(a); }
  std::optional<AgentIdx> find_agent(std::string_view name) const;
  /// Throws Error(UnknownAgent).
  AgentIdx agent_index(std::string_view name) const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(AtomIdx n) const { return atoms_.at(n); }
  const std::string& atom_name(AtomIdx n) const { return atoms_.at(n).name; }
  std::optional<AtomIdx> find_atom(std::string_view name) const;
  /// Throws Error(UnknownAtom).
  AtomIdx atom_index(std::string_view name) const;
  /// Throws Error(UnknownOutcome).
  OutcomeIdx outcome_index(AtomIdx n, std::string_view outcome) const;

  AtomIdx initial() const { return initial_; }
  AtomIdx final_atom() const { return final_; }

  bool is_party(AtomIdx n, AgentIdx a) const {
    return party_pos_[n][a] >= 0;
  }
  /// Position of a in the party list of n, or -1.
  int party_position(AtomIdx n, AgentIdx a) const { return party_pos_[n][a]; }

  /// X(n, a, r). Throws Error(UnknownAgent) if a is not a party of n and
  /// Error(UnknownOutcome) if r is out of range.
  std::span<const AtomIdx> successors(AtomIdx n, AgentIdx a, OutcomeIdx r) const;

  /// An agent is deterministic if every X(n, a, r) with n != nf is a singleton.
  bool is_deterministic_agent(AgentIdx a) const { return deterministic_[a]; }

  /// Sum over atoms of |R_n|.
  std::size_t outcome_port_count() const;

  std::string occurrence_string(Occurrence occ) const;

  friend bool operator==(const Negotiation&, const Negotiation&) = default;

 private:
  friend Negotiation validate_negotiation(const NegotiationSpec& spec);

  std::string name_;
  std::vector<std::string> agents_;
  std::vector<Atom> atoms_;
  AtomIdx initial_ = 0;
  AtomIdx final_ = 0;
  std::vector<std::vector<int>> party_pos_;
  std::vector<bool> deterministic_;
};

/// Checks every structural invariant and returns the canonical negotiation.
/// Throws ValidationError listing all violations.
Negotiation validate_negotiation(const NegotiationSpec& spec);

/// Inverse of validate_negotiation (canonical order, no owners).
NegotiationSpec to_spec(const Negotiation& neg);

/// A negotiation whose atoms are partitioned between Player 1 and Player 2.
struct Arena {
  Negotiation negotiation;
  std::vector<Player> owner;  // indexed by AtomIdx

  Player owner_of(AtomIdx n) const { return owner.at(n); }
  std::vector<AtomIdx> atoms_of(Player p) const;

  friend bool operator==(const Arena&, const Arena&) = default;
};

/// Arena from a spec carrying owner lines. Unlisted atoms go to Player 2.
Arena make_arena(const NegotiationSpec& spec);
Arena make_arena(Negotiation neg, std::vector<Player> owner);
/// Arena spec with owner entries for every atom.
NegotiationSpec to_spec(const Arena& arena);

/// Majority rule: n is owned by Player 1 iff |P_n ∩ C| > |P_n \ C|.
/// Ties go to Player 2. Throws Error(UnknownAgent).
std::vector<Player> coalition_partition(const Negotiation& neg,
                                        const std::set<std::string>& coalition);

Arena coalition_arena(const Negotiation& neg, const std::set<std::string>& coalition);

/// Parties of n that are deterministic agents. Throws Error(UnknownAtom).
std::vector<AgentIdx> deterministic_parties(const Negotiation& neg, AtomIdx n);

/// Per-agent goal sets G_a of (atom, outcome) names.
using OutcomeGoal = std::map<std::string, std::set<std::pair<std::string, std::string>>>;

/// Checks that a is a party of n and nf ∈ X(n, a, r) for every goal entry.
/// Throws Error(UnknownAgent / UnknownAtom / UnknownOutcome / InvalidGoal).
void validate_goals(const Negotiation& neg, const OutcomeGoal& goals);

}  // namespace negsolve
