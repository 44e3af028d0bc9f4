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

#include <map>
#include <set>
#include <string>

#include "negsolve/atm.hpp"
#include "negsolve/model.hpp"

namespace negsolve {

enum class AtomRole {
  Initial,
  Final,
  Config,       // n_{q,a,k}
  StateGuess,   // n_{q,k}: Player 1 guesses the symbol under the head
  SymbolGuess,  // n_{a,k}: Player 1 guesses the state
  Cleanup,      // w_k: walks P over the cells after acceptance
  AnythingStart,
  Anything
};

struct AtomOrigin {
  AtomRole role = AtomRole::Config;
  std::string state;
  std::string symbol;
  std::size_t cell = 0;
};

struct ReductionOutput {
  Arena arena;
  std::map<std::string, AtomOrigin> origin;  // by atom name
};

struct BasicReductionOptions {
  /// Send I and P from n0 only to the configuration atom of the initial
  /// symbol of cell 0 instead of all symbols.
  bool restrict_initial_symbol = false;
};

/// Nondeterministic reduction; every reachable marking enables at most one
/// atom. Rejecting and stuck configuration atoms loop on outcome s.
ReductionOutput reduce_atm_basic(const AlternatingTM& tm, const BasicReductionOptions& options = {});

/// Deterministic reduction with state and symbol guessing atoms and a
/// cleanup walk that brings every cell agent to n_f after acceptance.
ReductionOutput reduce_atm_deterministic(const AlternatingTM& tm);

/// Sound reduction with agent S and the anything-mode atoms n1, n2.
ReductionOutput reduce_atm_sound(const AlternatingTM& tm);

/// Replaces every proper hyper-arc X(n,a,r) = {n_1..n_k} by a fresh atom
/// with sole party a and one outcome per n_i (named after n_i).
Arena determinize(const Arena& arena, Player owner_of_new = Player::One);

struct GrantControlResult {
  Arena arena;
  std::set<std::string> coalition;
  std::size_t control_agents = 0;
  std::size_t opposition_balancers = 0;
  std::size_t coalition_balancers = 0;
};

/// Adds coalition agents to `atom`, n0 and nf (ready for {atom, nf}) and
/// balancing agents on n0 and nf so that only `atom` changes owner under the
/// majority rule. Throws NotCoalitionArena, InvalidTarget, CannotBalance.
GrantControlResult grant_control(const Arena& arena, const std::string& atom,
                                 const std::set<std::string>& coalition);

}  // namespace negsolve
