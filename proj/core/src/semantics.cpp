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

#include "negsolve/semantics.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <sstream>

namespace negsolve {

Marking::Marking(std::size_t agents, std::size_t atoms)
    : agents_(agents), atoms_(atoms), words_((atoms + 63) / 64), bits_(agents * words_, 0) {}

Marking Marking::initial(const Negotiation& neg) {
  Marking m(neg.agent_count(), neg.atom_count());
  const AtomIdx n0 = neg.initial();
  for (AgentIdx a = 0; a < neg.agent_count(); ++a) m.assign(a, std::span(&n0, 1));
  return m;
}

Marking Marking::final_marking(const Negotiation& neg) {
  return Marking(neg.agent_count(), neg.atom_count());
}

bool Marking::empty(AgentIdx a) const {
  for (std::size_t w = 0; w < words_; ++w) {
    if (bits_[a * words_ + w]) return false;
  }
  return true;
}

bool Marking::all_empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<AtomIdx> Marking::ready_set(AgentIdx a) const {
  std::vector<AtomIdx> out;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = bits_[a * words_ + w];
    while (word) {
      const int bit = __builtin_ctzll(word);
      out.push_back(static_cast<AtomIdx>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

void Marking::assign(AgentIdx a, std::span<const AtomIdx> atoms) {
  std::fill_n(bits_.begin() + static_cast<std::ptrdiff_t>(a * words_), words_, 0);
  for (AtomIdx n : atoms) bits_[a * words_ + n / 64] |= std::uint64_t{1} << (n % 64);
}

std::size_t Marking::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string Marking::to_string(const Negotiation& neg) const {
  std::ostringstream os;
  for (AgentIdx a = 0; a < agents_; ++a) {
    if (a) os << ' ';
    os << neg.agent_name(a) << ":{";
    bool first = true;
    for (AtomIdx n : ready_set(a)) {
      if (!first) os << ',';
      first = false;
      os << neg.atom_name(n);
    }
    os << '}';
  }
  return os.str();
}

bool is_enabled(const Negotiation& neg, const Marking& m, AtomIdx n) {
  for (AgentIdx p : neg.atom(n).parties) {
    if (!m.ready(p, n)) return false;
  }
  return true;
}

std::vector<AtomIdx> enabled_atoms(const Negotiation& neg, const Marking& m) {
  std::vector<AtomIdx> out;
  for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
    if (is_enabled(neg, m, n)) out.push_back(n);
  }
  return out;
}

bool is_independent(const Negotiation& neg, std::span<const AtomIdx> atoms) {
  std::vector<bool> used(neg.agent_count(), false);
  std::vector<AtomIdx> seen;
  for (AtomIdx n : atoms) {
    if (n >= neg.atom_count()) throw Error(ErrorCode::UnknownAtom, "atom index out of range");
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    for (AgentIdx p : neg.atom(n).parties) {
      if (used[p]) return false;
      used[p] = true;
    }
  }
  return true;
}

namespace {

void apply(const Negotiation& neg, Marking& m, AtomIdx n, OutcomeIdx r) {
  const Atom& at = neg.atom(n);
  for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
    m.assign(at.parties[pos], at.next[pos][r]);
  }
}

void check_occurrence(const Negotiation& neg, const Marking& m, AtomIdx n, OutcomeIdx r) {
  if (n >= neg.atom_count()) throw Error(ErrorCode::UnknownAtom, "atom index out of range");
  if (r >= neg.atom(n).outcomes.size()) {
    throw Error(ErrorCode::UnknownOutcome,
                "outcome index out of range for atom '" + neg.atom_name(n) + "'");
  }
  if (!is_enabled(neg, m, n)) {
    throw Error(ErrorCode::NotEnabled, "atom '" + neg.atom_name(n) + "' is not enabled");
  }
}

}  // namespace

Marking step(const Negotiation& neg, const Marking& m, AtomIdx atom, OutcomeIdx outcome) {
  check_occurrence(neg, m, atom, outcome);
  Marking next = m;
  apply(neg, next, atom, outcome);
  return next;
}

Marking multi_step(const Negotiation& neg, const Marking& m, std::span<const Occurrence> chosen) {
  std::vector<AtomIdx> atoms;
  for (const auto& occ : chosen) {
    if (std::find(atoms.begin(), atoms.end(), occ.atom) != atoms.end()) {
      throw Error(ErrorCode::NotIndependent, "atom '" + neg.atom_name(occ.atom) +
                                                 "' chosen twice in one multi-step");
    }
    atoms.push_back(occ.atom);
  }
  if (!is_independent(neg, atoms)) {
    throw Error(ErrorCode::NotIndependent, "chosen atoms share a party");
  }
  for (const auto& occ : chosen) check_occurrence(neg, m, occ.atom, occ.outcome);
  Marking next = m;
  for (const auto& occ : chosen) apply(neg, next, occ.atom, occ.outcome);
  return next;
}

std::size_t ReachabilityGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& e : edges) total += e.size();
  return total;
}

ReachabilityGraph reachability_graph(const Negotiation& neg, std::size_t budget) {
  ReachabilityGraph g;
  auto intern = [&](Marking m) -> std::size_t {
    auto [it, inserted] = g.index.try_emplace(m, g.markings.size());
    if (inserted) {
      if (g.markings.size() >= budget) {
        throw Error(ErrorCode::StateBudgetExceeded,
                    "reachability graph exceeds " + std::to_string(budget) + " markings");
      }
      g.markings.push_back(std::move(m));
      g.edges.emplace_back();
      g.kind.push_back(VertexKind::Live);
    }
    return it->second;
  };

  intern(Marking::initial(neg));
  for (std::size_t v = 0; v < g.markings.size(); ++v) {
    const std::vector<AtomIdx> enabled = enabled_atoms(neg, g.markings[v]);
    if (enabled.empty()) {
      if (g.markings[v].all_empty()) {
        g.kind[v] = VertexKind::Final;
        g.final_vertex = v;
      } else {
        g.kind[v] = VertexKind::Deadlock;
      }
      continue;
    }
    for (AtomIdx n : enabled) {
      const auto outcome_count = static_cast<OutcomeIdx>(neg.atom(n).outcomes.size());
      for (OutcomeIdx r = 0; r < outcome_count; ++r) {
        Marking next = g.markings[v];
        apply(neg, next, n, r);
        const std::size_t t = intern(std::move(next));
        g.edges[v].push_back({{n, r}, t});
      }
    }
  }
  return g;
}

std::string_view to_string(PlayStatus status) {
  switch (status) {
    case PlayStatus::ReachedFinal: return "ReachedFinal";
    case PlayStatus::Deadlocked: return "Deadlocked";
    case PlayStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

std::size_t default_play_budget(const Negotiation& neg) {
  return 2 * neg.atom_count() * neg.agent_count();
}

namespace {

std::vector<Occurrence> ask(const Arena& arena, const Strategy& strategy, const Play& play,
                            const std::vector<AtomIdx>& scheduled,
                            const std::vector<AtomIdx>& atoms) {
  std::vector<Occurrence> out;
  if (atoms.empty()) return out;
  const std::vector<OutcomeIdx> choice = strategy(play, scheduled, atoms);
  if (choice.size() != atoms.size()) {
    throw Error(ErrorCode::StrategyReturnedInvalidOutcome,
                "strategy returned " + std::to_string(choice.size()) + " outcomes for " +
                    std::to_string(atoms.size()) + " atoms");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (choice[i] >= arena.negotiation.atom(atoms[i]).outcomes.size()) {
      throw Error(ErrorCode::StrategyReturnedInvalidOutcome,
                  "strategy returned an invalid outcome for atom '" +
                      arena.negotiation.atom_name(atoms[i]) + "'");
    }
    out.push_back({atoms[i], choice[i]});
  }
  return out;
}

}  // namespace

Play simulate_play(const Arena& arena, const Strategy& player1, const Strategy& player2,
                   const Scheduler& scheduler, std::size_t budget) {
  const Negotiation& neg = arena.negotiation;
  if (budget == 0) budget = default_play_budget(neg);
  Play play;
  play.initial = Marking::initial(neg);

  auto classify_end = [&](const Marking& m) -> std::optional<PlayStatus> {
    if (m.all_empty()) return PlayStatus::ReachedFinal;
    if (enabled_atoms(neg, m).empty()) return PlayStatus::Deadlocked;
    return std::nullopt;
  };

  for (std::size_t i = 0; i < budget; ++i) {
    const Marking& m = play.current();
    if (auto end = classify_end(m)) {
      play.status = *end;
      return play;
    }
    const std::vector<AtomIdx> enabled = enabled_atoms(neg, m);
    std::vector<AtomIdx> scheduled = scheduler(play, m, enabled);
    std::sort(scheduled.begin(), scheduled.end());
    const bool valid =
        !scheduled.empty() &&
        std::adjacent_find(scheduled.begin(), scheduled.end()) == scheduled.end() &&
        std::all_of(scheduled.begin(), scheduled.end(),
                    [&](AtomIdx n) { return std::binary_search(enabled.begin(), enabled.end(), n); }) &&
        is_independent(neg, scheduled);
    if (!valid) {
      throw Error(ErrorCode::SchedulerReturnedInvalidSet,
                  "scheduler must return a nonempty independent set of enabled atoms");
    }
    std::vector<AtomIdx> owned1, owned2;
    for (AtomIdx n : scheduled) {
      (arena.owner_of(n) == Player::One ? owned1 : owned2).push_back(n);
    }
    PlayStep st;
    st.choice1 = ask(arena, player1, play, scheduled, owned1);
    st.choice2 = ask(arena, player2, play, scheduled, owned2);
    std::vector<Occurrence> all = st.choice1;
    all.insert(all.end(), st.choice2.begin(), st.choice2.end());
    st.target = multi_step(neg, m, all);
    st.source = m;
    st.scheduled = std::move(scheduled);
    play.steps.push_back(std::move(st));
  }
  play.status = classify_end(play.current()).value_or(PlayStatus::BudgetExhausted);
  return play;
}

Strategy table_strategy(std::vector<std::optional<OutcomeIdx>> table) {
  return [table = std::move(table)](const Play&, std::span<const AtomIdx>,
                                    std::span<const AtomIdx> atoms) {
    std::vector<OutcomeIdx> out;
    out.reserve(atoms.size());
    for (AtomIdx n : atoms) {
      out.push_back(n < table.size() && table[n] ? *table[n] : 0);
    }
    return out;
  };
}

Strategy first_outcome_strategy() {
  return [](const Play&, std::span<const AtomIdx>, std::span<const AtomIdx> atoms) {
    return std::vector<OutcomeIdx>(atoms.size(), 0);
  };
}

Strategy random_strategy(const Negotiation& neg, std::uint64_t seed) {
  std::vector<std::size_t> counts;
  for (const auto& at : neg.atoms()) counts.push_back(at.outcomes.size());
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [counts = std::move(counts), rng](const Play&, std::span<const AtomIdx>,
                                           std::span<const AtomIdx> atoms) {
    std::vector<OutcomeIdx> out;
    for (AtomIdx n : atoms) {
      std::uniform_int_distribution<std::size_t> pick(0, counts[n] - 1);
      out.push_back(static_cast<OutcomeIdx>(pick(*rng)));
    }
    return out;
  };
}

Scheduler first_atom_scheduler() {
  return [](const Play&, const Marking&, std::span<const AtomIdx> enabled) {
    return std::vector<AtomIdx>{enabled.front()};
  };
}

namespace {

std::vector<std::vector<AgentIdx>> party_lists(const Negotiation& neg) {
  std::vector<std::vector<AgentIdx>> out;
  for (const auto& at : neg.atoms()) out.push_back(at.parties);
  return out;
}

}  // namespace

Scheduler maximal_scheduler(const Negotiation& neg) {
  return [parties = party_lists(neg), agents = neg.agent_count()](
             const Play&, const Marking&, std::span<const AtomIdx> enabled) {
    std::vector<bool> used(agents, false);
    std::vector<AtomIdx> out;
    for (AtomIdx n : enabled) {
      const auto& ps = parties[n];
      if (std::any_of(ps.begin(), ps.end(), [&](AgentIdx p) { return used[p]; })) continue;
      for (AgentIdx p : ps) used[p] = true;
      out.push_back(n);
    }
    return out;
  };
}

Scheduler random_scheduler(const Negotiation& neg, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [parties = party_lists(neg), agents = neg.agent_count(), rng](
             const Play&, const Marking&, std::span<const AtomIdx> enabled) {
    std::vector<AtomIdx> order(enabled.begin(), enabled.end());
    std::shuffle(order.begin(), order.end(), *rng);
    std::vector<bool> used(agents, false);
    std::vector<AtomIdx> out;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& ps = parties[order[i]];
      if (std::any_of(ps.begin(), ps.end(), [&](AgentIdx p) { return used[p]; })) continue;
      if (i > 0 && !coin(*rng)) continue;
      for (AgentIdx p : ps) used[p] = true;
      out.push_back(order[i]);
    }
    return out;
  };
}

}  // namespace negsolve
