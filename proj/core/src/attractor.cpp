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

#include "negsolve/attractor.hpp"

#include <algorithm>

#include "negsolve/analysis.hpp"

namespace negsolve {

std::vector<AtomIdx> AttractorResult::members() const {
  std::vector<AtomIdx> out;
  for (AtomIdx n = 0; n < member.size(); ++n) {
    if (member[n]) out.push_back(n);
  }
  return out;
}

AttractorResult compute_attractor(const Arena& arena) {
  return compute_attractor(arena, {arena.negotiation.final_atom()});
}

AttractorResult compute_attractor(const Arena& arena, std::vector<AtomIdx> seeds) {
  const Negotiation& neg = arena.negotiation;
  const std::size_t atoms = neg.atom_count();
  if (seeds.empty()) throw Error(ErrorCode::InvalidArgument, "attractor needs at least one seed");
  for (AtomIdx s : seeds) {
    if (s >= atoms) throw Error(ErrorCode::UnknownSeed, "seed atom index out of range");
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  AttractorResult res;
  res.owner = arena.owner;
  res.initial = neg.initial();
  res.seeds = seeds;
  for (AgentIdx a = 0; a < neg.agent_count(); ++a) {
    if (neg.is_deterministic_agent(a)) res.deterministic_agents.push_back(a);
  }

  // Flat layouts: count[first_outcome[n] + r] and the predecessor ports of
  // atom m in preds[first_pred[m] .. first_pred[m + 1]).
  struct Port {
    AtomIdx atom;
    OutcomeIdx outcome;
  };
  std::vector<std::size_t> first_outcome(atoms + 1, 0);
  std::vector<std::size_t> first_pred(atoms + 1, 0);
  std::vector<std::uint32_t> det_parties(atoms, 0);
  for (AtomIdx n = 0; n < atoms; ++n) {
    const Atom& at = neg.atom(n);
    for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
      if (!neg.is_deterministic_agent(at.parties[pos])) continue;
      ++det_parties[n];
      for (const auto& succ : at.next[pos]) {
        if (succ.size() == 1) ++first_pred[succ.front() + 1];
      }
    }
    if (det_parties[n] == 0) {
      throw Error(ErrorCode::NotWd2, "atom '" + at.name + "' has no deterministic party");
    }
    first_outcome[n + 1] = first_outcome[n] + at.outcomes.size();
    res.decrement_bound += static_cast<std::size_t>(det_parties[n]) * at.outcomes.size();
  }
  for (AtomIdx n = 0; n < atoms; ++n) first_pred[n + 1] += first_pred[n];
  std::vector<Port> preds(first_pred[atoms]);
  std::vector<std::uint32_t> count(first_outcome[atoms]);
  {
    std::vector<std::size_t> fill(first_pred.begin(), first_pred.end() - 1);
    for (AtomIdx n = 0; n < atoms; ++n) {
      const Atom& at = neg.atom(n);
      for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
        if (!neg.is_deterministic_agent(at.parties[pos])) continue;
        for (OutcomeIdx r = 0; r < at.outcomes.size(); ++r) {
          const auto& succ = at.next[pos][r];
          if (succ.size() == 1) preds[fill[succ.front()]++] = {n, r};
        }
      }
      std::fill(count.begin() + first_outcome[n], count.begin() + first_outcome[n + 1],
                det_parties[n]);
    }
  }
  std::vector<std::size_t> zero_outcomes(atoms, 0);

  res.member.assign(atoms, false);
  res.index.assign(atoms, kInfinity);
  std::vector<AtomIdx> queue;
  queue.reserve(atoms);
  for (AtomIdx s : seeds) {
    res.member[s] = true;
    res.index[s] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const AtomIdx n = queue[head];
    for (std::size_t i = first_pred[n]; i < first_pred[n + 1]; ++i) {
      const Port p = preds[i];
      if (res.member[p.atom]) continue;
      ++res.decrements;
      if (--count[first_outcome[p.atom] + p.outcome] != 0) continue;
      bool enters = true;
      if (arena.owner_of(p.atom) == Player::Two) {
        enters = ++zero_outcomes[p.atom] == first_outcome[p.atom + 1] - first_outcome[p.atom];
      }
      if (enters) {
        res.member[p.atom] = true;
        res.index[p.atom] = res.index[n] + 1;
        queue.push_back(p.atom);
      }
    }
  }

  res.strategy1.assign(atoms, std::nullopt);
  res.strategy2.assign(atoms, std::nullopt);
  for (AtomIdx n = 0; n < atoms; ++n) {
    const Atom& at = neg.atom(n);
    const bool seed = std::binary_search(seeds.begin(), seeds.end(), n);
    for (OutcomeIdx r = 0; r < at.outcomes.size(); ++r) {
      bool all_smaller = true;
      bool some_outside = false;
      for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
        if (!neg.is_deterministic_agent(at.parties[pos])) continue;
        const auto& succ = at.next[pos][r];
        if (succ.size() != 1) {
          all_smaller = false;
          continue;
        }
        if (res.index[succ.front()] >= res.index[n]) all_smaller = false;
        if (!res.member[succ.front()]) some_outside = true;
      }
      if (arena.owner_of(n) == Player::One && res.member[n] && !seed && all_smaller &&
          !res.strategy1[n]) {
        res.strategy1[n] = r;
      }
      if (arena.owner_of(n) == Player::Two && !res.member[n] && some_outside &&
          !res.strategy2[n]) {
        res.strategy2[n] = r;
      }
    }
  }
  res.winner = res.member[neg.initial()] ? Player::One : Player::Two;
  return res;
}

namespace {

void require_preconditions(const Arena& arena, bool verify_soundness, std::size_t budget) {
  if (!classify(arena.negotiation).wd2) {
    throw Error(ErrorCode::NotWd2,
                "fast solver requires every atom to have a deterministic party");
  }
  if (verify_soundness) {
    const SoundnessVerdict v = check_soundness(arena.negotiation, budget);
    if (!v.sound) throw Error(ErrorCode::NotSound, "fast solver requires a sound negotiation");
  }
}

}  // namespace

AttractorResult solve_termination_fast(const Arena& arena, bool verify_soundness,
                                       std::size_t budget) {
  require_preconditions(arena, verify_soundness, budget);
  return compute_attractor(arena);
}

Strategy attractor_strategy(const AttractorResult& result) {
  if (result.winner != Player::One) {
    throw Error(ErrorCode::WrongWinner, "attractor strategy requires Player 1 to win");
  }
  return table_strategy(result.strategy1);
}

Strategy escape_strategy(const AttractorResult& result) {
  if (result.winner != Player::Two) {
    throw Error(ErrorCode::WrongWinner, "escape strategy requires Player 2 to win");
  }
  return table_strategy(result.strategy2);
}

bool PositionVector::precedes(const PositionVector& other) const {
  if (positions.size() != other.positions.size()) return false;
  bool strict = false;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] > other.positions[i]) return false;
    if (positions[i] < other.positions[i]) strict = true;
  }
  return strict;
}

PositionVector position_vector(const AttractorResult& result, const Marking& m) {
  PositionVector v;
  const bool terminal = m.all_empty();
  for (AgentIdx a : result.deterministic_agents) {
    std::uint32_t best = terminal ? 0 : kInfinity;
    if (!terminal) {
      const auto ready = m.ready_set(a);
      if (ready.empty()) best = 0;
      for (AtomIdx n : ready) best = std::min(best, result.index[n]);
    }
    v.positions.push_back(best);
  }
  return v;
}

OutcomeGoal complete_goals(const Negotiation& neg, const OutcomeGoal& goals) {
  OutcomeGoal out = goals;
  const AtomIdx nf = neg.final_atom();
  for (AgentIdx a = 0; a < neg.agent_count(); ++a) {
    if (!neg.is_deterministic_agent(a) || goals.count(neg.agent_name(a))) continue;
    auto& set = out[neg.agent_name(a)];
    for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
      if (n == nf || !neg.is_party(n, a)) continue;
      const Atom& at = neg.atom(n);
      for (OutcomeIdx r = 0; r < at.outcomes.size(); ++r) {
        const auto succ = neg.successors(n, a, r);
        if (std::find(succ.begin(), succ.end(), nf) != succ.end()) {
          set.insert({at.name, at.outcomes[r]});
        }
      }
    }
  }
  return out;
}

TransformedArena outcome_transform(const Arena& arena, const OutcomeGoal& goals,
                                   const std::optional<std::set<std::string>>& coalition) {
  const Negotiation& neg = arena.negotiation;
  if (goals.empty()) throw Error(ErrorCode::EmptyGoals, "no goal agents given");
  validate_goals(neg, goals);
  for (const auto& [agent, set] : goals) {
    if (!neg.is_deterministic_agent(neg.agent_index(agent))) {
      throw Error(ErrorCode::GoalAgentNondeterministic,
                  "goal agent '" + agent + "' is not deterministic");
    }
  }

  NegotiationSpec spec = to_spec(arena);
  std::set<std::string> taken;
  for (const auto& at : spec.atoms) taken.insert(at.name);
  auto fresh = [&](std::string base) {
    while (taken.count(base)) base += "_";
    taken.insert(base);
    return base;
  };

  TransformedArena out;
  const std::string& nf = spec.final_atom;
  for (const auto& [agent, set] : goals) {
    const std::string good = fresh("good_" + agent);
    const std::string bad = fresh("bad_" + agent);
    out.good[agent] = good;
    out.bad[agent] = bad;
    const Player p = coalition && coalition->count(agent) ? Player::One : Player::Two;
    for (const auto& name : {good, bad}) {
      spec.atoms.push_back({name, {agent}, {0, 0, 0}});
      spec.transitions.push_back({name, "end", agent, {nf}, {0, 0, 0}});
      spec.owners[name] = p;
    }
  }
  for (auto& t : spec.transitions) {
    if (t.atom == nf || !goals.count(t.agent) || out.good.count(t.agent) == 0) continue;
    if (t.atom == out.good[t.agent] || t.atom == out.bad[t.agent]) continue;
    auto it = std::find(t.successors.begin(), t.successors.end(), nf);
    if (it == t.successors.end()) continue;
    const bool wanted = goals.at(t.agent).count({t.atom, t.outcome}) > 0;
    *it = wanted ? out.good[t.agent] : out.bad[t.agent];
  }
  out.arena = make_arena(spec);
  return out;
}

ConcludingFastResult solve_concluding_outcome_fast(
    const Arena& arena, const OutcomeGoal& goals, bool verify_soundness,
    const std::optional<std::set<std::string>>& coalition, std::size_t budget) {
  if (goals.empty()) throw Error(ErrorCode::EmptyGoals, "no goal agents given");
  require_preconditions(arena, verify_soundness, budget);
  ConcludingFastResult out{outcome_transform(arena, complete_goals(arena.negotiation, goals),
                                             coalition),
                           {}};
  const Negotiation& tn = out.transformed.arena.negotiation;
  std::vector<AtomIdx> seeds;
  for (const auto& [agent, name] : out.transformed.good) seeds.push_back(tn.atom_index(name));
  out.attractor = compute_attractor(out.transformed.arena, std::move(seeds));
  return out;
}

}  // namespace negsolve
