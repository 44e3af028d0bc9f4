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

#include "negsolve/gamegraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>

namespace negsolve {

std::size_t GameStructure::pair_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const GameNode& n) { return n.kind == NodeKind::Pair; }));
}

std::size_t GameStructure::transition_count() const {
  std::size_t total = 0;
  for (const auto& n : nodes) total += n.successors.size();
  return total;
}

std::vector<OutcomeIdx> decode_assignment(const Negotiation& neg,
                                          const std::vector<AtomIdx>& atoms, std::size_t code) {
  std::vector<OutcomeIdx> out;
  out.reserve(atoms.size());
  for (AtomIdx n : atoms) {
    const std::size_t radix = neg.atom(n).outcomes.size();
    out.push_back(static_cast<OutcomeIdx>(code % radix));
    code /= radix;
  }
  return out;
}

namespace {

void independent_subsets(const Negotiation& neg, const std::vector<AtomIdx>& enabled,
                         std::size_t i, std::vector<bool>& used, std::vector<AtomIdx>& current,
                         std::vector<std::vector<AtomIdx>>& out, std::size_t budget) {
  if (i == enabled.size()) {
    if (!current.empty()) {
      if (out.size() >= budget) {
        throw Error(ErrorCode::MoveBudgetExceeded,
                    "scheduler move set exceeds " + std::to_string(budget));
      }
      out.push_back(current);
    }
    return;
  }
  independent_subsets(neg, enabled, i + 1, used, current, out, budget);
  const auto& ps = neg.atom(enabled[i]).parties;
  if (std::any_of(ps.begin(), ps.end(), [&](AgentIdx p) { return used[p]; })) return;
  for (AgentIdx p : ps) used[p] = true;
  current.push_back(enabled[i]);
  independent_subsets(neg, enabled, i + 1, used, current, out, budget);
  current.pop_back();
  for (AgentIdx p : ps) used[p] = false;
}

std::size_t assignment_count(const Negotiation& neg, const std::vector<AtomIdx>& atoms,
                             std::size_t budget) {
  std::size_t total = 1;
  for (AtomIdx n : atoms) {
    total *= neg.atom(n).outcomes.size();
    if (total > budget) {
      throw Error(ErrorCode::MoveBudgetExceeded,
                  "outcome assignments exceed " + std::to_string(budget));
    }
  }
  return total;
}

}  // namespace

GameStructure build_game_structure(const Arena& arena, const GameBuildOptions& options) {
  const Negotiation& neg = arena.negotiation;
  GameStructure gs;
  gs.arena = arena;
  std::vector<bool> losing(neg.atom_count(), false);
  for (AtomIdx n : options.losing_atoms) losing.at(n) = true;

  auto marking_node = [&](Marking m) -> std::size_t {
    auto it = gs.marking_node.find(m);
    if (it != gs.marking_node.end()) return it->second;
    if (gs.markings.size() >= options.state_budget) {
      throw Error(ErrorCode::StateBudgetExceeded,
                  "game structure exceeds " + std::to_string(options.state_budget) +
                      " markings");
    }
    GameNode node;
    node.kind = NodeKind::Marking;
    node.marking = gs.markings.size();
    const std::size_t id = gs.nodes.size();
    gs.marking_node.emplace(m, id);
    if (m.all_empty()) gs.final_node = id;
    gs.markings.push_back(std::move(m));
    gs.nodes.push_back(std::move(node));
    return id;
  };
  auto sink_node = [&]() -> std::size_t {
    if (!gs.sink) {
      gs.sink = gs.nodes.size();
      GameNode node;
      node.kind = NodeKind::Sink;
      gs.nodes.push_back(std::move(node));
    }
    return *gs.sink;
  };

  gs.initial = marking_node(Marking::initial(neg));
  // Nodes are appended while iterating; ids stay stable.
  for (std::size_t id = 0; id < gs.nodes.size(); ++id) {
    if (gs.nodes[id].kind == NodeKind::Sink) continue;
    if (gs.nodes[id].kind == NodeKind::Marking) {
      const Marking m = gs.markings[gs.nodes[id].marking];
      const std::vector<AtomIdx> enabled = enabled_atoms(neg, m);
      std::vector<std::vector<AtomIdx>> subsets;
      std::vector<bool> used(neg.agent_count(), false);
      std::vector<AtomIdx> current;
      independent_subsets(neg, enabled, 0, used, current, subsets, options.move_budget);
      std::sort(subsets.begin(), subsets.end());
      std::vector<std::size_t> succ;
      for (auto& s : subsets) {
        GameNode pair;
        pair.kind = NodeKind::Pair;
        pair.marking = gs.nodes[id].marking;
        for (AtomIdx n : s) {
          (arena.owner_of(n) == Player::One ? pair.atoms1 : pair.atoms2).push_back(n);
        }
        pair.scheduled = std::move(s);
        pair.moves1 = assignment_count(neg, pair.atoms1, options.move_budget);
        pair.moves2 = assignment_count(neg, pair.atoms2, options.move_budget);
        if (pair.moves1 * pair.moves2 > options.move_budget) {
          throw Error(ErrorCode::MoveBudgetExceeded,
                      "outcome assignments exceed " + std::to_string(options.move_budget));
        }
        succ.push_back(gs.nodes.size());
        gs.nodes.push_back(std::move(pair));
      }
      gs.nodes[id].successors = std::move(succ);
      continue;
    }

    // Pair node.
    const GameNode& pair = gs.nodes[id];
    const bool to_sink = std::any_of(pair.scheduled.begin(), pair.scheduled.end(),
                                     [&](AtomIdx n) { return losing[n]; });
    const std::size_t moves1 = pair.moves1;
    const std::size_t moves2 = pair.moves2;
    const std::vector<AtomIdx> atoms1 = pair.atoms1;
    const std::vector<AtomIdx> atoms2 = pair.atoms2;
    const Marking source = gs.markings[pair.marking];
    std::vector<std::size_t> succ;
    succ.reserve(moves1 * moves2);
    for (std::size_t f1 = 0; f1 < moves1; ++f1) {
      const auto o1 = decode_assignment(neg, atoms1, f1);
      for (std::size_t f2 = 0; f2 < moves2; ++f2) {
        if (to_sink) {
          succ.push_back(sink_node());
          continue;
        }
        const auto o2 = decode_assignment(neg, atoms2, f2);
        std::vector<Occurrence> chosen;
        for (std::size_t i = 0; i < atoms1.size(); ++i) chosen.push_back({atoms1[i], o1[i]});
        for (std::size_t i = 0; i < atoms2.size(); ++i) chosen.push_back({atoms2[i], o2[i]});
        succ.push_back(marking_node(multi_step(neg, source, chosen)));
      }
    }
    gs.nodes[id].successors = std::move(succ);
  }
  return gs;
}

GeneralSolveResult solve_sure_reachability(const GameStructure& gs,
                                           const std::vector<std::size_t>& target,
                                           WorklistOrder order) {
  const std::size_t size = gs.nodes.size();
  GeneralSolveResult res;
  res.winning.assign(size, false);
  res.witness_f1.assign(size, std::nullopt);

  // preds[t] = (node, slot) pairs; slot is the f1 for pair nodes.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds(size);
  std::vector<std::size_t> marking_count(size, 0);
  std::vector<std::vector<std::size_t>> pair_count(size);
  for (std::size_t id = 0; id < size; ++id) {
    const GameNode& node = gs.nodes[id];
    if (node.kind == NodeKind::Marking) {
      marking_count[id] = node.successors.size();
      for (std::size_t t : node.successors) preds[t].push_back({id, 0});
    } else if (node.kind == NodeKind::Pair) {
      pair_count[id].assign(node.moves1, node.moves2);
      for (std::size_t f1 = 0; f1 < node.moves1; ++f1) {
        for (std::size_t f2 = 0; f2 < node.moves2; ++f2) {
          preds[node.successors[f1 * node.moves2 + f2]].push_back({id, f1});
        }
      }
    }
  }

  std::deque<std::size_t> work;
  for (std::size_t t : target) {
    if (!res.winning.at(t)) {
      res.winning[t] = true;
      work.push_back(t);
    }
  }
  while (!work.empty()) {
    std::size_t w;
    if (order == WorklistOrder::Fifo) {
      w = work.front();
      work.pop_front();
    } else {
      w = work.back();
      work.pop_back();
    }
    for (const auto& [p, slot] : preds[w]) {
      if (res.winning[p]) continue;
      bool joins = false;
      if (gs.nodes[p].kind == NodeKind::Marking) {
        joins = --marking_count[p] == 0;
      } else if (--pair_count[p][slot] == 0) {
        joins = true;
        res.witness_f1[p] = slot;
      }
      if (joins) {
        res.winning[p] = true;
        work.push_back(p);
      }
    }
  }

  for (std::size_t id = 0; id < size; ++id) {
    if (!res.winning[id]) continue;
    if (gs.nodes[id].kind == NodeKind::Marking) ++res.winning_markings;
    if (gs.nodes[id].kind == NodeKind::Pair) ++res.winning_pairs;
  }
  res.winner = res.winning[gs.initial] ? Player::One : Player::Two;
  return res;
}

Strategy general_strategy(const GameStructure& gs, const GeneralSolveResult& result) {
  using Key = std::pair<std::size_t, std::vector<AtomIdx>>;
  auto table = std::make_shared<std::map<Key, std::vector<OutcomeIdx>>>();
  for (std::size_t id = 0; id < gs.nodes.size(); ++id) {
    const GameNode& node = gs.nodes[id];
    if (node.kind != NodeKind::Pair || !result.witness_f1[id]) continue;
    (*table)[{node.marking, node.scheduled}] =
        decode_assignment(gs.arena.negotiation, node.atoms1, *result.witness_f1[id]);
  }
  auto index = std::make_shared<std::unordered_map<Marking, std::size_t, MarkingHash>>();
  for (std::size_t i = 0; i < gs.markings.size(); ++i) index->emplace(gs.markings[i], i);

  return [table, index](const Play& play, std::span<const AtomIdx> scheduled,
                        std::span<const AtomIdx> owned) {
    auto m = index->find(play.current());
    if (m != index->end()) {
      auto it = table->find({m->second, std::vector<AtomIdx>(scheduled.begin(), scheduled.end())});
      if (it != table->end() && it->second.size() == owned.size()) return it->second;
    }
    return std::vector<OutcomeIdx>(owned.size(), 0);
  };
}

GeneralSolve solve_termination_general(const Arena& arena, const GameBuildOptions& options) {
  GeneralSolve out{build_game_structure(arena, options), {}};
  std::vector<std::size_t> target;
  if (out.game.final_node) target.push_back(*out.game.final_node);
  out.result = solve_sure_reachability(out.game, target);
  return out;
}

GeneralSolve solve_concluding_outcome_general(const Arena& arena, const OutcomeGoal& goals,
                                              const GameBuildOptions& options) {
  const TransformedArena transformed = outcome_transform(arena, goals);
  GameBuildOptions opts = options;
  for (const auto& [agent, name] : transformed.bad) {
    opts.losing_atoms.push_back(transformed.arena.negotiation.atom_index(name));
  }
  return solve_termination_general(transformed.arena, opts);
}

}  // namespace negsolve
