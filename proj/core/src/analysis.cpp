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

#include "negsolve/analysis.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace negsolve {

bool agent_is_deterministic(const Negotiation& neg, std::string_view agent) {
  return neg.is_deterministic_agent(neg.agent_index(agent));
}

Classification classify(const Negotiation& neg) {
  Classification c;
  for (AgentIdx a = 0; a < neg.agent_count(); ++a) {
    c.deterministic_agents.push_back(neg.is_deterministic_agent(a));
  }
  c.deterministic = std::all_of(c.deterministic_agents.begin(), c.deterministic_agents.end(),
                                [](bool d) { return d; });

  c.wd2 = true;
  for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
    if (deterministic_parties(neg, n).empty()) c.wd2 = false;
  }

  c.weakly_deterministic = true;
  for (AtomIdx n = 0; n < neg.atom_count() && c.weakly_deterministic; ++n) {
    const Atom& at = neg.atom(n);
    for (std::size_t pos = 0; pos < at.parties.size() && c.weakly_deterministic; ++pos) {
      for (const auto& succ : at.next[pos]) {
        bool covered = false;
        for (AgentIdx b = 0; b < neg.agent_count() && !covered; ++b) {
          if (!c.deterministic_agents[b]) continue;
          covered = std::all_of(succ.begin(), succ.end(),
                                [&](AtomIdx m) { return neg.is_party(m, b); });
        }
        if (!covered) {
          c.weakly_deterministic = false;
          break;
        }
      }
    }
  }
  return c;
}

SoundnessVerdict check_soundness(const Negotiation& neg, std::size_t budget) {
  return check_soundness(neg, reachability_graph(neg, budget));
}

SoundnessVerdict check_soundness(const Negotiation& neg, const ReachabilityGraph& g) {
  SoundnessVerdict v;
  const std::size_t size = g.size();
  v.markings = size;

  std::vector<bool> occurs(neg.atom_count(), false);
  std::vector<std::vector<std::size_t>> preds(size);
  for (std::size_t u = 0; u < size; ++u) {
    for (const auto& e : g.edges[u]) {
      occurs[e.label.atom] = true;
      preds[e.target].push_back(u);
    }
  }
  for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
    if (!occurs[n]) v.dead_atoms.push_back(n);
  }

  std::vector<bool> reaches_final(size, false);
  if (g.final_vertex) {
    std::deque<std::size_t> queue{*g.final_vertex};
    reaches_final[*g.final_vertex] = true;
    while (!queue.empty()) {
      const std::size_t w = queue.front();
      queue.pop_front();
      for (std::size_t u : preds[w]) {
        if (!reaches_final[u]) {
          reaches_final[u] = true;
          queue.push_back(u);
        }
      }
    }
  }

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(size, kUnset);
  dist[0] = 0;
  std::deque<std::size_t> queue{0};
  std::size_t best = kUnset;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (!reaches_final[u] && best == kUnset) best = dist[u];
    for (const auto& e : g.edges[u]) {
      if (dist[e.target] == kUnset) {
        dist[e.target] = dist[u] + 1;
        queue.push_back(e.target);
      }
    }
  }

  if (best != kUnset) {
    // Vertices on some shortest path to a violating vertex at distance `best`.
    std::vector<bool> useful(size, false);
    for (std::size_t u = 0; u < size; ++u) {
      useful[u] = dist[u] == best && !reaches_final[u];
    }
    // Vertex numbers follow discovery order, so dist is nondecreasing.
    for (std::size_t u = size; u-- > 0;) {
      if (dist[u] >= best) continue;
      for (const auto& e : g.edges[u]) {
        if (dist[e.target] == dist[u] + 1 && useful[e.target]) useful[u] = true;
      }
    }
    std::vector<Occurrence> witness;
    std::size_t u = 0;
    while (dist[u] < best) {
      const GraphEdge* pick = nullptr;
      for (const auto& e : g.edges[u]) {
        if (dist[e.target] == dist[u] + 1 && useful[e.target] &&
            (!pick || pick->label < e.label)) {
          pick = &e;
        }
      }
      witness.push_back(pick->label);
      u = pick->target;
    }
    v.witness = std::move(witness);
  }

  v.sound = v.dead_atoms.empty() && !v.witness;
  return v;
}

std::string witness_string(const Negotiation& neg, const std::vector<Occurrence>& witness) {
  std::string out;
  for (const auto& occ : witness) out += neg.occurrence_string(occ);
  return out;
}

}  // namespace negsolve
