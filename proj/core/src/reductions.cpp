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

#include "negsolve/reductions.hpp"

#include <algorithm>
#include <tuple>

namespace negsolve {

namespace {

using Key = std::tuple<std::string, std::string, std::string>;  // atom, outcome, agent

struct Builder {
  std::vector<std::string> agents;
  std::vector<AtomSpec> atoms;
  std::map<std::string, std::vector<std::string>> parties;
  std::map<std::string, Player> owners;
  std::map<Key, std::set<std::string>> next;
  std::map<std::string, AtomOrigin> origin;

  void atom(const std::string& name, std::vector<std::string> ps, Player owner, AtomOrigin o) {
    atoms.push_back({name, ps, {0, 0, 0}});
    parties[name] = std::move(ps);
    owners[name] = owner;
    origin[name] = std::move(o);
  }
  void set(const std::string& n, const std::string& r, const std::string& a,
           std::set<std::string> succ) {
    next[{n, r, a}] = std::move(succ);
  }
  void set_all(const std::string& n, const std::string& r, const std::set<std::string>& succ) {
    for (const auto& a : parties.at(n)) set(n, r, a, succ);
  }

  ReductionOutput finish(const std::string& name, const std::string& initial,
                         const std::string& final_atom) {
    NegotiationSpec spec;
    spec.name = name;
    spec.agents = agents;
    spec.atoms = atoms;
    spec.initial = initial;
    spec.final_atom = final_atom;
    spec.owners = owners;
    for (const auto& [key, succ] : next) {
      spec.transitions.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                  std::vector<std::string>(succ.begin(), succ.end()),
                                  {0, 0, 0}});
    }
    return {make_arena(spec), std::move(origin)};
  }
};

std::string cfg(const std::string& q, const std::string& a, std::size_t k) {
  return "n_" + q + "_" + a + "_" + std::to_string(k);
}
std::string state_guess(const std::string& q, std::size_t k) {
  return "g_" + q + "_" + std::to_string(k);
}
std::string symbol_guess(const std::string& a, std::size_t k) {
  return "h_" + a + "_" + std::to_string(k);
}
std::string cleanup(std::size_t k) { return "w_" + std::to_string(k); }
std::string cell_agent(std::size_t k) { return "C" + std::to_string(k); }
std::string move_outcome(const AtmTransition& t) {
  return "r_" + t.state + "_" + t.symbol + "_" + (t.move == Move::L ? "L" : "R");
}

/// Transitions of (q, a) at cell k that keep the head on the tape.
std::vector<AtmTransition> moves_at(const AlternatingTM& tm, const AtmState& q,
                                    const std::string& a, std::size_t k) {
  std::vector<AtmTransition> out;
  for (const auto& t : tm.transitions(q.name, a)) {
    if (t.move == Move::L && k == 0) continue;
    if (t.move == Move::R && k + 1 >= tm.cells()) continue;
    out.push_back(t);
  }
  return out;
}

std::size_t target_cell(const AtmTransition& t, std::size_t k) {
  return t.move == Move::L ? k - 1 : k + 1;
}

Player config_owner(const AtmState& q) {
  return q.kind == StateKind::Universal ? Player::Two : Player::One;
}

std::vector<std::string> base_agents(const AlternatingTM& tm) {
  std::vector<std::string> out{"I", "P"};
  for (std::size_t k = 0; k < tm.cells(); ++k) out.push_back(cell_agent(k));
  return out;
}

/// Atoms and transitions shared by the basic and sound reductions.
Builder basic_builder(const AlternatingTM& tm, bool restrict_initial, bool sound) {
  validate_atm(tm);
  const std::size_t n = tm.cells();
  Builder b;
  b.agents = base_agents(tm);
  b.atom("n0", b.agents, Player::One, {AtomRole::Initial, "", "", 0});
  b.atom("nf", b.agents, Player::One, {AtomRole::Final, "", "", 0});
  b.set_all("nf", "end", {});
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& q : tm.states) {
      for (const auto& a : tm.alphabet) {
        b.atom(cfg(q.name, a, k), {"I", "P", cell_agent(k)}, config_owner(q),
               {AtomRole::Config, q.name, a, k});
      }
    }
  }

  const std::string& q0 = tm.states.front().name;
  std::set<std::string> head0;
  for (const auto& a : tm.alphabet) {
    if (!restrict_initial || a == tm.input[0]) head0.insert(cfg(q0, a, 0));
  }
  b.set("n0", "st", "I", head0);
  b.set("n0", "st", "P", head0);
  for (std::size_t k = 0; k < n; ++k) {
    std::set<std::string> cell{"nf"};
    for (const auto& q : tm.states) cell.insert(cfg(q.name, tm.input[k], k));
    b.set("n0", "st", cell_agent(k), cell);
  }

  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& q : tm.states) {
      for (const auto& a : tm.alphabet) {
        const std::string self = cfg(q.name, a, k);
        const auto moves = moves_at(tm, q, a, k);
        if (q.kind == StateKind::Accept) {
          b.set_all(self, "f", {"nf"});
          if (sound) b.set_all(self, "s", {"n1"});
        } else if (q.kind == StateKind::Reject || moves.empty()) {
          b.set_all(self, "s", {sound ? "n1" : self});
        } else {
          for (const auto& t : moves) {
            const std::string r = move_outcome(t);
            const std::size_t k2 = target_cell(t, k);
            std::set<std::string> head;
            for (const auto& g : tm.alphabet) head.insert(cfg(t.state, g, k2));
            b.set(self, r, "I", head);
            b.set(self, r, "P", head);
            std::set<std::string> cell{"nf"};
            for (const auto& q2 : tm.states) cell.insert(cfg(q2.name, t.symbol, k));
            b.set(self, r, cell_agent(k), cell);
          }
        }
      }
    }
  }
  return b;
}

}  // namespace

ReductionOutput reduce_atm_basic(const AlternatingTM& tm, const BasicReductionOptions& options) {
  Builder b = basic_builder(tm, options.restrict_initial_symbol, false);
  return b.finish(tm.name + "_basic", "n0", "nf");
}

ReductionOutput reduce_atm_deterministic(const AlternatingTM& tm) {
  validate_atm(tm);
  const std::size_t n = tm.cells();
  Builder b;
  b.agents = base_agents(tm);
  b.atom("n0", b.agents, Player::One, {AtomRole::Initial, "", "", 0});
  b.atom("nf", b.agents, Player::One, {AtomRole::Final, "", "", 0});
  b.set_all("nf", "end", {});
  for (std::size_t k = 0; k < n; ++k) {
    const std::string ck = cell_agent(k);
    for (const auto& q : tm.states) {
      for (const auto& a : tm.alphabet) {
        b.atom(cfg(q.name, a, k), {"I", "P", ck}, config_owner(q),
               {AtomRole::Config, q.name, a, k});
      }
      b.atom(state_guess(q.name, k), {"I", "P"}, Player::One,
             {AtomRole::StateGuess, q.name, "", k});
      for (const auto& a : tm.alphabet) {
        b.set(state_guess(q.name, k), "r_" + a, "I", {cfg(q.name, a, k)});
        b.set(state_guess(q.name, k), "r_" + a, "P", {symbol_guess(a, k)});
      }
    }
    for (const auto& a : tm.alphabet) {
      const std::string h = symbol_guess(a, k);
      b.atom(h, {"P", ck}, Player::One, {AtomRole::SymbolGuess, "", a, k});
      for (const auto& q : tm.states) b.set_all(h, "r_" + q.name, {cfg(q.name, a, k)});
      b.set(h, "fin", ck, {"nf"});
      b.set(h, "fin", "P", {k + 1 < n ? cleanup(k + 1) : "nf"});
    }
    b.atom(cleanup(k), {"P"}, Player::One, {AtomRole::Cleanup, "", "", k});
    for (const auto& a : tm.alphabet) b.set(cleanup(k), "r_" + a, "P", {symbol_guess(a, k)});
  }

  const std::string& q0 = tm.states.front().name;
  b.set("n0", "st", "I", {cfg(q0, tm.input[0], 0)});
  b.set("n0", "st", "P", {symbol_guess(tm.input[0], 0)});
  for (std::size_t k = 0; k < n; ++k) {
    b.set("n0", "st", cell_agent(k), {symbol_guess(tm.input[k], k)});
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::string ck = cell_agent(k);
    for (const auto& q : tm.states) {
      for (const auto& a : tm.alphabet) {
        const std::string self = cfg(q.name, a, k);
        const auto moves = moves_at(tm, q, a, k);
        if (q.kind == StateKind::Accept) {
          b.set(self, "f", "I", {"nf"});
          b.set(self, "f", "P", {cleanup(0)});
          b.set(self, "f", ck, {symbol_guess(a, k)});
        } else if (q.kind == StateKind::Reject || moves.empty()) {
          b.set_all(self, "s", {self});
        } else {
          for (const auto& t : moves) {
            const std::string r = move_outcome(t);
            const std::string g = state_guess(t.state, target_cell(t, k));
            b.set(self, r, "I", {g});
            b.set(self, r, "P", {g});
            b.set(self, r, ck, {symbol_guess(t.symbol, k)});
          }
        }
      }
    }
  }
  return b.finish(tm.name + "_det", "n0", "nf");
}

ReductionOutput reduce_atm_sound(const AlternatingTM& tm) {
  Builder b = basic_builder(tm, false, true);
  b.agents.push_back("S");
  for (const char* special : {"n0", "nf"}) {
    auto& ps = b.parties[special];
    ps.push_back("S");
    for (auto& at : b.atoms) {
      if (at.name == special) at.parties = ps;
    }
  }
  b.set("n0", "st", "S", {"nf", "n1"});
  b.set("nf", "end", "S", {});
  b.atom("n1", b.agents, Player::Two, {AtomRole::AnythingStart, "", "", 0});
  b.atom("n2", b.agents, Player::Two, {AtomRole::Anything, "", "", 0});
  b.set_all("n1", "s", {"n2"});
  for (const auto& a : b.agents) {
    if (a == "S") continue;
    std::set<std::string> any;
    for (const auto& [name, ps] : b.parties) {
      if (name != "nf" && std::find(ps.begin(), ps.end(), a) != ps.end()) any.insert(name);
    }
    b.set("n2", "s", a, any);
  }
  b.set("n2", "s", "S", {"n2"});
  b.set_all("n2", "f", {"nf"});

  for (auto& [key, succ] : b.next) {
    const auto& [atom, outcome, agent] = key;
    if (atom == "nf") continue;
    if (agent.front() == 'C') succ.insert("n1");
    if (agent != "S") succ.insert("n2");
  }
  return b.finish(tm.name + "_sound", "n0", "nf");
}

Arena determinize(const Arena& arena, Player owner_of_new) {
  NegotiationSpec spec = to_spec(arena);
  std::set<std::string> taken;
  for (const auto& at : spec.atoms) taken.insert(at.name);
  std::vector<TransitionSpec> added;
  for (auto& t : spec.transitions) {
    if (t.successors.size() <= 1 || t.atom == spec.final_atom) continue;
    std::string name = "det_" + t.atom + "_" + t.agent + "_" + t.outcome;
    while (taken.count(name)) name += "_";
    taken.insert(name);
    spec.atoms.push_back({name, {t.agent}, {0, 0, 0}});
    spec.owners[name] = owner_of_new;
    for (const auto& target : t.successors) {
      added.push_back({name, target, t.agent, {target}, {0, 0, 0}});
    }
    t.successors = {name};
  }
  if (added.empty()) return arena;
  spec.transitions.insert(spec.transitions.end(), added.begin(), added.end());
  return make_arena(spec);
}

GrantControlResult grant_control(const Arena& arena, const std::string& atom,
                                 const std::set<std::string>& coalition) {
  const Negotiation& neg = arena.negotiation;
  if (coalition_partition(neg, coalition) != arena.owner) {
    throw Error(ErrorCode::NotCoalitionArena,
                "arena ownership does not follow the majority rule for the coalition");
  }
  const AtomIdx target = neg.atom_index(atom);
  if (target == neg.initial() || target == neg.final_atom()) {
    throw Error(ErrorCode::InvalidTarget, "cannot grant control of the initial or final atom");
  }
  GrantControlResult out{arena, coalition, 0, 0, 0};
  if (arena.owner_of(target) == Player::One) return out;

  auto count_in = [&](AtomIdx n) {
    std::size_t c = 0;
    for (AgentIdx p : neg.atom(n).parties) c += coalition.count(neg.agent_name(p));
    return c;
  };
  const std::size_t t_in = count_in(target);
  const std::size_t t_out = neg.atom(target).parties.size() - t_in;
  // n0 and nf have every agent as a party.
  const std::size_t all_in = count_in(neg.initial());
  const std::size_t all_out = neg.agent_count() - all_in;
  const bool ends_player1 = all_in > all_out;

  constexpr std::size_t kMaxAdded = 256;
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> found;
  for (std::size_t total = 1; total <= kMaxAdded && !found; ++total) {
    for (std::size_t k1 = 1; k1 <= total && !found; ++k1) {
      for (std::size_t k2 = 0; k1 + k2 <= total && !found; ++k2) {
        const std::size_t k3 = total - k1 - k2;
        if (t_in + k1 <= t_out) continue;
        if ((all_in + k1 + k3 > all_out + k2) != ends_player1) continue;
        found = std::make_tuple(k1, k2, k3);
      }
    }
  }
  if (!found) throw Error(ErrorCode::CannotBalance, "no agent count balances the partition");
  const auto [k1, k2, k3] = *found;

  NegotiationSpec spec = to_spec(arena);
  std::set<std::string> taken(spec.agents.begin(), spec.agents.end());
  auto fresh = [&](std::string base) {
    while (taken.count(base)) base += "_";
    taken.insert(base);
    return base;
  };
  auto add_party = [&](const std::string& n, const std::string& agent) {
    for (auto& at : spec.atoms) {
      if (at.name == n) at.parties.push_back(agent);
    }
  };
  const std::string& n0 = spec.initial;
  const std::string& nf = spec.final_atom;
  const Atom& n0_atom = neg.atom(neg.initial());
  const Atom& t_atom = neg.atom(target);
  auto add_agent = [&](const std::string& name, bool controls) {
    spec.agents.push_back(name);
    add_party(n0, name);
    add_party(nf, name);
    for (const auto& r : neg.atom(neg.final_atom()).outcomes) {
      spec.transitions.push_back({nf, r, name, {}, {0, 0, 0}});
    }
    for (const auto& r : n0_atom.outcomes) {
      std::vector<std::string> succ{nf};
      if (controls) succ.push_back(atom);
      spec.transitions.push_back({n0, r, name, succ, {0, 0, 0}});
    }
    if (controls) {
      add_party(atom, name);
      for (const auto& r : t_atom.outcomes) {
        spec.transitions.push_back({atom, r, name, {atom, nf}, {0, 0, 0}});
      }
    }
  };
  for (std::size_t i = 0; i < k1; ++i) {
    const std::string name = fresh("ctl_" + atom + "_" + std::to_string(i));
    add_agent(name, true);
    out.coalition.insert(name);
  }
  for (std::size_t i = 0; i < k2 + k3; ++i) {
    const std::string name = fresh("bal_" + atom + "_" + std::to_string(i));
    add_agent(name, false);
    if (i >= k2) out.coalition.insert(name);
  }
  spec.owners.clear();
  out.arena = coalition_arena(validate_negotiation(spec), out.coalition);
  out.control_agents = k1;
  out.opposition_balancers = k2;
  out.coalition_balancers = k3;
  return out;
}

}  // namespace negsolve
