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

#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <stdexcept>

namespace negsolve::oracle {

NaiveMarking naive_initial(const Negotiation& neg) {
  return NaiveMarking(neg.agent_count(), std::set<AtomIdx>{neg.initial()});
}

bool naive_is_final(const NaiveMarking& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& s) { return s.empty(); });
}

std::vector<AtomIdx> naive_enabled(const Negotiation& neg, const NaiveMarking& m) {
  std::vector<AtomIdx> out;
  for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
    bool all = true;
    for (AgentIdx a : neg.atom(n).parties) all = all && m[a].count(n) > 0;
    if (all) out.push_back(n);
  }
  return out;
}

NaiveMarking naive_step(const Negotiation& neg, const NaiveMarking& m, AtomIdx n, OutcomeIdx r) {
  NaiveMarking next = m;
  for (AgentIdx a : neg.atom(n).parties) {
    const auto succ = neg.successors(n, a, r);
    next[a] = std::set<AtomIdx>(succ.begin(), succ.end());
  }
  return next;
}

NaiveMarking to_naive(const Marking& m) {
  NaiveMarking out(m.agent_count());
  for (AgentIdx a = 0; a < m.agent_count(); ++a) {
    for (AtomIdx n : m.ready_set(a)) out[a].insert(n);
  }
  return out;
}

NaiveSpace naive_space(const Negotiation& neg, std::size_t limit) {
  NaiveSpace space;
  std::vector<std::size_t> stack;
  auto intern = [&](const NaiveMarking& m) {
    auto it = space.id.find(m);
    if (it != space.id.end()) return it->second;
    if (space.markings.size() >= limit) throw std::runtime_error("naive space too large");
    const std::size_t id = space.markings.size();
    space.id.emplace(m, id);
    space.markings.push_back(m);
    space.edges.emplace_back();
    stack.push_back(id);
    return id;
  };
  intern(naive_initial(neg));
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (AtomIdx n : naive_enabled(neg, space.markings[v])) {
      for (OutcomeIdx r = 0; r < neg.atom(n).outcomes.size(); ++r) {
        const NaiveMarking next = naive_step(neg, space.markings[v], n, r);
        const std::size_t w = intern(next);
        space.edges[v].push_back({{n, r}, w});
      }
    }
  }
  return space;
}

namespace {

std::vector<bool> can_reach_final(const NaiveSpace& space) {
  std::vector<bool> good(space.markings.size(), false);
  for (std::size_t v = 0; v < space.markings.size(); ++v) good[v] = naive_is_final(space.markings[v]);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < space.markings.size(); ++v) {
      if (good[v]) continue;
      for (const auto& [label, w] : space.edges[v]) {
        if (good[w]) {
          good[v] = true;
          changed = true;
          break;
        }
      }
    }
  }
  return good;
}

}  // namespace

NaiveSoundness naive_soundness(const Negotiation& neg) {
  const NaiveSpace space = naive_space(neg);
  NaiveSoundness out;
  std::set<AtomIdx> occurring;
  for (const auto& es : space.edges) {
    for (const auto& [label, w] : es) occurring.insert(label.atom);
  }
  for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
    if (!occurring.count(n)) out.dead_atoms.insert(n);
  }
  const std::vector<bool> good = can_reach_final(space);
  const bool any_bad = std::find(good.begin(), good.end(), false) != good.end();
  out.sound = out.dead_atoms.empty() && !any_bad;
  if (!any_bad) return out;

  // Enumerate sequences of length 0, 1, 2, ... until one ends in a bad marking.
  std::size_t enumerated = 0;
  for (std::size_t len = 0;; ++len) {
    std::optional<std::vector<Occurrence>> best;
    std::vector<Occurrence> seq;
    std::function<void(const NaiveMarking&)> dfs = [&](const NaiveMarking& m) {
      if (++enumerated > 5'000'000) throw std::runtime_error("witness enumeration too large");
      if (seq.size() == len) {
        if (!good[space.id.at(m)] && (!best || seq > *best)) best = seq;
        return;
      }
      for (AtomIdx n : naive_enabled(neg, m)) {
        for (OutcomeIdx r = 0; r < neg.atom(n).outcomes.size(); ++r) {
          seq.push_back({n, r});
          dfs(naive_step(neg, m, n, r));
          seq.pop_back();
        }
      }
    };
    dfs(naive_initial(neg));
    if (best) {
      out.witness = best;
      return out;
    }
  }
}

bool replays_to_bad_marking(const Negotiation& neg, const std::vector<Occurrence>& witness) {
  NaiveMarking m = naive_initial(neg);
  for (const Occurrence& occ : witness) {
    const auto en = naive_enabled(neg, m);
    if (std::find(en.begin(), en.end(), occ.atom) == en.end()) return false;
    m = naive_step(neg, m, occ.atom, occ.outcome);
  }
  std::set<NaiveMarking> seen{m};
  std::vector<NaiveMarking> stack{m};
  while (!stack.empty()) {
    const NaiveMarking cur = stack.back();
    stack.pop_back();
    if (naive_is_final(cur)) return false;
    for (AtomIdx n : naive_enabled(neg, cur)) {
      for (OutcomeIdx r = 0; r < neg.atom(n).outcomes.size(); ++r) {
        NaiveMarking next = naive_step(neg, cur, n, r);
        if (seen.insert(next).second) stack.push_back(std::move(next));
      }
    }
  }
  return true;
}

std::vector<std::uint32_t> naive_attractor_levels(const Arena& arena,
                                                  const std::vector<AtomIdx>& seeds) {
  const Negotiation& neg = arena.negotiation;
  std::vector<bool> det(neg.agent_count(), true);
  for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
    if (n == neg.final_atom()) continue;
    for (AgentIdx a : neg.atom(n).parties) {
      for (OutcomeIdx r = 0; r < neg.atom(n).outcomes.size(); ++r) {
        if (neg.successors(n, a, r).size() != 1) det[a] = false;
      }
    }
  }
  std::vector<std::uint32_t> level(neg.atom_count(), kInfinity);
  for (AtomIdx s : seeds) level[s] = 0;
  for (std::uint32_t k = 0;; ++k) {
    std::vector<AtomIdx> added;
    for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
      if (level[n] != kInfinity) continue;
      auto good = [&](OutcomeIdx r) {
        for (AgentIdx a : neg.atom(n).parties) {
          if (!det[a]) continue;
          const auto succ = neg.successors(n, a, r);
          if (succ.size() != 1 || level[succ[0]] > k) return false;
        }
        return true;
      };
      const std::size_t outcomes = neg.atom(n).outcomes.size();
      bool joins = arena.owner_of(n) == Player::One ? false : true;
      for (OutcomeIdx r = 0; r < outcomes; ++r) {
        if (arena.owner_of(n) == Player::One) joins = joins || good(r);
        else joins = joins && good(r);
      }
      if (joins) added.push_back(n);
    }
    if (added.empty()) return level;
    for (AtomIdx n : added) level[n] = k + 1;
  }
}

namespace {

// Explicit game over (marking, goal flags). A flag records whether the last
// outcome of a goal agent lies in its goal set.
struct GameState {
  NaiveMarking marking;
  std::vector<char> flags;
  friend bool operator<(const GameState& x, const GameState& y) {
    return std::tie(x.marking, x.flags) < std::tie(y.marking, y.flags);
  }
};

struct Choice {
  // successors[f2] for one Player 1 assignment; kLose marks the losing sink.
  std::vector<std::size_t> successors;
};

constexpr std::size_t kLose = static_cast<std::size_t>(-1);

Player naive_game(const Arena& arena, const std::set<AtomIdx>& losing,
                  const std::vector<std::optional<std::set<Occurrence>>>& goals) {
  const Negotiation& neg = arena.negotiation;
  std::vector<GameState> states;
  std::map<GameState, std::size_t> id;
  // moves[state][scheduler move] = list of Player 1 choices
  std::vector<std::vector<std::vector<Choice>>> moves;
  std::vector<std::size_t> todo;
  auto intern = [&](const GameState& s) {
    auto it = id.find(s);
    if (it != id.end()) return it->second;
    if (states.size() > 100000) throw std::runtime_error("naive game too large");
    id.emplace(s, states.size());
    states.push_back(s);
    moves.emplace_back();
    todo.push_back(states.size() - 1);
    return states.size() - 1;
  };
  intern({naive_initial(neg), std::vector<char>(neg.agent_count(), 0)});
  while (!todo.empty()) {
    const std::size_t v = todo.back();
    todo.pop_back();
    const GameState cur = states[v];
    const std::vector<AtomIdx> en = naive_enabled(neg, cur.marking);
    std::vector<std::vector<std::vector<Choice>>::value_type> local;
    for (std::size_t mask = 1; mask < (std::size_t{1} << en.size()); ++mask) {
      std::vector<AtomIdx> set;
      std::set<AgentIdx> used;
      bool independent = true;
      for (std::size_t i = 0; i < en.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        set.push_back(en[i]);
        for (AgentIdx a : neg.atom(en[i]).parties) independent = independent && used.insert(a).second;
      }
      if (!independent) continue;
      std::vector<AtomIdx> mine, theirs;
      bool lose = false;
      for (AtomIdx n : set) {
        (arena.owner_of(n) == Player::One ? mine : theirs).push_back(n);
        lose = lose || losing.count(n) > 0;
      }
      auto assignments = [&](const std::vector<AtomIdx>& atoms) {
        std::vector<std::vector<OutcomeIdx>> all{{}};
        for (AtomIdx n : atoms) {
          std::vector<std::vector<OutcomeIdx>> next;
          for (const auto& prefix : all) {
            for (OutcomeIdx r = 0; r < neg.atom(n).outcomes.size(); ++r) {
              auto p = prefix;
              p.push_back(r);
              next.push_back(std::move(p));
            }
          }
          all = std::move(next);
        }
        return all;
      };
      std::vector<Choice> choices;
      for (const auto& f1 : assignments(mine)) {
        Choice choice;
        for (const auto& f2 : assignments(theirs)) {
          if (lose) {
            choice.successors.push_back(kLose);
            continue;
          }
          GameState next = cur;
          auto apply = [&](AtomIdx n, OutcomeIdx r) {
            for (AgentIdx a : neg.atom(n).parties) {
              const auto succ = neg.successors(n, a, r);
              next.marking[a] = std::set<AtomIdx>(succ.begin(), succ.end());
              if (n != neg.final_atom() && goals[a]) {
                next.flags[a] = goals[a]->count({n, r}) ? 1 : 0;
              }
            }
          };
          for (std::size_t i = 0; i < mine.size(); ++i) apply(mine[i], f1[i]);
          for (std::size_t i = 0; i < theirs.size(); ++i) apply(theirs[i], f2[i]);
          choice.successors.push_back(intern(next));
        }
        choices.push_back(std::move(choice));
      }
      local.push_back(std::move(choices));
    }
    moves[v] = std::move(local);
  }

  std::vector<bool> win(states.size(), false);
  for (std::size_t v = 0; v < states.size(); ++v) {
    if (!naive_is_final(states[v].marking)) continue;
    bool ok = true;
    for (AgentIdx a = 0; a < neg.agent_count(); ++a) ok = ok && (!goals[a] || states[v].flags[a]);
    win[v] = ok;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < states.size(); ++v) {
      if (win[v] || moves[v].empty()) continue;
      bool all = true;
      for (const auto& choices : moves[v]) {
        bool some = false;
        for (const auto& c : choices) {
          bool every = true;
          for (std::size_t w : c.successors) every = every && w != kLose && win[w];
          some = some || every;
        }
        all = all && some;
      }
      if (all) {
        win[v] = true;
        changed = true;
      }
    }
  }
  return win[0] ? Player::One : Player::Two;
}

}  // namespace

Player naive_termination_winner(const Arena& arena, const std::set<AtomIdx>& losing) {
  return naive_game(arena, losing, std::vector<std::optional<std::set<Occurrence>>>(
                                       arena.negotiation.agent_count()));
}

Player naive_concluding_winner(const Arena& arena, const OutcomeGoal& goals) {
  const Negotiation& neg = arena.negotiation;
  std::vector<std::optional<std::set<Occurrence>>> g(neg.agent_count());
  for (const auto& [agent, set] : goals) {
    const AgentIdx a = neg.agent_index(agent);
    g[a].emplace();
    for (const auto& [atom, outcome] : set) {
      const AtomIdx n = neg.atom_index(atom);
      g[a]->insert({n, neg.outcome_index(n, outcome)});
    }
  }
  return naive_game(arena, {}, g);
}

namespace {

struct Config {
  std::size_t state;
  std::size_t head;
  std::vector<std::size_t> tape;
  friend bool operator<(const Config& x, const Config& y) {
    return std::tie(x.state, x.head, x.tape) < std::tie(y.state, y.head, y.tape);
  }
};

}  // namespace

bool naive_atm_accepts(const AlternatingTM& tm) {
  std::size_t bound = tm.states.size() * tm.cells();
  for (std::size_t i = 0; i < tm.cells(); ++i) bound *= tm.alphabet.size();
  std::map<std::pair<Config, std::size_t>, bool> memo;
  std::function<bool(const Config&, std::size_t)> acc = [&](const Config& c, std::size_t depth) {
    const AtmState& q = tm.states[c.state];
    if (q.kind == StateKind::Accept) return true;
    if (q.kind == StateKind::Reject || depth == 0) return false;
    auto key = std::make_pair(c, depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Config> succ;
    for (const auto& t : tm.transitions(q.name, tm.alphabet[c.tape[c.head]])) {
      if (t.move == Move::L && c.head == 0) continue;
      if (t.move == Move::R && c.head + 1 >= tm.cells()) continue;
      Config next = c;
      next.tape[c.head] = tm.symbol_index(t.symbol);
      next.state = tm.state_index(t.state);
      next.head = t.move == Move::L ? c.head - 1 : c.head + 1;
      succ.push_back(std::move(next));
    }
    bool result;
    if (q.kind == StateKind::Existential) {
      result = std::any_of(succ.begin(), succ.end(), [&](const Config& s) { return acc(s, depth - 1); });
    } else {
      result = !succ.empty() &&
               std::all_of(succ.begin(), succ.end(), [&](const Config& s) { return acc(s, depth - 1); });
    }
    memo.emplace(std::move(key), result);
    return result;
  };
  Config start{0, 0, {}};
  for (const auto& sym : tm.input) start.tape.push_back(tm.symbol_index(sym));
  return acc(start, bound + 1);
}

AlternatingTM random_atm(std::uint64_t seed, std::size_t max_cells, std::size_t max_states,
                         std::size_t max_symbols) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  AlternatingTM tm;
  tm.name = "random" + std::to_string(seed);
  const std::size_t working = pick(1, std::max<std::size_t>(1, max_states - 2));
  for (std::size_t i = 0; i < working; ++i) {
    tm.states.push_back({"q" + std::to_string(i),
                         pick(0, 1) ? StateKind::Universal : StateKind::Existential});
  }
  tm.states.push_back({"qa", StateKind::Accept});
  tm.states.push_back({"qr", StateKind::Reject});
  const std::size_t symbols = pick(2, std::max<std::size_t>(2, max_symbols));
  for (std::size_t i = 0; i < symbols; ++i) tm.alphabet.push_back(std::string(1, char('a' + i)));
  const std::size_t cells = pick(2, std::max<std::size_t>(2, max_cells));
  for (std::size_t i = 0; i < cells; ++i) tm.input.push_back(tm.alphabet[pick(0, symbols - 1)]);
  for (std::size_t q = 0; q < working; ++q) {
    for (const auto& a : tm.alphabet) {
      if (pick(0, 9) < 2) continue;
      auto& ts = tm.delta[{tm.states[q].name, a}];
      const std::size_t k = pick(1, 2);
      for (std::size_t i = 0; i < k; ++i) {
        AtmTransition t{tm.states[pick(0, tm.states.size() - 1)].name,
                        tm.alphabet[pick(0, symbols - 1)], pick(0, 1) ? Move::R : Move::L};
        if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
      }
    }
  }
  return tm;
}

std::optional<AlternatingTM> random_valid_atm(std::uint64_t seed, std::size_t max_cells,
                                              std::size_t max_states, std::size_t max_symbols,
                                              std::size_t attempts) {
  for (std::size_t i = 0; i < attempts; ++i) {
    AlternatingTM tm = random_atm(seed * 7919 + i, max_cells, max_states, max_symbols);
    try {
      validate_atm(tm);
    } catch (const Error&) {
      continue;
    }
    if (atm_always_can_halt(tm)) return tm;
  }
  return std::nullopt;
}

namespace {

struct DotToken {
  enum Kind { Id, Punct, End } kind;
  std::string text;
};

std::vector<DotToken> dot_tokens(const std::string& s, std::string& error) {
  std::vector<DotToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '\\' && i + 1 < s.size()) {
          text += s[i + 1];
          i += 2;
        } else if (s[i] == '"') {
          closed = true;
          ++i;
          break;
        } else if (s[i] == '\n') {
          break;
        } else {
          text += s[i++];
        }
      }
      if (!closed) {
        error = "unterminated string";
        return {};
      }
      out.push_back({DotToken::Id, text});
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.')) ++j;
      out.push_back({DotToken::Id, s.substr(i, j - i)});
      i = j;
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({DotToken::Punct, "->"});
      i += 2;
    } else if (std::string("{}[]=,;").find(c) != std::string::npos) {
      out.push_back({DotToken::Punct, std::string(1, c)});
      ++i;
    } else {
      error = std::string("unexpected character '") + c + "'";
      return {};
    }
  }
  out.push_back({DotToken::End, ""});
  return out;
}

}  // namespace

DotSummary check_dot(const std::string& text) {
  DotSummary out;
  std::vector<DotToken> t = dot_tokens(text, out.error);
  if (t.empty()) return out;
  std::size_t i = 0;
  auto is = [&](const std::string& p) { return t[i].kind == DotToken::Punct && t[i].text == p; };
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.error = msg;
    return out;
  };
  if (!(t[i].kind == DotToken::Id && t[i].text == "digraph")) return fail("expected digraph");
  ++i;
  if (t[i].kind == DotToken::Id) ++i;
  if (!is("{")) return fail("expected {");
  ++i;
  auto attrs = [&](std::string& label, std::string& all) -> bool {
    if (!is("[")) return true;
    ++i;
    while (!is("]")) {
      if (t[i].kind != DotToken::Id) return false;
      const std::string key = t[i++].text;
      if (!is("=")) return false;
      ++i;
      if (t[i].kind != DotToken::Id) return false;
      if (key == "label") label = t[i].text;
      all += key + "=" + t[i].text + ";";
      ++i;
      if (is(",") || is(";")) ++i;
    }
    ++i;
    return true;
  };
  while (!is("}")) {
    if (t[i].kind != DotToken::Id) return fail("expected statement");
    const std::string first = t[i++].text;
    std::string label, all;
    if (first == "node" || first == "edge" || first == "graph") {
      if (!is("[")) return fail("expected attribute list");
      if (!attrs(label, all)) return fail("bad attribute list");
    } else if (is("->")) {
      std::string prev = first;
      std::vector<std::pair<std::string, std::string>> chain;
      while (is("->")) {
        ++i;
        if (t[i].kind != DotToken::Id) return fail("expected edge target");
        chain.push_back({prev, t[i].text});
        prev = t[i++].text;
      }
      if (!attrs(label, all)) return fail("bad attribute list");
      for (const auto& e : chain) {
        out.edge_list.push_back(e);
        out.edge_labels.push_back(label);
        ++out.edges;
      }
    } else {
      if (!attrs(label, all)) return fail("bad attribute list");
      out.node_attributes.push_back(first + ":" + all);
      ++out.nodes;
    }
    if (is(";")) ++i;
  }
  ++i;
  if (t[i].kind != DotToken::End) return fail("trailing input");
  out.ok = true;
  return out;
}

}  // namespace negsolve::oracle
