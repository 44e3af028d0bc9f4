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

#include "negsolve/model.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace negsolve {

std::optional<OutcomeIdx> Atom::find_outcome(std::string_view outcome) const {
  auto it = std::lower_bound(outcomes.begin(), outcomes.end(), outcome);
  if (it == outcomes.end() || *it != outcome) return std::nullopt;
  return static_cast<OutcomeIdx>(it - outcomes.begin());
}

std::optional<AgentIdx> Negotiation::find_agent(std::string_view name) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), name);
  if (it == agents_.end() || *it != name) return std::nullopt;
  return static_cast<AgentIdx>(it - agents_.begin());
}

AgentIdx Negotiation::agent_index(std::string_view name) const {
  if (auto a = find_agent(name)) return *a;
  throw Error(ErrorCode::UnknownAgent, "unknown agent '" + std::string(name) + "'");
}

std::optional<AtomIdx> Negotiation::find_atom(std::string_view name) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), name,
                             [](const Atom& atom, std::string_view key) { return atom.name < key; });
  if (it == atoms_.end() || it->name != name) return std::nullopt;
  return static_cast<AtomIdx>(it - atoms_.begin());
}

AtomIdx Negotiation::atom_index(std::string_view name) const {
  if (auto n = find_atom(name)) return *n;
  throw Error(ErrorCode::UnknownAtom, "unknown atom '" + std::string(name) + "'");
}

OutcomeIdx Negotiation::outcome_index(AtomIdx n, std::string_view outcome) const {
  if (auto r = atom(n).find_outcome(outcome)) return *r;
  throw Error(ErrorCode::UnknownOutcome, "atom '" + atom_name(n) + "' has no outcome '" +
                                             std::string(outcome) + "'");
}

std::span<const AtomIdx> Negotiation::successors(AtomIdx n, AgentIdx a, OutcomeIdx r) const {
  const Atom& at = atom(n);
  if (a >= agents_.size() || party_pos_[n][a] < 0) {
    throw Error(ErrorCode::UnknownAgent, "agent is not a party of atom '" + at.name + "'");
  }
  if (r >= at.outcomes.size()) {
    throw Error(ErrorCode::UnknownOutcome, "outcome index out of range for atom '" + at.name + "'");
  }
  return at.next[static_cast<std::size_t>(party_pos_[n][a])][r];
}

std::size_t Negotiation::outcome_port_count() const {
  std::size_t total = 0;
  for (const auto& at : atoms_) total += at.outcomes.size();
  return total;
}

std::string Negotiation::occurrence_string(Occurrence occ) const {
  const Atom& at = atom(occ.atom);
  return "(" + at.name + "," + at.outcomes.at(occ.outcome) + ")";
}

namespace {

void add_issue(std::vector<ValidationIssue>& issues, IssueKind kind, std::string message,
               SourceSpan span = {0, 0, 0}) {
  issues.push_back({kind, std::move(message), span});
}

}  // namespace

Negotiation validate_negotiation(const NegotiationSpec& spec) {
  std::vector<ValidationIssue> issues;

  std::set<std::string, std::less<>> agent_set;
  for (const auto& a : spec.agents) {
    if (a.empty()) {
      add_issue(issues, IssueKind::UnknownAgent, "empty agent name");
    } else if (!agent_set.insert(a).second) {
      add_issue(issues, IssueKind::DuplicateDeclaration, "agent '" + a + "' declared twice");
    }
  }

  std::map<std::string_view, const AtomSpec*> atom_specs;
  for (const auto& at : spec.atoms) {
    if (!atom_specs.emplace(at.name, &at).second) {
      add_issue(issues, IssueKind::DuplicateDeclaration, "atom '" + at.name + "' declared twice",
                at.span);
    }
  }

  // Parties per atom, by name.
  std::map<std::string_view, std::set<std::string_view>> parties;
  for (const auto& [name, at] : atom_specs) {
    auto& ps = parties[name];
    if (at->parties.empty()) {
      add_issue(issues, IssueKind::EmptyParties, "atom '" + std::string(name) + "' has no parties", at->span);
    }
    for (const auto& p : at->parties) {
      if (!agent_set.count(p)) {
        add_issue(issues, IssueKind::UnknownAgent,
                  "atom '" + std::string(name) + "' lists undeclared agent '" + p + "'", at->span);
      }
      ps.insert(p);
    }
  }

  const bool have_initial = !spec.initial.empty() && atom_specs.count(spec.initial);
  const bool have_final = !spec.final_atom.empty() && atom_specs.count(spec.final_atom);
  if (spec.initial.empty() || spec.final_atom.empty()) {
    add_issue(issues, IssueKind::MissingInitialOrFinal, "initial and final atoms must be declared");
  }
  if (!spec.initial.empty() && !have_initial) {
    add_issue(issues, IssueKind::DanglingAtomReference,
              "initial atom '" + spec.initial + "' is not declared");
  }
  if (!spec.final_atom.empty() && !have_final) {
    add_issue(issues, IssueKind::DanglingAtomReference,
              "final atom '" + spec.final_atom + "' is not declared");
  }
  if (have_initial && spec.initial == spec.final_atom) {
    add_issue(issues, IssueKind::InitialEqualsFinal,
              "initial and final atom coincide ('" + spec.initial + "')");
  }
  for (const auto& a : agent_set) {
    if (have_initial && !parties[spec.initial].count(a)) {
      add_issue(issues, IssueKind::MissingInitialParty,
                "agent '" + a + "' is not a party of the initial atom '" + spec.initial + "'");
    }
    if (have_final && !parties[spec.final_atom].count(a)) {
      add_issue(issues, IssueKind::MissingFinalParty,
                "agent '" + a + "' is not a party of the final atom '" + spec.final_atom + "'");
    }
  }

  // (atom, outcome, agent) -> successors
  using Key = std::tuple<std::string_view, std::string_view, std::string_view>;
  std::map<Key, std::set<std::string_view>> table;
  std::map<std::string_view, std::set<std::string_view>> outcomes;
  for (const auto& t : spec.transitions) {
    const auto where = [&t] { return "transition " + t.atom + "." + t.outcome + " : " + t.agent; };
    if (!atom_specs.count(t.atom)) {
      add_issue(issues, IssueKind::DanglingAtomReference,
                where() + " refers to undeclared atom '" + t.atom + "'", t.span);
      continue;
    }
    if (t.outcome.empty()) {
      add_issue(issues, IssueKind::NoOutcomes, where() + " has an empty outcome",
                t.span);
      continue;
    }
    if (!agent_set.count(t.agent)) {
      add_issue(issues, IssueKind::UnknownAgent,
                where() + " refers to undeclared agent '" + t.agent + "'", t.span);
      continue;
    }
    if (!parties[t.atom].count(t.agent)) {
      add_issue(issues, IssueKind::PartialTransitionFunction,
                where() + " is outside T(N): '" + t.agent +
                    "' is not a party of '" + t.atom + "'",
                t.span);
      continue;
    }
    outcomes[t.atom].insert(t.outcome);
    const Key key{t.atom, t.outcome, t.agent};
    if (table.count(key)) {
      add_issue(issues, IssueKind::DuplicateTransition, where() + " given twice",
                t.span);
      continue;
    }
    auto& succ = table[key];
    for (const auto& s : t.successors) {
      if (!atom_specs.count(s)) {
        add_issue(issues, IssueKind::DanglingAtomReference,
                  where() + " leads to undeclared atom '" + s + "'", t.span);
      }
      succ.insert(s);
    }
    const bool is_final = t.atom == spec.final_atom;
    if (!is_final && succ.empty()) {
      add_issue(issues, IssueKind::NonFinalEmptyTransition,
                "X(" + t.atom + "," + t.agent + "," + t.outcome + ") is empty but '" + t.atom +
                    "' is not the final atom",
                t.span);
    }
    if (is_final && !succ.empty()) {
      add_issue(issues, IssueKind::FinalNonEmptyTransition,
                "X(" + t.atom + "," + t.agent + "," + t.outcome +
                    ") must be empty for the final atom",
                t.span);
    }
  }

  for (const auto& [name, at] : atom_specs) {
    const auto& rs = outcomes[name];
    if (rs.empty()) {
      add_issue(issues, IssueKind::NoOutcomes, "atom '" + std::string(name) + "' has no outcomes", at->span);
      continue;
    }
    for (const auto& r : rs) {
      for (const auto& p : parties[name]) {
        if (!agent_set.count(p)) continue;
        if (!table.count(Key{name, r, p})) {
          add_issue(issues, IssueKind::PartialTransitionFunction,
                    "missing transition " + std::string(name) + "." + std::string(r) + " : " + std::string(p), at->span);
        }
      }
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));

  Negotiation neg;
  neg.name_ = spec.name;
  neg.agents_.assign(agent_set.begin(), agent_set.end());
  std::map<std::string_view, AtomIdx> atom_idx;
  for (const auto& [name, at] : atom_specs) {
    atom_idx.emplace(name, static_cast<AtomIdx>(atom_idx.size()));
  }
  neg.atoms_.reserve(atom_specs.size());
  neg.party_pos_.assign(atom_specs.size(), std::vector<int>(neg.agents_.size(), -1));
  for (const auto& [name, at] : atom_specs) {
    Atom atom;
    atom.name = name;
    for (const auto& p : parties[name]) atom.parties.push_back(neg.agent_index(p));
    const auto& rs = outcomes[name];
    for (std::string_view r : rs) atom.outcomes.emplace_back(r);
    atom.next.resize(atom.parties.size());
    const AtomIdx n = atom_idx.at(name);
    for (std::size_t pos = 0; pos < atom.parties.size(); ++pos) {
      neg.party_pos_[n][atom.parties[pos]] = static_cast<int>(pos);
      const std::string& agent = neg.agents_[atom.parties[pos]];
      for (const auto& r : atom.outcomes) {
        std::vector<AtomIdx> succ;
        for (const auto& s : table.at(Key{name, r, agent})) succ.push_back(atom_idx.at(s));
        atom.next[pos].push_back(std::move(succ));
      }
    }
    neg.atoms_.push_back(std::move(atom));
  }
  neg.initial_ = atom_idx.at(spec.initial);
  neg.final_ = atom_idx.at(spec.final_atom);

  neg.deterministic_.assign(neg.agents_.size(), true);
  for (AtomIdx n = 0; n < neg.atoms_.size(); ++n) {
    if (n == neg.final_) continue;
    const Atom& at = neg.atoms_[n];
    for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
      for (const auto& succ : at.next[pos]) {
        if (succ.size() != 1) neg.deterministic_[at.parties[pos]] = false;
      }
    }
  }
  return neg;
}

NegotiationSpec to_spec(const Negotiation& neg) {
  NegotiationSpec spec;
  spec.name = neg.name();
  spec.agents = neg.agents();
  spec.initial = neg.atom_name(neg.initial());
  spec.final_atom = neg.atom_name(neg.final_atom());
  for (const auto& at : neg.atoms()) {
    AtomSpec as;
    as.name = at.name;
    for (AgentIdx p : at.parties) as.parties.push_back(neg.agent_name(p));
    spec.atoms.push_back(std::move(as));
  }
  for (const auto& at : neg.atoms()) {
    for (OutcomeIdx r = 0; r < at.outcomes.size(); ++r) {
      for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
        TransitionSpec t;
        t.atom = at.name;
        t.outcome = at.outcomes[r];
        t.agent = neg.agent_name(at.parties[pos]);
        for (AtomIdx s : at.next[pos][r]) t.successors.push_back(neg.atom_name(s));
        spec.transitions.push_back(std::move(t));
      }
    }
  }
  return spec;
}

std::vector<AtomIdx> Arena::atoms_of(Player p) const {
  std::vector<AtomIdx> out;
  for (AtomIdx n = 0; n < owner.size(); ++n) {
    if (owner[n] == p) out.push_back(n);
  }
  return out;
}

Arena make_arena(Negotiation neg, std::vector<Player> owner) {
  if (owner.size() != neg.atom_count()) {
    throw Error(ErrorCode::InvalidArgument, "owner mapping must cover every atom exactly once");
  }
  return Arena{std::move(neg), std::move(owner)};
}

Arena make_arena(const NegotiationSpec& spec) {
  Negotiation neg = validate_negotiation(spec);
  std::vector<Player> owner(neg.atom_count(), Player::Two);
  for (const auto& [name, player] : spec.owners) {
    auto n = neg.find_atom(name);
    if (!n) {
      throw ValidationError({{IssueKind::DanglingAtomReference,
                              "owner line refers to undeclared atom '" + name + "'",
                              {0, 0, 0}}});
    }
    owner[*n] = player;
  }
  return make_arena(std::move(neg), std::move(owner));
}

NegotiationSpec to_spec(const Arena& arena) {
  NegotiationSpec spec = to_spec(arena.negotiation);
  for (AtomIdx n = 0; n < arena.owner.size(); ++n) {
    spec.owners[arena.negotiation.atom_name(n)] = arena.owner[n];
  }
  return spec;
}

std::vector<Player> coalition_partition(const Negotiation& neg,
                                        const std::set<std::string>& coalition) {
  std::vector<bool> member(neg.agent_count(), false);
  for (const auto& name : coalition) member[neg.agent_index(name)] = true;
  std::vector<Player> owner;
  owner.reserve(neg.atom_count());
  for (const auto& at : neg.atoms()) {
    std::size_t ones = 0;
    for (AgentIdx p : at.parties) ones += member[p] ? 1 : 0;
    const std::size_t twos = at.parties.size() - ones;
    owner.push_back(ones > twos ? Player::One : Player::Two);
  }
  return owner;
}

Arena coalition_arena(const Negotiation& neg, const std::set<std::string>& coalition) {
  return make_arena(neg, coalition_partition(neg, coalition));
}

std::vector<AgentIdx> deterministic_parties(const Negotiation& neg, AtomIdx n) {
  if (n >= neg.atom_count()) throw Error(ErrorCode::UnknownAtom, "atom index out of range");
  std::vector<AgentIdx> out;
  for (AgentIdx p : neg.atom(n).parties) {
    if (neg.is_deterministic_agent(p)) out.push_back(p);
  }
  return out;
}

void validate_goals(const Negotiation& neg, const OutcomeGoal& goals) {
  for (const auto& [agent, entries] : goals) {
    const AgentIdx a = neg.agent_index(agent);
    for (const auto& [atom, outcome] : entries) {
      const AtomIdx n = neg.atom_index(atom);
      const OutcomeIdx r = neg.outcome_index(n, outcome);
      if (!neg.is_party(n, a)) {
        throw Error(ErrorCode::InvalidGoal,
                    "goal " + atom + "." + outcome + " for '" + agent + "': not a party");
      }
      auto succ = neg.successors(n, a, r);
      if (n == neg.final_atom() ||
          std::find(succ.begin(), succ.end(), neg.final_atom()) == succ.end()) {
        throw Error(ErrorCode::InvalidGoal, "goal " + atom + "." + outcome + " for '" + agent +
                                                "' does not lead to the final atom");
      }
    }
  }
}

}  // namespace negsolve
