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

#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"

using namespace negsolve;
using negsolve::testing::fixture;

namespace {

NegotiationSpec minimal_spec(std::vector<std::string> succ = {"nf"}) {
  NegotiationSpec s;
  s.name = "m";
  s.agents = {"a", "b"};
  s.atoms = {{"n0", {"a", "b"}}, {"nf", {"a", "b"}}};
  s.initial = "n0";
  s.final_atom = "nf";
  for (const char* agent : {"a", "b"}) {
    s.transitions.push_back({"n0", "go", agent, succ});
    s.transitions.push_back({"nf", "end", agent, {}});
  }
  return s;
}

bool throws_issue(const NegotiationSpec& spec, IssueKind kind) {
  try {
    validate_negotiation(spec);
  } catch (const ValidationError& e) {
    return e.has(kind);
  }
  return false;
}

std::vector<std::string> names_of(const Negotiation& neg, const std::vector<AgentIdx>& agents) {
  std::vector<std::string> out;
  for (AgentIdx a : agents) out.push_back(neg.agent_name(a));
  return out;
}

}  // namespace

TEST_CASE("left family negotiation validates with the mother's hyper-arc") {
  const Negotiation neg = fixture("fig1_left.ng");
  CHECK(neg.atom_count() == 4);
  CHECK(neg.agent_count() == 3);
  const AtomIdx n0 = neg.atom_index("n0");
  const auto succ = neg.successors(n0, neg.agent_index("M"), neg.outcome_index(n0, "st"));
  REQUIRE(succ.size() == 2);
  CHECK(neg.atom_name(succ[0]) == "n2");
  CHECK(neg.atom_name(succ[1]) == "nf");
}

TEST_CASE("minimal two-atom negotiation is valid") {
  const Negotiation neg = validate_negotiation(minimal_spec());
  CHECK(neg.atom_count() == 2);
  CHECK(neg.atom_name(neg.initial()) == "n0");
}

TEST_CASE("structural violations are all reported") {
  CHECK(throws_issue(minimal_spec({}), IssueKind::NonFinalEmptyTransition));

  auto s = minimal_spec();
  s.transitions.back().successors = {"n0"};
  CHECK(throws_issue(s, IssueKind::FinalNonEmptyTransition));

  s = minimal_spec({"nowhere"});
  CHECK(throws_issue(s, IssueKind::DanglingAtomReference));

  s = minimal_spec();
  s.atoms[0].parties = {"a"};
  s.transitions.erase(s.transitions.begin() + 2);
  CHECK(throws_issue(s, IssueKind::MissingInitialParty));

  s = minimal_spec();
  s.atoms[1].parties = {"a"};
  CHECK(throws_issue(s, IssueKind::MissingFinalParty));

  s = minimal_spec();
  s.transitions.erase(s.transitions.begin());
  CHECK(throws_issue(s, IssueKind::PartialTransitionFunction));

  s = minimal_spec();
  s.final_atom = "n0";
  CHECK(throws_issue(s, IssueKind::InitialEqualsFinal));

  // Several problems at once are listed together.
  s = minimal_spec({});
  s.atoms[1].parties = {"a"};
  try {
    validate_negotiation(s);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.has(IssueKind::NonFinalEmptyTransition));
    CHECK(e.has(IssueKind::MissingFinalParty));
    CHECK(e.issues().size() >= 2);
  }
}

TEST_CASE("X is empty exactly at the final atom") {
  for (const auto& name : negsolve::testing::negotiation_fixtures()) {
    const Negotiation neg = fixture(name);
    for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
      for (AgentIdx a : neg.atom(n).parties) {
        for (OutcomeIdx r = 0; r < neg.atom(n).outcomes.size(); ++r) {
          CHECK(neg.successors(n, a, r).empty() == (n == neg.final_atom()));
        }
      }
    }
  }
}

TEST_CASE("coalition partition follows the strict majority rule") {
  const Negotiation left = fixture("fig3_left.ng");
  for (Player p : coalition_partition(left, {"A"})) CHECK(p == Player::Two);
  for (Player p : coalition_partition(left, {"A", "B"})) CHECK(p == Player::One);

  const Negotiation fam = fixture("fig2.ng");
  const auto owner = coalition_partition(fam, {"D1", "D2"});
  std::vector<std::string> n1;
  for (AtomIdx n = 0; n < fam.atom_count(); ++n) {
    if (owner[n] == Player::One) n1.push_back(fam.atom_name(n));
  }
  CHECK(n1 == std::vector<std::string>{"n1", "n2", "n3"});

  CHECK_THROWS_AS(coalition_partition(fam, {"Nobody"}), Error);
}

TEST_CASE("coalition and complement never both own an odd atom") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = generate_random_arena(seed, negsolve::testing::small_params(seed));
    const Negotiation& neg = g.arena.negotiation;
    std::set<std::string> rest;
    for (const auto& a : neg.agents()) {
      if (!g.coalition.count(a)) rest.insert(a);
    }
    const auto x = coalition_partition(neg, g.coalition);
    const auto y = coalition_partition(neg, rest);
    CHECK(x == coalition_partition(neg, g.coalition));
    for (AtomIdx n = 0; n < neg.atom_count(); ++n) {
      if (neg.atom(n).parties.size() % 2 == 1) {
        CHECK_FALSE((x[n] == Player::One && y[n] == Player::One));
        CHECK(x[n] != y[n]);
      }
    }
  }
}

TEST_CASE("deterministic parties") {
  const Negotiation right = fixture("fig1_right.ng");
  CHECK(names_of(right, deterministic_parties(right, right.atom_index("n1"))) ==
        std::vector<std::string>{"D", "F"});
  const Negotiation left = fixture("fig1_left.ng");
  CHECK(names_of(left, deterministic_parties(left, left.atom_index("n2"))) ==
        std::vector<std::string>{"D"});
  const Negotiation minimal = fixture("minimal.ng");
  CHECK(deterministic_parties(minimal, minimal.initial()).size() == minimal.agent_count());
  CHECK_THROWS_AS(deterministic_parties(minimal, 99), Error);
}

TEST_CASE("goal validation") {
  const Negotiation neg = fixture("fig4.ng");
  CHECK_NOTHROW(validate_goals(neg, negsolve::testing::daughters_goals()));
  auto code = [&](const OutcomeGoal& g) {
    try {
      validate_goals(neg, g);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Syntax;
  };
  CHECK(code({{"X", {{"n2", "yes"}}}}) == ErrorCode::UnknownAgent);
  CHECK(code({{"D1", {{"n9", "yes"}}}}) == ErrorCode::UnknownAtom);
  CHECK(code({{"D1", {{"n2", "maybe"}}}}) == ErrorCode::UnknownOutcome);
  CHECK(code({{"D1", {{"n2", "ask"}}}}) == ErrorCode::InvalidGoal);   // not final-bound
  CHECK(code({{"D1", {{"n6", "yes"}}}}) == ErrorCode::InvalidGoal);   // not a party
}

TEST_CASE("to_spec round trip") {
  for (const auto& name : negsolve::testing::negotiation_fixtures()) {
    const Negotiation neg = fixture(name);
    CHECK(validate_negotiation(to_spec(neg)) == neg);
    const Arena arena = coalition_arena(neg, {neg.agent_name(0)});
    CHECK(make_arena(to_spec(arena)) == arena);
  }
}
