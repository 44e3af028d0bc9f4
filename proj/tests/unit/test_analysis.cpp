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

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace negsolve;
using negsolve::testing::fixture;

TEST_CASE("deterministic agents") {
  const Negotiation left = fixture("fig1_left.ng");
  CHECK_FALSE(agent_is_deterministic(left, "M"));
  CHECK(agent_is_deterministic(left, "D"));
  const Negotiation right = fixture("fig1_right.ng");
  for (const char* a : {"F", "D", "M"}) CHECK(agent_is_deterministic(right, a));
  CHECK(agent_is_deterministic(fixture("minimal.ng"), "a"));
  CHECK_THROWS_AS(agent_is_deterministic(right, "Q"), Error);
}

TEST_CASE("classification of fixtures") {
  const Classification right = classify(fixture("fig1_right.ng"));
  CHECK(right.deterministic);
  CHECK(right.weakly_deterministic);
  CHECK(right.wd2);

  for (const char* name : {"fig3_middle.ng", "fig3_right.ng"}) {
    const Classification c = classify(fixture(name));
    CHECK_FALSE(c.deterministic);
    CHECK(c.weakly_deterministic);
    CHECK(c.wd2);
  }
  const Classification left = classify(fixture("fig1_left.ng"));
  CHECK_FALSE(left.deterministic);

  for (const auto& name : negsolve::testing::negotiation_fixtures()) {
    const Classification c = classify(fixture(name));
    if (c.deterministic) {
      CHECK(c.weakly_deterministic);
      CHECK(c.wd2);
    }
  }
}

TEST_CASE("the basic machine reduction is not deterministic") {
  for (const auto& name : negsolve::testing::atm_fixtures()) {
    const auto red = reduce_atm_basic(negsolve::testing::fixture_atm(name));
    CHECK_FALSE(classify(red.arena.negotiation).deterministic);
  }
}

TEST_CASE("soundness of the family negotiations") {
  CHECK(check_soundness(fixture("fig1_left.ng")).sound);
  CHECK(check_soundness(fixture("fig1_right.ng")).sound);
  const Negotiation mod = fixture("fig1_left_modified.ng");
  const SoundnessVerdict v = check_soundness(mod);
  CHECK_FALSE(v.sound);
  REQUIRE(v.witness);
  CHECK(witness_string(mod, *v.witness) == "(n0,st)(n1,yes)");
  CHECK(oracle::replays_to_bad_marking(mod, *v.witness));
}

TEST_CASE("dead atoms are reported") {
  const Negotiation neg = load_negotiation(R"(negotiation dead
agents a
atom n0 [a]
atom n1 [a]
atom nf [a]
initial n0
final nf
n0.go : a -> {nf}
n1.go : a -> {nf}
nf.end : a -> {}
)");
  const SoundnessVerdict v = check_soundness(neg);
  CHECK_FALSE(v.sound);
  REQUIRE(v.dead_atoms.size() == 1);
  CHECK(neg.atom_name(v.dead_atoms[0]) == "n1");
  CHECK_FALSE(v.witness);
}

namespace {

void compare_with_oracle(const Negotiation& neg) {
  const SoundnessVerdict v = check_soundness(neg);
  const oracle::NaiveSoundness o = oracle::naive_soundness(neg);
  CHECK(v.sound == o.sound);
  CHECK(std::set<AtomIdx>(v.dead_atoms.begin(), v.dead_atoms.end()) == o.dead_atoms);
  CHECK(v.witness.has_value() == o.witness.has_value());
  if (v.witness && o.witness) {
    CHECK(*v.witness == *o.witness);
    CHECK(oracle::replays_to_bad_marking(neg, *v.witness));
  }
  CHECK(v.sound == (v.dead_atoms.empty() && !v.witness));
}

/// Redirects one transition of a sound arena to make unsound variants.
Negotiation mutate(const Negotiation& neg, std::uint64_t seed) {
  NegotiationSpec spec = to_spec(neg);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
    if (spec.transitions[i].atom != spec.final_atom) candidates.push_back(i);
  }
  auto& t = spec.transitions[candidates[seed % candidates.size()]];
  t.successors = {spec.atoms[(seed / 7) % spec.atoms.size()].name};
  if (t.successors[0] == spec.initial) t.successors[0] = spec.final_atom;
  return validate_negotiation(spec);
}

}  // namespace

TEST_CASE("soundness agrees with the naive oracle") {
  for (const auto& name : negsolve::testing::negotiation_fixtures()) compare_with_oracle(fixture(name));
  std::size_t unsound = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = generate_random_arena(seed, negsolve::testing::small_params(seed));
    compare_with_oracle(g.arena.negotiation);
    Negotiation m = mutate(g.arena.negotiation, seed * 13 + 5);
    if (oracle::naive_space(m).markings.size() > 300) continue;
    compare_with_oracle(m);
    unsound += check_soundness(m).sound ? 0 : 1;
  }
  CHECK(unsound > 5);
}

TEST_CASE("in sound wd2 negotiations only n_f is enabled once every deterministic agent waits for it") {
  for (const auto& name : negsolve::testing::negotiation_fixtures()) {
    const Negotiation neg = fixture(name);
    const Classification c = classify(neg);
    if (!c.wd2 || !check_soundness(neg).sound) continue;
    const ReachabilityGraph g = reachability_graph(neg);
    for (const Marking& m : g.markings) {
      bool all_at_final = true;
      for (AgentIdx a = 0; a < neg.agent_count(); ++a) {
        if (!c.deterministic_agents[a]) continue;
        const auto set = m.ready_set(a);
        all_at_final = all_at_final && set.size() == 1 && set[0] == neg.final_atom();
      }
      if (all_at_final) CHECK(enabled_atoms(neg, m) == std::vector<AtomIdx>{neg.final_atom()});
    }
  }
}

TEST_CASE("state budget") {
  try {
    check_soundness(fixture("fig4.ng"), 3);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateBudgetExceeded);
  }
}
