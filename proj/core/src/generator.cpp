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

#include "negsolve/generator.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "negsolve/analysis.hpp"

namespace negsolve {

namespace {

struct Draft {
  std::vector<std::size_t> parties;
  std::size_t outcomes = 1;
  std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>> next;  // (agent, r)
};

class Builder {
 public:
  Builder(std::mt19937_64& rng, const GeneratorParams& params) : rng_(rng), params_(params) {}

  std::vector<Draft> atoms;

  std::size_t add(std::vector<std::size_t> parties, std::size_t outcomes) {
    atoms.push_back({std::move(parties), outcomes, {}});
    return atoms.size() - 1;
  }

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  std::size_t outcome_count() { return pick(1, std::max<std::size_t>(1, params_.max_outcomes)); }

  using Ends = std::map<std::size_t, std::size_t>;  // agent -> atom

  Ends block(const std::vector<std::size_t>& group, const Ends& exit, std::size_t budget) {
    enum Kind { Single, Seq, Par, Choice, Loop };
    // every kind spends its whole budget, so the atom count is 2 + budget
    std::vector<Kind> kinds;
    if (budget < 2) kinds.push_back(Single);
    if (budget >= 2) kinds.insert(kinds.end(), {Seq, Seq, Loop});
    if (budget >= 2 && group.size() >= 2) kinds.insert(kinds.end(), {Par, Par});
    if (budget >= 3) kinds.push_back(Choice);
    const Kind kind = kinds[pick(0, kinds.size() - 1)];

    switch (kind) {
      case Single: {
        const std::size_t n = add(group, outcome_count());
        for (std::size_t r = 0; r < atoms[n].outcomes; ++r) {
          for (std::size_t a : group) atoms[n].next[{a, r}] = {exit.at(a)};
        }
        return uniform(group, n);
      }
      case Seq: {
        const std::size_t first = pick(1, budget - 1);
        const Ends middle = block(group, exit, budget - first);
        return block(group, middle, first);
      }
      case Par: {
        std::vector<std::size_t> shuffled = group;
        std::shuffle(shuffled.begin(), shuffled.end(), rng_);
        const std::size_t cut = pick(1, shuffled.size() - 1);
        const std::vector<std::size_t> left(shuffled.begin(), shuffled.begin() + cut);
        const std::vector<std::size_t> right(shuffled.begin() + cut, shuffled.end());
        const std::size_t lb = pick(1, budget - 1);
        Ends out = block(sorted(left), exit, lb);
        const Ends rhs = block(sorted(right), exit, budget - lb);
        out.insert(rhs.begin(), rhs.end());
        return out;
      }
      case Choice: {
        const std::size_t n = add(group, 2);
        const std::size_t lb = pick(1, budget - 2);
        const Ends b0 = block(group, exit, lb);
        const Ends b1 = block(group, exit, budget - 1 - lb);
        for (std::size_t a : group) {
          atoms[n].next[{a, 0}] = {b0.at(a)};
          atoms[n].next[{a, 1}] = {b1.at(a)};
        }
        return uniform(group, n);
      }
      case Loop: {
        const std::size_t n = add(group, 2);
        const Ends body = block(group, uniform(group, n), budget - 1);
        for (std::size_t a : group) {
          atoms[n].next[{a, 0}] = {exit.at(a)};
          atoms[n].next[{a, 1}] = {body.at(a)};
        }
        return uniform(group, n);
      }
    }
    return {};
  }

 private:
  static Ends uniform(const std::vector<std::size_t>& group, std::size_t n) {
    Ends e;
    for (std::size_t a : group) e[a] = n;
    return e;
  }
  static std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  }

  std::mt19937_64& rng_;
  const GeneratorParams& params_;
};

NegotiationSpec sample(std::mt19937_64& rng, const GeneratorParams& params) {
  Builder b(rng, params);
  const std::size_t det = params.agents;
  const std::size_t total = det + params.nondet_agents;
  std::vector<std::size_t> all(total), dets(det);
  for (std::size_t a = 0; a < total; ++a) all[a] = a;
  for (std::size_t a = 0; a < det; ++a) dets[a] = a;

  const std::size_t n0 = b.add(all, b.outcome_count());
  const std::size_t nf = b.add(all, 1);
  Builder::Ends exit;
  for (std::size_t a : dets) exit[a] = nf;
  Builder::Ends entry = exit;
  if (params.max_atoms >= 3) entry = b.block(dets, exit, b.pick(1, params.max_atoms - 2));
  for (std::size_t r = 0; r < b.atoms[n0].outcomes; ++r) {
    for (std::size_t a : dets) b.atoms[n0].next[{a, r}] = {entry.at(a)};
  }

  // Always-ready agents: ready for all of their atoms at once.
  for (std::size_t z = det; z < total; ++z) {
    std::set<std::size_t> mine{nf};
    for (std::size_t n = 2; n < b.atoms.size(); ++n) {
      if (b.pick(0, 1)) mine.insert(n);
    }
    for (std::size_t n : mine) {
      if (n != nf) b.atoms[n].parties.push_back(z);
    }
    for (std::size_t n : mine) {
      if (n == nf) continue;
      for (std::size_t r = 0; r < b.atoms[n].outcomes; ++r) b.atoms[n].next[{z, r}] = mine;
    }
    for (std::size_t r = 0; r < b.atoms[n0].outcomes; ++r) b.atoms[n0].next[{z, r}] = mine;
  }

  auto agent_name = [&](std::size_t a) {
    return a < det ? "a" + std::to_string(a) : "z" + std::to_string(a - det);
  };
  auto atom_name = [&](std::size_t n) {
    return n == n0 ? std::string("n0") : n == nf ? std::string("nf") : "m" + std::to_string(n - 1);
  };
  NegotiationSpec spec;
  spec.name = "generated";
  for (std::size_t a = 0; a < total; ++a) spec.agents.push_back(agent_name(a));
  spec.initial = "n0";
  spec.final_atom = "nf";
  for (std::size_t n = 0; n < b.atoms.size(); ++n) {
    AtomSpec at{atom_name(n), {}, {0, 0, 0}};
    for (std::size_t a : b.atoms[n].parties) at.parties.push_back(agent_name(a));
    spec.atoms.push_back(std::move(at));
    for (std::size_t a : b.atoms[n].parties) {
      for (std::size_t r = 0; r < b.atoms[n].outcomes; ++r) {
        TransitionSpec t{atom_name(n), n == nf ? "end" : "o" + std::to_string(r),
                         agent_name(a), {}, {0, 0, 0}};
        if (n != nf) {
          for (std::size_t m : b.atoms[n].next.at({a, r})) t.successors.push_back(atom_name(m));
        }
        spec.transitions.push_back(std::move(t));
      }
    }
  }
  return spec;
}

}  // namespace

GeneratedArena generate_random_arena(std::uint64_t seed, const GeneratorParams& params) {
  if (params.agents == 0 || params.max_atoms < 2 || params.max_outcomes == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "generator needs at least one agent, two atoms and one outcome");
  }
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= params.max_attempts; ++attempt) {
    const NegotiationSpec spec = sample(rng, params);
    Negotiation neg = validate_negotiation(spec);
    std::set<std::string> coalition;
    for (const auto& a : neg.agents()) {
      if (std::bernoulli_distribution(0.5)(rng)) coalition.insert(a);
    }
    if (!check_soundness(neg).sound) continue;
    GeneratedArena out{coalition_arena(neg, coalition), std::move(coalition), attempt};
    return out;
  }
  throw Error(ErrorCode::GenerationBudgetExceeded,
              "no sound sample within " + std::to_string(params.max_attempts) + " attempts");
}

}  // namespace negsolve
