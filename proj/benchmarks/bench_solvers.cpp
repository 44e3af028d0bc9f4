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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "negsolve/negsolve.hpp"

namespace {

using namespace negsolve;

// Chain of `atoms` atoms with `outcomes` outcomes each: one moves forward,
// the others jump back a few atoms. Ownership alternates.
Arena chain(std::size_t atoms, std::size_t outcomes) {
  NegotiationSpec spec;
  spec.agents = {"a", "b"};
  auto name = [&](std::size_t i) {
    return i == 0 ? std::string("n0") : i + 1 == atoms ? std::string("nf") : "n" + std::to_string(i);
  };
  std::mt19937_64 rng(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    spec.atoms.push_back({name(i), spec.agents, {0, 0, 0}});
    spec.owners[name(i)] = i % 2 ? Player::Two : Player::One;
    for (const auto& a : spec.agents) {
      if (i + 1 == atoms) {
        spec.transitions.push_back({name(i), "end", a, {}, {0, 0, 0}});
        continue;
      }
      for (std::size_t r = 0; r < outcomes; ++r) {
        const std::size_t target = r == 0 ? i + 1 : i - std::min<std::size_t>(i, rng() % 8);
        spec.transitions.push_back({name(i), "r" + std::to_string(r), a, {name(target)}, {0, 0, 0}});
      }
    }
  }
  spec.initial = "n0";
  spec.final_atom = "nf";
  return make_arena(spec);
}

void BM_Attractor(benchmark::State& state) {
  const Arena arena = chain(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(compute_attractor(arena));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Attractor)->RangeMultiplier(2)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

GeneratorParams params(std::size_t agents) {
  GeneratorParams p;
  p.agents = agents;
  p.max_atoms = 10;
  p.max_outcomes = 2;
  return p;
}

void BM_GeneralSolver(benchmark::State& state) {
  const GeneratedArena g = generate_random_arena(7, params(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve_termination_general(g.arena));
}
BENCHMARK(BM_GeneralSolver)->DenseRange(2, 6);

void BM_FastSolver(benchmark::State& state) {
  const GeneratedArena g = generate_random_arena(7, params(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(solve_termination_fast(g.arena));
}
BENCHMARK(BM_FastSolver)->DenseRange(2, 6);

void BM_Soundness(benchmark::State& state) {
  const GeneratedArena g = generate_random_arena(11, params(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(check_soundness(g.arena.negotiation));
}
BENCHMARK(BM_Soundness)->DenseRange(2, 6);

void BM_SoundReduction(benchmark::State& state) {
  AlternatingTM tm;
  tm.name = "bench";
  tm.states = {{"q0", StateKind::Existential}, {"q1", StateKind::Universal},
               {"qa", StateKind::Accept}, {"qr", StateKind::Reject}};
  tm.alphabet = {"a", "b"};
  tm.input.assign(static_cast<std::size_t>(state.range(0)), "a");
  tm.delta[{"q0", "a"}] = {{"q1", "b", Move::R}, {"qr", "a", Move::R}};
  tm.delta[{"q1", "a"}] = {{"qa", "a", Move::L}};
  tm.delta[{"q1", "b"}] = {{"qa", "b", Move::L}};
  tm.delta[{"q0", "b"}] = {{"qa", "b", Move::R}};
  for (auto _ : state) {
    const ReductionOutput red = reduce_atm_sound(tm);
    benchmark::DoNotOptimize(solve_termination_general(red.arena).result.winner);
  }
}
BENCHMARK(BM_SoundReduction)->DenseRange(2, 3);

}  // namespace

BENCHMARK_MAIN();
