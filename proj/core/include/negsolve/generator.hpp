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

#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "negsolve/model.hpp"

namespace negsolve {

struct GeneratorParams {
  std::size_t agents = 3;          // deterministic agents
  std::size_t max_atoms = 8;       // including n0 and nf
  std::size_t max_outcomes = 2;
  std::size_t nondet_agents = 0;   // always-ready agents on a random subset of atoms
  std::size_t max_attempts = 1000;
};

struct GeneratedArena {
  Arena arena;
  std::set<std::string> coalition;
  std::size_t attempts = 0;
};

/// Block-structured workflow (sequence, parallel split, choice, loop) whose
/// ownership follows a random coalition. Samples until sound. Reproducible
/// from `seed`. Throws InvalidArgument and GenerationBudgetExceeded.
GeneratedArena generate_random_arena(std::uint64_t seed, const GeneratorParams& params = {});

}  // namespace negsolve
