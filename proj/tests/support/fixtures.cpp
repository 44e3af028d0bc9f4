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

#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>

#ifndef NEGSOLVE_FIXTURE_DIR
#error "NEGSOLVE_FIXTURE_DIR must be defined"
#endif

namespace negsolve::testing {

std::string fixture_path(const std::string& name) {
  return (std::filesystem::path(NEGSOLVE_FIXTURE_DIR) / name).string();
}

std::string fixture_text(const std::string& name) { return read_file(fixture_path(name)); }

Negotiation fixture(const std::string& name) { return load_negotiation(fixture_text(name)); }

Arena fixture_arena(const std::string& name, const std::set<std::string>& coalition) {
  return coalition_arena(fixture(name), coalition);
}

AlternatingTM fixture_atm(const std::string& name) { return parse_atm(fixture_text(name)); }

namespace {

std::vector<std::string> with_extension(const std::string& ext) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(NEGSOLVE_FIXTURE_DIR)) {
    if (entry.path().extension() == ext) out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::string> negotiation_fixtures() { return with_extension(".ng"); }
std::vector<std::string> atm_fixtures() { return with_extension(".atm"); }

OutcomeGoal daughters_goals() {
  return parse_goals("D1: n2.yes n3.yes n4.yes n5.yes; D2: n2.no n3.no n6.no n7.no");
}

GeneratorParams small_params(std::uint64_t seed) {
  GeneratorParams p;
  p.agents = 2 + seed % 4;
  p.max_atoms = 6 + seed % 5;
  p.max_outcomes = 2 + seed % 2;
  p.nondet_agents = seed % 4 == 3 ? 1 : 0;
  if (p.agents + p.nondet_agents > 6) p.agents = 6 - p.nondet_agents;
  return p;
}

}  // namespace negsolve::testing
