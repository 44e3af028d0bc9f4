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

#include <set>
#include <string>
#include <vector>

#include "negsolve/negsolve.hpp"

namespace negsolve::testing {

std::string fixture_path(const std::string& name);
std::string fixture_text(const std::string& name);
Negotiation fixture(const std::string& name);
Arena fixture_arena(const std::string& name, const std::set<std::string>& coalition);
AlternatingTM fixture_atm(const std::string& name);

/// Every .ng fixture file name.
std::vector<std::string> negotiation_fixtures();
/// Every .atm fixture file name.
std::vector<std::string> atm_fixtures();

/// Goals of the two-daughter scenario: D1 wants every yes, D2 every no.
OutcomeGoal daughters_goals();

/// Parameters used by the randomized differential tests: at most six agents
/// and ten atoms; every fourth seed adds an always-ready agent.
GeneratorParams small_params(std::uint64_t seed);

}  // namespace negsolve::testing
