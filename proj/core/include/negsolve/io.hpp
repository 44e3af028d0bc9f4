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

// Text formats: the negotiation language (.ng), machine descriptions (.atm),
// goal specifications and Graphviz export.

#include <filesystem>
#include <string>
#include <string_view>

#include "negsolve/atm.hpp"
#include "negsolve/model.hpp"
#include "negsolve/semantics.hpp"

namespace negsolve {

/// Throws ParseError(Syntax / DuplicateTransition / UndeclaredIdentifier).
NegotiationSpec parse_negotiation(std::string_view text);

/// parse_negotiation followed by validate_negotiation.
Negotiation load_negotiation(std::string_view text);
/// parse_negotiation followed by make_arena (owner lines honoured).
Arena load_arena(std::string_view text);

/// Canonical text; parse(serialize(neg)) == neg.
std::string serialize_negotiation(const Negotiation& neg);
/// As above plus one owner line per player.
std::string serialize_arena(const Arena& arena);

/// Parses and validates. Throws ParseError(Syntax / UndeclaredIdentifier)
/// and the validate_atm errors.
AlternatingTM parse_atm(std::string_view text);
std::string serialize_atm(const AlternatingTM& tm);

/// "D1: n2.yes n4.yes; D2: n2.no"
OutcomeGoal parse_goals(std::string_view text);

/// Throws Error(InvalidArgument) when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

/// One node per atom, one edge per (n, a, r, n') labelled "a:r".
std::string export_dot(const Negotiation& neg);
/// One node per marking, edges labelled "(n,r)"; final and deadlock markings
/// are styled.
std::string export_dot(const Negotiation& neg, const ReachabilityGraph& graph);

}  // namespace negsolve
