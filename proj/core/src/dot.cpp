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

#include <sstream>

#include "negsolve/io.hpp"

namespace negsolve {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_dot(const Negotiation& neg) {
  std::ostringstream os;
  os << "digraph " << quote(neg.name()) << " {\n";
  os << "  node [shape=box];\n";
  for (const auto& at : neg.atoms()) {
    os << "  " << quote(at.name);
    if (&at == &neg.atom(neg.initial()) || &at == &neg.atom(neg.final_atom())) {
      os << " [peripheries=2]";
    }
    os << ";\n";
  }
  for (const auto& at : neg.atoms()) {
    for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
      for (std::size_t r = 0; r < at.outcomes.size(); ++r) {
        const std::string label = neg.agent_name(at.parties[pos]) + ":" + at.outcomes[r];
        for (AtomIdx m : at.next[pos][r]) {
          os << "  " << quote(at.name) << " -> " << quote(neg.atom_name(m))
             << " [label=" << quote(label) << "];\n";
        }
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const Negotiation& neg, const ReachabilityGraph& graph) {
  std::ostringstream os;
  os << "digraph " << quote(neg.name() + "_reachability") << " {\n";
  os << "  node [shape=ellipse];\n";
  for (std::size_t v = 0; v < graph.size(); ++v) {
    os << "  " << quote("x" + std::to_string(v)) << " [label="
       << quote(graph.markings[v].to_string(neg));
    switch (graph.kind[v]) {
      case VertexKind::Final: os << ", shape=doublecircle"; break;
      case VertexKind::Deadlock: os << ", style=filled, fillcolor=red"; break;
      case VertexKind::Live: break;
    }
    if (v == 0) os << ", penwidth=2";
    os << "];\n";
  }
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (const auto& e : graph.edges[v]) {
      os << "  " << quote("x" + std::to_string(v)) << " -> "
         << quote("x" + std::to_string(e.target)) << " [label="
         << quote(neg.occurrence_string(e.label)) << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace negsolve
