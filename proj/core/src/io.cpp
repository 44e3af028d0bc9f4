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

#include "negsolve/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace negsolve {

namespace {

struct Token {
  enum Kind { Ident, Punct };
  Kind kind = Ident;
  std::string text;
  SourceSpan span;
};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::Ident, std::string(line.substr(i, j - i)), {lineno, col, j + 1}});
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Token::Punct, "->", {lineno, col, col + 2}});
      i += 2;
    } else if (std::string_view("[],.:{}|();").find(c) != std::string_view::npos) {
      out.push_back({Token::Punct, std::string(1, c), {lineno, col, col + 1}});
      ++i;
    } else {
      std::ostringstream msg;
      if (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f) {
        msg << "unexpected character '" << c << "'";
      } else {
        msg << "unexpected byte 0x" << std::hex << static_cast<int>(static_cast<unsigned char>(c));
      }
      throw ParseError(ErrorCode::Syntax, {lineno, col, col + 1}, msg.str());
    }
  }
  return out;
}

struct Line {
  std::vector<Token> tokens;
  std::size_t lineno = 0;
  std::size_t end_col = 1;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t lineno = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view line = text.substr(start, stop - start);
    Line l{tokenize(line, lineno), lineno, line.size() + 1};
    if (!l.tokens.empty()) out.push_back(std::move(l));
    ++lineno;
    if (stop == text.size()) break;
    start = stop + 1;
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }
  const Token* peek() const { return done() ? nullptr : &line_.tokens[pos_]; }
  bool at(std::string_view punct) const {
    return !done() && line_.tokens[pos_].kind == Token::Punct && line_.tokens[pos_].text == punct;
  }
  SourceSpan here() const {
    if (!done()) return line_.tokens[pos_].span;
    return {line_.lineno, line_.end_col, line_.end_col + 1};
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string got = done() ? "end of line" : "'" + line_.tokens[pos_].text + "'";
    throw ParseError(ErrorCode::Syntax, here(), "expected " + expected + ", found " + got);
  }

  const Token& ident(const std::string& what) {
    if (done() || line_.tokens[pos_].kind != Token::Ident) fail(what);
    return line_.tokens[pos_++];
  }
  void expect(std::string_view punct) {
    if (!at(punct)) fail("'" + std::string(punct) + "'");
    ++pos_;
  }
  bool accept(std::string_view punct) {
    if (!at(punct)) return false;
    ++pos_;
    return true;
  }
  void finish() const {
    if (!done()) fail("end of line");
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

bool is_keyword_line(const Line& line, std::string_view keyword) {
  const auto& t = line.tokens;
  return t[0].kind == Token::Ident && t[0].text == keyword &&
         !(t.size() > 1 && t[1].kind == Token::Punct && t[1].text == ".");
}

[[noreturn]] void undeclared(const SourceSpan& span, const std::string& what,
                             const std::string& name) {
  throw ParseError(ErrorCode::UndeclaredIdentifier, span,
                   "undeclared " + what + " '" + name + "'");
}

}  // namespace

NegotiationSpec parse_negotiation(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  if (lines.empty()) {
    throw ParseError(ErrorCode::Syntax, {1, 1, 2}, "expected 'negotiation' header, found end of input");
  }
  NegotiationSpec spec;
  if (!is_keyword_line(lines.front(), "negotiation")) {
    throw ParseError(ErrorCode::Syntax, lines.front().tokens.front().span,
                     "expected 'negotiation' header");
  }
  {
    Cursor c(lines.front());
    c.ident("'negotiation'");
    spec.name = c.ident("negotiation name").text;
    c.finish();
  }

  std::vector<SourceSpan> agent_spans;
  std::optional<SourceSpan> initial_span, final_span;
  std::vector<std::pair<std::string, SourceSpan>> owner_refs;
  std::vector<std::pair<std::string, SourceSpan>> party_refs;
  std::set<std::tuple<std::string, std::string, std::string>> seen;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    Cursor c(line);
    if (is_keyword_line(line, "negotiation")) {
      throw ParseError(ErrorCode::Syntax, line.tokens.front().span, "duplicate 'negotiation' header");
    } else if (is_keyword_line(line, "agents")) {
      c.ident("'agents'");
      do {
        const Token& t = c.ident("agent name");
        spec.agents.push_back(t.text);
        agent_spans.push_back(t.span);
      } while (c.accept(","));
      c.finish();
    } else if (is_keyword_line(line, "atom")) {
      c.ident("'atom'");
      const Token& name = c.ident("atom name");
      AtomSpec at{name.text, {}, name.span};
      c.expect("[");
      if (!c.at("]")) {
        do {
          const Token& p = c.ident("party name");
          at.parties.push_back(p.text);
          party_refs.emplace_back(p.text, p.span);
        } while (c.accept(","));
      }
      c.expect("]");
      c.finish();
      spec.atoms.push_back(std::move(at));
    } else if (is_keyword_line(line, "initial") || is_keyword_line(line, "final")) {
      const bool initial = line.tokens[0].text == "initial";
      auto& slot = initial ? initial_span : final_span;
      if (slot) {
        throw ParseError(ErrorCode::Syntax, line.tokens[0].span,
                         "duplicate '" + line.tokens[0].text + "' line");
      }
      c.ident("keyword");
      const Token& t = c.ident("atom name");
      c.finish();
      slot = t.span;
      (initial ? spec.initial : spec.final_atom) = t.text;
    } else if (is_keyword_line(line, "owner")) {
      c.ident("'owner'");
      const Token& who = c.ident("player 1 or 2");
      if (who.text != "1" && who.text != "2") {
        throw ParseError(ErrorCode::Syntax, who.span, "expected player 1 or 2");
      }
      const Player p = who.text == "1" ? Player::One : Player::Two;
      do {
        const Token& t = c.ident("atom name");
        auto [it, inserted] = spec.owners.try_emplace(t.text, p);
        if (!inserted && it->second != p) {
          throw ParseError(ErrorCode::Syntax, t.span, "atom '" + t.text + "' has two owners");
        }
        owner_refs.emplace_back(t.text, t.span);
        c.accept(",");
      } while (!c.done());
    } else {
      const Token& atom = c.ident("statement");
      c.expect(".");
      const Token& outcome = c.ident("outcome name");
      c.expect(":");
      const Token& agent = c.ident("agent name");
      c.expect("->");
      c.expect("{");
      TransitionSpec t{atom.text, outcome.text, agent.text, {}, atom.span};
      t.span.col_end = agent.span.col_end;
      if (!c.at("}")) {
        do {
          t.successors.push_back(c.ident("atom name").text);
        } while (c.accept(","));
      }
      c.expect("}");
      c.finish();
      if (!seen.insert({t.atom, t.outcome, t.agent}).second) {
        throw ParseError(ErrorCode::DuplicateTransition, t.span,
                         "duplicate transition " + t.atom + "." + t.outcome + " : " + t.agent);
      }
      spec.transitions.push_back(std::move(t));
    }
  }

  const std::set<std::string> agents(spec.agents.begin(), spec.agents.end());
  std::set<std::string> atoms;
  for (const auto& at : spec.atoms) atoms.insert(at.name);
  for (const auto& [name, span] : party_refs) {
    if (!agents.count(name)) undeclared(span, "agent", name);
  }
  if (initial_span && !atoms.count(spec.initial)) undeclared(*initial_span, "atom", spec.initial);
  if (final_span && !atoms.count(spec.final_atom)) undeclared(*final_span, "atom", spec.final_atom);
  for (const auto& [name, span] : owner_refs) {
    if (!atoms.count(name)) undeclared(span, "atom", name);
  }
  for (const auto& t : spec.transitions) {
    if (!atoms.count(t.atom)) undeclared(t.span, "atom", t.atom);
    if (!agents.count(t.agent)) undeclared(t.span, "agent", t.agent);
  }
  return spec;
}

Negotiation load_negotiation(std::string_view text) {
  return validate_negotiation(parse_negotiation(text));
}

Arena load_arena(std::string_view text) { return make_arena(parse_negotiation(text)); }

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void write_body(std::ostringstream& os, const Negotiation& neg, const Arena* arena) {
  os << "negotiation " << neg.name() << '\n';
  os << "agents " << join(neg.agents(), ", ") << '\n';
  for (const auto& at : neg.atoms()) {
    std::vector<std::string> ps;
    for (AgentIdx p : at.parties) ps.push_back(neg.agent_name(p));
    os << "atom " << at.name << " [" << join(ps, ", ") << "]\n";
  }
  os << "initial " << neg.atom_name(neg.initial()) << '\n';
  os << "final " << neg.atom_name(neg.final_atom()) << '\n';
  if (arena) {
    for (Player p : {Player::One, Player::Two}) {
      std::vector<std::string> names;
      for (AtomIdx n : arena->atoms_of(p)) names.push_back(neg.atom_name(n));
      if (!names.empty()) os << "owner " << to_int(p) << ' ' << join(names, " ") << '\n';
    }
  }
  for (const auto& at : neg.atoms()) {
    for (std::size_t r = 0; r < at.outcomes.size(); ++r) {
      for (std::size_t pos = 0; pos < at.parties.size(); ++pos) {
        std::vector<std::string> succ;
        for (AtomIdx m : at.next[pos][r]) succ.push_back(neg.atom_name(m));
        os << at.name << '.' << at.outcomes[r] << " : " << neg.agent_name(at.parties[pos])
           << " -> {" << join(succ, ", ") << "}\n";
      }
    }
  }
}

}  // namespace

std::string serialize_negotiation(const Negotiation& neg) {
  std::ostringstream os;
  write_body(os, neg, nullptr);
  return os.str();
}

std::string serialize_arena(const Arena& arena) {
  std::ostringstream os;
  write_body(os, arena.negotiation, &arena);
  return os.str();
}

AlternatingTM parse_atm(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  if (lines.empty()) {
    throw ParseError(ErrorCode::Syntax, {1, 1, 2}, "expected 'atm' header, found end of input");
  }
  AlternatingTM tm;
  if (!is_keyword_line(lines.front(), "atm")) {
    throw ParseError(ErrorCode::Syntax, lines.front().tokens.front().span, "expected 'atm' header");
  }
  {
    Cursor c(lines.front());
    c.ident("'atm'");
    tm.name = c.ident("machine name").text;
    c.finish();
  }

  struct Ref {
    std::string name;
    SourceSpan span;
  };
  std::vector<Ref> state_refs, symbol_refs;
  std::vector<std::pair<Ref, SourceSpan>> from_refs;  // delta source states and their line
  std::set<std::string> sections;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    Cursor c(line);
    const Token& head = c.ident("statement");
    auto once = [&](const std::string& section) {
      if (!sections.insert(section).second) {
        throw ParseError(ErrorCode::Syntax, head.span, "duplicate '" + section + "' line");
      }
    };
    if (head.text == "states") {
      once("states");
      do {
        const Token& q = c.ident("state name");
        c.expect("(");
        const Token& k = c.ident("E, A, acc or rej");
        StateKind kind;
        if (k.text == "E") kind = StateKind::Existential;
        else if (k.text == "A") kind = StateKind::Universal;
        else if (k.text == "acc") kind = StateKind::Accept;
        else if (k.text == "rej") kind = StateKind::Reject;
        else throw ParseError(ErrorCode::Syntax, k.span, "expected E, A, acc or rej");
        c.expect(")");
        if (std::any_of(tm.states.begin(), tm.states.end(),
                        [&](const AtmState& s) { return s.name == q.text; })) {
          throw ParseError(ErrorCode::Syntax, q.span, "duplicate state '" + q.text + "'");
        }
        tm.states.push_back({q.text, kind});
      } while (!c.done());
    } else if (head.text == "alphabet") {
      once("alphabet");
      do {
        const Token& a = c.ident("symbol");
        if (std::find(tm.alphabet.begin(), tm.alphabet.end(), a.text) != tm.alphabet.end()) {
          throw ParseError(ErrorCode::Syntax, a.span, "duplicate symbol '" + a.text + "'");
        }
        tm.alphabet.push_back(a.text);
      } while (!c.done());
    } else if (head.text == "blank") {
      once("blank");
      const Token& a = c.ident("symbol");
      c.finish();
      tm.blank = a.text;
      symbol_refs.push_back({a.text, a.span});
    } else if (head.text == "input") {
      once("input");
      do {
        const Token& a = c.ident("symbol");
        tm.input.push_back(a.text);
        symbol_refs.push_back({a.text, a.span});
      } while (!c.done());
    } else if (head.text == "delta") {
      const Token& q = c.ident("state name");
      const Token& a = c.ident("symbol");
      c.expect("->");
      state_refs.push_back({q.text, q.span});
      symbol_refs.push_back({a.text, a.span});
      from_refs.push_back({{q.text, q.span}, head.span});
      auto& slot = tm.delta[{q.text, a.text}];
      do {
        const Token& q2 = c.ident("state name");
        const Token& b = c.ident("symbol");
        const Token& d = c.ident("L or R");
        if (d.text != "L" && d.text != "R") {
          throw ParseError(ErrorCode::Syntax, d.span, "expected L or R");
        }
        state_refs.push_back({q2.text, q2.span});
        symbol_refs.push_back({b.text, b.span});
        AtmTransition t{q2.text, b.text, d.text == "L" ? Move::L : Move::R};
        if (std::find(slot.begin(), slot.end(), t) == slot.end()) slot.push_back(t);
      } while (c.accept("|"));
      c.finish();
    } else {
      throw ParseError(ErrorCode::Syntax, head.span, "unknown statement '" + head.text + "'");
    }
  }
  for (const char* required : {"states", "alphabet", "input"}) {
    if (!sections.count(required)) {
      const Line& last = lines.back();
      throw ParseError(ErrorCode::Syntax, {last.lineno + 1, 1, 2},
                       std::string("missing '") + required + "' line");
    }
  }
  for (const auto& r : state_refs) {
    if (std::none_of(tm.states.begin(), tm.states.end(),
                     [&](const AtmState& s) { return s.name == r.name; })) {
      undeclared(r.span, "state", r.name);
    }
  }
  for (const auto& r : symbol_refs) {
    if (std::find(tm.alphabet.begin(), tm.alphabet.end(), r.name) == tm.alphabet.end()) {
      undeclared(r.span, "symbol", r.name);
    }
  }
  for (const auto& [r, span] : from_refs) {
    const StateKind k = tm.state(r.name).kind;
    if (k == StateKind::Accept || k == StateKind::Reject) {
      throw ParseError(ErrorCode::TransitionFromHaltingState, r.span,
                       "transition listed from halting state '" + r.name + "'");
    }
  }
  validate_atm(tm);
  return tm;
}

std::string serialize_atm(const AlternatingTM& tm) {
  std::ostringstream os;
  os << "atm " << tm.name << '\n';
  os << "states";
  for (const auto& s : tm.states) os << ' ' << s.name << '(' << to_string(s.kind) << ')';
  os << "\nalphabet " << join(tm.alphabet, " ") << '\n';
  if (!tm.blank.empty()) os << "blank " << tm.blank << '\n';
  os << "input " << join(tm.input, " ") << '\n';
  for (const auto& [key, ts] : tm.delta) {
    if (ts.empty()) continue;
    os << "delta " << key.first << ' ' << key.second << " ->";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) os << " |";
      os << ' ' << ts[i].state << ' ' << ts[i].symbol << ' ' << (ts[i].move == Move::L ? 'L' : 'R');
    }
    os << '\n';
  }
  return os.str();
}

OutcomeGoal parse_goals(std::string_view text) {
  std::vector<Token> tokens;
  for (const auto& line : split_lines(text)) {
    tokens.insert(tokens.end(), line.tokens.begin(), line.tokens.end());
  }
  OutcomeGoal goals;
  std::size_t i = 0;
  auto fail = [&](const std::string& expected) {
    const SourceSpan span = i < tokens.size() ? tokens[i].span
                            : tokens.empty()  ? SourceSpan{1, 1, 2}
                                              : SourceSpan{tokens.back().span.line,
                                                           tokens.back().span.col_end,
                                                           tokens.back().span.col_end + 1};
    throw ParseError(ErrorCode::Syntax, span, "goals: expected " + expected);
  };
  auto is = [&](std::string_view p) {
    return i < tokens.size() && tokens[i].kind == Token::Punct && tokens[i].text == p;
  };
  auto ident = [&](const std::string& what) -> const std::string& {
    if (i >= tokens.size() || tokens[i].kind != Token::Ident) fail(what);
    return tokens[i++].text;
  };
  while (i < tokens.size()) {
    if (is(";")) {
      ++i;
      continue;
    }
    const std::string agent = ident("agent name");
    if (!is(":")) fail("':'");
    ++i;
    auto& set = goals[agent];
    while (i < tokens.size() && !is(";")) {
      const std::string atom = ident("atom name");
      if (!is(".")) fail("'.'");
      ++i;
      set.insert({atom, ident("outcome name")});
    }
  }
  if (goals.empty()) fail("at least one 'agent:' entry");
  return goals;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace negsolve
