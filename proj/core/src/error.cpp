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

#include "negsolve/error.hpp"

#include <algorithm>
#include <sstream>

namespace negsolve {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::DuplicateTransition: return "DuplicateTransition";
    case ErrorCode::UndeclaredIdentifier: return "UndeclaredIdentifier";
    case ErrorCode::HeadOutOfBounds: return "HeadOutOfBounds";
    case ErrorCode::TransitionFromHaltingState: return "TransitionFromHaltingState";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::UnknownOutcome: return "UnknownOutcome";
    case ErrorCode::NotEnabled: return "NotEnabled";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::StrategyReturnedInvalidOutcome: return "StrategyReturnedInvalidOutcome";
    case ErrorCode::SchedulerReturnedInvalidSet: return "SchedulerReturnedInvalidSet";
    case ErrorCode::NotWd2: return "NotWd2";
    case ErrorCode::NotSound: return "NotSound";
    case ErrorCode::UnknownSeed: return "UnknownSeed";
    case ErrorCode::WrongWinner: return "WrongWinner";
    case ErrorCode::GoalAgentNondeterministic: return "GoalAgentNondeterministic";
    case ErrorCode::EmptyGoals: return "EmptyGoals";
    case ErrorCode::InvalidGoal: return "InvalidGoal";
    case ErrorCode::CannotBalance: return "CannotBalance";
    case ErrorCode::NotCoalitionArena: return "NotCoalitionArena";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::StateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorCode::ConfigBudgetExceeded: return "ConfigBudgetExceeded";
    case ErrorCode::GenerationBudgetExceeded: return "GenerationBudgetExceeded";
    case ErrorCode::MoveBudgetExceeded: return "MoveBudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

std::string to_string(const SourceSpan& span) {
  std::ostringstream os;
  os << span.line << ':' << span.col_begin;
  return os.str();
}

ParseError::ParseError(ErrorCode code, SourceSpan span, const std::string& message)
    : Error(code, to_string(span) + ": " + message), span_(span) {}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::MissingInitialParty: return "MissingInitialParty";
    case IssueKind::MissingFinalParty: return "MissingFinalParty";
    case IssueKind::NonFinalEmptyTransition: return "NonFinalEmptyTransition";
    case IssueKind::FinalNonEmptyTransition: return "FinalNonEmptyTransition";
    case IssueKind::DanglingAtomReference: return "DanglingAtomReference";
    case IssueKind::PartialTransitionFunction: return "PartialTransitionFunction";
    case IssueKind::DuplicateTransition: return "DuplicateTransition";
    case IssueKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case IssueKind::UnknownAgent: return "UnknownAgent";
    case IssueKind::EmptyParties: return "EmptyParties";
    case IssueKind::NoOutcomes: return "NoOutcomes";
    case IssueKind::InitialEqualsFinal: return "InitialEqualsFinal";
    case IssueKind::MissingInitialOrFinal: return "MissingInitialOrFinal";
  }
  return "Issue";
}

namespace {

std::string summarize(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "invalid negotiation (" << issues.size() << " issue"
     << (issues.size() == 1 ? "" : "s") << ")";
  for (const auto& issue : issues) {
    os << "\n  ";
    if (issue.span.line > 0) os << to_string(issue.span) << ": ";
    os << to_string(issue.kind) << ": " << issue.message;
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(ErrorCode::Validation, summarize(issues)), issues_(std::move(issues)) {}

bool ValidationError::has(IssueKind kind) const {
  return std::any_of(issues_.begin(), issues_.end(),
                     [kind](const ValidationIssue& i) { return i.kind == kind; });
}

}  // namespace negsolve
