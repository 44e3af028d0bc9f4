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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace negsolve {

enum class ErrorCode {
  // text formats
  Syntax,
  DuplicateTransition,
  UndeclaredIdentifier,
  HeadOutOfBounds,
  TransitionFromHaltingState,
  // structural validation (see ValidationError::issues())
  Validation,
  // lookups and occurrence semantics
  UnknownAgent,
  UnknownAtom,
  UnknownOutcome,
  NotEnabled,
  NotIndependent,
  StrategyReturnedInvalidOutcome,
  SchedulerReturnedInvalidSet,
  // solver preconditions
  NotWd2,
  NotSound,
  UnknownSeed,
  WrongWinner,
  GoalAgentNondeterministic,
  EmptyGoals,
  InvalidGoal,
  // transformations
  CannotBalance,
  NotCoalitionArena,
  InvalidTarget,
  // resource limits
  StateBudgetExceeded,
  ConfigBudgetExceeded,
  GenerationBudgetExceeded,
  MoveBudgetExceeded,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// 1-based line and column range; col_end is exclusive.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t col_begin = 1;
  std::size_t col_end = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

std::string to_string(const SourceSpan& span);

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourceSpan span, const std::string& message);
  const SourceSpan& span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

enum class IssueKind {
  MissingInitialParty,
  MissingFinalParty,
  NonFinalEmptyTransition,
  FinalNonEmptyTransition,
  DanglingAtomReference,
  PartialTransitionFunction,
  DuplicateTransition,
  DuplicateDeclaration,
  UnknownAgent,
  EmptyParties,
  NoOutcomes,
  InitialEqualsFinal,
  MissingInitialOrFinal,
};

std::string_view to_string(IssueKind kind);

struct ValidationIssue {
  IssueKind kind;
  std::string message;
  SourceSpan span;  // {0,0,0} when the issue has no source location
};

/// Thrown by validate_negotiation; lists every violated invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }
  bool has(IssueKind kind) const;

 private:
  std::vector<ValidationIssue> issues_;
};

}  // namespace negsolve
