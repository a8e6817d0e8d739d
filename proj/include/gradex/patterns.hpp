#pragma once

#include <optional>
#include <string>

#include "gradex/ast.hpp"
#include "gradex/diagnostics.hpp"
#include "gradex/environments.hpp"

namespace gradex {

/// Which judgement a pattern is checked under. The modes differ in the
/// direction of the literal and pin premises:
///   Match  value type must be usable at the pattern type   (p = e)
///   Case   pattern type must be usable at the selector type (case clauses)
///   Spec   pattern type must be more precise than the declared type
enum class PatternMode { Match, Case, Spec };

struct PatternError {
  Code code;
  Span span;
  std::string message;
  std::optional<std::string> expected;
  std::optional<std::string> actual;
};

struct PatternOutcome {
  VarEnv env;  // input gamma extended with the new bindings
  std::optional<PatternError> error;

  [[nodiscard]] bool ok() const { return !error; }
};

/// Checks `p` against `expected`. `sigma` resolves pins; `gamma` holds the
/// bindings made so far by the enclosing pattern(s) and is extended left to
/// right. Stops at the first error. In Spec mode shape mismatches are
/// reported as E_SPEC_PARAM_MISMATCH.
PatternOutcome check_pattern(const Pattern& p, const Type& expected, const VarEnv& sigma, const VarEnv& gamma,
                             PatternMode mode);

/// Whether a Case-mode failure is a shape mismatch that widening the
/// selector to `term` may repair.
bool triggers_fallback(Code code);

/// Re-checks a case pattern against `term`, as if the selector had been
/// upcast. Only pin and repeated-variable errors can remain.
PatternOutcome case_fallback(const Pattern& p, const VarEnv& sigma, const VarEnv& gamma);

struct NaturalPattern {
  Type type;
  VarEnv env;
  std::optional<PatternError> error;
};

/// Type read off an anonymous-function parameter: literals give their type,
/// variables and wildcards give `any`, pins give the pinned variable's type.
NaturalPattern natural_pattern_type(const Pattern& p, const VarEnv& sigma, const VarEnv& gamma = {});

/// Adds the error to `sink` as a diagnostic.
void report(DiagnosticSink& sink, const PatternError& error);

}  // namespace gradex
