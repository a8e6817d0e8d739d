#pragma once

#include <span>
#include <vector>

#include "gradex/ast.hpp"
#include "gradex/diagnostics.hpp"
#include "gradex/environments.hpp"
#include "gradex/signatures.hpp"

namespace gradex {

struct CheckResult {
  SignatureEnv sigs;
  std::vector<Diagnostic> diagnostics;  // sorted by (file, offset, code)
};

/// Collects signatures over all units, then checks every module body,
/// function clause and top-level expression sequence.
CheckResult check_program(std::span<const ProgramUnit> units);
CheckResult check_program(const Program& program, const std::string& file = {});

/// Checks one clause against its spec, if any. Clauses without a spec are
/// accepted unchecked and noted with I_UNTYPED_DEF.
void check_function_clause(const FunctionClause& clause, const SignatureEnv& sigs, const ModulePrefix& prefix,
                           DiagnosticSink& sink);

}  // namespace gradex
