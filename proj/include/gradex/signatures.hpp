#pragma once

#include <span>
#include <string>
#include <vector>

#include "gradex/ast.hpp"
#include "gradex/diagnostics.hpp"
#include "gradex/environments.hpp"

namespace gradex {

/// A parsed program together with the file it came from.
struct ProgramUnit {
  std::string file;
  const Program* program;
};

struct Collection {
  SignatureEnv sigs;
  std::vector<Diagnostic> diagnostics;  // E_DUP_SPEC, W_SPEC_NO_DEF
};

/// Gathers the `@spec` signatures of every unit into one environment,
/// qualifying each by its enclosing modules. Functions without a spec are
/// left out. Duplicates keep the first spec.
Collection collect_signatures(std::span<const ProgramUnit> units);
Collection collect_signatures(const Program& program, const std::string& file = {});

}  // namespace gradex
