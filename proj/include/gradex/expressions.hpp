#pragma once

#include "gradex/ast.hpp"
#include "gradex/diagnostics.hpp"
#include "gradex/environments.hpp"

namespace gradex {

struct CheckContext {
  const SignatureEnv& sigs;
  ModulePrefix prefix;
  VarEnv vars;
};

struct SynthResult {
  Type type;
  VarEnv env;  // environment after the expression
};

/// Synthesizes the type of `e` under `ctx`. Errors go to `sink`; an
/// ill-typed sub-expression is given type `any` so that checking continues
/// without cascading reports.
SynthResult synthesize(const Expr& e, const CheckContext& ctx, DiagnosticSink& sink);

/// The sub-expression whose value a block produces: the last element of a
/// sequence, otherwise `e` itself.
const Expr& result_expr(const Expr& e);

/// Every variable bound by `p`, each mapped to `any`.
VarEnv bind_as_any(const Pattern& p);

}  // namespace gradex
