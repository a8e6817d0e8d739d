#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "gradex/checker.hpp"
#include "gradex/diagnostics.hpp"
#include "gradex/expressions.hpp"
#include "gradex/parser.hpp"
#include "gradex/types.hpp"

namespace testing {

inline gradex::Type T(std::string_view text) { return gradex::parse_type_text(text); }

/// Parses and checks a whole program held in memory.
inline std::vector<gradex::Diagnostic> check_text(std::string_view text, const std::string& file = "t.ex") {
  gradex::Program prog = gradex::parse_program_text(text);
  return gradex::check_program(prog, file).diagnostics;
}

inline std::vector<std::string> codes(const std::vector<gradex::Diagnostic>& diags) {
  std::vector<std::string> out;
  for (const auto& d : diags) out.emplace_back(gradex::code_name(d.code));
  return out;
}

inline std::vector<std::string> error_codes(const std::vector<gradex::Diagnostic>& diags) {
  std::vector<std::string> out;
  for (const auto& d : diags) {
    if (d.severity() == gradex::Severity::Error) out.emplace_back(gradex::code_name(d.code));
  }
  return out;
}

inline bool accepted(const std::vector<gradex::Diagnostic>& diags) { return error_codes(diags).empty(); }

/// Synthesizes an expression, optionally after collecting the signatures of
/// `decls` (a program of top-level specs and defs).
struct Synth {
  gradex::SynthResult result;
  std::vector<gradex::Diagnostic> diagnostics;
};

inline Synth synth(std::string_view expr, std::string_view decls = "", gradex::VarEnv vars = {}) {
  gradex::Program prog = gradex::parse_program_text(decls);
  gradex::Collection sigs = gradex::collect_signatures(prog, "t.ex");
  gradex::Expr e = gradex::parse_expression_text(expr);
  gradex::DiagnosticSink sink("t.ex");
  auto r = gradex::synthesize(e, gradex::CheckContext{sigs.sigs, {}, std::move(vars)}, sink);
  return Synth{std::move(r), sink.take()};
}

}  // namespace testing
