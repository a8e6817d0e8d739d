#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "gradex/ast.hpp"
#include "gradex/diagnostics.hpp"
#include "gradex/lexer.hpp"

namespace gradex {

/// Parses a whole token stream (as produced by `tokenize`). Throws
/// SyntaxError with the offending span.
Program parse_program(std::span<const Token> tokens);

/// Parses one `@spec` declaration; the stream must begin at `@`.
SpecDecl parse_spec(std::span<const Token> tokens);

/// Convenience entry points over raw text.
Program parse_program_text(std::string_view source);
Expr parse_expression_text(std::string_view source);
Type parse_type_text(std::string_view source);

struct ParseOutcome {
  std::optional<Program> program;
  std::optional<Diagnostic> error;  // E_LEX or E_PARSE
};

/// Tokenizes and parses a file, converting failures into a diagnostic.
ParseOutcome parse_file(const SourceFile& file);

}  // namespace gradex
