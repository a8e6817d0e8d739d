#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradex/span.hpp"

namespace gradex {

enum class Severity { Error, Warning, Info };

/// Closed registry of diagnostic codes. The prefix of the rendered name
/// (E_, W_, I_) fixes the severity.
enum class Code {
  Parse,
  Lex,
  DupSpec,
  TypeMismatch,
  UnboundVar,
  UnknownKey,
  Arity,
  NotFunction,
  PatternType,
  NonlinearMismatch,
  PinUnbound,
  SpecParamMismatch,
  SpecBodyMismatch,
  SpecNoDef,
  UnreachablePattern,
  UntypedDef,
};

std::string_view code_name(Code code);
Severity severity_of(Code code);
std::string_view severity_name(Severity severity);

struct Note {
  std::string file;
  Span span;
  std::string message;
};

struct Diagnostic {
  Code code;
  std::string message;
  std::string file;
  Span span;
  std::vector<Note> notes;
  std::optional<std::string> expected;
  std::optional<std::string> actual;

  [[nodiscard]] Severity severity() const { return severity_of(code); }
};

struct Summary {
  int errors = 0;
  int warnings = 0;
};

Summary summarize(std::span<const Diagnostic> diags);

/// Orders by (file, start offset, code).
void sort_diagnostics(std::vector<Diagnostic>& diags);

/// Header line `file:line:col CODE message`, a caret-underlined excerpt when
/// `source` is given, then expected/actual types and notes.
std::string render_text(const Diagnostic& d, const SourceFile* source, bool color = false);

/// `{"diagnostics": [...], "summary": {"errors": n, "warnings": m}}`. When
/// `signatures` is given it is added as a `"signatures"` array.
std::string render_json(std::span<const Diagnostic> diags,
                        const std::vector<std::string>* signatures = nullptr);

/// Collects diagnostics during a pass.
class DiagnosticSink {
 public:
  explicit DiagnosticSink(std::string file = {}) : file_(std::move(file)) {}

  void set_file(std::string file) { file_ = std::move(file); }
  [[nodiscard]] const std::string& file() const { return file_; }

  Diagnostic& report(Code code, Span span, std::string message);
  Diagnostic& mismatch(Code code, Span span, std::string message, std::string expected,
                       std::string actual);

  [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  std::vector<Diagnostic> take() { return std::move(diags_); }
  [[nodiscard]] bool has_errors() const;

 private:
  std::string file_;
  std::vector<Diagnostic> diags_;
};

}  // namespace gradex
