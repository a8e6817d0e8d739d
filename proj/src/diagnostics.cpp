#include "gradex/diagnostics.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

namespace gradex {

std::string_view code_name(Code code) {
  switch (code) {
    case Code::Parse: return "E_PARSE";
    case Code::Lex: return "E_LEX";
    case Code::DupSpec: return "E_DUP_SPEC";
    case Code::TypeMismatch: return "E_TYPE_MISMATCH";
    case Code::UnboundVar: return "E_UNBOUND_VAR";
    case Code::UnknownKey: return "E_UNKNOWN_KEY";
    case Code::Arity: return "E_ARITY";
    case Code::NotFunction: return "E_NOT_FUNCTION";
    case Code::PatternType: return "E_PATTERN_TYPE";
    case Code::NonlinearMismatch: return "E_NONLINEAR_MISMATCH";
    case Code::PinUnbound: return "E_PIN_UNBOUND";
    case Code::SpecParamMismatch: return "E_SPEC_PARAM_MISMATCH";
    case Code::SpecBodyMismatch: return "E_SPEC_BODY_MISMATCH";
    case Code::SpecNoDef: return "W_SPEC_NO_DEF";
    case Code::UnreachablePattern: return "W_UNREACHABLE_PATTERN";
    case Code::UntypedDef: return "I_UNTYPED_DEF";
  }
  return "E_UNKNOWN";
}

Severity severity_of(Code code) {
  switch (code_name(code).front()) {
    case 'W': return Severity::Warning;
    case 'I': return Severity::Info;
    default: return Severity::Error;
  }
}

std::string_view severity_name(Severity severity) {
  switch (severity) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "error";
}

Summary summarize(std::span<const Diagnostic> diags) {
  Summary s;
  for (const auto& d : diags) {
    if (d.severity() == Severity::Error) ++s.errors;
    if (d.severity() == Severity::Warning) ++s.warnings;
  }
  return s;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::forward_as_tuple(a.file, a.span.begin, code_name(a.code)) <
           std::forward_as_tuple(b.file, b.span.begin, code_name(b.code));
  });
}

namespace {

constexpr std::string_view kReset = "\x1b[0m";
constexpr std::string_view kBold = "\x1b[1m";

std::string_view color_of(Severity s) {
  switch (s) {
    case Severity::Error: return "\x1b[31m";
    case Severity::Warning: return "\x1b[33m";
    case Severity::Info: return "\x1b[36m";
  }
  return "";
}

}  // namespace

std::string render_text(const Diagnostic& d, const SourceFile* source, bool color) {
  std::string out;
  std::string code(code_name(d.code));
  if (color) code = fmt::format("{}{}{}{}", kBold, color_of(d.severity()), code, kReset);
  out += fmt::format("{}:{}:{} {} {}\n", d.file, d.span.line, d.span.col, code, d.message);

  if (source != nullptr) {
    std::string_view line = source->line_text(d.span.line);
    std::string gutter = std::to_string(d.span.line);
    std::string blank(gutter.size(), ' ');
    out += fmt::format(" {} | {}\n", gutter, line);
    const bool multiline = d.span.end_line > d.span.line;
    int start = std::max(d.span.col, 1);
    int stop = multiline ? static_cast<int>(line.size()) + 1 : std::max(d.span.end_col, start + 1);
    std::string carets(static_cast<std::size_t>(stop - start), '^');
    if (carets.empty()) carets = "^";
    out += fmt::format(" {} | {}{}{}\n", blank, std::string(static_cast<std::size_t>(start - 1), ' '), carets,
                       multiline ? "..." : "");
  }
  if (d.expected) out += fmt::format("  expected: {}\n", *d.expected);
  if (d.actual) out += fmt::format("  actual:   {}\n", *d.actual);
  for (const auto& n : d.notes) {
    out += fmt::format("  note: {}:{}:{} {}\n", n.file, n.span.line, n.span.col, n.message);
  }
  return out;
}

std::string render_json(std::span<const Diagnostic> diags, const std::vector<std::string>* signatures) {
  using nlohmann::ordered_json;
  ordered_json list = ordered_json::array();
  for (const auto& d : diags) {
    ordered_json entry;
    entry["file"] = d.file;
    entry["line"] = d.span.line;
    entry["col"] = d.span.col;
    entry["end_line"] = d.span.end_line;
    entry["end_col"] = d.span.end_col;
    entry["severity"] = severity_name(d.severity());
    entry["code"] = code_name(d.code);
    entry["message"] = d.message;
    entry["expected"] = d.expected ? ordered_json(*d.expected) : ordered_json(nullptr);
    entry["actual"] = d.actual ? ordered_json(*d.actual) : ordered_json(nullptr);
    list.push_back(std::move(entry));
  }
  Summary s = summarize(diags);
  ordered_json doc;
  doc["diagnostics"] = std::move(list);
  doc["summary"] = {{"errors", s.errors}, {"warnings", s.warnings}};
  if (signatures != nullptr) doc["signatures"] = *signatures;
  return doc.dump();
}

Diagnostic& DiagnosticSink::report(Code code, Span span, std::string message) {
  diags_.push_back(Diagnostic{code, std::move(message), file_, span, {}, std::nullopt, std::nullopt});
  return diags_.back();
}

Diagnostic& DiagnosticSink::mismatch(Code code, Span span, std::string message, std::string expected,
                                     std::string actual) {
  Diagnostic& d = report(code, span, std::move(message));
  d.expected = std::move(expected);
  d.actual = std::move(actual);
  return d;
}

bool DiagnosticSink::has_errors() const {
  return std::any_of(diags_.begin(), diags_.end(),
                     [](const Diagnostic& d) { return d.severity() == Severity::Error; });
}

}  // namespace gradex
