#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gradex/diagnostics.hpp"
#include "gradex/environments.hpp"
#include "gradex/span.hpp"

namespace gradex {

struct Report {
  SignatureEnv sigs;
  std::vector<Diagnostic> diagnostics;  // sorted
  bool syntax_errors = false;           // some file failed to lex or parse
};

/// Parses every file, collects one signature environment across all of them
/// and checks each file that parsed.
Report check_sources(const std::vector<SourceFile>& files);

/// 0 clean, 1 type errors (or warnings when `strict_warnings`), 2 syntax
/// errors.
int exit_code(const Report& report, bool strict_warnings);

struct OutputOptions {
  bool json = false;
  bool dump_sigs = false;
  bool color = false;
};

/// Text or JSON rendering of a report, exactly as printed on stdout.
std::string render_report(const Report& report, const std::vector<SourceFile>& files, const OutputOptions& opts);

/// Expands directories into the `*.ex` files below them, sorted. Throws
/// std::runtime_error for missing paths.
std::vector<std::filesystem::path> expand_paths(const std::vector<std::string>& paths);

/// Command-line entry point; `args` excludes the program name. Returns the
/// process exit code (3 on usage errors).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool tty = false);

}  // namespace gradex
